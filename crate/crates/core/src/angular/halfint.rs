use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// An integer or half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    /// `J = (N - 1) / 2` for an `N`-site chain.
    pub const fn chain_spin(n_sites: usize) -> Self {
        HalfInt(n_sites as i32 - 1)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn as_int(self) -> Option<i32> {
        if self.is_integer() {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// `j, j - 1, ..., -j`.
    pub fn projections(self) -> impl DoubleEndedIterator<Item = HalfInt> + Clone {
        let j = self.0;
        (0..=j).map(move |k| HalfInt(j - 2 * k))
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Checks `j >= 0`, `|m| <= j` and `j - m` integral.
pub(crate) fn check_projection(j: HalfInt, m: HalfInt) -> Result<()> {
    let (tj, tm) = (j.twice(), m.twice());
    if tj < 0 || tm.abs() > tj || (tj - tm) % 2 != 0 {
        return Err(Error::InvalidQuantumNumber { twice_j: tj, twice_m: tm });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn projections_run_from_top() {
        let ms: Vec<i32> = HalfInt::from_twice(3).projections().map(HalfInt::twice).collect();
        assert_eq!(ms, [3, 1, -1, -3]);
        assert_eq!(HalfInt::ZERO.projections().count(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", HalfInt::from_twice(-3)), "-3/2");
        assert_eq!(alloc::format!("{}", HalfInt::int(2)), "2");
    }

    #[test]
    fn malformed_projection_rejected() {
        assert!(check_projection(HalfInt::int(1), HalfInt::int(2)).is_err());
        assert!(check_projection(HalfInt::int(1), HalfInt::HALF).is_err());
        assert!(check_projection(HalfInt::from_twice(-2), HalfInt::ZERO).is_err());
        assert!(check_projection(HalfInt::from_twice(3), HalfInt::from_twice(-3)).is_ok());
    }
}
