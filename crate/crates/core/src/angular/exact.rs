//! Racah-formula Clebsch-Gordan coefficients and Wigner small-d values at
//! `beta = pi/2`, both carried as exact signed square roots of rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::halfint::{check_projection, HalfInt};
use crate::error::Result;
use crate::math::sqrt;

/// A real number `s * sqrt(q)` with `s` in `{-1, 0, +1}` and rational `q >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSqrt {
    negative: bool,
    square: BigRational,
}

impl SignedSqrt {
    pub fn zero() -> Self {
        SignedSqrt { negative: false, square: BigRational::zero() }
    }

    /// `coefficient * sqrt(radicand)`.
    pub fn new(coefficient: BigRational, radicand: BigRational) -> Self {
        let negative = coefficient.is_negative();
        let square = &coefficient * &coefficient * radicand;
        if square.is_zero() {
            return Self::zero();
        }
        SignedSqrt { negative, square }
    }

    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }

    /// `-1`, `0` or `+1`.
    pub fn signum(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.negative {
            -1
        } else {
            1
        }
    }

    /// The exact square of the value.
    pub fn square(&self) -> &BigRational {
        &self.square
    }

    pub fn to_f64(&self) -> f64 {
        let q = self.square.to_f64().unwrap_or(f64::NAN);
        f64::from(self.signum()) * sqrt(q)
    }
}

fn factorial(n: i32) -> BigInt {
    debug_assert!(n >= 0);
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(a + b)` where both are half-integers summing to an integer.
fn int_of(x: HalfInt) -> i32 {
    debug_assert!(x.is_integer());
    x.twice() / 2
}

fn sign_of(k: i32) -> BigInt {
    if k.is_even() {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Clebsch-Gordan coefficient `<j1 m1; j2 m2 | big_j big_m>` in the
/// Condon-Shortley convention, exactly.
pub fn cg_exact(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    big_j: HalfInt,
    big_m: HalfInt,
) -> Result<SignedSqrt> {
    check_projection(j1, m1)?;
    check_projection(j2, m2)?;
    check_projection(big_j, big_m)?;
    if m1 + m2 != big_m {
        return Ok(SignedSqrt::zero());
    }
    let sum = j1 + j2 - big_j;
    if !sum.is_integer() || big_j < (j1 - j2).abs() || big_j > j1 + j2 {
        return Ok(SignedSqrt::zero());
    }

    let a = int_of(j1 + j2 - big_j);
    let b = int_of(j1 - j2 + big_j);
    let c = int_of(j2 - j1 + big_j);
    let d = int_of(j1 + j2 + big_j) + 1;
    let jm_plus = int_of(big_j + big_m);
    let jm_minus = int_of(big_j - big_m);
    let j1m_minus = int_of(j1 - m1);
    let j1m_plus = int_of(j1 + m1);
    let j2m_minus = int_of(j2 - m2);
    let j2m_plus = int_of(j2 + m2);

    let two_j_plus_one = BigInt::from(big_j.twice() + 1);
    let radicand_num = two_j_plus_one
        * factorial(a)
        * factorial(b)
        * factorial(c)
        * factorial(jm_plus)
        * factorial(jm_minus)
        * factorial(j1m_minus)
        * factorial(j1m_plus)
        * factorial(j2m_minus)
        * factorial(j2m_plus);
    let radicand = BigRational::new(radicand_num, factorial(d));

    // Denominator arguments: k, a-k, j1-m1-k, j2+m2-k, J-j2+m1+k, J-j1-m2+k.
    let shift1 = int_of(big_j - j2 + m1);
    let shift2 = int_of(big_j - j1 - m2);
    let k_min = 0.max(-shift1).max(-shift2);
    let k_max = a.min(j1m_minus).min(j2m_plus);
    let mut series = BigRational::zero();
    for k in k_min..=k_max {
        let den = factorial(k)
            * factorial(a - k)
            * factorial(j1m_minus - k)
            * factorial(j2m_plus - k)
            * factorial(shift1 + k)
            * factorial(shift2 + k);
        series += BigRational::new(sign_of(k), den);
    }
    Ok(SignedSqrt::new(series, radicand))
}

/// Wigner small-d element `d^j_{mp m}(pi/2) = <j mp| exp(-i pi/2 J_y) |j m>`, exactly.
pub fn wigner_d_half_pi_exact(j: HalfInt, mp: HalfInt, m: HalfInt) -> Result<SignedSqrt> {
    check_projection(j, mp)?;
    check_projection(j, m)?;
    let jp_plus = int_of(j + mp);
    let jp_minus = int_of(j - mp);
    let jm_plus = int_of(j + m);
    let jm_minus = int_of(j - m);
    let shift = int_of(mp - m);

    // cos(pi/4)^(2j + m - mp - 2k) sin(pi/4)^(mp - m + 2k) = 2^(-j) for every k.
    let radicand = BigRational::new(
        factorial(jp_plus) * factorial(jp_minus) * factorial(jm_plus) * factorial(jm_minus),
        BigInt::one() << (j.twice() as usize),
    );
    let k_min = 0.max(-shift);
    let k_max = jm_plus.min(jp_minus);
    let mut series = BigRational::zero();
    for k in k_min..=k_max {
        let den = factorial(jm_plus - k) * factorial(k) * factorial(jp_minus - k) * factorial(k + shift);
        series += BigRational::new(sign_of(k + shift), den);
    }
    Ok(SignedSqrt::new(series, radicand))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn singlet_is_exactly_one_half_squared() {
        let h = HalfInt::HALF;
        let c = cg_exact(h, h, h, -h, HalfInt::ZERO, HalfInt::ZERO).unwrap();
        assert_eq!(c.signum(), 1);
        assert_eq!(c.square(), &rat(1, 2));
        let c = cg_exact(h, -h, h, h, HalfInt::ZERO, HalfInt::ZERO).unwrap();
        assert_eq!(c.signum(), -1);
        assert_eq!(c.square(), &rat(1, 2));
    }

    #[test]
    fn spin_one_coupling_table() {
        // <1 1; 1 -1 | 1 0> = 1/sqrt(2), <1 0; 1 0 | 2 0> = sqrt(2/3), <1 0; 1 0 | 0 0> = -1/sqrt(3).
        let one = HalfInt::int(1);
        let z = HalfInt::ZERO;
        let c = cg_exact(one, one, one, -one, one, z).unwrap();
        assert_eq!((c.signum(), c.square().clone()), (1, rat(1, 2)));
        let c = cg_exact(one, z, one, z, HalfInt::int(2), z).unwrap();
        assert_eq!((c.signum(), c.square().clone()), (1, rat(2, 3)));
        let c = cg_exact(one, z, one, z, z, z).unwrap();
        assert_eq!((c.signum(), c.square().clone()), (-1, rat(1, 3)));
        let c = cg_exact(one, z, one, z, one, z).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn d_matrix_spin_one_half() {
        // d^{1/2}(beta) = [[cos, -sin], [sin, cos]](beta/2).
        let h = HalfInt::HALF;
        let d = wigner_d_half_pi_exact(h, -h, h).unwrap();
        assert_eq!((d.signum(), d.square().clone()), (1, rat(1, 2)));
        let d = wigner_d_half_pi_exact(h, h, -h).unwrap();
        assert_eq!((d.signum(), d.square().clone()), (-1, rat(1, 2)));
    }
}
