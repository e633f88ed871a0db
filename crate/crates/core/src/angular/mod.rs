//! Angular momentum algebra for two equal spins `J = (N - 1) / 2`.
//!
//! Clebsch-Gordan coefficients follow the Condon-Shortley phase convention.
//! Both they and the Wigner small-d values at `beta = pi/2` are evaluated as
//! exact rationals under a square root; floating point only enters at the
//! final square root. The d-matrix uses its own sum formula, independent of
//! the CG code, so the two can cross-check each other.

mod exact;
mod halfint;
mod map;

pub use exact::{cg_exact, wigner_d_half_pi_exact, SignedSqrt};
pub use halfint::HalfInt;
pub use map::{coupled_basis_map, BlockRange, CoupledBasisMap};

use crate::error::Result;
use crate::math::{cos, sin, sqrt};
use halfint::check_projection;

/// `<j1 m1; j2 m2 | big_j big_m>` as a float.
pub fn cg(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, big_j: HalfInt, big_m: HalfInt) -> Result<f64> {
    cg_exact(j1, m1, j2, m2, big_j, big_m).map(|c| c.to_f64())
}

/// `d^l_{mp m}(pi/2)` as a float.
pub fn wigner_d_half_pi(l: HalfInt, mp: HalfInt, m: HalfInt) -> Result<f64> {
    wigner_d_half_pi_exact(l, mp, m).map(|d| d.to_f64())
}

fn powi(x: f64, n: i32) -> f64 {
    (0..n).fold(1.0, |acc, _| acc * x)
}

fn factorial_f64(n: i32) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * f64::from(k))
}

/// `d^j_{mp m}(beta)` at arbitrary `beta` in floating point.
///
/// Intended for cross-checks at moderate `j`; the alternating sum loses
/// relative accuracy as `j` grows.
pub fn wigner_d(j: HalfInt, mp: HalfInt, m: HalfInt, beta: f64) -> Result<f64> {
    check_projection(j, mp)?;
    check_projection(j, m)?;
    let tj = j.twice();
    let (tmp, tm) = (mp.twice(), m.twice());
    let jp_plus = (tj + tmp) / 2;
    let jp_minus = (tj - tmp) / 2;
    let jm_plus = (tj + tm) / 2;
    let jm_minus = (tj - tm) / 2;
    let shift = (tmp - tm) / 2;
    let norm = sqrt(
        factorial_f64(jp_plus) * factorial_f64(jp_minus) * factorial_f64(jm_plus) * factorial_f64(jm_minus),
    );
    let (c, s) = (cos(beta / 2.0), sin(beta / 2.0));
    let k_min = 0.max(-shift);
    let k_max = jm_plus.min(jp_minus);
    let mut acc = 0.0;
    for k in k_min..=k_max {
        let sign = if (k + shift) % 2 == 0 { 1.0 } else { -1.0 };
        let den = factorial_f64(jm_plus - k) * factorial_f64(k) * factorial_f64(jp_minus - k) * factorial_f64(k + shift);
        let pc = powi(c, tj - shift - 2 * k);
        let ps = powi(s, shift + 2 * k);
        acc += sign * pc * ps / den;
    }
    Ok(norm * acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::math::PI;
    use approx::assert_abs_diff_eq;

    const H: HalfInt = HalfInt::HALF;

    #[test]
    fn stretched_state_coefficient_is_one() {
        for tj in 0..=9 {
            let j = HalfInt::from_twice(tj);
            let c = cg_exact(j, j, j, j, j + j, j + j).unwrap();
            assert_eq!(c.signum(), 1);
            assert_eq!(c.to_f64(), 1.0);
            let c = cg_exact(j, -j, j, -j, j + j, -(j + j)).unwrap();
            assert_eq!(c.to_f64(), 1.0);
        }
    }

    #[test]
    fn singlet_coefficient() {
        // (|up down> - |down up>) / sqrt(2)
        let v = cg(H, H, H, -H, HalfInt::ZERO, HalfInt::ZERO).unwrap();
        assert_abs_diff_eq!(v, core::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-16);
    }

    #[test]
    fn projection_selection_rule() {
        let one = HalfInt::int(1);
        assert_eq!(cg(one, one, one, one, HalfInt::int(2), one).unwrap(), 0.0);
    }

    #[test]
    fn triangle_rule_gives_zero() {
        let one = HalfInt::int(1);
        assert_eq!(cg(H, H, H, -H, HalfInt::int(2), HalfInt::ZERO).unwrap(), 0.0);
        assert_eq!(cg(one, one, H, H, HalfInt::from_twice(5), HalfInt::from_twice(3)).unwrap(), 0.0);
    }

    #[test]
    fn malformed_cg_rejected() {
        let one = HalfInt::int(1);
        let err = cg(one, HalfInt::int(2), one, HalfInt::ZERO, one, HalfInt::ZERO);
        assert_eq!(err, Err(Error::InvalidQuantumNumber { twice_j: 2, twice_m: 4 }));
    }

    #[test]
    fn d_matrix_examples() {
        let one = HalfInt::int(1);
        assert_eq!(wigner_d_half_pi(one, HalfInt::ZERO, HalfInt::ZERO).unwrap(), 0.0);
        let oracle = -libm::sin(PI / 2.0) / crate::math::sqrt(2.0);
        assert_abs_diff_eq!(wigner_d_half_pi(one, one, HalfInt::ZERO).unwrap(), oracle, epsilon = 1e-15);
        assert_abs_diff_eq!(wigner_d(one, one, HalfInt::ZERO, 0.7).unwrap(), -libm::sin(0.7) / crate::math::sqrt(2.0), epsilon = 1e-15);
    }

    #[test]
    fn d_matrix_columns_are_unit_vectors() {
        for tl in 0..=20 {
            let l = HalfInt::from_twice(tl);
            for m in l.projections() {
                let s: f64 = l.projections().map(|mp| wigner_d_half_pi(l, mp, m).unwrap().powi(2)).sum();
                assert_abs_diff_eq!(s, 1.0, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn exact_and_generic_d_agree() {
        for tl in 0..=12 {
            let l = HalfInt::from_twice(tl);
            for mp in l.projections() {
                for m in l.projections() {
                    let a = wigner_d_half_pi(l, mp, m).unwrap();
                    let b = wigner_d(l, mp, m, PI / 2.0).unwrap();
                    assert_abs_diff_eq!(a, b, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn malformed_d_rejected() {
        assert!(wigner_d_half_pi(HalfInt::int(1), HalfInt::int(2), HalfInt::ZERO).is_err());
        assert!(wigner_d(H, HalfInt::ZERO, H, 0.3).is_err());
    }

    #[test]
    fn spin_half_map_has_singlet_row() {
        let map = coupled_basis_map(H);
        assert_eq!(map.dim(), 4);
        assert_eq!(map.cols(), &[(H, H), (H, -H), (-H, H), (-H, -H)]);
        assert_eq!(map.rows(), &[(1, 1), (1, 0), (1, -1), (0, 0)]);
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let singlet: alloc::vec::Vec<f64> = (0..4).map(|c| map.entry(3, c)).collect();
        for (a, b) in singlet.iter().zip([0.0, s, -s, 0.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-16);
        }
    }

    #[test]
    fn map_orthogonal_and_sized() {
        for tj in 0..=9 {
            let j = HalfInt::from_twice(tj);
            let map = coupled_basis_map(j);
            let n = (tj + 1) as usize;
            assert_eq!(map.dim(), n * n);
            assert_eq!(map.blocks().iter().map(|b| b.len).sum::<usize>(), n * n);
            assert!(map.orthogonality_residual() < 1e-12, "J = {j}");
        }
    }

    #[test]
    fn map_indices_round_trip() {
        let j = HalfInt::from_twice(3);
        let map = coupled_basis_map(j);
        for (c, &(m1, m2)) in map.cols().iter().enumerate() {
            assert_eq!(map.col_index(m1, m2), Some(c));
        }
        for (r, &(l, m)) in map.rows().iter().enumerate() {
            assert_eq!(map.row_index(l, m), Some(r));
        }
        assert_eq!(map.col_index(HalfInt::int(1), H), None);
    }
}
