//! Published optima of `F_max(U)` and their reproduction.

use alloc::vec::Vec;

use super::{default_u_max, find_peaks, scan_u_with, PeakRecord, Sweeper, DEFAULT_DU, DEFAULT_T_MAX};
use crate::dynamics::{f_max, PeakFidelity};
use crate::error::Result;
use crate::model::ChainSpec;

/// A tabulated optimum: chain size, peak order, `U`, `F_max`, `T_r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferencePeak {
    pub n_sites: usize,
    pub order: usize,
    pub u: f64,
    pub f_max: f64,
    pub t_r: f64,
}

const fn rp(n_sites: usize, order: usize, u: f64, f_max: f64, t_r: f64) -> ReferencePeak {
    ReferencePeak { n_sites, order, u, f_max, t_r }
}

pub const FOUR_SITE_N: usize = 4;
pub const FOUR_SITE_U_MAX: f64 = 30.0;

/// The five regular peaks of the 4-site chain.
#[allow(clippy::approx_constant)]
pub const FOUR_SITE_PEAKS: [ReferencePeak; 5] = [
    rp(4, 1, 6.6, 0.9847, 3.14),
    rp(4, 2, 11.6, 0.9768, 4.71),
    rp(4, 3, 16.2, 0.9724, 6.28),
    rp(4, 4, 20.6, 0.9698, 7.85),
    rp(4, 5, 25.0, 0.9683, 9.42),
];

/// First and second peaks for `N = 2..10`.
#[allow(clippy::approx_constant)]
pub const LEADING_PEAKS: [ReferencePeak; 18] = [
    rp(2, 1, 2.3, 0.9999, 2.72),
    rp(2, 2, 3.6, 0.9999, 3.50),
    rp(3, 1, 4.9, 0.9926, 3.18),
    rp(3, 2, 8.0, 0.9929, 4.74),
    rp(4, 1, 6.6, 0.9847, 3.14),
    rp(4, 2, 11.6, 0.9768, 4.71),
    rp(5, 1, 8.6, 0.9873, 3.14),
    rp(5, 2, 15.0, 0.9802, 4.71),
    rp(6, 1, 10.6, 0.9906, 3.14),
    rp(6, 2, 18.4, 0.9856, 4.71),
    rp(7, 1, 12.6, 0.9931, 3.14),
    rp(7, 2, 21.8, 0.9894, 4.71),
    rp(8, 1, 14.5, 0.9948, 3.14),
    rp(8, 2, 25.2, 0.9920, 4.71),
    rp(9, 1, 16.5, 0.9960, 3.14),
    rp(9, 2, 28.7, 0.9938, 4.71),
    rp(10, 1, 18.5, 0.9968, 3.14),
    rp(10, 2, 32.1, 0.9950, 4.71),
];

/// A reference optimum next to what this crate computes for it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TableRow {
    pub reference: ReferencePeak,
    /// `F_max` and `T_r` evaluated at the tabulated `U`.
    pub at_reference_u: PeakFidelity,
    /// The matching peak found by sweeping and refining, if any.
    pub optimized: Option<PeakRecord>,
}

impl TableRow {
    fn build(reference: ReferencePeak, peaks: &[PeakRecord]) -> Result<Self> {
        let spec = ChainSpec::new(reference.n_sites, reference.u)?;
        Ok(Self {
            reference,
            at_reference_u: f_max(&spec, DEFAULT_T_MAX)?,
            optimized: peaks.iter().find(|p| p.n == reference.order).copied(),
        })
    }

    /// `(|dU|, |dF|, |dT|)` of the optimized peak against the reference.
    pub fn optimized_deviation(&self) -> Option<(f64, f64, f64)> {
        self.optimized.map(|p| {
            (
                (p.u_star - self.reference.u).abs(),
                (p.f_max - self.reference.f_max).abs(),
                (p.t_r - self.reference.t_r).abs(),
            )
        })
    }
}

/// Sweeps `N = 4` over `[0, 30]` and lines up every peak with the reference.
pub fn reproduce_four_site_peaks<S: Sweeper + ?Sized>(sweeper: &S) -> Result<(Vec<PeakRecord>, Vec<TableRow>)> {
    let curve = scan_u_with(sweeper, FOUR_SITE_N, 0.0, FOUR_SITE_U_MAX, DEFAULT_DU, DEFAULT_T_MAX)?;
    let peaks = find_peaks(&curve, true)?;
    let rows = FOUR_SITE_PEAKS.iter().map(|r| TableRow::build(*r, &peaks)).collect::<Result<_>>()?;
    Ok((peaks, rows))
}

/// Sweeps each `N = 2..10` over `[0, 4N]` and lines up the first two peaks.
pub fn reproduce_leading_peaks<S: Sweeper + ?Sized>(sweeper: &S) -> Result<Vec<TableRow>> {
    let mut rows = Vec::with_capacity(LEADING_PEAKS.len());
    for n in 2..=10 {
        let curve = scan_u_with(sweeper, n, 0.0, default_u_max(n), DEFAULT_DU, DEFAULT_T_MAX)?;
        let peaks = find_peaks(&curve, true)?;
        for r in LEADING_PEAKS.iter().filter(|r| r.n_sites == n) {
            rows.push(TableRow::build(*r, &peaks)?);
        }
    }
    Ok(rows)
}
