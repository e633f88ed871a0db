//! Sweeps of the on-site strength `U` and what is extracted from them.
//!
//! Each grid point is an independent `(N, U) -> (F_max, T_r)` evaluation on
//! the reduced chain. The [`Sweeper`] trait lets callers decide how points
//! are scheduled; results are always assembled in grid order.
//!
//! Peak selection. Raw local maxima of `F_max(U)` above
//! [`PEAK_THRESHOLD`] include low-`U` resonances with long revival times that
//! sit below the regular family. The regular family is built greedily: the
//! first peak is the candidate with the shortest revival time, and each next
//! peak is the fastest-reviving candidate at larger `U` than the previous one.

mod reference;

use alloc::vec::Vec;

pub use reference::{
    reproduce_four_site_peaks, reproduce_leading_peaks, ReferencePeak, TableRow, FOUR_SITE_PEAKS, LEADING_PEAKS,
    FOUR_SITE_N, FOUR_SITE_U_MAX,
};

use crate::dynamics::f_max;
use crate::error::{Error, Result};
use crate::math::{golden_max, grid_len, PI};
use crate::model::ChainSpec;

/// Minimum `F_max` for a local maximum to count as a peak.
pub const PEAK_THRESHOLD: f64 = 0.9;

/// Width in `U` to which peak positions are refined.
pub const U_RESOLUTION: f64 = 1e-3;

pub const DEFAULT_DU: f64 = 0.05;
pub const DEFAULT_T_MAX: f64 = 10.0;

/// Default upper end of a sweep: every known peak for `N <= 10` lies below `4N`.
pub fn default_u_max(n_sites: usize) -> f64 {
    4.0 * n_sites as f64
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub u: f64,
    pub f_max: f64,
    pub t_r: f64,
}

/// `F_max(U)` and `T_r(U)` on a grid of strictly increasing `U`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepCurve {
    pub n_sites: usize,
    pub t_max: f64,
    pub points: Vec<SweepPoint>,
}

impl SweepCurve {
    pub fn new(n_sites: usize, t_max: f64, points: Vec<SweepPoint>) -> Result<Self> {
        if points.windows(2).any(|w| !(w[0].u < w[1].u)) {
            return Err(Error::InvalidArgument("sweep grid must be strictly increasing"));
        }
        Ok(Self { n_sites, t_max, points })
    }
}

/// `u_min, u_min + du, ...` up to `u_max`.
pub fn u_grid(u_min: f64, u_max: f64, du: f64) -> Result<Vec<f64>> {
    if !(du > 0.0) || !(u_min >= 0.0) || !(u_max > u_min) || !u_max.is_finite() {
        return Err(Error::InvalidArgument("sweep needs du > 0 and u_max > u_min >= 0"));
    }
    Ok((0..grid_len(u_min, u_max, du)).map(|i| u_min + i as f64 * du).collect())
}

pub fn sweep_point(n_sites: usize, u: f64, t_max: f64) -> Result<SweepPoint> {
    let p = f_max(&ChainSpec::new(n_sites, u)?, t_max)?;
    Ok(SweepPoint { u, f_max: p.f_max, t_r: p.t_r })
}

/// Evaluates a whole `U` grid.
pub trait Sweeper {
    /// Must return one point per grid value, in grid order.
    fn sweep(&self, n_sites: usize, grid: &[f64], t_max: f64) -> Result<Vec<SweepPoint>>;
}

/// Evaluates grid points one after another on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Sweeper for Sequential {
    fn sweep(&self, n_sites: usize, grid: &[f64], t_max: f64) -> Result<Vec<SweepPoint>> {
        grid.iter().map(|&u| sweep_point(n_sites, u, t_max)).collect()
    }
}

pub fn scan_u_with<S: Sweeper + ?Sized>(
    sweeper: &S,
    n_sites: usize,
    u_min: f64,
    u_max: f64,
    du: f64,
    t_max: f64,
) -> Result<SweepCurve> {
    if n_sites < 2 {
        return Err(Error::InvalidArgument("chain needs at least two sites"));
    }
    if !(t_max > 0.0) {
        return Err(Error::InvalidArgument("sweep needs t_max > 0"));
    }
    let grid = u_grid(u_min, u_max, du)?;
    let points = sweeper.sweep(n_sites, &grid, t_max)?;
    if points.len() != grid.len() {
        return Err(Error::DimensionMismatch { expected: grid.len(), found: points.len() });
    }
    SweepCurve::new(n_sites, t_max, points)
}

pub fn scan_u(n_sites: usize, u_min: f64, u_max: f64, du: f64, t_max: f64) -> Result<SweepCurve> {
    scan_u_with(&Sequential, n_sites, u_min, u_max, du, t_max)
}

/// One optimum of `F_max(U)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeakRecord {
    /// 1-based order by increasing `U`.
    pub n: usize,
    pub u_star: f64,
    pub f_max: f64,
    pub t_r: f64,
}

/// Grid indices that strictly beat both neighbours and exceed the threshold.
pub fn peak_candidates(curve: &SweepCurve) -> Vec<usize> {
    let p = &curve.points;
    (1..p.len().saturating_sub(1))
        .filter(|&i| p[i].f_max > p[i - 1].f_max && p[i].f_max > p[i + 1].f_max && p[i].f_max > PEAK_THRESHOLD)
        .collect()
}

/// Greedy fastest-revival chain through `candidates` (see module docs).
pub fn regular_family(curve: &SweepCurve, candidates: &[usize]) -> Vec<usize> {
    let p = &curve.points;
    let mut chosen = Vec::new();
    let mut floor_u = f64::NEG_INFINITY;
    loop {
        let next = candidates
            .iter()
            .copied()
            .filter(|&i| p[i].u > floor_u)
            .min_by(|&a, &b| p[a].t_r.total_cmp(&p[b].t_r).then(a.cmp(&b)));
        match next {
            Some(i) => {
                chosen.push(i);
                floor_u = p[i].u;
            }
            None => return chosen,
        }
    }
}

/// Maximizes `F_max` over `U` in `[lo, hi]` to [`U_RESOLUTION`].
pub fn refine_peak(n_sites: usize, t_max: f64, lo: f64, hi: f64) -> Result<SweepPoint> {
    let mut failure = None;
    let (u, _) = golden_max(
        |u| match sweep_point(n_sites, u, t_max) {
            Ok(p) => p.f_max,
            Err(e) => {
                failure = Some(e);
                f64::NEG_INFINITY
            }
        },
        lo,
        hi,
        U_RESOLUTION,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    sweep_point(n_sites, u, t_max)
}

/// The regular peaks of a sweep, numbered by increasing `U`.
pub fn find_peaks(curve: &SweepCurve, refine: bool) -> Result<Vec<PeakRecord>> {
    if curve.points.len() < 3 {
        return Err(Error::InsufficientData { needed: 3, found: curve.points.len() });
    }
    let family = regular_family(curve, &peak_candidates(curve));
    let p = &curve.points;
    let mut peaks = Vec::with_capacity(family.len());
    for (k, &i) in family.iter().enumerate() {
        let mut best = p[i];
        if refine {
            let refined = refine_peak(curve.n_sites, curve.t_max, p[i - 1].u, p[i + 1].u)?;
            if refined.f_max > best.f_max {
                best = refined;
            }
        }
        peaks.push(PeakRecord { n: k + 1, u_star: best.u, f_max: best.f_max, t_r: best.t_r });
    }
    Ok(peaks)
}

/// Least-squares line with per-point residuals `y - (slope x + intercept)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub points: Vec<(f64, f64)>,
    pub residuals: Vec<f64>,
    /// Sizes skipped because the requested peak was not found.
    pub omitted: Vec<usize>,
}

pub fn fit_line(points: &[(f64, f64)]) -> Result<LinearFit> {
    if points.len() < 2 {
        return Err(Error::InsufficientData { needed: 2, found: points.len() });
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("fit needs at least two distinct abscissae"));
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = points.iter().map(|p| p.1 - (slope * p.0 + intercept)).collect();
    Ok(LinearFit { slope, intercept, points: points.to_vec(), residuals, omitted: Vec::new() })
}

/// Fits `u_star` of peak `order` against chain size.
pub fn fit_peak_order(order: usize, peaks_by_size: &[(usize, Vec<PeakRecord>)]) -> Result<LinearFit> {
    let mut points = Vec::new();
    let mut omitted = Vec::new();
    for (n, peaks) in peaks_by_size {
        match peaks.iter().find(|p| p.n == order) {
            Some(p) => points.push((*n as f64, p.u_star)),
            None => omitted.push(*n),
        }
    }
    if points.len() < 3 {
        return Err(Error::InsufficientData { needed: 3, found: points.len() });
    }
    let mut fit = fit_line(&points)?;
    fit.omitted = omitted;
    Ok(fit)
}

/// Sweeps every size over `[0, 4N]` at the default step and fits peak `order`.
pub fn fit_optimal_u_with<S: Sweeper + ?Sized>(
    sweeper: &S,
    order: usize,
    sizes: &[usize],
    t_max: f64,
) -> Result<LinearFit> {
    let mut by_size = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let curve = scan_u_with(sweeper, n, 0.0, default_u_max(n), DEFAULT_DU, t_max)?;
        by_size.push((n, find_peaks(&curve, true)?));
    }
    fit_peak_order(order, &by_size)
}

pub fn fit_optimal_u(order: usize, sizes: &[usize], t_max: f64) -> Result<LinearFit> {
    fit_optimal_u_with(&Sequential, order, sizes, t_max)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RevivalCheck {
    pub n: usize,
    pub t_r: f64,
    /// `pi (n + 1) / 2`.
    pub predicted: f64,
    pub deviation: f64,
}

/// Compares each revival time with `pi (n + 1) / 2`.
pub fn revival_law_check(peaks: &[PeakRecord]) -> Result<Vec<RevivalCheck>> {
    if peaks.is_empty() {
        return Err(Error::InsufficientData { needed: 1, found: 0 });
    }
    Ok(peaks
        .iter()
        .map(|p| {
            let predicted = 0.5 * PI * (p.n as f64 + 1.0);
            RevivalCheck { n: p.n, t_r: p.t_r, predicted, deviation: (p.t_r - predicted).abs() }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(values: &[(f64, f64, f64)]) -> SweepCurve {
        let points = values.iter().map(|&(u, f_max, t_r)| SweepPoint { u, f_max, t_r }).collect();
        SweepCurve::new(2, 10.0, points).unwrap()
    }

    #[test]
    fn grid_length() {
        assert_eq!(u_grid(0.0, 30.0, 0.05).unwrap().len(), 601);
        assert!(u_grid(1.0, 1.0, 0.1).is_err());
        assert!(u_grid(-1.0, 1.0, 0.1).is_err());
        assert!(u_grid(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn monotone_curve_has_no_peaks() {
        let c = curve(&[(0.0, 0.91, 1.0), (1.0, 0.92, 1.0), (2.0, 0.95, 1.0), (3.0, 0.99, 1.0)]);
        assert!(find_peaks(&c, false).unwrap().is_empty());
    }

    #[test]
    fn short_curve_rejected() {
        let c = curve(&[(0.0, 0.91, 1.0), (1.0, 0.95, 1.0)]);
        assert!(matches!(find_peaks(&c, false), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn threshold_and_strictness() {
        let c = curve(&[
            (0.0, 0.5, 1.0),
            (1.0, 0.85, 1.0), // below threshold
            (2.0, 0.5, 1.0),
            (3.0, 0.95, 1.0), // plateau, not strict
            (4.0, 0.95, 1.0),
            (5.0, 0.5, 1.0),
            (6.0, 0.97, 2.0),
            (7.0, 0.5, 1.0),
        ]);
        assert_eq!(peak_candidates(&c), [6]);
    }

    #[test]
    fn regular_family_skips_slow_low_u_resonances() {
        // slow resonances at U = 1, 2 precede the fast one at U = 3
        let c = curve(&[
            (0.0, 0.5, 1.0),
            (1.0, 0.95, 9.4),
            (1.5, 0.5, 1.0),
            (2.0, 0.96, 6.3),
            (2.5, 0.5, 1.0),
            (3.0, 0.98, 3.1),
            (3.5, 0.5, 1.0),
            (4.0, 0.97, 7.0),
            (4.5, 0.5, 1.0),
            (5.0, 0.97, 4.7),
            (5.5, 0.5, 1.0),
        ]);
        let peaks = find_peaks(&c, false).unwrap();
        let us: Vec<f64> = peaks.iter().map(|p| p.u_star).collect();
        assert_eq!(us, [3.0, 5.0]);
        assert_eq!(peaks[0].n, 1);
        assert_eq!(peaks[1].n, 2);
    }

    #[test]
    fn exact_line_fit() {
        let pts: Vec<(f64, f64)> = (4..=10).map(|n| (n as f64, 2.0 * n as f64 - 1.5)).collect();
        let fit = fit_line(&pts).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-14);
        assert!((fit.intercept + 1.5).abs() < 1e-13);
        assert!(fit.residuals.iter().all(|r| r.abs() < 1e-13));
    }

    #[test]
    fn fit_omits_missing_sizes() {
        let peak = |n, u| PeakRecord { n, u_star: u, f_max: 0.99, t_r: 3.2 };
        let data = alloc::vec![
            (4, alloc::vec![peak(1, 8.0)]),
            (5, alloc::vec![peak(1, 10.0), peak(2, 17.0)]),
            (6, alloc::vec![peak(1, 12.0)]),
            (7, alloc::vec![peak(1, 14.0)]),
        ];
        let fit = fit_peak_order(1, &data).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-14);
        assert!(fit.omitted.is_empty());
        assert!(matches!(fit_peak_order(2, &data), Err(Error::InsufficientData { needed: 3, found: 1 })));
    }

    #[test]
    fn revival_of_exact_pi_has_no_deviation() {
        let checks = revival_law_check(&[PeakRecord { n: 1, u_star: 6.6, f_max: 0.98, t_r: PI }]).unwrap();
        assert_eq!(checks[0].deviation, 0.0);
        assert!(revival_law_check(&[]).is_err());
    }
}
