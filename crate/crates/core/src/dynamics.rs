//! Time evolution of the end-to-end swap and the spectral diagnostics that
//! explain it.
//!
//! The swap starts from `(1 up, N down)` and targets `(N up, 1 down)`. Both
//! are stretched states of total angular momentum `L = N - 1`, so the
//! transition amplitude can be computed either in the full `N^2` space or in
//! the single `2N - 1` site chain of that sector. [`Route`] selects which.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::angular::coupled_basis_map;
use crate::error::{Error, Result};
use crate::math::{golden_max, grid_len, phase_factor};
use crate::model::{
    block_decompose, block_mirror, build_block_hamiltonian, build_full_hamiltonian, coupled_transform,
    mirror_operator, BlockSpec, ChainSpec,
};
use crate::numerics::{hermitian_eig, parity_classify, ClassifiedSpectrum, Parity, StateVector};

/// Time resolution of the refined revival time.
pub const TIME_RESOLUTION: f64 = 1e-6;

/// Coarse samples per window in [`f_max`] (plus the end point).
pub const COARSE_SAMPLES: usize = 1000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Route {
    /// Diagonalize the `N^2 x N^2` Hamiltonian.
    #[default]
    Full,
    /// Diagonalize only the `L = N - 1` chain with the central barrier.
    Block,
}

/// The transition amplitude `<target| e^{-iHt} |initial>` written as
/// `sum_k w_k e^{-i eps_k t}`, diagonalized once and reused for every `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct SwapChannel {
    n_sites: usize,
    onsite_u: f64,
    energies: Vec<f64>,
    weights: Vec<Complex64>,
}

impl SwapChannel {
    pub fn new(spec: &ChainSpec, route: Route) -> Result<Self> {
        let (spectrum, initial, target) = match route {
            Route::Full => {
                let h = build_full_hamiltonian(spec);
                (hermitian_eig(&h)?, spec.initial_index(), spec.target_index())
            }
            Route::Block => {
                let block = BlockSpec::new(spec.n_sites - 1, spec.onsite_u).with_sign(spec.hopping_sign);
                let l = block.l as i32;
                let h = build_block_hamiltonian(&block);
                (hermitian_eig(&h)?, block.site_index(-l), block.site_index(l))
            }
        };
        let v = &spectrum.eigenvectors;
        let weights = (0..spectrum.dim()).map(|k| v[(target, k)] * v[(initial, k)].conj()).collect();
        Ok(Self { n_sites: spec.n_sites, onsite_u: spec.onsite_u, energies: spectrum.eigenvalues, weights })
    }

    pub fn amplitude(&self, t: f64) -> Complex64 {
        self.energies.iter().zip(&self.weights).map(|(e, w)| w * phase_factor(e * t)).sum()
    }

    pub fn fidelity(&self, t: f64) -> f64 {
        self.amplitude(t).norm_sqr()
    }

    /// Samples at `t = 0, dt, 2 dt, ...` up to `t_max`.
    pub fn trace(&self, t_max: f64, dt: f64) -> Result<FidelityTrace> {
        if !(t_max > 0.0) || !(dt > 0.0) {
            return Err(Error::InvalidArgument("trace needs t_max > 0 and dt > 0"));
        }
        let samples = (0..grid_len(0.0, t_max, dt))
            .map(|i| {
                let t = i as f64 * dt;
                (t, self.fidelity(t))
            })
            .collect();
        Ok(FidelityTrace { n_sites: self.n_sites, onsite_u: self.onsite_u, samples })
    }

    /// Best fidelity in `[0, t_max]` and the time it is reached.
    ///
    /// A uniform grid of [`COARSE_SAMPLES`] intervals locates the best sample;
    /// golden-section search over its two neighbouring intervals refines it to
    /// [`TIME_RESOLUTION`].
    pub fn peak(&self, t_max: f64) -> Result<PeakFidelity> {
        if !(t_max > 0.0) {
            return Err(Error::InvalidArgument("peak search needs t_max > 0"));
        }
        let dt = t_max / COARSE_SAMPLES as f64;
        let mut best = (0usize, self.fidelity(0.0));
        for i in 1..=COARSE_SAMPLES {
            let f = self.fidelity(i as f64 * dt);
            if f > best.1 {
                best = (i, f);
            }
        }
        let lo = best.0.saturating_sub(1) as f64 * dt;
        let hi = ((best.0 + 1).min(COARSE_SAMPLES)) as f64 * dt;
        let (t, f) = golden_max(|t| self.fidelity(t), lo, hi, TIME_RESOLUTION);
        let coarse_t = best.0 as f64 * dt;
        Ok(if f >= best.1 { PeakFidelity { f_max: f, t_r: t } } else { PeakFidelity { f_max: best.1, t_r: coarse_t } })
    }
}

/// `F(U, t)` sampled on a time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FidelityTrace {
    pub n_sites: usize,
    pub onsite_u: f64,
    /// `(t, F)` with strictly increasing `t`.
    pub samples: Vec<(f64, f64)>,
}

impl FidelityTrace {
    /// The sample with the largest fidelity (earliest on ties).
    pub fn best(&self) -> Option<(f64, f64)> {
        self.samples.iter().copied().fold(None, |acc, s| match acc {
            Some(b) if b.1 >= s.1 => Some(b),
            _ => Some(s),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeakFidelity {
    pub f_max: f64,
    /// Revival time: where `f_max` is attained.
    pub t_r: f64,
}

/// `<target| e^{-iHt} |initial>` in the full space. Only its modulus enters
/// the fidelity; the phase is reported as is.
pub fn transfer_amplitude(spec: &ChainSpec, t: f64) -> Result<Complex64> {
    Ok(SwapChannel::new(spec, Route::Full)?.amplitude(t))
}

/// `F(U, t) = |<N up, 1 down| e^{-iHt} |1 up, N down>|^2`, full space.
pub fn fidelity(spec: &ChainSpec, t: f64) -> Result<f64> {
    Ok(SwapChannel::new(spec, Route::Full)?.fidelity(t))
}

/// Full-space trace from a single diagonalization.
pub fn fidelity_trace(spec: &ChainSpec, t_max: f64, dt: f64) -> Result<FidelityTrace> {
    SwapChannel::new(spec, Route::Full)?.trace(t_max, dt)
}

/// `max F(U, t)` over `0 <= t <= t_max`, computed on the reduced chain.
pub fn f_max(spec: &ChainSpec, t_max: f64) -> Result<PeakFidelity> {
    SwapChannel::new(spec, Route::Block)?.peak(t_max)
}

/// Levels `2M` of the `L` chain whose eigenvectors vanish on the central site
/// (`L - M` odd), and so do not feel the barrier.
pub fn unchanged_levels(l: usize) -> Vec<f64> {
    let l = l as i32;
    (-l..=l).filter(|m| (l - m) % 2 != 0).map(|m| f64::from(2 * m)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelShiftRow {
    /// Position within its parity sector, ascending in energy.
    pub rank: usize,
    /// `M` of the unperturbed level `2M`.
    pub m: i32,
    pub energy_u: f64,
    pub energy_0: f64,
    pub shift: f64,
    pub parity: Parity,
}

/// Level shifts `|E(U) - E(0)|` of one reduced chain.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelShiftTable {
    pub l: usize,
    pub onsite_u: f64,
    /// Ordered by `energy_0`.
    pub rows: Vec<LevelShiftRow>,
}

impl LevelShiftTable {
    /// Rows whose levels move with `U` (even parity, `L - M` even).
    pub fn shifted(&self) -> impl Iterator<Item = &LevelShiftRow> {
        self.rows.iter().filter(|r| r.parity == Parity::Even)
    }

    /// Rows protected from the barrier (odd parity, `L - M` odd).
    pub fn protected(&self) -> impl Iterator<Item = &LevelShiftRow> {
        self.rows.iter().filter(|r| r.parity == Parity::Odd)
    }

    /// The shifted rows in the central quarter of ranks, widened by one
    /// where needed to stay symmetric about the middle.
    pub fn central_shifted(&self) -> Vec<LevelShiftRow> {
        let shifted: Vec<LevelShiftRow> = self.shifted().copied().collect();
        let n = shifted.len();
        let mut q = n.div_ceil(4).max(1);
        if !(n - q).is_multiple_of(2) {
            q += 1;
        }
        let start = (n - q) / 2;
        shifted[start..start + q].to_vec()
    }

    /// `(max - min) / mean` of the shifts in [`Self::central_shifted`].
    pub fn central_relative_spread(&self) -> f64 {
        let rows = self.central_shifted();
        let (mut lo, mut hi, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for r in &rows {
            lo = lo.min(r.shift);
            hi = hi.max(r.shift);
            sum += r.shift;
        }
        (hi - lo) / (sum / rows.len() as f64)
    }
}

fn classified_block(l: usize, u: f64) -> Result<ClassifiedSpectrum> {
    let h = build_block_hamiltonian(&BlockSpec::new(l, u));
    parity_classify(&hermitian_eig(&h)?, &block_mirror(l))
}

/// Compares the `L` chain at `U` with the bare chain, pairing levels by rank
/// within each mirror-parity sector.
pub fn level_shift_table(l: usize, onsite_u: f64) -> Result<LevelShiftTable> {
    let with_u = classified_block(l, onsite_u)?;
    let bare = classified_block(l, 0.0)?;
    let mut rows = Vec::with_capacity(2 * l + 1);
    for parity in [Parity::Even, Parity::Odd] {
        let pick = |c: &ClassifiedSpectrum| -> Vec<f64> {
            c.parities
                .iter()
                .zip(&c.spectrum.eigenvalues)
                .filter(|(p, _)| **p == parity)
                .map(|(_, e)| *e)
                .collect()
        };
        let (eu, e0) = (pick(&with_u), pick(&bare));
        if eu.len() != e0.len() {
            return Err(Error::DimensionMismatch { expected: e0.len(), found: eu.len() });
        }
        for (rank, (a, b)) in eu.iter().zip(&e0).enumerate() {
            rows.push(LevelShiftRow {
                rank,
                m: libm::round(b / 2.0) as i32,
                energy_u: *a,
                energy_0: *b,
                shift: (a - b).abs(),
                parity,
            });
        }
    }
    rows.sort_by(|a, b| a.energy_0.total_cmp(&b.energy_0));
    Ok(LevelShiftTable { l, onsite_u, rows })
}

/// Population-weighted violation of `exp(-i eps_n tau) = p_n`.
///
/// Returns `sum_n |<v_n|psi>|^2 |exp(-i eps_n tau) - e^{i phi} p_n|` where
/// `e^{i phi}` is the phase of `sum_n |<v_n|psi>|^2 p_n exp(-i eps_n tau)`.
/// Aligning the common phase makes the diagnostic independent of energy
/// offsets and of the overall sign of the transferred state. For a mirror
/// `R` the swap fidelity obeys `1 - F <= 2 * residual`.
pub fn ssmc_residual(spec: &ClassifiedSpectrum, tau: f64, weights: &StateVector) -> Result<f64> {
    let coeffs = spec.spectrum.project(weights)?;
    let terms: Vec<(f64, Complex64, f64)> = coeffs
        .iter()
        .zip(&spec.spectrum.eigenvalues)
        .zip(&spec.parities)
        .map(|((c, e), p)| (c.norm_sqr(), phase_factor(e * tau), p.sign()))
        .collect();
    let aligned: Complex64 = terms.iter().map(|(w, z, p)| z * (w * p)).sum();
    let norm = aligned.norm();
    let common = if norm > 1e-300 { aligned / norm } else { Complex64::new(1.0, 0.0) };
    Ok(terms.iter().map(|(w, z, p)| w * (z - common * p).norm()).sum())
}

/// The start state `|1 up, N down>` as a vector in the full space.
pub fn initial_state(spec: &ChainSpec) -> StateVector {
    StateVector::basis(spec.basis().dim(), spec.initial_index())
}

/// One eigenlevel of the full problem, labelled by its coupled sector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LabeledLevel {
    pub eigenvalue: f64,
    pub parity: Parity,
    pub block_l: u32,
    /// `|<v|1 up, N down>|^2`.
    pub overlap_sq: f64,
}

/// All `N^2` levels, obtained sector by sector so each carries a definite `L`
/// and a definite mirror parity even where sectors are degenerate.
pub fn labeled_levels(spec: &ChainSpec) -> Result<Vec<LabeledLevel>> {
    let map = coupled_basis_map(spec.spin());
    let h = build_full_hamiltonian(spec);
    let dec = block_decompose(&h, &map)?;
    let c = coupled_transform(&map);
    let r = mirror_operator(spec.n_sites);
    let dim = map.dim();
    let initial = spec.initial_index();
    let mut levels = Vec::with_capacity(dim);
    for (block, range) in dec.blocks.iter().zip(map.blocks()) {
        let s = hermitian_eig(&block.matrix)?;
        for k in 0..s.dim() {
            let amps: Vec<Complex64> = (0..dim)
                .map(|i| (0..range.len).map(|a| c[(range.offset + a, i)] * s.eigenvectors[(a, k)]).sum())
                .collect();
            let v = StateVector::new(amps);
            let expectation = v.inner(&r.mul_vec(&v)?)?.re;
            if expectation.abs() < 0.5 {
                return Err(Error::UnresolvedParity { index: levels.len(), expectation });
            }
            levels.push(LabeledLevel {
                eigenvalue: s.eigenvalues[k],
                parity: if expectation > 0.0 { Parity::Even } else { Parity::Odd },
                block_l: block.l,
                overlap_sq: v[initial].norm_sqr(),
            });
        }
    }
    levels.sort_by(|a, b| a.eigenvalue.total_cmp(&b.eigenvalue).then(b.block_l.cmp(&a.block_l)));
    Ok(levels)
}
