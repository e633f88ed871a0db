//! The invariant suite behind `hubbard-swap verify`.
//!
//! Every check reports the worst value it measured together with its bound.
//! Checks that depend on the product-to-coupled basis map take it from a
//! [`MapProvider`], so a deliberately broken map can be substituted.

use std::f64::consts::FRAC_PI_2;

use hubbard_swap::angular::{cg, coupled_basis_map, wigner_d_half_pi, CoupledBasisMap, HalfInt};
use hubbard_swap::dynamics::{fidelity, initial_state, level_shift_table, ssmc_residual, unchanged_levels, Route, SwapChannel};
use hubbard_swap::model::{
    block_decompose, build_block_hamiltonian, build_full_hamiltonian, coupled_transform, generator_residual,
    mirror_operator, reduced_interaction_check, BlockSpec, ChainSpec, HoppingSign,
};
use hubbard_swap::numerics::{evolve, hermitian_eig, parity_classify, ComplexMatrix};
use serde::{Deserialize, Serialize};

pub trait MapProvider {
    fn map(&self, spin: HalfInt) -> CoupledBasisMap;
}

/// Condon-Shortley maps as built by the core crate.
pub struct StandardMaps;

impl MapProvider for StandardMaps {
    fn map(&self, spin: HalfInt) -> CoupledBasisMap {
        coupled_basis_map(spin)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Passes when `measured < bound`.
    Below,
    /// Passes when `measured >= bound`.
    AtLeast,
}

impl Comparison {
    pub fn as_str(self) -> &'static str {
        match self {
            Comparison::Below => "below",
            Comparison::AtLeast => "at_least",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, measured: f64, bound: f64, comparison: Comparison) -> Self {
        let pass = match comparison {
            Comparison::Below => measured < bound,
            Comparison::AtLeast => measured >= bound,
        };
        Self { name: name.to_string(), measured, bound, comparison, pass }
    }

    fn below(name: &str, measured: f64, bound: f64) -> Self {
        Self::new(name, measured, bound, Comparison::Below)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

const BLOCK_US: [f64; 4] = [0.0, 2.3, 6.6, 40.5];
const TIMES: [f64; 3] = [0.5, FRAC_PI_2, 3.0];

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

pub fn verify() -> hubbard_swap::Result<VerifyReport> {
    verify_with(&StandardMaps)
}

pub fn verify_with(maps: &dyn MapProvider) -> hubbard_swap::Result<VerifyReport> {
    let mut checks = Vec::new();

    let mut orth = 0.0f64;
    let mut stretched = 0.0f64;
    for twice_j in 0..=9 {
        let j = HalfInt::from_twice(twice_j);
        orth = orth.max(maps.map(j).orthogonality_residual());
        let top = j + j;
        stretched = stretched.max((cg(j, j, j, j, top, top)? - 1.0).abs());
    }
    checks.push(Check::below("cg_orthogonality", orth, 1e-12));
    checks.push(Check::below("cg_stretched", stretched, 1e-12));

    let mut off_block = 0.0f64;
    let mut chain_match = 0.0f64;
    let mut product = 0.0f64;
    for n in 1..=8 {
        let map = maps.map(HalfInt::chain_spin(n));
        for u in BLOCK_US {
            let spec = ChainSpec { n_sites: n, onsite_u: u, hopping_sign: HoppingSign::Positive };
            let dec = block_decompose(&build_full_hamiltonian(&spec), &map)?;
            off_block = off_block.max(dec.off_block_residual);
            for b in &dec.blocks {
                let chain = build_block_hamiltonian(&BlockSpec::new(b.l as usize, u));
                chain_match = chain_match.max(b.matrix.max_abs_diff(&chain)?);
            }
        }
        if n >= 2 {
            let spec = ChainSpec::new(n, 0.0)?;
            let c = coupled_transform(&map);
            let l = (n - 1) as u32;
            for (m, site) in [(-(l as i32), spec.initial_index()), (l as i32, spec.target_index())] {
                let row = map.row_index(l, m).ok_or(hubbard_swap::Error::InvalidArgument("map lacks stretched row"))?;
                product = product.max((c[(row, site)].norm() - 1.0).abs());
            }
        }
    }
    checks.push(Check::below("block_off_diagonal", off_block, 1e-10));
    checks.push(Check::below("block_matches_chain", chain_match, 1e-10));
    checks.push(Check::below("stretched_state_mapping", product, 1e-12));

    let reduced = (1..=10)
        .map(|n| reduced_interaction_check(n, 7.3, &maps.map(HalfInt::chain_spin(n))))
        .collect::<hubbard_swap::Result<Vec<_>>>()?;
    checks.push(Check::below("reduced_interaction", worst(reduced), 1e-10));

    checks.push(Check::below("hopping_generator", worst((2..=20).map(generator_residual)), 1e-12));

    let mut union = 0.0f64;
    for n in 2..=10 {
        for u in [0.0, 6.6, 40.5] {
            let full = hermitian_eig(&build_full_hamiltonian(&ChainSpec::new(n, u)?))?.eigenvalues;
            let mut parts = Vec::with_capacity(n * n);
            for l in 0..n {
                parts.extend(hermitian_eig(&build_block_hamiltonian(&BlockSpec::new(l, u)))?.eigenvalues);
            }
            parts.sort_by(f64::total_cmp);
            union = union.max(worst(full.iter().zip(&parts).map(|(a, b)| (a - b).abs())));
        }
    }
    checks.push(Check::below("spectrum_union", union, 1e-9));

    let mut level_gap = 0.0f64;
    let mut min_shift = f64::INFINITY;
    for l in 0..=10 {
        for u in [0.0, 5.0, 40.5] {
            let spectrum = hermitian_eig(&build_block_hamiltonian(&BlockSpec::new(l, u)))?.eigenvalues;
            for level in unchanged_levels(l) {
                let gap = spectrum.iter().map(|e| (e - level).abs()).fold(f64::INFINITY, f64::min);
                level_gap = level_gap.max(gap);
            }
        }
        let table = level_shift_table(l, 5.0)?;
        min_shift = table.shifted().map(|r| r.shift).fold(min_shift, f64::min);
    }
    checks.push(Check::below("unchanged_levels", level_gap, 1e-10));
    checks.push(Check::new("shifted_levels_move", min_shift, 1e-3, Comparison::AtLeast));

    let mut d_sym = 0.0f64;
    for l in 0..=20 {
        let big_l = HalfInt::int(l);
        for mp in -l..=l {
            for m in -l..=l {
                let a = wigner_d_half_pi(big_l, HalfInt::int(mp), HalfInt::int(m))?;
                let b = wigner_d_half_pi(big_l, HalfInt::int(-mp), HalfInt::int(m))?;
                let sign = if (l - m) % 2 == 0 { 1.0 } else { -1.0 };
                d_sym = d_sym.max((a - sign * b).abs());
            }
        }
    }
    checks.push(Check::below("d_matrix_symmetry", d_sym, 1e-12));

    let mut gauge = 0.0f64;
    let mut routes = 0.0f64;
    for n in 2..=8 {
        for u in BLOCK_US {
            let spec = ChainSpec::new(n, u)?;
            let full = SwapChannel::new(&spec, Route::Full)?;
            let block = SwapChannel::new(&spec, Route::Block)?;
            let negative = SwapChannel::new(&spec.with_sign(HoppingSign::Negative), Route::Full)?;
            for t in TIMES {
                gauge = gauge.max((full.fidelity(t) - negative.fidelity(t)).abs());
                routes = routes.max((full.fidelity(t) - block.fidelity(t)).abs());
            }
        }
    }
    checks.push(Check::below("gauge_invariance", gauge, 1e-10));
    checks.push(Check::below("full_block_equivalence", routes, 1e-10));

    let mut transfer = 0.0f64;
    let mut ssmc = 0.0f64;
    let mut norm_drift = 0.0f64;
    for n in 2..=10 {
        let spec = ChainSpec::new(n, 0.0)?;
        transfer = transfer.max(1.0 - fidelity(&spec, FRAC_PI_2)?);
        let s = hermitian_eig(&build_full_hamiltonian(&spec))?;
        let psi = initial_state(&spec);
        for t in TIMES {
            norm_drift = norm_drift.max((evolve(&s, &psi, t)?.norm() - 1.0).abs());
        }
        let cls = parity_classify(&s, &mirror_operator(n))?;
        ssmc = ssmc.max(ssmc_residual(&cls, FRAC_PI_2, &psi)?);
    }
    checks.push(Check::below("perfect_transfer_u0", transfer, 1e-9));
    checks.push(Check::below("ssmc_u0", ssmc, 1e-9));
    checks.push(Check::below("evolution_norm", norm_drift, 1e-10));

    let big = build_block_hamiltonian(&BlockSpec::new(220, 40.5));
    let s = hermitian_eig(&big)?;
    let recon = s.reconstruct().max_abs_diff(&big)? / s.spectral_radius();
    let unitary = s.eigenvectors.adjoint().matmul(&s.eigenvectors)?.max_abs_diff(&ComplexMatrix::identity(big.dim()))?;
    checks.push(Check::below("eigen_reconstruction_441", recon, 1e-10));
    checks.push(Check::below("eigenvector_unitarity_441", unitary, 1e-10));

    checks.push(Check::below("central_shift_spread", level_shift_table(20, 40.5)?.central_relative_spread(), 0.15));

    let passed = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { checks, passed })
}
