//! Hamiltonians and symmetry operators for two opposite-spin electrons.
//!
//! The two electrons are distinguishable by spin, so the sector is spanned by
//! `|j_up, j_down>` with no antisymmetrization and no fermionic signs. Sites
//! are 1-based. Spin-up site `j` carries projection `M = j - J - 1` and
//! spin-down site `j` carries `M = J + 1 - j`, with `J = (N - 1) / 2`.
//!
//! With [`HoppingSign::Positive`] the hopping part equals
//! `2 J_x(up) + 2 J_x(down)` and each coupled sector is exactly the chain
//! built by [`build_block_hamiltonian`]. [`HoppingSign::Negative`] is the
//! `-t` convention; it is related by the gauge `(-1)^(j_up + j_down)` and
//! leaves every transition probability unchanged.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::angular::{CoupledBasisMap, HalfInt};
use crate::error::{Error, Result};
use crate::math::sqrt;
use crate::numerics::ComplexMatrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum HoppingSign {
    #[default]
    Positive,
    Negative,
}

impl HoppingSign {
    pub fn value(self) -> f64 {
        match self {
            HoppingSign::Positive => 1.0,
            HoppingSign::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            HoppingSign::Positive => HoppingSign::Negative,
            HoppingSign::Negative => HoppingSign::Positive,
        }
    }
}

/// Engineered hopping `sqrt(j (N - j))` between sites `j` and `j + 1`.
pub fn engineered_hopping(n_sites: usize, j: usize) -> f64 {
    sqrt((j * (n_sites - j)) as f64)
}

/// One problem instance: chain length, on-site repulsion and sign convention.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainSpec {
    pub n_sites: usize,
    pub onsite_u: f64,
    pub hopping_sign: HoppingSign,
}

impl ChainSpec {
    pub fn new(n_sites: usize, onsite_u: f64) -> Result<Self> {
        if n_sites < 2 {
            return Err(Error::InvalidArgument("chain needs at least two sites"));
        }
        if !onsite_u.is_finite() {
            return Err(Error::InvalidArgument("on-site strength must be finite"));
        }
        Ok(Self { n_sites, onsite_u, hopping_sign: HoppingSign::Positive })
    }

    pub fn with_sign(self, hopping_sign: HoppingSign) -> Self {
        Self { hopping_sign, ..self }
    }

    pub fn with_u(self, onsite_u: f64) -> Self {
        Self { onsite_u, ..self }
    }

    /// `t_1 .. t_{N-1}`.
    pub fn hoppings(&self) -> Vec<f64> {
        (1..self.n_sites).map(|j| engineered_hopping(self.n_sites, j)).collect()
    }

    pub fn spin(&self) -> HalfInt {
        HalfInt::chain_spin(self.n_sites)
    }

    pub fn basis(&self) -> TwoParticleBasis {
        TwoParticleBasis::new(self.n_sites)
    }

    /// Index of `(1 up, N down)`, the configuration the swap starts from.
    pub fn initial_index(&self) -> usize {
        self.basis().index(1, self.n_sites)
    }

    /// Index of `(N up, 1 down)`.
    pub fn target_index(&self) -> usize {
        self.basis().index(self.n_sites, 1)
    }
}

/// Product basis `|j_up, j_down>`, `j_up` major.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoParticleBasis {
    n: usize,
}

impl TwoParticleBasis {
    pub fn new(n_sites: usize) -> Self {
        Self { n: n_sites }
    }

    pub fn n_sites(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn index(&self, j_up: usize, j_down: usize) -> usize {
        debug_assert!((1..=self.n).contains(&j_up) && (1..=self.n).contains(&j_down));
        (j_up - 1) * self.n + (j_down - 1)
    }

    pub fn sites(&self, index: usize) -> (usize, usize) {
        (index / self.n + 1, index % self.n + 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim()).map(|i| self.sites(i))
    }
}

/// Projection carried by spin-up site `j`.
pub fn up_projection(n_sites: usize, j: usize) -> HalfInt {
    HalfInt::from_twice(2 * j as i32 - n_sites as i32 - 1)
}

/// Projection carried by spin-down site `j`.
pub fn down_projection(n_sites: usize, j: usize) -> HalfInt {
    HalfInt::from_twice(n_sites as i32 + 1 - 2 * j as i32)
}

/// Spin-up site holding projection `m`.
pub fn up_site(n_sites: usize, m: HalfInt) -> usize {
    ((m.twice() + n_sites as i32 + 1) / 2) as usize
}

/// Spin-down site holding projection `m`.
pub fn down_site(n_sites: usize, m: HalfInt) -> usize {
    ((n_sites as i32 + 1 - m.twice()) / 2) as usize
}

/// One coupled sector: a `2L + 1` site chain `j = -L..L` with hoppings
/// `sqrt((L + j + 1)(L - j))` and a barrier `U` on the central site.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockSpec {
    pub l: usize,
    pub onsite_u: f64,
    pub hopping_sign: HoppingSign,
}

impl BlockSpec {
    pub fn new(l: usize, onsite_u: f64) -> Self {
        Self { l, onsite_u, hopping_sign: HoppingSign::Positive }
    }

    pub fn with_sign(self, hopping_sign: HoppingSign) -> Self {
        Self { hopping_sign, ..self }
    }

    pub fn dim(&self) -> usize {
        2 * self.l + 1
    }

    /// Hopping between chain sites `j` and `j + 1`, for `j` in `-L..L-1`.
    pub fn hopping(&self, j: i32) -> f64 {
        let l = self.l as i32;
        sqrt(f64::from((l + j + 1) * (l - j)))
    }

    pub fn hoppings(&self) -> Vec<f64> {
        let l = self.l as i32;
        (-l..l).map(|j| self.hopping(j)).collect()
    }

    /// Matrix row of chain site `j`; rows run from `j = -L` up to `j = L`.
    pub fn site_index(&self, j: i32) -> usize {
        (j + self.l as i32) as usize
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Hopping part of the two-particle Hamiltonian, `U = 0`.
pub fn hopping_hamiltonian(n_sites: usize, sign: HoppingSign) -> ComplexMatrix {
    let basis = TwoParticleBasis::new(n_sites);
    let s = sign.value();
    let mut h = ComplexMatrix::zeros(basis.dim());
    for j in 1..n_sites {
        let t = real(s * engineered_hopping(n_sites, j));
        for other in 1..=n_sites {
            let (a, b) = (basis.index(j, other), basis.index(j + 1, other));
            h[(a, b)] = t;
            h[(b, a)] = t;
            let (a, b) = (basis.index(other, j), basis.index(other, j + 1));
            h[(a, b)] = t;
            h[(b, a)] = t;
        }
    }
    h
}

/// Full `N^2 x N^2` Hamiltonian of the one-up/one-down sector.
pub fn build_full_hamiltonian(spec: &ChainSpec) -> ComplexMatrix {
    let mut h = hopping_hamiltonian(spec.n_sites, spec.hopping_sign);
    let basis = spec.basis();
    for j in 1..=spec.n_sites {
        let i = basis.index(j, j);
        h[(i, i)] += real(spec.onsite_u);
    }
    h
}

/// `U` on the doubly occupied configurations `j_up = j_down`, zero elsewhere.
pub fn onsite_projector(n_sites: usize, onsite_u: f64) -> ComplexMatrix {
    let basis = TwoParticleBasis::new(n_sites);
    let mut v = ComplexMatrix::zeros(basis.dim());
    for j in 1..=n_sites {
        let i = basis.index(j, j);
        v[(i, i)] = real(onsite_u);
    }
    v
}

/// Reflection `(j_up, j_down) -> (N + 1 - j_up, N + 1 - j_down)`.
pub fn mirror_operator(n_sites: usize) -> ComplexMatrix {
    let basis = TwoParticleBasis::new(n_sites);
    let mut r = ComplexMatrix::zeros(basis.dim());
    for (a, b) in basis.iter() {
        r[(basis.index(n_sites + 1 - a, n_sites + 1 - b), basis.index(a, b))] = real(1.0);
    }
    r
}

/// Diagonal gauge `(-1)^(j_up + j_down)` that flips the hopping sign.
pub fn gauge_operator(n_sites: usize) -> ComplexMatrix {
    let basis = TwoParticleBasis::new(n_sites);
    let mut g = ComplexMatrix::zeros(basis.dim());
    for (i, (a, b)) in basis.iter().enumerate() {
        g[(i, i)] = real(if (a + b) % 2 == 0 { 1.0 } else { -1.0 });
    }
    g
}

/// Tridiagonal chain of one coupled sector.
pub fn build_block_hamiltonian(block: &BlockSpec) -> ComplexMatrix {
    let l = block.l as i32;
    let s = block.hopping_sign.value();
    let mut h = ComplexMatrix::zeros(block.dim());
    for j in -l..l {
        let (a, b) = (block.site_index(j), block.site_index(j + 1));
        let t = real(s * block.hopping(j));
        h[(a, b)] = t;
        h[(b, a)] = t;
    }
    let c = block.site_index(0);
    h[(c, c)] = real(block.onsite_u);
    h
}

/// Reflection `j -> -j` of a `2L + 1` site chain.
pub fn block_mirror(l: usize) -> ComplexMatrix {
    let d = 2 * l + 1;
    ComplexMatrix::from_fn(d, |i, j| if i + j == d - 1 { real(1.0) } else { real(0.0) })
}

/// The coupled map re-expressed on the site basis: row `r` is the coupled
/// state `map.rows()[r]`, column `i` is the product state
/// `TwoParticleBasis::sites(i)`.
pub fn coupled_transform(map: &CoupledBasisMap) -> ComplexMatrix {
    let n = (map.j().twice() + 1) as usize;
    let basis = TwoParticleBasis::new(n);
    let cols: Vec<usize> = basis
        .iter()
        .map(|(a, b)| {
            map.col_index(up_projection(n, a), down_projection(n, b)).expect("site projections lie in range")
        })
        .collect();
    ComplexMatrix::from_fn(map.dim(), |r, i| real(map.entry(r, cols[i])))
}

/// One diagonal block of `C H C^T`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoupledBlock {
    pub l: u32,
    /// Rows ordered `M = L, L-1, ..., -L`.
    pub matrix: ComplexMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockDecomposition {
    pub blocks: Vec<CoupledBlock>,
    /// Largest `|C H C^T|` entry outside the diagonal blocks.
    pub off_block_residual: f64,
}

/// Rotates `h` into the coupled basis and cuts out the `L` sectors.
pub fn block_decompose(h: &ComplexMatrix, map: &CoupledBasisMap) -> Result<BlockDecomposition> {
    if h.dim() != map.dim() {
        return Err(Error::DimensionMismatch { expected: map.dim(), found: h.dim() });
    }
    let c = coupled_transform(map);
    let rotated = c.matmul(h)?.matmul(&c.transpose())?;
    let ranges = map.blocks();
    let mut owner = alloc::vec![0usize; map.dim()];
    for (b, r) in ranges.iter().enumerate() {
        owner[r.offset..r.offset + r.len].fill(b);
    }
    let mut residual = 0.0f64;
    for i in 0..map.dim() {
        for j in 0..map.dim() {
            if owner[i] != owner[j] {
                residual = residual.max(rotated[(i, j)].norm());
            }
        }
    }
    let blocks = ranges
        .iter()
        .map(|r| CoupledBlock { l: r.l, matrix: rotated.sub_block(r.offset, r.len) })
        .collect();
    Ok(BlockDecomposition { blocks, off_block_residual: residual })
}

/// `max |C V C^T - U sum_L |L,0><L,0||` for the on-site projector `V`.
pub fn reduced_interaction_check(n_sites: usize, onsite_u: f64, map: &CoupledBasisMap) -> Result<f64> {
    let v = onsite_projector(n_sites, onsite_u);
    if v.dim() != map.dim() {
        return Err(Error::DimensionMismatch { expected: map.dim(), found: v.dim() });
    }
    let c = coupled_transform(map);
    let rotated = c.matmul(&v)?.matmul(&c.transpose())?;
    let mut target = ComplexMatrix::zeros(map.dim());
    for l in 0..n_sites as u32 {
        let i = map.row_index(l, 0).ok_or(Error::InvalidArgument("map has no M = 0 row"))?;
        target[(i, i)] = real(onsite_u);
    }
    rotated.max_abs_diff(&target)
}

/// Largest deviation between the single-particle lowering hops and `J_-`.
///
/// For spin up the hop `t_j c+_j c_{j+1}` must equal `<M-1|J_-|M>` under the
/// site map; for spin down the hop runs the other way, `t_j c+_{j+1} c_j`.
pub fn generator_residual(n_sites: usize) -> f64 {
    let j = HalfInt::chain_spin(n_sites);
    let lowering = |m: HalfInt| {
        // <m-1| J_- |m> = sqrt((J + m)(J - m + 1))
        let a = (j + m).to_f64();
        let b = (j - m).to_f64() + 1.0;
        sqrt(a * b)
    };
    let mut worst = 0.0f64;
    for site in 1..n_sites {
        let t = engineered_hopping(n_sites, site);
        // spin up: removes from site+1, creates on site
        let m = up_projection(n_sites, site + 1);
        debug_assert_eq!(up_site(n_sites, m - HalfInt::int(1)), site);
        worst = worst.max((t - lowering(m)).abs());
        // spin down: removes from site, creates on site+1
        let m = down_projection(n_sites, site);
        debug_assert_eq!(down_site(n_sites, m - HalfInt::int(1)), site + 1);
        worst = worst.max((t - lowering(m)).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::coupled_basis_map;
    use crate::numerics::hermitian_eig;

    fn re(m: &ComplexMatrix) -> Vec<f64> {
        m.as_slice().iter().map(|z| z.re).collect()
    }

    #[test]
    fn two_site_matrix_by_hand() {
        // Basis (1,1), (1,2), (2,1), (2,2); every link has t_1 = 1.
        let h = build_full_hamiltonian(&ChainSpec::new(2, 0.0).unwrap());
        #[rustfmt::skip]
        let want = [
            0.0, 1.0, 1.0, 0.0,
            1.0, 0.0, 0.0, 1.0,
            1.0, 0.0, 0.0, 1.0,
            0.0, 1.0, 1.0, 0.0,
        ];
        assert_eq!(re(&h), want);
        let h = build_full_hamiltonian(&ChainSpec::new(2, 5.0).unwrap());
        let diag: Vec<f64> = (0..4).map(|i| h[(i, i)].re).collect();
        assert_eq!(diag, [5.0, 0.0, 0.0, 5.0]);
        assert!(h.as_slice().iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn chain_spec_validation() {
        assert!(ChainSpec::new(1, 0.0).is_err());
        assert!(ChainSpec::new(3, f64::NAN).is_err());
        let spec = ChainSpec::new(5, 1.0).unwrap();
        let t = spec.hoppings();
        assert_eq!(t.len(), 4);
        for j in 0..4 {
            assert_eq!(t[j], t[3 - j]);
            assert!(t[j] > 0.0);
        }
    }

    #[test]
    fn site_projection_maps_are_inverse() {
        for n in 1..=8 {
            for j in 1..=n {
                assert_eq!(up_site(n, up_projection(n, j)), j);
                assert_eq!(down_site(n, down_projection(n, j)), j);
            }
            let big_j = HalfInt::chain_spin(n);
            assert_eq!(up_projection(n, 1), -big_j);
            assert_eq!(down_projection(n, n), -big_j);
        }
    }

    #[test]
    fn block_examples() {
        assert_eq!(re(&build_block_hamiltonian(&BlockSpec::new(0, 2.5))), [2.5]);
        let s = sqrt(2.0);
        assert_eq!(
            re(&build_block_hamiltonian(&BlockSpec::new(1, 3.0))),
            [0.0, s, 0.0, s, 3.0, s, 0.0, s, 0.0]
        );
        let spec = hermitian_eig(&build_block_hamiltonian(&BlockSpec::new(2, 0.0))).unwrap();
        for (e, want) in spec.eigenvalues.iter().zip([-4.0, -2.0, 0.0, 2.0, 4.0]) {
            assert!((e - want).abs() < 1e-12);
        }
    }

    #[test]
    fn block_hoppings_are_mirror_symmetric() {
        for l in 0..=12 {
            let b = BlockSpec::new(l, 0.0);
            let l = l as i32;
            for j in -l..l {
                assert_eq!(b.hopping(j), b.hopping(-j - 1));
            }
        }
    }

    #[test]
    fn onsite_projector_identities() {
        let (n, u) = (5, 2.5);
        let v = onsite_projector(n, u);
        let trace: f64 = (0..n * n).map(|i| v[(i, i)].re).sum();
        assert_eq!(trace, n as f64 * u);
        assert!(v.matmul(&v).unwrap().max_abs_diff(&v.scale(u)).unwrap() < 1e-15);
        let spec = ChainSpec::new(n, u).unwrap();
        let diff = build_full_hamiltonian(&spec).sub(&hopping_hamiltonian(n, HoppingSign::Positive)).unwrap();
        assert_eq!(diff, v);
    }

    #[test]
    fn mirror_sends_initial_to_target() {
        let spec = ChainSpec::new(4, 0.0).unwrap();
        let r = mirror_operator(4);
        assert_eq!(r[(spec.target_index(), spec.initial_index())].re, 1.0);
        assert_eq!(r.matmul(&r).unwrap(), ComplexMatrix::identity(16));
        assert_eq!(r.transpose(), r);
    }

    #[test]
    fn hamiltonian_commutes_with_mirror() {
        for n in 2..=10 {
            for u in [0.0, 3.3, 40.5] {
                for sign in [HoppingSign::Positive, HoppingSign::Negative] {
                    let h = build_full_hamiltonian(&ChainSpec::new(n, u).unwrap().with_sign(sign));
                    let c = h.commutator(&mirror_operator(n)).unwrap().max_abs();
                    assert!(c < 1e-12, "N={n} U={u}: {c}");
                }
            }
        }
    }

    #[test]
    fn single_site_interaction_is_one_block() {
        let map = coupled_basis_map(HalfInt::ZERO);
        assert_eq!(reduced_interaction_check(1, 4.2, &map).unwrap(), 0.0);
        assert_eq!(onsite_projector(1, 4.2)[(0, 0)].re, 4.2);
    }

    #[test]
    fn zero_interaction_reduces_trivially() {
        let map = coupled_basis_map(HalfInt::chain_spin(6));
        assert_eq!(reduced_interaction_check(6, 0.0, &map).unwrap(), 0.0);
    }

    #[test]
    fn block_decompose_rejects_mismatched_map() {
        let h = build_full_hamiltonian(&ChainSpec::new(3, 1.0).unwrap());
        let map = coupled_basis_map(HalfInt::chain_spin(4));
        assert_eq!(
            block_decompose(&h, &map).unwrap_err(),
            Error::DimensionMismatch { expected: 16, found: 9 }
        );
    }

    #[test]
    fn hops_are_angular_momentum_lowering() {
        for n in 1..=12 {
            assert!(generator_residual(n) < 1e-13);
        }
    }
}
