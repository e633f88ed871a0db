use alloc::vec::Vec;

use super::cg;
use super::halfint::HalfInt;

/// Orthogonal change of basis from product states `|J M1> (x) |J M2>` to
/// coupled states `|(J J) L, M>`.
///
/// Rows are coupled states grouped by `L` from `2J` down to `0`, and within
/// each group `M` runs from `L` down to `-L`. Columns are product states with
/// `M1` descending as the major index and `M2` descending as the minor one.
#[derive(Clone, Debug, PartialEq)]
pub struct CoupledBasisMap {
    j: HalfInt,
    dim: usize,
    rows: Vec<(u32, i32)>,
    cols: Vec<(HalfInt, HalfInt)>,
    entries: Vec<f64>,
}

/// Location of one `L` sector inside the coupled ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockRange {
    pub l: u32,
    pub offset: usize,
    pub len: usize,
}

impl CoupledBasisMap {
    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(L, M)` labels of the rows.
    pub fn rows(&self) -> &[(u32, i32)] {
        &self.rows
    }

    /// `(M1, M2)` labels of the columns.
    pub fn cols(&self) -> &[(HalfInt, HalfInt)] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Mutable access for building perturbed fixtures. Nothing is rechecked.
    pub fn entries_mut(&mut self) -> &mut [f64] {
        &mut self.entries
    }

    pub fn row_index(&self, l: u32, m: i32) -> Option<usize> {
        self.rows.iter().position(|&r| r == (l, m))
    }

    pub fn col_index(&self, m1: HalfInt, m2: HalfInt) -> Option<usize> {
        let tj = self.j.twice();
        let (a, b) = (m1.twice(), m2.twice());
        if a.abs() > tj || b.abs() > tj || (tj - a) % 2 != 0 || (tj - b) % 2 != 0 {
            return None;
        }
        let n = (tj + 1) as usize;
        Some(((tj - a) / 2) as usize * n + ((tj - b) / 2) as usize)
    }

    pub fn blocks(&self) -> Vec<BlockRange> {
        let two_j = self.j.twice() as u32;
        let mut offset = 0;
        (0..=two_j)
            .rev()
            .map(|l| {
                let len = 2 * l as usize + 1;
                let r = BlockRange { l, offset, len };
                offset += len;
                r
            })
            .collect()
    }

    /// `max |C C^T - I|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for a in 0..n {
            let ra = &self.entries[a * n..(a + 1) * n];
            for b in a..n {
                let rb = &self.entries[b * n..(b + 1) * n];
                let dot: f64 = ra.iter().zip(rb).map(|(x, y)| x * y).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Builds the product-to-coupled map for two copies of spin `j`.
pub fn coupled_basis_map(j: HalfInt) -> CoupledBasisMap {
    assert!(j.twice() >= 0, "negative angular momentum");
    let two_j = j.twice();
    let n = (two_j + 1) as usize;
    let dim = n * n;
    let cols: Vec<(HalfInt, HalfInt)> =
        j.projections().flat_map(|m1| j.projections().map(move |m2| (m1, m2))).collect();
    let mut rows = Vec::with_capacity(dim);
    for l in (0..=two_j).rev() {
        for m in (-l..=l).rev() {
            rows.push((l as u32, m));
        }
    }
    let mut entries = alloc::vec![0.0; dim * dim];
    for (r, &(l, m)) in rows.iter().enumerate() {
        let big_l = HalfInt::int(l as i32);
        let big_m = HalfInt::int(m);
        for (c, &(m1, m2)) in cols.iter().enumerate() {
            if m1 + m2 != big_m {
                continue;
            }
            entries[r * dim + c] = cg(j, m1, j, m2, big_l, big_m).expect("projections are in range");
        }
    }
    CoupledBasisMap { j, dim, rows, cols, entries }
}
