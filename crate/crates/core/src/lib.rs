//! Two electrons of opposite spin on an engineered Hubbard chain.
//!
//! The chain has hoppings `t_j = sqrt(j (N - j))` and an on-site repulsion
//! `U`. In the one-up/one-down sector the `N^2`-dimensional Hamiltonian
//! splits exactly into `N` single-particle chains of `2L + 1` sites
//! (`L = 0..N-1`) with a potential barrier `U` on the central site. The
//! crate builds both pictures, checks the reduction numerically, and
//! computes the swap fidelity of the end-to-end configuration
//! `(1 up, N down) -> (N up, 1 down)` as a function of `U` and time.
//!
//! Layout:
//!
//! - [`numerics`]: dense Hermitian eigensolver, time evolution, parity labels.
//! - [`angular`]: exact Clebsch-Gordan coefficients, Wigner small-d at
//!   `beta = pi/2`, and the product-to-coupled basis map.
//! - [`model`]: Hamiltonians, the on-site projector, the mirror operator and
//!   the block decomposition.
//! - [`dynamics`]: fidelity, level shifts, protected levels, and the residual
//!   of the spectrum/parity matching condition.
//! - [`scan`]: `U` sweeps, peak detection, linear fits, revival law.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod angular;
pub mod dynamics;
mod error;
pub(crate) mod math;
pub mod model;
pub mod numerics;
pub mod scan;

pub use error::{Error, Result};
pub use num_complex::Complex64;
