use hubbard_swap::angular::{coupled_basis_map, HalfInt};
use hubbard_swap::dynamics::{fidelity, transfer_amplitude};
use hubbard_swap::model::{
    block_decompose, build_block_hamiltonian, build_full_hamiltonian, coupled_transform, gauge_operator,
    generator_residual, hopping_hamiltonian, onsite_projector, reduced_interaction_check, BlockSpec, ChainSpec,
    HoppingSign,
};
use hubbard_swap::numerics::hermitian_eig;
use proptest::prelude::*;

#[test]
fn full_spectrum_is_union_of_blocks() {
    for n in 2..=10 {
        for u in [0.0, 6.6, 40.5] {
            let spec = ChainSpec::new(n, u).unwrap();
            let full = hermitian_eig(&build_full_hamiltonian(&spec)).unwrap().eigenvalues;
            let mut union: Vec<f64> = (0..n)
                .flat_map(|l| hermitian_eig(&build_block_hamiltonian(&BlockSpec::new(l, u))).unwrap().eigenvalues)
                .collect();
            union.sort_by(f64::total_cmp);
            assert_eq!(full.len(), union.len());
            for (a, b) in full.iter().zip(&union) {
                assert!((a - b).abs() < 1e-9, "N={n} U={u}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn coupled_blocks_are_barrier_chains() {
    for n in 1..=8 {
        let map = coupled_basis_map(HalfInt::chain_spin(n));
        for u in [0.0, 2.3, 6.6, 40.5] {
            let spec = ChainSpec { n_sites: n, onsite_u: u, hopping_sign: HoppingSign::Positive };
            let dec = block_decompose(&build_full_hamiltonian(&spec), &map).unwrap();
            assert!(dec.off_block_residual < 1e-10, "N={n} U={u}: {}", dec.off_block_residual);
            assert_eq!(dec.blocks.len(), n);
            for block in &dec.blocks {
                let chain = build_block_hamiltonian(&BlockSpec::new(block.l as usize, u));
                assert!(block.matrix.max_abs_diff(&chain).unwrap() < 1e-10, "N={n} U={u} L={}", block.l);
            }
        }
    }
}

#[test]
fn block_dimensions_count_the_full_space() {
    for n in 1..=10 {
        let map = coupled_basis_map(HalfInt::chain_spin(n));
        let total: usize = map.blocks().iter().map(|b| b.len).sum();
        assert_eq!(total, n * n);
        assert!(map.blocks().iter().all(|b| b.len == 2 * b.l as usize + 1));
    }
}

#[test]
fn interaction_reduces_to_center_sites() {
    for n in 1..=10 {
        let map = coupled_basis_map(HalfInt::chain_spin(n));
        assert!(reduced_interaction_check(n, 7.3, &map).unwrap() < 1e-10);
        assert_eq!(reduced_interaction_check(n, 0.0, &map).unwrap(), 0.0);
    }
}

#[test]
fn hoppings_are_spin_lowering() {
    for n in 2..=20 {
        assert!(generator_residual(n) < 1e-12);
    }
}

#[test]
fn full_hamiltonian_splits_into_hops_and_barrier() {
    let spec = ChainSpec::new(5, 3.7).unwrap();
    let diff = build_full_hamiltonian(&spec).sub(&hopping_hamiltonian(5, HoppingSign::Positive)).unwrap();
    assert_eq!(diff.max_abs_diff(&onsite_projector(5, 3.7)).unwrap(), 0.0);
}

#[test]
fn stretched_states_are_product_states() {
    for n in 2..=10 {
        let spec = ChainSpec::new(n, 0.0).unwrap();
        let map = coupled_basis_map(spec.spin());
        let c = coupled_transform(&map);
        let l = (n - 1) as u32;
        let bottom = map.row_index(l, -(l as i32)).unwrap();
        let top = map.row_index(l, l as i32).unwrap();
        assert!((c[(bottom, spec.initial_index())].norm() - 1.0).abs() < 1e-12);
        assert!((c[(top, spec.target_index())].norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn gauge_conjugates_hopping_sign() {
    for n in 2..=6 {
        let spec = ChainSpec::new(n, 4.2).unwrap();
        let g = gauge_operator(n);
        let flipped = g.matmul(&build_full_hamiltonian(&spec)).unwrap().matmul(&g).unwrap();
        let negative = build_full_hamiltonian(&spec.with_sign(HoppingSign::Negative));
        assert!(flipped.max_abs_diff(&negative).unwrap() < 1e-14);
    }
}

#[test]
fn block_structure_ignores_cg_phase_convention() {
    // flipping the overall sign of any L multiplet is an equally valid convention
    let n = 5;
    let spec = ChainSpec::new(n, 6.6).unwrap();
    let h = build_full_hamiltonian(&spec);
    let reference = block_decompose(&h, &coupled_basis_map(spec.spin())).unwrap();
    for flipped_l in 0..n as u32 {
        let mut map = coupled_basis_map(spec.spin());
        let range = map.blocks().into_iter().find(|b| b.l == flipped_l).unwrap();
        let dim = map.dim();
        for row in range.offset..range.offset + range.len {
            for x in &mut map.entries_mut()[row * dim..(row + 1) * dim] {
                *x = -*x;
            }
        }
        let dec = block_decompose(&h, &map).unwrap();
        assert!(dec.off_block_residual < 1e-10);
        for (a, b) in dec.blocks.iter().zip(&reference.blocks) {
            assert!(a.matrix.max_abs_diff(&b.matrix).unwrap() < 1e-12);
        }
    }
}

#[test]
fn single_sign_error_breaks_block_structure() {
    let spec = ChainSpec::new(4, 6.6).unwrap();
    let mut map = coupled_basis_map(spec.spin());
    let row = map.row_index(2, 0).unwrap();
    let dim = map.dim();
    let col = (0..dim).find(|&c| map.entry(row, c) != 0.0).unwrap();
    map.entries_mut()[row * dim + col] *= -1.0;
    let dec = block_decompose(&build_full_hamiltonian(&spec), &map).unwrap();
    assert!(dec.off_block_residual > 1e-3);
}

proptest! {
    #[test]
    fn fidelity_is_gauge_invariant(n in 2usize..=7, u in 0.0f64..45.0, t in 0.0f64..10.0) {
        let spec = ChainSpec::new(n, u).unwrap();
        let a = fidelity(&spec, t).unwrap();
        let b = fidelity(&spec.with_sign(HoppingSign::Negative), t).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
        let za = transfer_amplitude(&spec, t).unwrap().norm();
        let zb = transfer_amplitude(&spec.with_sign(HoppingSign::Negative), t).unwrap().norm();
        prop_assert!((za - zb).abs() < 1e-10);
    }
}
