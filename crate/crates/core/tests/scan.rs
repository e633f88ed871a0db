use std::f64::consts::PI;

use hubbard_swap::scan::{
    find_peaks, fit_optimal_u, reproduce_four_site_peaks, reproduce_leading_peaks, revival_law_check, scan_u, sweep_point,
    FOUR_SITE_PEAKS, LEADING_PEAKS, Sequential,
};

#[test]
fn four_site_sweep_has_five_regular_peaks() {
    let (peaks, rows) = reproduce_four_site_peaks(&Sequential).unwrap();
    assert_eq!(peaks.len(), 5);
    for row in &rows {
        let (du, df, dt) = row.optimized_deviation().unwrap();
        assert!(du <= 0.1 && df <= 2e-3 && dt <= 0.05, "{row:?}");
    }
    assert!(peaks.windows(2).all(|w| w[0].u_star < w[1].u_star && w[0].f_max > w[1].f_max));
    for (k, p) in peaks.iter().enumerate() {
        assert_eq!(p.n, k + 1);
    }
}

#[test]
fn reference_u_reproduces_reference_fidelity() {
    for r in FOUR_SITE_PEAKS.iter().chain(&LEADING_PEAKS) {
        let p = sweep_point(r.n_sites, r.u, 10.0).unwrap();
        assert!((p.f_max - r.f_max).abs() < 2e-3, "{r:?} -> {p:?}");
        assert!((p.t_r - r.t_r).abs() < 0.05, "{r:?} -> {p:?}");
    }
}

#[test]
fn first_two_peaks_for_each_size() {
    let rows = reproduce_leading_peaks(&Sequential).unwrap();
    assert_eq!(rows.len(), 18);
    for row in &rows {
        let (du, df, dt) = row.optimized_deviation().unwrap();
        assert!(du <= 0.15 && df <= 2e-3 && dt <= 0.05, "{row:?}");
    }
    for order in [1, 2] {
        let f: Vec<f64> = rows
            .iter()
            .filter(|r| r.reference.order == order && r.reference.n_sites >= 4)
            .map(|r| r.optimized.unwrap().f_max)
            .collect();
        assert!(f.windows(2).all(|w| w[0] < w[1]), "order {order}: {f:?}");
    }
}

#[test]
fn optimal_u_grows_linearly_with_size() {
    let sizes: Vec<usize> = (4..=10).collect();
    let first = fit_optimal_u(1, &sizes, 10.0).unwrap();
    let second = fit_optimal_u(2, &sizes, 10.0).unwrap();
    assert!((1.8..=2.2).contains(&first.slope), "{}", first.slope);
    assert!((3.1..=3.7).contains(&second.slope), "{}", second.slope);
    assert!(first.residuals.iter().all(|r| r.abs() < 0.3));
    assert!(second.residuals.iter().all(|r| r.abs() < 0.3));
}

#[test]
fn revival_times_follow_half_pi_steps() {
    let curve = scan_u(4, 0.0, 30.0, 0.05, 10.0).unwrap();
    let peaks = find_peaks(&curve, true).unwrap();
    let checks = revival_law_check(&peaks).unwrap();
    assert_eq!(checks.len(), 5);
    for c in &checks {
        assert!((c.predicted - 0.5 * PI * (c.n as f64 + 1.0)).abs() < 1e-15);
        assert!(c.deviation < 0.1, "{c:?}");
    }
}

#[test]
fn sweeps_are_deterministic() {
    let a = scan_u(5, 0.0, 20.0, 0.1, 10.0).unwrap();
    let b = scan_u(5, 0.0, 20.0, 0.1, 10.0).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.points.len(), 201);
    assert!(a.points.iter().all(|p| p.f_max > 0.0 && p.f_max <= 1.0 + 1e-12));
}

#[test]
fn unrefined_peaks_sit_on_the_grid() {
    let curve = scan_u(4, 0.0, 30.0, 0.05, 10.0).unwrap();
    let peaks = find_peaks(&curve, false).unwrap();
    for p in &peaks {
        assert!(curve.points.iter().any(|q| q.u == p.u_star && q.f_max == p.f_max));
    }
    let refined = find_peaks(&curve, true).unwrap();
    for (a, b) in peaks.iter().zip(&refined) {
        assert!(b.f_max >= a.f_max);
        assert!((a.u_star - b.u_star).abs() <= 0.05 + 1e-12);
    }
}
