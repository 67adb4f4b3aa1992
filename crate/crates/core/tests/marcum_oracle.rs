mod common;

use common::marcum_oracle;
use fdisac::analysis::{marcum_q1, prob_detection};

#[test]
fn marcum_at_one_two() {
    let q = marcum_q1(1.0, 2.0);
    let o = marcum_oracle(1.0, 2.0);
    assert!((q - o).abs() < 1e-10, "{q} vs {o}");
}

#[test]
fn marcum_grid_against_quadrature() {
    let mut worst: f64 = 0.0;
    for i in 0..=24 {
        for j in 0..=24 {
            let (a, b) = (i as f64 * 0.5, j as f64 * 0.5);
            let err = (marcum_q1(a, b) - marcum_oracle(a, b)).abs();
            worst = worst.max(err);
            assert!(err <= 1e-9, "Q1({a}, {b}) off by {err}");
        }
    }
    eprintln!("worst abs error {worst:e}");
}

#[test]
fn detection_probability_matches_quadrature() {
    let pfa: f64 = 1e-8;
    for sinr_db in [5.0, 12.0, 15.0, 18.0] {
        let s: f64 = 10f64.powf(sinr_db / 10.0);
        let pd = prob_detection(s, pfa).unwrap();
        let o = marcum_oracle((2.0 * s).sqrt(), (-2.0 * pfa.ln()).sqrt());
        assert!((pd - o).abs() < 1e-9);
    }
}
