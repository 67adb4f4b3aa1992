use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;

use super::Constellation;
use crate::rng::{complex_normal, rng_from_seed};

/// Constellation point `exp(j2πm/M)` for `m = 0..M-1`.
pub fn psk_point(index: usize, order: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * index as f64 / order as f64)
}

pub fn draw_embedded_symbols_with<R: Rng + ?Sized>(rng: &mut R, order: usize, k: usize) -> Vec<Complex64> {
    (0..k).map(|_| psk_point(rng.random_range(0..order), order)).collect()
}

/// `K` slow-time PSK symbols `ω_k` drawn uniformly from the M-ary alphabet.
pub fn draw_embedded_symbols(order: usize, k: usize, seed: u64) -> Vec<Complex64> {
    draw_embedded_symbols_with(&mut rng_from_seed(seed), order, k)
}

pub fn draw_comm_symbols_with<R: Rng + ?Sized>(
    rng: &mut R,
    kind: Constellation,
    order: usize,
    rows: usize,
    cols: usize,
) -> Array2<Complex64> {
    match kind {
        Constellation::Psk => {
            Array2::from_shape_simple_fn((rows, cols), || psk_point(rng.random_range(0..order), order))
        }
        Constellation::Gaussian => Array2::from_shape_simple_fn((rows, cols), || complex_normal(rng, 1.0)),
    }
}

/// i.i.d. unit-power dedicated symbols, `rows × J`.
pub fn draw_comm_symbols(kind: Constellation, order: usize, rows: usize, cols: usize, seed: u64) -> Array2<Complex64> {
    draw_comm_symbols_with(&mut rng_from_seed(seed), kind, order, rows, cols)
}
