//! Communication receiver for the embedded slow-time PSK symbols and the
//! capacity of the dedicated segment.

use std::f64::consts::PI;

use libm::erfc;
use num_complex::Complex64;
use rand::Rng;

use crate::channel::{comm_gain, LinkBudget};
use crate::error::{Error, Result};
use crate::harness::mc::{run_trials, Proportion};
use crate::rng::{complex_normal, rng_from_seed};
use crate::waveform::{psk_point, FastTimeCode};

/// Downlink from the FD-ISAC node to a communication user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommLink {
    /// Channel coefficient `h`.
    pub h: Complex64,
    /// `N0` in W/Hz.
    pub noise_psd: f64,
    pub psk_order: usize,
}

impl CommLink {
    /// Real-valued `h = √|h|²` from the path-loss model.
    pub fn from_budget(lb: &LinkBudget, noise_psd: f64, psk_order: usize) -> Self {
        CommLink { h: Complex64::new(comm_gain(lb).sqrt(), 0.0), noise_psd, psk_order }
    }

    /// Post-matched-filter SNR of the embedded symbols, `|h|²PrN/(N0B)`.
    pub fn embedded_snr(&self, pr: f64, n: usize, bandwidth_hz: f64) -> f64 {
        self.h.norm_sqr() * pr * n as f64 / (self.noise_psd * bandwidth_hz)
    }
}

/// Gaussian tail `Q(x)`.
pub fn gaussian_q(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Nearest-point M-PSK decision on a phase-compensated statistic.
pub fn psk_decide(v: Complex64, order: usize) -> usize {
    let step = 2.0 * PI / order as f64;
    (v.arg() / step).round().rem_euclid(order as f64) as usize % order
}

/// Matched filter over the pulse chips `y_c[0..N]` with the unit-norm code,
/// giving `h√(PrTcN)·ω_k + n`, `n ~ CN(0, N0)`; returns the decided symbol
/// index and the statistic.
pub fn demod_embedded(
    y_c: &[Complex64],
    code: &FastTimeCode,
    h: Complex64,
    order: usize,
) -> Result<(usize, Complex64)> {
    if y_c.len() != code.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} pulse samples for a code of length {}",
            y_c.len(),
            code.len()
        )));
    }
    let norm = code.norm_sqr().sqrt();
    let stat: Complex64 = code.chips().iter().zip(y_c).map(|(c, y)| c.conj() * y).sum::<Complex64>() / norm;
    let phase = if h.norm() > 0.0 { h.conj() / h.norm() } else { Complex64::new(1.0, 0.0) };
    Ok((psk_decide(stat * phase, order), stat))
}

/// `P_e ≈ 2Q(√(2|h|²PrN/(N0B))·sin(π/M))`, clamped to `[0, 1]`.
pub fn ser_embedded_analytic(link: &CommLink, pr: f64, n: usize, bandwidth_hz: f64) -> f64 {
    let snr = link.embedded_snr(pr, n, bandwidth_hz);
    (2.0 * gaussian_q((2.0 * snr).sqrt() * (PI / link.psk_order as f64).sin())).clamp(0.0, 1.0)
}

/// `(1-ρ)·log₂(1 + |h|²Pc/(N0B))`.
pub fn spectrum_efficiency_dedicated(link: &CommLink, pc: f64, bandwidth_hz: f64, duty: f64) -> f64 {
    (1.0 - duty) * (1.0 + link.h.norm_sqr() * pc / (link.noise_psd * bandwidth_hz)).log2()
}

/// Received pulse chips `h·√(PrTc)·ω·c + n` for one PRI.
fn received_pulse<R: Rng + ?Sized>(
    rng: &mut R,
    link: &CommLink,
    code: &FastTimeCode,
    pr: f64,
    tc: f64,
    omega: Complex64,
) -> Vec<Complex64> {
    let amp = link.h * omega * (pr * tc).sqrt();
    code.chips().iter().map(|c| amp * c + complex_normal(rng, link.noise_psd)).collect()
}

/// Monte-Carlo symbol error rate of the embedded PSK symbols.
pub fn ser_embedded_mc(
    link: &CommLink,
    code: &FastTimeCode,
    pr: f64,
    tc: f64,
    trials: u64,
    seed: u64,
) -> Result<Proportion> {
    let m = link.psk_order;
    let flags = run_trials(trials, seed, |s| {
        let mut rng = rng_from_seed(s);
        let sent = rng.random_range(0..m);
        let y = received_pulse(&mut rng, link, code, pr, tc, psk_point(sent, m));
        Ok(demod_embedded(&y, code, link.h, m)?.0 != sent)
    })?;
    Ok(Proportion::from_flags(&flags))
}

/// Empirical post-MF SNR divided by the empirical per-chip SNR.
pub fn processing_gain_mc(
    link: &CommLink,
    code: &FastTimeCode,
    pr: f64,
    tc: f64,
    trials: u64,
    seed: u64,
) -> Result<f64> {
    let m = link.psk_order;
    let rows = run_trials(trials, seed, |s| {
        let mut rng = rng_from_seed(s);
        let omega = psk_point(rng.random_range(0..m), m);
        let y = received_pulse(&mut rng, link, code, pr, tc, omega);
        let clean: Vec<Complex64> = code.chips().iter().map(|c| link.h * omega * (pr * tc).sqrt() * c).collect();
        let signal: f64 = clean.iter().map(|v| v.norm_sqr()).sum();
        let noise: f64 = y.iter().zip(&clean).map(|(a, b)| (a - b).norm_sqr()).sum();
        let (_, stat) = demod_embedded(&y, code, link.h, m)?;
        // remove the symbol so all trials share one mean
        Ok((signal, noise, stat * omega.conj()))
    })?;
    let chip_snr = rows.iter().map(|r| r.0).sum::<f64>() / rows.iter().map(|r| r.1).sum::<f64>();
    let stats: Vec<Complex64> = rows.iter().map(|r| r.2).collect();
    Ok(crate::harness::mc::empirical_snr(&stats) / chip_snr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveform::make_lfm_code;
    use approx::assert_relative_eq;

    fn link(order: usize) -> CommLink {
        CommLink { h: Complex64::new(0.6, -0.3), noise_psd: 1e-3, psk_order: order }
    }

    #[test]
    fn q_function_values() {
        assert_eq!(gaussian_q(0.0), 0.5);
        assert!((gaussian_q(1.0) - 0.158_655_253_931_457_05).abs() < 1e-16);
        assert!(gaussian_q(40.0) < 1e-300);
    }

    #[test]
    fn noiseless_demod_is_exact() {
        let code = make_lfm_code(16);
        let l = CommLink { noise_psd: 0.0, ..link(128) };
        let mut rng = rng_from_seed(3);
        for idx in 0..128 {
            let y = received_pulse(&mut rng, &l, &code, 1.0, 1e-2, psk_point(idx, 128));
            assert_eq!(demod_embedded(&y, &code, l.h, 128).unwrap().0, idx);
        }
        assert!(demod_embedded(&[Complex64::new(0.0, 0.0)], &code, l.h, 4).is_err());
    }

    #[test]
    fn decision_wraps_around() {
        assert_eq!(psk_decide(Complex64::from_polar(1.0, -0.01), 8), 0);
        assert_eq!(psk_decide(Complex64::from_polar(1.0, -PI / 4.0), 8), 7);
        assert_eq!(psk_decide(Complex64::from_polar(1.0, PI), 2), 1);
    }

    #[test]
    fn analytic_ser_limits() {
        let l = link(8);
        assert_eq!(ser_embedded_analytic(&l, 0.0, 100, 1e6), 1.0);
        assert!(ser_embedded_analytic(&l, 1e9, 100, 1e6) < 1e-300);
    }

    #[test]
    fn dedicated_rate() {
        let l = CommLink { h: Complex64::new(1.0, 0.0), noise_psd: 1.0, psk_order: 4 };
        assert_eq!(spectrum_efficiency_dedicated(&l, 0.0, 1.0, 0.1), 0.0);
        assert_relative_eq!(
            spectrum_efficiency_dedicated(&l, 1e3, 1.0, 0.1),
            0.9 * 1001f64.log2(),
            max_relative = 1e-15
        );
        let a = spectrum_efficiency_dedicated(&l, 2.0, 1.0, 0.1);
        assert!(spectrum_efficiency_dedicated(&l, 3.0, 1.0, 0.1) > a);
        assert!(spectrum_efficiency_dedicated(&l, 2.0, 1.0, 0.3) < a);
    }

    #[test]
    fn bpsk_mc_matches_exact_tail() {
        // 10 dB post-MF SNR; the union bound doubles the BPSK error rate
        let code = make_lfm_code(8);
        let tc = 1.0;
        let l = CommLink { h: Complex64::new(1.0, 0.0), noise_psd: 1.0, psk_order: 2 };
        let pr = 10.0 / 8.0;
        let exact = gaussian_q((2.0 * 10.0f64).sqrt());
        let mc = ser_embedded_mc(&l, &code, pr, tc, 200_000, 5).unwrap();
        assert!(mc.consistent_with(exact, 3.0), "{} vs {exact}", mc.estimate());
        assert_relative_eq!(ser_embedded_analytic(&l, pr, 8, 1.0 / tc), 2.0 * exact, max_relative = 1e-12);
    }
}
