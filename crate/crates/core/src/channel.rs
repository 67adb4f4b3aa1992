//! Monostatic echo channel and link budgets.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{complex_normal, rng_from_seed, SimRng};
use crate::waveform::{BasebandFrame, WaveformConfig};
use crate::SPEED_OF_LIGHT;

/// Largest `|f_d·T|` for which the intra-PRI Doppler phase is neglected
/// without a warning.
pub const MAX_INTRA_PRI_DOPPLER: f64 = 0.05;

/// Target, self-interference and noise parameters of one CPI.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelState {
    /// Two-way target gain, including the `e^{-j2πf_dτ}` phase.
    pub alpha: Complex64,
    /// `n_τ`, echo delay in chips, `1..=J`.
    pub delay_bin: usize,
    /// `f_d` in Hz. Need not be bin-aligned.
    pub doppler_hz: f64,
    /// Self-interference coefficient `β`.
    pub si_gain: Complex64,
    /// Residual SI power ratio `ε` after cancellation.
    pub sic_factor: f64,
    /// Noise PSD `N0` in W/Hz; also the per-sample noise variance.
    pub noise_psd: f64,
    pub target_present: bool,
}

impl ChannelState {
    /// Noise-free, SI-free, static target with unit gain.
    pub fn ideal(delay_bin: usize) -> Self {
        ChannelState {
            alpha: Complex64::new(1.0, 0.0),
            delay_bin,
            doppler_hz: 0.0,
            si_gain: Complex64::new(0.0, 0.0),
            sic_factor: 0.0,
            noise_psd: 0.0,
            target_present: true,
        }
    }

    /// Sets a bin-aligned Doppler shift `f_d = q/(KT)`.
    pub fn with_doppler_bin(mut self, q: i64, cfg: &WaveformConfig) -> Self {
        self.doppler_hz = q as f64 / (cfg.k() as f64 * cfg.pri());
        self
    }

    /// Doppler bin nearest to `f_d`, in `-K/2..=K/2`.
    pub fn doppler_bin(&self, cfg: &WaveformConfig) -> i64 {
        (self.doppler_hz * cfg.k() as f64 * cfg.pri()).round() as i64
    }

    /// Checks the state against `cfg`, returning soft warnings.
    pub fn validate(&self, cfg: &WaveformConfig) -> Result<Vec<String>> {
        let j = cfg.j();
        if self.delay_bin == 0 || self.delay_bin > j {
            return Err(Error::DelayOutOfRange { n_tau: self.delay_bin, max: j });
        }
        let mut errs = Vec::new();
        if !(0.0..=1.0).contains(&self.sic_factor) {
            errs.push(format!("sic_factor must lie in [0, 1], got {}", self.sic_factor));
        }
        if !(self.noise_psd >= 0.0 && self.noise_psd.is_finite()) {
            errs.push(format!("noise_psd must be >= 0, got {}", self.noise_psd));
        }
        if self.doppler_hz.abs() * cfg.pri() > 0.5 {
            errs.push(format!("|f_d| = {} Hz exceeds 1/(2T)", self.doppler_hz.abs()));
        }
        if !errs.is_empty() {
            return Err(Error::ConfigInvalid(errs));
        }
        let mut warnings = Vec::new();
        let fdt = self.doppler_hz.abs() * cfg.pri();
        if fdt >= MAX_INTRA_PRI_DOPPLER {
            warnings.push(format!(
                "f_d*T = {fdt:.3} >= {MAX_INTRA_PRI_DOPPLER}; intra-PRI Doppler phase is not negligible"
            ));
        }
        Ok(warnings)
    }
}

/// Geometry and antenna parameters for the radar and communication links.
/// Gains are linear.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget {
    pub carrier_freq_hz: f64,
    pub tx_gain: f64,
    pub rx_gain: f64,
    pub comm_rx_gain: f64,
    pub rcs_m2: f64,
    pub target_range_m: f64,
    pub comm_range_m: f64,
    pub pathloss_exponent: f64,
}

impl LinkBudget {
    /// fc = 3.5 GHz, Gt = Gr = 17 dBi, Gc = 0 dBi, σ = 1 m², R = 1350 m,
    /// R_com = 400 m, γ = 2.7.
    pub fn table_one() -> Self {
        LinkBudget {
            carrier_freq_hz: 3.5e9,
            tx_gain: crate::db_to_linear(17.0),
            rx_gain: crate::db_to_linear(17.0),
            comm_rx_gain: 1.0,
            rcs_m2: 1.0,
            target_range_m: 1350.0,
            comm_range_m: 400.0,
            pathloss_exponent: 2.7,
        }
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_freq_hz
    }

    pub fn with_range(&self, range_m: f64) -> Self {
        LinkBudget { target_range_m: range_m, ..self.clone() }
    }

    pub fn validate(&self) -> Vec<String> {
        let mut errs = Vec::new();
        let fields = [
            ("carrier_freq_hz", self.carrier_freq_hz),
            ("tx_gain", self.tx_gain),
            ("rx_gain", self.rx_gain),
            ("comm_rx_gain", self.comm_rx_gain),
            ("target_range_m", self.target_range_m),
            ("comm_range_m", self.comm_range_m),
            ("pathloss_exponent", self.pathloss_exponent),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                errs.push(format!("{name} must be positive, got {v}"));
            }
        }
        if !(self.rcs_m2.is_finite() && self.rcs_m2 >= 0.0) {
            errs.push(format!("rcs_m2 must be >= 0, got {}", self.rcs_m2));
        }
        errs
    }
}

/// `|α|² = GtGrλ²σ / ((4π)³R⁴)`.
pub fn radar_two_way_gain(lb: &LinkBudget) -> f64 {
    let lambda = lb.wavelength();
    lb.tx_gain * lb.rx_gain * lambda * lambda * lb.rcs_m2 / ((4.0 * PI).powi(3) * lb.target_range_m.powi(4))
}

/// `|h|² = GtGcλ² / ((4π)²R_com^γ)`.
pub fn comm_gain(lb: &LinkBudget) -> f64 {
    let lambda = lb.wavelength();
    lb.tx_gain * lb.comm_rx_gain * lambda * lambda / ((4.0 * PI).powi(2) * lb.comm_range_m.powf(lb.pathloss_exponent))
}

/// `f_d = 2v/λ`; positive for an approaching target.
pub fn doppler_from_velocity(velocity_mps: f64, wavelength_m: f64) -> f64 {
    2.0 * velocity_mps / wavelength_m
}

/// Range bin `n_τ = round(2RB/c)`.
///
/// Ranges up to half a range cell beyond the last bin fold onto bin `J`
/// (the unambiguous range is often quoted with `c ≈ 3e8`).
pub fn delay_bin_for_range(range_m: f64, cfg: &WaveformConfig) -> Result<usize> {
    let exact = 2.0 * range_m * cfg.bandwidth() / SPEED_OF_LIGHT;
    let j = cfg.j();
    if range_m.is_nan() || range_m <= 0.0 || exact > j as f64 + 1.5 {
        return Err(Error::DelayOutOfRange { n_tau: exact.round().max(0.0) as usize, max: j });
    }
    Ok((exact.round() as usize).clamp(1, j))
}

/// Maximum unambiguous range `c(T - Tp)/2`.
pub fn unambiguous_range(pri_s: f64, pulse_s: f64) -> f64 {
    SPEED_OF_LIGHT * (pri_s - pulse_s) / 2.0
}

/// `y_k = α·e^{j2πf_d kT}·x^r_{k,n_τ} + β·x_k^d + n_k` for every PRI.
pub fn apply_channel(frame: &BasebandFrame, ch: &ChannelState, seed: u64) -> Result<Array2<Complex64>> {
    apply_channel_with(frame, ch, &mut rng_from_seed(seed))
}

pub fn apply_channel_with(frame: &BasebandFrame, ch: &ChannelState, rng: &mut SimRng) -> Result<Array2<Complex64>> {
    let cfg = frame.config();
    for w in ch.validate(cfg)? {
        log::warn!("{w}");
    }
    let (k_total, len) = (cfg.k(), cfg.chips_per_pri());
    let mut y = Array2::zeros((k_total, len));
    for k in 0..k_total {
        let mut row = y.row_mut(k);
        if ch.target_present {
            let phase = Complex64::from_polar(1.0, 2.0 * PI * ch.doppler_hz * k as f64 * cfg.pri());
            let gain = ch.alpha * phase;
            for (out, e) in row.iter_mut().zip(frame.echo(k, ch.delay_bin)?) {
                *out += gain * e;
            }
        }
        for (out, d) in row.iter_mut().zip(frame.direct(k).iter()) {
            *out += ch.si_gain * d;
        }
        if ch.noise_psd > 0.0 {
            for out in row.iter_mut() {
                *out += complex_normal(rng, ch.noise_psd);
            }
        }
    }
    Ok(y)
}
