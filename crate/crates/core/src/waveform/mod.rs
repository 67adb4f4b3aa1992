//! Fast-time codes, symbol draws and chip-rate frame assembly.
//!
//! Each PRI of length `N + J` chips carries the radar pulse (`N` chips, power
//! `Pr`, slow-time PSK symbol `ω_k`) followed by `J` dedicated communication
//! chips at power `Pc`. Setting `Pc = 0` recovers the conventional pulsed
//! waveform and `Pr = Pc` a constant-envelope continuous waveform.

mod codes;
mod frame;
mod projection;
mod symbols;

pub(crate) use codes::code_for;
pub use codes::{make_barker_code, make_custom_code, make_lfm_code, FastTimeCode, BARKER_LENGTHS};
pub use frame::{assemble_frame, generate_frame, BasebandFrame, Segment};
pub use projection::{continuous_projection_oracle, project_direct, NyquistPulse, PulseShape};
pub use symbols::{
    draw_comm_symbols, draw_comm_symbols_with, draw_embedded_symbols, draw_embedded_symbols_with, psk_point,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeKind {
    /// `c[n] = exp(jπn²/N)`, the chip samples of an LFM chirp.
    Lfm,
    Barker,
    Custom,
}

/// Alphabet of the dedicated communication symbols `s_k[j]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constellation {
    /// Unit-modulus M-PSK with the same order as the embedded symbols.
    Psk,
    /// Circularly symmetric complex normal, unit variance.
    Gaussian,
}

/// Raw timing, power and modulation parameters of one CPI, in SI units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveformParams {
    pub bandwidth_hz: f64,
    pub pri_s: f64,
    pub pulse_duration_s: f64,
    pub pris_per_cpi: usize,
    pub radar_power_w: f64,
    pub comm_power_w: f64,
    pub psk_order: usize,
    pub code: CodeKind,
    pub comm_constellation: Constellation,
}

impl WaveformParams {
    /// Parameter table used throughout the evaluation: B = 100 MHz,
    /// T = 10 µs, Tp = 1 µs, K = 100, M = 128, Pr = Pc = 1 W.
    pub fn table_one() -> Self {
        WaveformParams {
            bandwidth_hz: 100e6,
            pri_s: 10e-6,
            pulse_duration_s: 1e-6,
            pris_per_cpi: 100,
            radar_power_w: 1.0,
            comm_power_w: 1.0,
            psk_order: 128,
            code: CodeKind::Lfm,
            comm_constellation: Constellation::Gaussian,
        }
    }
}

/// Validated waveform configuration with the derived chip counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WaveformConfig {
    params: WaveformParams,
    chips_per_pulse: usize,
    comm_chips: usize,
}

impl WaveformConfig {
    pub fn new(params: WaveformParams) -> Result<Self> {
        let p = &params;
        let mut errs = Vec::new();
        let finite_pos = |v: f64| v.is_finite() && v > 0.0;
        if !finite_pos(p.bandwidth_hz) {
            errs.push(format!("bandwidth_hz must be positive, got {}", p.bandwidth_hz));
        }
        if !finite_pos(p.pri_s) {
            errs.push(format!("pri_s must be positive, got {}", p.pri_s));
        }
        if !finite_pos(p.pulse_duration_s) {
            errs.push(format!("pulse_duration_s must be positive, got {}", p.pulse_duration_s));
        }
        if p.pulse_duration_s >= p.pri_s {
            errs.push(format!("pulse_duration_s ({}) must be shorter than pri_s ({})", p.pulse_duration_s, p.pri_s));
        }
        if p.pris_per_cpi < 2 {
            errs.push(format!("pris_per_cpi must be at least 2, got {}", p.pris_per_cpi));
        }
        if !(p.radar_power_w.is_finite() && p.radar_power_w >= 0.0) {
            errs.push(format!("radar_power_w must be >= 0, got {}", p.radar_power_w));
        }
        if !(p.comm_power_w.is_finite() && p.comm_power_w >= 0.0) {
            errs.push(format!("comm_power_w must be >= 0, got {}", p.comm_power_w));
        }
        if p.radar_power_w == 0.0 && p.comm_power_w == 0.0 {
            errs.push("radar_power_w and comm_power_w cannot both be zero".into());
        }
        if p.psk_order < 2 {
            errs.push(format!("psk_order must be at least 2, got {}", p.psk_order));
        }

        let (mut n, mut j) = (0, 0);
        if errs.is_empty() {
            let b = p.bandwidth_hz;
            let n_f = (b * p.pulse_duration_s).round();
            let j_f = (b * (p.pri_s - p.pulse_duration_s)).round();
            let total = (b * p.pri_s).round();
            if n_f < 1.0 {
                errs.push(format!("time-bandwidth product B*Tp rounds to {n_f}; need >= 1"));
            }
            if j_f < 1.0 {
                errs.push(format!("B*(T-Tp) rounds to {j_f}; need >= 1 communication chip"));
            }
            if n_f + j_f != total {
                errs.push(format!(
                    "chip counts inconsistent: round(B*Tp) + round(B*(T-Tp)) = {} but round(B*T) = {total}",
                    n_f + j_f
                ));
            }
            n = n_f as usize;
            j = j_f as usize;
        }
        if !errs.is_empty() {
            return Err(Error::ConfigInvalid(errs));
        }
        Ok(WaveformConfig { params, chips_per_pulse: n, comm_chips: j })
    }

    pub fn table_one() -> Self {
        Self::new(WaveformParams::table_one()).expect("table-one parameters are valid")
    }

    /// Same timing with different radar / communication powers.
    pub fn with_powers(&self, radar_power_w: f64, comm_power_w: f64) -> Result<Self> {
        let mut p = self.params.clone();
        p.radar_power_w = radar_power_w;
        p.comm_power_w = comm_power_w;
        Self::new(p)
    }

    pub fn with_constellation(&self, c: Constellation) -> Self {
        let mut out = self.clone();
        out.params.comm_constellation = c;
        out
    }

    pub fn params(&self) -> &WaveformParams {
        &self.params
    }
    /// `N`, chips per radar pulse.
    pub fn n(&self) -> usize {
        self.chips_per_pulse
    }
    /// `J`, dedicated communication chips per PRI.
    pub fn j(&self) -> usize {
        self.comm_chips
    }
    /// `N + J`.
    pub fn chips_per_pri(&self) -> usize {
        self.chips_per_pulse + self.comm_chips
    }
    /// `K`, PRIs per CPI.
    pub fn k(&self) -> usize {
        self.params.pris_per_cpi
    }
    pub fn bandwidth(&self) -> f64 {
        self.params.bandwidth_hz
    }
    /// Chip duration `Tc = 1/B`.
    pub fn tc(&self) -> f64 {
        1.0 / self.params.bandwidth_hz
    }
    pub fn pri(&self) -> f64 {
        self.params.pri_s
    }
    pub fn pulse_duration(&self) -> f64 {
        self.params.pulse_duration_s
    }
    /// Duty cycle `ρ = Tp/T`.
    pub fn duty_cycle(&self) -> f64 {
        self.params.pulse_duration_s / self.params.pri_s
    }
    pub fn pr(&self) -> f64 {
        self.params.radar_power_w
    }
    pub fn pc(&self) -> f64 {
        self.params.comm_power_w
    }
    pub fn psk_order(&self) -> usize {
        self.params.psk_order
    }
    pub fn code_kind(&self) -> CodeKind {
        self.params.code
    }
    pub fn constellation(&self) -> Constellation {
        self.params.comm_constellation
    }
    /// `PcJ + PrN`, the matched-filter energy per PRI divided by `Tc`.
    pub fn mf_energy_factor(&self) -> f64 {
        self.pc() * self.j() as f64 + self.pr() * self.n() as f64
    }
    /// Average transmit power `ρPr + (1-ρ)Pc`.
    pub fn average_power(&self) -> f64 {
        let rho = self.duty_cycle();
        rho * self.pr() + (1.0 - rho) * self.pc()
    }
}
