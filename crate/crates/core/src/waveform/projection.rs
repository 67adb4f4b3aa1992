//! Continuous-time reference for the chip-rate model.
//!
//! The transmitted PRI is rebuilt as a superposition of shifted Nyquist
//! pulses on a fine grid and projected numerically onto `ψ(t - lTc)`. The
//! result is compared against [`BasebandFrame::direct`] and
//! [`BasebandFrame::echo`]; nothing here is used by the simulation chain.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;

use super::BasebandFrame;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseShape {
    /// `1/√Tc` on `[0, Tc)`.
    Rectangular,
    /// `sin(πt/Tc)` on `[0, Tc)` then `sin(2π(t-Tc)/Tc)` on `[Tc, 2Tc)`,
    /// normalised. Continuous, overlaps its neighbour, and exactly orthogonal
    /// to every integer-chip shift.
    TwoChipSine,
    /// Root-raised-cosine truncated to `±support` chips.
    RootRaisedCosine { roll_off: f64, support: usize },
}

/// Unit-energy chip pulse sampled at `oversampling` points per chip.
///
/// Time is measured in chips; `samples[i]` is `φ(i/L - offset)` where
/// `ψ(t) = φ(t/Tc)/√Tc`.
#[derive(Debug, Clone, PartialEq)]
pub struct NyquistPulse {
    shape: PulseShape,
    oversampling: usize,
    offset_chips: usize,
    samples: Vec<f64>,
}

impl NyquistPulse {
    pub fn new(shape: PulseShape, oversampling: usize) -> Self {
        assert!(oversampling >= 1, "oversampling must be at least 1");
        let l = oversampling as f64;
        let (offset, raw): (usize, Vec<f64>) = match shape {
            PulseShape::Rectangular => (0, vec![1.0; oversampling]),
            PulseShape::TwoChipSine => {
                let v = (0..2 * oversampling)
                    .map(|i| {
                        let u = i as f64 / l;
                        if u < 1.0 {
                            (PI * u).sin()
                        } else {
                            (2.0 * PI * (u - 1.0)).sin()
                        }
                    })
                    .collect();
                (0, v)
            }
            PulseShape::RootRaisedCosine { roll_off, support } => {
                assert!((0.0..=1.0).contains(&roll_off), "roll-off must lie in [0, 1]");
                let v =
                    (0..=2 * support * oversampling).map(|i| rrc(i as f64 / l - support as f64, roll_off)).collect();
                (support, v)
            }
        };
        let energy: f64 = raw.iter().map(|v| v * v).sum::<f64>() / l;
        let scale = energy.sqrt().recip();
        NyquistPulse {
            shape,
            oversampling,
            offset_chips: offset,
            samples: raw.into_iter().map(|v| v * scale).collect(),
        }
    }

    pub fn shape(&self) -> PulseShape {
        self.shape
    }
    pub fn oversampling_factor(&self) -> usize {
        self.oversampling
    }
    /// Number of chips the pulse spans.
    pub fn support_chips(&self) -> usize {
        self.samples.len().div_ceil(self.oversampling)
    }
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Discrete autocorrelation `∫φ(u)φ(u-m)du` at integer chip lag `m`.
    pub fn autocorrelation(&self, lag_chips: usize) -> f64 {
        let shift = lag_chips * self.oversampling;
        if shift >= self.samples.len() {
            return 0.0;
        }
        let s = &self.samples;
        s[shift..].iter().zip(s).map(|(a, b)| a * b).sum::<f64>() / self.oversampling as f64
    }

    /// Largest `|R_ψ(mTc)|` over nonzero integer lags.
    pub fn max_integer_lag_leakage(&self) -> f64 {
        (1..=self.support_chips()).map(|m| self.autocorrelation(m).abs()).fold(0.0, f64::max)
    }
}

fn rrc(t: f64, beta: f64) -> f64 {
    if t.abs() < 1e-12 {
        return 1.0 - beta + 4.0 * beta / PI;
    }
    if beta > 0.0 && ((4.0 * beta * t).abs() - 1.0).abs() < 1e-10 {
        let a = PI / (4.0 * beta);
        return beta / 2f64.sqrt() * ((1.0 + 2.0 / PI) * a.sin() + (1.0 - 2.0 / PI) * a.cos());
    }
    let num = (PI * t * (1.0 - beta)).sin() + 4.0 * beta * t * (PI * t * (1.0 + beta)).cos();
    let den = PI * t * (1.0 - (4.0 * beta * t).powi(2));
    num / den
}

/// Chip amplitudes of the transmitted stream around PRI `k`, indexed from
/// chip `-(N+J)` (start of PRI k-1) to `2(N+J)` (end of PRI k+1). PRIs
/// outside the CPI carry nothing except the pre-CPI symbol row.
fn chip_stream(frame: &BasebandFrame, k: usize) -> Vec<Complex64> {
    let len = frame.config().chips_per_pri();
    let mut out = frame.stream_pair(k);
    if k + 1 < frame.config().k() {
        out.extend(frame.direct(k + 1).iter().copied());
    } else {
        out.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), len));
    }
    out
}

/// Numerically projects the stream delayed by `delay_chips` onto
/// `ψ(t - lTc)`, `l = 0..N+J`, for every PRI.
fn project(frame: &BasebandFrame, pulse: &NyquistPulse, delay_chips: usize) -> Array2<Complex64> {
    let cfg = frame.config();
    let len = cfg.chips_per_pri();
    let l_os = pulse.oversampling;
    let off = pulse.offset_chips;
    let span = pulse.samples.len();
    let reach = pulse.support_chips() + off + 1;
    // fine grid covers chips [-reach, len + reach) of the current PRI
    let grid_start = -(reach as i64);
    let grid_len = (len + 2 * reach) * l_os;
    let mut out = Array2::zeros((cfg.k(), len));
    let mut signal = vec![Complex64::new(0.0, 0.0); grid_len];

    for k in 0..cfg.k() {
        let stream = chip_stream(frame, k);
        signal.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        // chip m of the stream (relative to PRI k) sits at position m + delay
        for (idx, &amp) in stream.iter().enumerate() {
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let pos = idx as i64 - len as i64 + delay_chips as i64;
            let first = (pos - off as i64 - grid_start) * l_os as i64;
            for (i, &p) in pulse.samples.iter().enumerate() {
                let g = first + i as i64;
                if g >= 0 && (g as usize) < grid_len {
                    signal[g as usize] += amp * p;
                }
            }
        }
        for l in 0..len {
            let first = (l as i64 - off as i64 - grid_start) * l_os as i64;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..span {
                let g = first + i as i64;
                if g >= 0 && (g as usize) < grid_len {
                    acc += signal[g as usize] * pulse.samples[i];
                }
            }
            out[[k, l]] = acc / l_os as f64;
        }
    }
    out
}

/// Continuous projection `⟨x_k(t - n_τTc), ψ(t - lTc)⟩` for every PRI,
/// to be compared with [`BasebandFrame::echo`].
pub fn continuous_projection_oracle(
    frame: &BasebandFrame,
    pulse: &NyquistPulse,
    n_tau: usize,
) -> Result<Array2<Complex64>> {
    let j = frame.config().j();
    if n_tau == 0 || n_tau > j {
        return Err(Error::DelayOutOfRange { n_tau, max: j });
    }
    Ok(project(frame, pulse, n_tau))
}

/// Continuous projection of the undelayed transmit signal, `⟨x_k(t), ψ(t - lTc)⟩`.
pub fn project_direct(frame: &BasebandFrame, pulse: &NyquistPulse) -> Array2<Complex64> {
    project(frame, pulse, 0)
}
