//! Autocorrelation and ambiguity function of one transmitted PRI.
//!
//! Both are discrete sums over the PRI sampled `L` times per chip. The LFM
//! pulse is evaluated as the continuous chirp, so `L > 1` approaches the
//! continuous-time integrals; `L = 1` is the plain chip-rate correlation.
//! Lags are quantised to the nearest `Tc/L`, and negative lags mirror the
//! positive ones (the aperiodic ACF magnitude is symmetric).

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng::trial_seed;
use crate::waveform::{generate_frame, BasebandFrame, WaveformConfig};

/// Split of one ACF sample, each normalised like the curve itself.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AcfComponents {
    /// Pulse-on-pulse term `Pr·χ_p(τ,0)`; zero once `τ > Tp`.
    pub pulse_acf: f64,
    /// Cross and communication terms for `τ ≤ Tp`.
    pub phi: f64,
    /// Cross and communication terms for `τ > Tp`.
    pub psi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcfCurve {
    /// Lags in seconds, as requested.
    pub lags: Vec<f64>,
    /// `|χ(τ,0)| / χ(0,0)`.
    pub values: Vec<f64>,
    /// Peak sidelobe level in dB (amplitude ratio), `-inf` when the grid
    /// never leaves the mainlobe.
    pub psl_db: f64,
    pub components: Vec<AcfComponents>,
}

/// Per-lag statistics of `|χ|` over independent symbol draws.
#[derive(Debug, Clone, PartialEq)]
pub struct AcfEnsemble {
    pub lags: Vec<f64>,
    pub median: Vec<f64>,
    pub p95: Vec<f64>,
    pub std_dev: Vec<f64>,
    /// PSL of each draw.
    pub psl_db: Vec<f64>,
}

struct Pri {
    samples: Vec<Complex64>,
    pulse_len: usize,
    dt: f64,
    max_lag: f64,
}

impl Pri {
    fn new(frame: &BasebandFrame, k: usize, oversampling: usize) -> Result<Self> {
        let cfg = frame.config();
        if k >= cfg.k() {
            return Err(Error::DimensionMismatch(format!("PRI {k} outside a CPI of {}", cfg.k())));
        }
        if oversampling == 0 {
            return Err(Error::config("oversampling must be at least 1"));
        }
        let mut pair = frame.oversampled_pair(k, oversampling);
        let per_pri = cfg.chips_per_pri() * oversampling;
        let samples = pair.split_off(per_pri);
        Ok(Pri {
            samples,
            pulse_len: cfg.n() * oversampling,
            dt: cfg.tc() / oversampling as f64,
            max_lag: cfg.pri() - cfg.pulse_duration(),
        })
    }

    fn lag_index(&self, lag: f64) -> Result<usize> {
        if !lag.is_finite() || lag.abs() > self.max_lag * (1.0 + 1e-12) {
            return Err(Error::LagOutOfRange { lag, max: self.max_lag });
        }
        Ok((lag.abs() / self.dt).round() as usize)
    }

    /// `(pulse-on-pulse, remainder)` parts of `Σ_i x[i]·x*[i-m]·phase[i]`.
    fn lag_sums(&self, m: usize, phase: Option<&[Complex64]>) -> (Complex64, Complex64) {
        let x = &self.samples;
        let split = self.pulse_len.max(m).min(x.len());
        let term = |i: usize| {
            let v = x[i] * x[i - m].conj();
            match phase {
                Some(p) => v * p[i],
                None => v,
            }
        };
        let pulse: Complex64 = (m..split).map(term).sum();
        let rest: Complex64 = (split..x.len()).map(term).sum();
        (pulse, rest)
    }

    fn zero_lag(&self) -> f64 {
        let (p, r) = self.lag_sums(0, None);
        (p + r).norm()
    }
}

fn peak_sidelobe_db(lags: &[f64], values: &[f64]) -> f64 {
    let mut pts: Vec<(f64, f64)> = lags.iter().map(|l| l.abs()).zip(values.iter().copied()).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.dedup_by(|a, b| a.0 == b.0);
    let mut i = 1;
    while i < pts.len() && pts[i].1 <= pts[i - 1].1 {
        i += 1;
    }
    let peak = pts[i.saturating_sub(1)..].iter().skip(1).map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let main = pts.first().map_or(1.0, |p| p.1);
    if peak == f64::NEG_INFINITY {
        f64::NEG_INFINITY
    } else {
        20.0 * (peak / main).log10()
    }
}

/// Normalised ACF of PRI `k` over `lags` (seconds), sampled `oversampling`
/// times per chip.
pub fn acf_curve(frame: &BasebandFrame, k: usize, lags: &[f64], oversampling: usize) -> Result<AcfCurve> {
    let pri = Pri::new(frame, k, oversampling)?;
    let norm = pri.zero_lag();
    let mut values = Vec::with_capacity(lags.len());
    let mut components = Vec::with_capacity(lags.len());
    for &lag in lags {
        let m = pri.lag_index(lag)?;
        let (pulse, rest) = pri.lag_sums(m, None);
        values.push((pulse + rest).norm() / norm);
        let rest = rest.norm() / norm;
        components.push(if m <= pri.pulse_len {
            AcfComponents { pulse_acf: pulse.norm() / norm, phi: rest, psi: 0.0 }
        } else {
            AcfComponents { pulse_acf: 0.0, phi: 0.0, psi: rest }
        });
    }
    let psl_db = peak_sidelobe_db(lags, &values);
    Ok(AcfCurve { lags: lags.to_vec(), values, psl_db, components })
}

/// `|χ(τ, f_d)| / χ(0,0)` with rows over `dopplers` (Hz) and columns over
/// `lags` (s). A zero-Doppler row reproduces [`acf_curve`] exactly.
pub fn af_surface(
    frame: &BasebandFrame,
    k: usize,
    lags: &[f64],
    dopplers: &[f64],
    oversampling: usize,
) -> Result<Array2<f64>> {
    let pri = Pri::new(frame, k, oversampling)?;
    let norm = pri.zero_lag();
    let idx: Vec<usize> = lags.iter().map(|&l| pri.lag_index(l)).collect::<Result<_>>()?;
    let mut out = Array2::zeros((dopplers.len(), lags.len()));
    for (r, &fd) in dopplers.iter().enumerate() {
        if !fd.is_finite() {
            return Err(Error::config(format!("Doppler grid value {fd} is not finite")));
        }
        let phase: Option<Vec<Complex64>> = (fd != 0.0).then(|| {
            (0..pri.samples.len()).map(|i| Complex64::from_polar(1.0, -2.0 * PI * fd * i as f64 * pri.dt)).collect()
        });
        for (c, &m) in idx.iter().enumerate() {
            let (p, rest) = pri.lag_sums(m, phase.as_deref());
            out[[r, c]] = (p + rest).norm() / norm;
        }
    }
    Ok(out)
}

/// ACF statistics over `draws` independent frames of `cfg`, draw `i` using
/// seed `seed ^ mix64(i)`.
pub fn acf_ensemble(
    cfg: &WaveformConfig,
    lags: &[f64],
    oversampling: usize,
    draws: usize,
    seed: u64,
) -> Result<AcfEnsemble> {
    if draws == 0 {
        return Err(Error::config("ACF ensemble needs at least one draw"));
    }
    let mut per_lag = vec![Vec::with_capacity(draws); lags.len()];
    let mut psl_db = Vec::with_capacity(draws);
    for i in 0..draws {
        let frame = generate_frame(cfg, trial_seed(seed, i as u64))?;
        let curve = acf_curve(&frame, 0, lags, oversampling)?;
        for (col, v) in per_lag.iter_mut().zip(curve.values) {
            col.push(v);
        }
        psl_db.push(curve.psl_db);
    }
    let mut median = Vec::with_capacity(lags.len());
    let mut p95 = Vec::with_capacity(lags.len());
    let mut std_dev = Vec::with_capacity(lags.len());
    for col in &mut per_lag {
        col.sort_by(f64::total_cmp);
        median.push(quantile(col, 0.5));
        p95.push(quantile(col, 0.95));
        let mean = col.iter().sum::<f64>() / col.len() as f64;
        let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (col.len().max(2) - 1) as f64;
        std_dev.push(var.sqrt());
    }
    Ok(AcfEnsemble { lags: lags.to_vec(), median, p95, std_dev, psl_db })
}

/// Linear-interpolated quantile of sorted data.
pub(crate) fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}
