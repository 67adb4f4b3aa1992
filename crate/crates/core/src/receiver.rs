//! Radar receive chain: self-interference cancellation, matched-filter bank,
//! slow-time Doppler DFT and the linear detector.

use ndarray::{Array2, ArrayView1};
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::analysis::detection_threshold;
use crate::error::{Error, Result};
use crate::rng::{complex_normal, rng_from_seed, SimRng};
use crate::waveform::BasebandFrame;

/// Matched-filter and Doppler outputs for a set of range bins.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeDopplerMap {
    /// Range bins `n_τ'`, one per row.
    pub bins: Vec<usize>,
    /// `y_k(n_τ')`, rows over bins, columns over PRIs.
    pub mf_output: Array2<Complex64>,
    /// `Y[q']` per bin, columns in FFT order (`q'` and `q' - K` share a
    /// column). `None` until [`doppler_dft`] runs.
    pub dft_output: Option<Array2<Complex64>>,
}

impl RangeDopplerMap {
    /// `|Y|`, or `|y_k|` before the Doppler DFT.
    pub fn magnitude(&self) -> Array2<f64> {
        self.dft_output.as_ref().unwrap_or(&self.mf_output).mapv(|v| v.norm())
    }

    pub fn row_of(&self, bin: usize) -> Option<usize> {
        self.bins.iter().position(|&b| b == bin)
    }
}

/// Column of Doppler bin `q` (may be negative) in a `K`-point DFT.
pub fn doppler_column(q: i64, k: usize) -> usize {
    q.rem_euclid(k as i64) as usize
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionResult {
    pub bins: Vec<usize>,
    /// `z = |Y|`.
    pub statistic: Array2<f64>,
    /// `𝒯 = σ_φ·√(-ln P_FA)` per cell.
    pub threshold: Array2<f64>,
    pub decisions: Array2<bool>,
    /// `σ_φ²` per range bin.
    pub sigma_phi_sq: Vec<f64>,
}

impl DetectionResult {
    pub fn detections(&self) -> usize {
        self.decisions.iter().filter(|&&d| d).count()
    }
}

fn check_shape(y: &Array2<Complex64>, frame: &BasebandFrame) -> Result<()> {
    let cfg = frame.config();
    let want = (cfg.k(), cfg.chips_per_pri());
    if y.dim() != want {
        return Err(Error::DimensionMismatch(format!(
            "received block is {:?}, expected {want:?} (K x (N+J))",
            y.dim()
        )));
    }
    Ok(())
}

/// `ŷ_k = y_k - βx_k^d + √ε·β·diag(√(Tc·p^d))·z_k` with `z_k` standard
/// complex normal: the known SI is removed and the cancellation residual is
/// modelled as Gaussian noise.
pub fn cancel_si(
    y: &Array2<Complex64>,
    frame: &BasebandFrame,
    beta: Complex64,
    epsilon: f64,
    seed: u64,
) -> Result<Array2<Complex64>> {
    cancel_si_with(y, frame, beta, epsilon, &mut rng_from_seed(seed))
}

pub fn cancel_si_with(
    y: &Array2<Complex64>,
    frame: &BasebandFrame,
    beta: Complex64,
    epsilon: f64,
    rng: &mut SimRng,
) -> Result<Array2<Complex64>> {
    check_shape(y, frame)?;
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::config(format!("sic_factor must lie in [0, 1], got {epsilon}")));
    }
    let tc = frame.config().tc();
    let scale: Vec<Complex64> =
        frame.direct_power_profile().iter().map(|&p| beta * (epsilon * tc * p).sqrt()).collect();
    let mut out = y.clone();
    for (k, mut row) in out.rows_mut().into_iter().enumerate() {
        for (v, d) in row.iter_mut().zip(frame.direct(k).iter()) {
            *v -= beta * d;
        }
        if epsilon > 0.0 && beta != Complex64::new(0.0, 0.0) {
            for (v, s) in row.iter_mut().zip(&scale) {
                *v += s * complex_normal(rng, 1.0);
            }
        }
    }
    Ok(out)
}

/// Matched filter for every range bin `1..=J`.
pub fn matched_filter_bank(y: &Array2<Complex64>, frame: &BasebandFrame) -> Result<RangeDopplerMap> {
    let bins: Vec<usize> = (1..=frame.config().j()).collect();
    matched_filter_bins(y, frame, &bins)
}

/// `y_k(n) = h_{k,n}^H·ŷ_k` with `h_{k,n} = x^r_{k,n}/‖x^r_{k,n}‖` for the
/// listed bins. References are rebuilt per PRI from the known symbols.
pub fn matched_filter_bins(y: &Array2<Complex64>, frame: &BasebandFrame, bins: &[usize]) -> Result<RangeDopplerMap> {
    check_shape(y, frame)?;
    let cfg = frame.config();
    let (j, len) = (cfg.j(), cfg.chips_per_pri());
    if let Some(&bad) = bins.iter().find(|&&b| b == 0 || b > j) {
        return Err(Error::DelayOutOfRange { n_tau: bad, max: j });
    }
    let mut out = Array2::zeros((bins.len(), cfg.k()));
    for k in 0..cfg.k() {
        let stream = frame.stream_pair(k);
        let mut prefix = Vec::with_capacity(stream.len() + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for v in &stream {
            acc += v.norm_sqr();
            prefix.push(acc);
        }
        let row = y.row(k);
        for (r, &n) in bins.iter().enumerate() {
            let start = len - n;
            let energy = prefix[start + len] - prefix[start];
            if energy <= 0.0 {
                continue;
            }
            out[[r, k]] = correlate(&stream[start..start + len], row) / energy.sqrt();
        }
    }
    Ok(RangeDopplerMap { bins: bins.to_vec(), mf_output: out, dft_output: None })
}

fn correlate(reference: &[Complex64], y: ArrayView1<'_, Complex64>) -> Complex64 {
    reference.iter().zip(y.iter()).map(|(h, v)| h.conj() * v).sum()
}

/// Unitary slow-time DFT `Y[q'] = (1/√K)·Σ_k y_k·e^{-j2πq'k/K}` per range bin.
pub fn doppler_dft(map: &mut RangeDopplerMap) {
    let k = map.mf_output.ncols();
    let fft = FftPlanner::new().plan_fft_forward(k);
    let scale = 1.0 / (k as f64).sqrt();
    let mut out = map.mf_output.clone();
    let mut buf = vec![Complex64::new(0.0, 0.0); k];
    for mut row in out.rows_mut() {
        for (b, v) in buf.iter_mut().zip(row.iter()) {
            *b = *v;
        }
        fft.process(&mut buf);
        for (v, b) in row.iter_mut().zip(&buf) {
            *v = b * scale;
        }
    }
    map.dft_output = Some(out);
}

/// Linear detector `|Y| ≷ σ_φ√(-ln P_FA)` with one `σ_φ²` per range bin.
pub fn detect(map: &RangeDopplerMap, sigma_phi_sq: &[f64], pfa: f64) -> Result<DetectionResult> {
    let dft =
        map.dft_output.as_ref().ok_or_else(|| Error::DimensionMismatch("Doppler DFT has not been computed".into()))?;
    if sigma_phi_sq.len() != map.bins.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} noise levels for {} range bins",
            sigma_phi_sq.len(),
            map.bins.len()
        )));
    }
    if let Some(bad) = sigma_phi_sq.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
        return Err(Error::config(format!("sigma_phi^2 must be positive, got {bad}")));
    }
    let statistic = dft.mapv(|v| v.norm());
    let mut threshold = Array2::zeros(statistic.dim());
    for (mut row, &s) in threshold.rows_mut().into_iter().zip(sigma_phi_sq) {
        row.fill(detection_threshold(s, pfa)?);
    }
    let decisions = ndarray::Zip::from(&statistic).and(&threshold).map_collect(|z, t| z > t);
    Ok(DetectionResult { bins: map.bins.clone(), statistic, threshold, decisions, sigma_phi_sq: sigma_phi_sq.to_vec() })
}

/// Per-bin `σ_φ²` estimated as the mean `|Y|²` over target-free secondary
/// maps. All maps must cover the same bins.
pub fn estimate_interference(secondary: &[RangeDopplerMap]) -> Result<Vec<f64>> {
    let first = secondary.first().ok_or_else(|| Error::config("no secondary data for noise estimation"))?;
    let mut acc = vec![0.0; first.bins.len()];
    let mut cells = 0usize;
    for m in secondary {
        if m.bins != first.bins {
            return Err(Error::DimensionMismatch("secondary maps cover different range bins".into()));
        }
        let data = m.dft_output.as_ref().unwrap_or(&m.mf_output);
        for (a, row) in acc.iter_mut().zip(data.rows()) {
            *a += row.iter().map(|v| v.norm_sqr()).sum::<f64>();
        }
        cells += data.ncols();
    }
    Ok(acc.into_iter().map(|a| a / cells as f64).collect())
}
