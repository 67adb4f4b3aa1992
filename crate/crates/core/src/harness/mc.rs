//! Monte-Carlo engine and the end-to-end radar trial.
//!
//! Trial `i` of a run seeded with `s` draws everything from
//! `seed ^ mix64(i)`, and results come back in trial order, so aggregates do
//! not depend on the worker count.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analysis::{interference_floor, prob_detection, sinr1, SinrBreakdown};
use crate::channel::{apply_channel_with, ChannelState};
use crate::error::{Error, Result};
use crate::receiver::{cancel_si_with, doppler_column, doppler_dft, matched_filter_bins};
use crate::rng::{substream, trial_seed};
use crate::waveform::{generate_frame, WaveformConfig};

/// Environment variable overriding the Monte-Carlo worker count.
pub const WORKERS_ENV: &str = "FDISAC_WORKERS";

/// Worker count from `FDISAC_WORKERS`, else the available parallelism.
pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `trials` independent trials on `workers` threads and returns their
/// results in trial order. `f` receives the derived per-trial seed.
pub fn run_trials_with<T, F>(trials: u64, seed: u64, workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| (0..trials).into_par_iter().map(|i| f(trial_seed(seed, i))).collect())
}

/// [`run_trials_with`] using [`worker_count`] threads.
pub fn run_trials<T, F>(trials: u64, seed: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    run_trials_with(trials, seed, worker_count(), f)
}

/// Proportion estimate with its 95% normal-approximation half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Proportion {
    pub hits: u64,
    pub trials: u64,
}

impl Proportion {
    pub fn from_flags(flags: &[bool]) -> Self {
        Proportion { hits: flags.iter().filter(|&&f| f).count() as u64, trials: flags.len() as u64 }
    }
    pub fn estimate(&self) -> f64 {
        self.hits as f64 / self.trials as f64
    }
    pub fn ci95(&self) -> f64 {
        let p = self.estimate();
        1.96 * (p * (1.0 - p) / self.trials as f64).sqrt()
    }
    /// True when `p` lies within `z` binomial standard deviations of the
    /// estimate, the deviation taken at `p`.
    pub fn consistent_with(&self, p: f64, z: f64) -> bool {
        let sd = (p * (1.0 - p) / self.trials as f64).sqrt();
        (self.estimate() - p).abs() <= z * sd
    }
}

/// One radar CPI through waveform, channel, SIC, matched filter, Doppler DFT
/// and threshold, observed at the target's range-Doppler cell.
#[derive(Debug, Clone)]
pub struct RadarChain {
    pub cfg: WaveformConfig,
    pub channel: ChannelState,
    pub pfa: f64,
}

impl RadarChain {
    pub fn new(cfg: WaveformConfig, channel: ChannelState, pfa: f64) -> Result<Self> {
        channel.validate(&cfg)?;
        crate::analysis::detection_threshold(1.0, pfa)?;
        Ok(RadarChain { cfg, channel, pfa })
    }

    /// `σ_φ²` at the target's range bin.
    pub fn sigma_phi_sq(&self) -> Result<f64> {
        interference_floor(&self.cfg, &self.channel, self.channel.delay_bin)
    }

    pub fn sinr(&self) -> Result<SinrBreakdown> {
        sinr1(&self.cfg, &self.channel)
    }

    pub fn analytic_pd(&self) -> Result<f64> {
        prob_detection(self.sinr()?.sinr_k, self.pfa)
    }

    /// `|Y|` at the target cell for one CPI, with or without the target.
    pub fn cell_magnitude(&self, seed: u64, target_present: bool) -> Result<f64> {
        let frame = generate_frame(&self.cfg, seed)?;
        let ch = ChannelState { target_present, ..self.channel.clone() };
        let y = apply_channel_with(&frame, &ch, &mut substream(seed, 3))?;
        let yh = cancel_si_with(&y, &frame, ch.si_gain, ch.sic_factor, &mut substream(seed, 4))?;
        let mut map = matched_filter_bins(&yh, &frame, &[ch.delay_bin])?;
        doppler_dft(&mut map);
        let col = doppler_column(ch.doppler_bin(&self.cfg), self.cfg.k());
        Ok(map.dft_output.as_ref().map_or(0.0, |d| d[[0, col]].norm()))
    }

    /// Cell magnitudes for `trials` CPIs.
    pub fn cell_samples(&self, trials: u64, seed: u64, target_present: bool) -> Result<Vec<f64>> {
        run_trials(trials, seed, |s| self.cell_magnitude(s, target_present))
    }

    /// Fraction of CPIs whose target cell crosses the threshold.
    pub fn detection_rate(&self, trials: u64, seed: u64, target_present: bool) -> Result<Proportion> {
        let t = crate::analysis::detection_threshold(self.sigma_phi_sq()?, self.pfa)?;
        let z = self.cell_samples(trials, seed, target_present)?;
        Ok(Proportion { hits: z.iter().filter(|&&v| v > t).count() as u64, trials })
    }

    /// Empirical SINR at the matched-filter output and after the Doppler DFT,
    /// from the target cell over `trials` CPIs. Their ratio estimates the
    /// coherent integration gain.
    pub fn coherent_gain(&self, trials: u64, seed: u64) -> Result<(f64, f64)> {
        let cfg = &self.cfg;
        let ch = &self.channel;
        let k_total = cfg.k();
        let col = doppler_column(ch.doppler_bin(cfg), k_total);
        let rows = run_trials(trials, seed, |s| {
            let frame = generate_frame(cfg, s)?;
            let y = apply_channel_with(&frame, ch, &mut substream(s, 3))?;
            let yh = cancel_si_with(&y, &frame, ch.si_gain, ch.sic_factor, &mut substream(s, 4))?;
            let mut map = matched_filter_bins(&yh, &frame, &[ch.delay_bin])?;
            // undo the Doppler rotation so every PRI shares one mean
            let pre: Vec<Complex64> = (0..k_total)
                .map(|k| {
                    map.mf_output[[0, k]] * Complex64::from_polar(1.0, -2.0 * PI * ch.doppler_hz * k as f64 * cfg.pri())
                })
                .collect();
            doppler_dft(&mut map);
            let post = map.dft_output.as_ref().map_or(Complex64::new(0.0, 0.0), |d| d[[0, col]]);
            Ok((pre, post))
        })?;
        let pre: Vec<Complex64> = rows.iter().flat_map(|r| r.0.iter().copied()).collect();
        let post: Vec<Complex64> = rows.iter().map(|r| r.1).collect();
        Ok((empirical_snr(&pre), empirical_snr(&post)))
    }
}

/// `|mean|² / variance` of complex samples.
pub fn empirical_snr(samples: &[Complex64]) -> f64 {
    let n = samples.len() as f64;
    let mean: Complex64 = samples.iter().sum::<Complex64>() / n;
    let var = samples.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / (n - 1.0);
    mean.norm_sqr() / var
}

/// Echo amplitude that puts `chain` at the requested `SINR_K`.
pub fn alpha_for_sinr_k(cfg: &WaveformConfig, ch: &ChannelState, sinr_k: f64) -> Result<f64> {
    let floor = interference_floor(cfg, ch, ch.delay_bin)?;
    Ok((sinr_k * floor / (cfg.k() as f64 * cfg.tc() * cfg.mf_energy_factor())).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveform::{CodeKind, Constellation, WaveformParams};

    fn small() -> WaveformConfig {
        WaveformConfig::new(WaveformParams {
            bandwidth_hz: 1e6,
            pri_s: 16e-6,
            pulse_duration_s: 4e-6,
            pris_per_cpi: 8,
            radar_power_w: 1.0,
            comm_power_w: 0.25,
            psk_order: 4,
            code: CodeKind::Lfm,
            comm_constellation: Constellation::Psk,
        })
        .unwrap()
    }

    fn chain(sinr_k: f64) -> RadarChain {
        let cfg = small();
        let mut ch = ChannelState {
            si_gain: Complex64::new(0.1, 0.0),
            sic_factor: 1e-3,
            noise_psd: 1e-8,
            ..ChannelState::ideal(3)
        }
        .with_doppler_bin(2, &cfg);
        ch.alpha = Complex64::new(alpha_for_sinr_k(&cfg, &ch, sinr_k).unwrap(), 0.0);
        RadarChain::new(cfg, ch, 1e-2).unwrap()
    }

    #[test]
    fn worker_split_does_not_change_results() {
        let c = chain(5.0);
        let one = run_trials_with(64, 9, 1, |s| c.cell_magnitude(s, true)).unwrap();
        let three = run_trials_with(64, 9, 3, |s| c.cell_magnitude(s, true)).unwrap();
        assert_eq!(one, three);
    }

    #[test]
    fn alpha_scaling_hits_requested_sinr() {
        let c = chain(10.0);
        assert!((c.sinr().unwrap().sinr_k - 10.0).abs() < 1e-9);
    }

    #[test]
    fn proportion_interval() {
        let p = Proportion { hits: 50, trials: 100 };
        assert_eq!(p.estimate(), 0.5);
        assert!((p.ci95() - 0.098).abs() < 1e-12);
        assert!(p.consistent_with(0.45, 3.0));
        assert!(!p.consistent_with(0.2, 3.0));
    }

    #[test]
    fn empirical_snr_of_constant_plus_noise() {
        let mut rng = crate::rng::rng_from_seed(1);
        let v: Vec<Complex64> =
            (0..20000).map(|_| Complex64::new(2.0, 0.0) + crate::rng::complex_normal(&mut rng, 1.0)).collect();
        assert!((empirical_snr(&v) / 4.0 - 1.0).abs() < 0.05);
    }

    #[test]
    fn worker_env_override() {
        // only parsing is checked; the variable itself is process-global
        assert!(worker_count() >= 1);
    }
}
