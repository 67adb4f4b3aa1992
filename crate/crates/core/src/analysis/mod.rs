//! Closed-form radar performance: residual SI after matched filtering,
//! per-bin SINR, detection probability, range limits, rates and the
//! ambiguity/autocorrelation functions of the transmitted waveform.

mod acf;
mod marcum;

pub use acf::{acf_curve, acf_ensemble, af_surface, AcfComponents, AcfCurve, AcfEnsemble};
pub use marcum::marcum_q1;

pub use crate::channel::unambiguous_range;

use serde::{Deserialize, Serialize};

use crate::channel::{delay_bin_for_range, radar_two_way_gain, ChannelState, LinkBudget};
use crate::error::{Error, Result};
use crate::waveform::WaveformConfig;
use crate::SPEED_OF_LIGHT;

/// Which side of the pulse the echo delay falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DelayBranch {
    /// `1 ≤ n_τ ≤ N`: the echo pulse still overlaps the transmitted pulse.
    Near,
    /// `N < n_τ ≤ J`.
    Far,
}

/// Per-range-bin SINR terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrBreakdown {
    /// `|α|²(PcJ + PrN)`.
    pub signal_power: f64,
    /// `E|z_k|²` at the matched-filter output (carries a factor `Tc`).
    pub residual_si_power: f64,
    /// `N0·B`.
    pub noise_power: f64,
    pub sinr1: f64,
    /// `K·sinr1`.
    pub sinr_k: f64,
    pub branch: DelayBranch,
}

/// Powers, sizes and SI terms behind one SINR evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrInputs {
    pub pr: f64,
    pub pc: f64,
    pub n_tau: usize,
    pub n: usize,
    pub j: usize,
    pub k: usize,
    pub tc: f64,
    pub alpha_sq: f64,
    pub beta_sq: f64,
    pub epsilon: f64,
    pub noise_psd: f64,
}

impl SinrInputs {
    pub fn new(cfg: &WaveformConfig, ch: &ChannelState) -> Self {
        SinrInputs {
            pr: cfg.pr(),
            pc: cfg.pc(),
            n_tau: ch.delay_bin,
            n: cfg.n(),
            j: cfg.j(),
            k: cfg.k(),
            tc: cfg.tc(),
            alpha_sq: ch.alpha.norm_sqr(),
            beta_sq: ch.si_gain.norm_sqr(),
            epsilon: ch.sic_factor,
            noise_psd: ch.noise_psd,
        }
    }
}

/// `E|z_k|²`, the residual SI power left in range bin `n_τ` after the
/// matched filter.
#[allow(clippy::too_many_arguments)]
pub fn residual_si_power(
    pr: f64,
    pc: f64,
    n_tau: usize,
    n: usize,
    j: usize,
    tc: f64,
    beta_sq: f64,
    epsilon: f64,
) -> Result<f64> {
    if n_tau == 0 || n_tau > j {
        return Err(Error::DelayOutOfRange { n_tau, max: j });
    }
    let (nf, jf, nt) = (n as f64, j as f64, n_tau as f64);
    let energy = pc * jf + pr * nf;
    if energy == 0.0 {
        return Ok(0.0);
    }
    let overlap = if n_tau <= n {
        pr * pr * nf + pc * pc * jf - nt * (pr - pc) * (pr - pc)
    } else {
        pc * pc * (jf - nf) + 2.0 * pc * pr * nf
    };
    Ok(epsilon * beta_sq * tc * overlap / energy)
}

/// Per-bin SINR before (`sinr1`) and after (`sinr_k`) coherent integration.
pub fn sinr1(cfg: &WaveformConfig, ch: &ChannelState) -> Result<SinrBreakdown> {
    sinr_from_inputs(&SinrInputs::new(cfg, ch))
}

pub fn sinr_from_inputs(p: &SinrInputs) -> Result<SinrBreakdown> {
    let z = residual_si_power(p.pr, p.pc, p.n_tau, p.n, p.j, p.tc, p.beta_sq, p.epsilon)?;
    let signal = p.alpha_sq * (p.pc * p.j as f64 + p.pr * p.n as f64);
    let bandwidth = 1.0 / p.tc;
    let noise = p.noise_psd * bandwidth;
    let denom = z * bandwidth + noise;
    let sinr1 = if signal == 0.0 { 0.0 } else { signal / denom };
    Ok(SinrBreakdown {
        signal_power: signal,
        residual_si_power: z,
        noise_power: noise,
        sinr1,
        sinr_k: p.k as f64 * sinr1,
        branch: if p.n_tau <= p.n { DelayBranch::Near } else { DelayBranch::Far },
    })
}

/// Variance `σ_φ² = E|z_k|² + N0` of the interference-plus-noise in one
/// range-Doppler cell (the matched filter has unit norm, the DFT is unitary).
pub fn interference_floor(cfg: &WaveformConfig, ch: &ChannelState, n_tau: usize) -> Result<f64> {
    let z =
        residual_si_power(cfg.pr(), cfg.pc(), n_tau, cfg.n(), cfg.j(), cfg.tc(), ch.si_gain.norm_sqr(), ch.sic_factor)?;
    Ok(z + ch.noise_psd)
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// `P_D = Q₁(√(2·SINR_K), √(-2 ln P_FA))`.
pub fn prob_detection(sinr_k: f64, pfa: f64) -> Result<f64> {
    check_probability(pfa)?;
    if sinr_k.is_nan() || sinr_k < 0.0 {
        return Err(Error::config(format!("sinr_k must be >= 0, got {sinr_k}")));
    }
    Ok(marcum_q1((2.0 * sinr_k).sqrt(), (-2.0 * pfa.ln()).sqrt()))
}

/// Detection threshold on `|Y|`: `σ_φ·√(-ln P_FA)`, from
/// `P_FA = exp(-𝒯²/σ_φ²)`.
pub fn detection_threshold(sigma_sq: f64, pfa: f64) -> Result<f64> {
    check_probability(pfa)?;
    Ok((sigma_sq * -pfa.ln()).sqrt())
}

/// `c(Tp + t_r)/2`.
pub fn blind_range(pulse_s: f64, recovery_s: f64) -> f64 {
    SPEED_OF_LIGHT * (pulse_s + recovery_s) / 2.0
}

/// `c/(2B)`.
pub fn range_resolution(bandwidth_hz: f64) -> f64 {
    SPEED_OF_LIGHT / (2.0 * bandwidth_hz)
}

/// `R_EB = (ρ/N)·log₂M`, bits per second per hertz.
pub fn rate_embedded(m: usize, duty: f64, n: usize) -> f64 {
    duty / n as f64 * (m as f64).log2()
}

/// `R = R_EB + (1-ρ)·log₂M`.
pub fn rate_total(m: usize, duty: f64, n: usize) -> f64 {
    rate_embedded(m, duty, n) + (1.0 - duty) * (m as f64).log2()
}

/// `P_D` for a target at `range_m` described by `lb`, using the SI and noise
/// terms of `ch`. The echo gain and delay bin follow from the range.
pub fn pd_at_range(cfg: &WaveformConfig, lb: &LinkBudget, ch: &ChannelState, range_m: f64, pfa: f64) -> Result<f64> {
    let lb = lb.with_range(range_m);
    let ch = ChannelState {
        alpha: num_complex::Complex64::new(radar_two_way_gain(&lb).sqrt(), 0.0),
        delay_bin: delay_bin_for_range(range_m, cfg)?,
        ..ch.clone()
    };
    prob_detection(sinr1(cfg, &ch)?.sinr_k, pfa)
}

/// Largest SIC factor (in dB) that still meets `target_pd`, found by
/// bisection over `[lo_db, hi_db]` to 1e-6 dB. `P_D` falls as `ε` grows.
/// Returns `None` when even `lo_db` misses the target; `hi_db` when the whole
/// interval meets it.
pub fn required_sic_db(
    cfg: &WaveformConfig,
    ch: &ChannelState,
    pfa: f64,
    target_pd: f64,
    lo_db: f64,
    hi_db: f64,
) -> Result<Option<f64>> {
    let pd_at = |eps_db: f64| -> Result<f64> {
        let c = ChannelState { sic_factor: crate::db_to_linear(eps_db), ..ch.clone() };
        prob_detection(sinr1(cfg, &c)?.sinr_k, pfa)
    };
    if pd_at(lo_db)? < target_pd {
        return Ok(None);
    }
    if pd_at(hi_db)? >= target_pd {
        return Ok(Some(hi_db));
    }
    let (mut ok, mut bad) = (lo_db, hi_db);
    while bad - ok > 1e-6 {
        let mid = 0.5 * (ok + bad);
        if pd_at(mid)? >= target_pd {
            ok = mid;
        } else {
            bad = mid;
        }
    }
    Ok(Some(ok))
}

/// Largest range on a `step_m` grid up to the unambiguous range at which
/// `P_D ≥ target_pd`. `None` if no grid point qualifies.
pub fn max_detection_range(
    cfg: &WaveformConfig,
    lb: &LinkBudget,
    ch: &ChannelState,
    pfa: f64,
    target_pd: f64,
    step_m: f64,
) -> Result<Option<f64>> {
    if step_m.is_nan() || step_m <= 0.0 {
        return Err(Error::config(format!("range step must be positive, got {step_m}")));
    }
    let r_max = unambiguous_range(cfg.pri(), cfg.pulse_duration());
    let steps = (r_max / step_m).floor() as usize;
    for i in (1..=steps).rev() {
        let r = i as f64 * step_m;
        if pd_at_range(cfg, lb, ch, r, pfa)? >= target_pd {
            return Ok(Some(r));
        }
    }
    Ok(None)
}
