//! Scenario execution.

use num_complex::Complex64;

use super::mc::{alpha_for_sinr_k, RadarChain};
use super::scenario::{Metric, Scenario, Series, SummaryMetric, SweepVariable};
use crate::analysis::{
    acf_curve, acf_ensemble, af_surface, max_detection_range, prob_detection, rate_embedded, required_sic_db, sinr1,
};
use crate::channel::{delay_bin_for_range, radar_two_way_gain, ChannelState, LinkBudget};
use crate::comm::{ser_embedded_analytic, ser_embedded_mc, spectrum_efficiency_dedicated, CommLink};
use crate::error::Result;
use crate::rng::trial_seed;
use crate::waveform::{generate_frame, WaveformConfig};
use crate::{db_to_linear, linear_to_db};

/// One output line: a metric at one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub scenario: String,
    /// `None` for per-series summary metrics.
    pub sweep_value: Option<f64>,
    /// Metric name, suffixed `@label` for labelled series.
    pub metric: String,
    pub analytic: Option<f64>,
    pub mc: Option<f64>,
    pub mc_ci95: Option<f64>,
    /// Trials behind `mc`.
    pub trials: Option<u64>,
    /// Scenario seed; per-point seeds derive from it.
    pub seed: u64,
}

/// Everything needed to evaluate one sweep point of one series.
#[derive(Debug, Clone)]
pub struct Point {
    pub cfg: WaveformConfig,
    pub link: LinkBudget,
    pub channel: ChannelState,
    pub comm: CommLink,
}

/// Builds the configuration of `series` at sweep value `value`.
pub fn build_point(sc: &Scenario, series: &Series, sweep: Option<(SweepVariable, f64)>) -> Result<Point> {
    let mut pr = series.radar_power_w.unwrap_or(sc.waveform.pr());
    let mut pc = series.comm_power_w.unwrap_or(sc.waveform.pc());
    let mut eps_db = sc.sic_factor_db(series);
    let mut range = series.target_range_m.unwrap_or(sc.link.target_range_m);
    let mut sinr_k_db = None;
    if let Some((var, v)) = sweep {
        match var {
            SweepVariable::EpsilonDb => eps_db = v,
            SweepVariable::RadarPowerW => pr = v,
            SweepVariable::CommPowerW => pc = v,
            SweepVariable::RangeM => range = v,
            SweepVariable::SinrKDb => sinr_k_db = Some(v),
            SweepVariable::LagS => {}
        }
    }
    let cfg = sc.waveform.with_powers(pr, pc)?;
    let link = sc.link.with_range(range);
    let delay_bin = match sc.channel.delay_bin {
        Some(d) => d,
        None => delay_bin_for_range(range, &cfg)?,
    };
    let mut channel = ChannelState {
        alpha: Complex64::new(radar_two_way_gain(&link).sqrt(), 0.0),
        delay_bin,
        doppler_hz: 0.0,
        si_gain: sc.channel.si_gain,
        sic_factor: db_to_linear(eps_db),
        noise_psd: sc.channel.noise_psd,
        target_present: true,
    };
    channel = match series.doppler_hz {
        Some(fd) => ChannelState { doppler_hz: fd, ..channel },
        None => channel.with_doppler_bin(sc.channel.doppler_bin, &cfg),
    };
    if let Some(db) = sinr_k_db {
        channel.alpha = Complex64::new(alpha_for_sinr_k(&cfg, &channel, db_to_linear(db))?, 0.0);
    }
    let comm = CommLink::from_budget(&link, sc.channel.noise_psd, cfg.psk_order());
    Ok(Point { cfg, link, channel, comm })
}

fn metric_label(name: &str, series: &Series) -> String {
    if series.label.is_empty() {
        name.to_string()
    } else {
        format!("{name}@{}", series.label)
    }
}

/// Runs every series, sweep point and metric of `sc`. Deterministic in
/// `(sc, sc.seed)` regardless of the worker count.
pub fn run_scenario(sc: &Scenario) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for (si, series) in sc.series.iter().enumerate() {
        log::info!("{}: series {} of {}", sc.name, si + 1, sc.series.len());
        let series_seed = trial_seed(sc.seed, si as u64);
        if let Some(sweep) = &sc.sweep {
            if sweep.variable == SweepVariable::LagS {
                rows.extend(acf_rows(sc, series, &sweep.values, series_seed)?);
            } else {
                for (pi, &v) in sweep.values.iter().enumerate() {
                    let point = build_point(sc, series, Some((sweep.variable, v)))?;
                    let point_seed = trial_seed(series_seed, pi as u64);
                    for &m in &sc.metrics {
                        rows.push(point_row(sc, series, &point, m, v, point_seed)?);
                    }
                }
            }
        }
        if !sc.summary_metrics.is_empty() {
            let point = build_point(sc, series, None)?;
            for &m in &sc.summary_metrics {
                rows.push(summary_row(sc, series, &point, m)?);
            }
        }
    }
    Ok(rows)
}

fn point_row(sc: &Scenario, series: &Series, p: &Point, metric: Metric, x: f64, seed: u64) -> Result<ResultRow> {
    let cfg = &p.cfg;
    let mut row = ResultRow {
        scenario: sc.name.clone(),
        sweep_value: Some(x),
        metric: metric_label(metric.name(), series),
        analytic: None,
        mc: None,
        mc_ci95: None,
        trials: None,
        seed: sc.seed,
    };
    let sinr = sinr1(cfg, &p.channel)?;
    let mut mc_rate = |present: bool| -> Result<()> {
        if sc.mode.monte_carlo() {
            let chain = RadarChain::new(cfg.clone(), p.channel.clone(), sc.pfa)?;
            let est = chain.detection_rate(sc.trials, seed, present)?;
            row.mc = Some(est.estimate());
            row.mc_ci95 = Some(est.ci95());
            row.trials = Some(sc.trials);
        }
        Ok(())
    };
    match metric {
        Metric::Pd => {
            mc_rate(true)?;
            row.analytic = sc.mode.analytic().then(|| prob_detection(sinr.sinr_k, sc.pfa)).transpose()?;
        }
        Metric::Pfa => {
            mc_rate(false)?;
            row.analytic = sc.mode.analytic().then_some(sc.pfa);
        }
        Metric::Sinr1Db => row.analytic = Some(linear_to_db(sinr.sinr1)),
        Metric::SinrKDb => row.analytic = Some(linear_to_db(sinr.sinr_k)),
        Metric::Rate => {
            let duty = cfg.duty_cycle();
            row.analytic = Some(
                rate_embedded(cfg.psk_order(), duty, cfg.n())
                    + spectrum_efficiency_dedicated(&p.comm, cfg.pc(), cfg.bandwidth(), duty),
            );
        }
        Metric::Ser => {
            if sc.mode.analytic() {
                row.analytic = Some(ser_embedded_analytic(&p.comm, cfg.pr(), cfg.n(), cfg.bandwidth()));
            }
            if sc.mode.monte_carlo() {
                let code = crate::waveform::code_for(cfg.code_kind(), cfg.n())?;
                let est = ser_embedded_mc(&p.comm, &code, cfg.pr(), cfg.tc(), sc.trials, seed)?;
                row.mc = Some(est.estimate());
                row.mc_ci95 = Some(est.ci95());
                row.trials = Some(sc.trials);
            }
        }
        Metric::Acf => unreachable!("acf rows come from a lag sweep"),
    }
    Ok(row)
}

/// Single-draw `|χ(τ, f_d)|` in the analytic column; with Monte-Carlo enabled
/// and zero Doppler, the ensemble median over `trials` draws in `mc`.
fn acf_rows(sc: &Scenario, series: &Series, lags: &[f64], seed: u64) -> Result<Vec<ResultRow>> {
    let p = build_point(sc, series, None)?;
    let frame = generate_frame(&p.cfg, sc.seed)?;
    let fd = series.doppler_hz.unwrap_or(0.0);
    let single = af_surface(&frame, 0, lags, &[fd], sc.acf_oversampling)?;
    let ensemble = if sc.mode.monte_carlo() && fd == 0.0 {
        Some(acf_ensemble(&p.cfg, lags, sc.acf_oversampling, sc.trials as usize, seed)?)
    } else {
        None
    };
    Ok(lags
        .iter()
        .enumerate()
        .map(|(i, &lag)| ResultRow {
            scenario: sc.name.clone(),
            sweep_value: Some(lag),
            metric: metric_label(Metric::Acf.name(), series),
            analytic: Some(single[[0, i]]),
            mc: ensemble.as_ref().map(|e| e.median[i]),
            mc_ci95: None,
            trials: ensemble.as_ref().map(|_| sc.trials),
            seed: sc.seed,
        })
        .collect())
}

fn summary_row(sc: &Scenario, series: &Series, p: &Point, metric: SummaryMetric) -> Result<ResultRow> {
    let value = match metric {
        SummaryMetric::RequiredSicDb => required_sic_db(&p.cfg, &p.channel, sc.pfa, sc.pd_target, -200.0, 0.0)?,
        SummaryMetric::MaxRangeM => {
            max_detection_range(&p.cfg, &p.link, &p.channel, sc.pfa, sc.pd_target, sc.range_step_m)?
        }
        SummaryMetric::PslDb => {
            let frame = generate_frame(&p.cfg, sc.seed)?;
            let l = sc.acf_oversampling;
            let step = p.cfg.tc() / l as f64;
            let lags: Vec<f64> = (0..=p.cfg.n() * l).map(|i| i as f64 * step).collect();
            Some(acf_curve(&frame, 0, &lags, l)?.psl_db)
        }
    };
    Ok(ResultRow {
        scenario: sc.name.clone(),
        sweep_value: None,
        metric: metric_label(metric.name(), series),
        analytic: value,
        mc: None,
        mc_ci95: None,
        trials: None,
        seed: sc.seed,
    })
}
