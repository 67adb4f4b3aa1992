//! Scenario documents: JSON schema, reference defaults and validation.
//!
//! Quantities are in SI base units. Decibel values are accepted only in
//! fields whose name ends in `_db`. Every field is optional; missing values
//! take the defaults below.
//!
//! | field | default |
//! |---|---|
//! | `waveform.bandwidth_hz` | 100e6 |
//! | `waveform.pri_s` | 10e-6 |
//! | `waveform.pulse_duration_s` | 1e-6 |
//! | `waveform.pris_per_cpi` | 100 |
//! | `waveform.radar_power_w`, `comm_power_w` | 1.0 |
//! | `waveform.psk_order` | 128 |
//! | `waveform.code` | `"lfm"` |
//! | `waveform.comm_constellation` | `"gaussian"` |
//! | `link.carrier_freq_hz` | 3.5e9 |
//! | `link.tx_gain_db`, `rx_gain_db` | 17 |
//! | `link.comm_rx_gain_db` | 0 |
//! | `link.rcs_m2` | 1 |
//! | `link.target_range_m` | 1350 |
//! | `link.comm_range_m` | 400 |
//! | `link.pathloss_exponent` | 2.7 |
//! | `channel.si_gain_db` (`|β|²`) | -20 |
//! | `channel.sic_factor_db` (`ε`) | -80 |
//! | `channel.noise_psd_dbm_per_hz_db` | -169 |
//! | `channel.doppler_bin` | 0 |
//! | `channel.delay_bin` | from the target range |
//! | `pfa` | 1e-8 |
//! | `pd_target` | 0.99 |
//! | `range_step_m` | 1 |
//! | `acf_oversampling` | 1 |
//! | `trials` | 1000 |
//! | `seed` | 1 |
//! | `mode` | `"analytic"` |

use std::collections::HashSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::LinkBudget;
use crate::error::{Error, Result};
use crate::waveform::{CodeKind, Constellation, WaveformConfig, WaveformParams};
use crate::{db_to_linear, linear_to_db};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Analytic,
    #[serde(alias = "monte_carlo")]
    Mc,
    Both,
}

impl Mode {
    pub fn analytic(self) -> bool {
        matches!(self, Mode::Analytic | Mode::Both)
    }
    pub fn monte_carlo(self) -> bool {
        matches!(self, Mode::Mc | Mode::Both)
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Mode::Analytic),
            "mc" | "monte_carlo" => Ok(Mode::Mc),
            "both" => Ok(Mode::Both),
            _ => Err(Error::config(format!("unknown mode '{s}' (analytic, mc, both)"))),
        }
    }
}

/// Quantity varied along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    EpsilonDb,
    RadarPowerW,
    CommPowerW,
    RangeM,
    LagS,
    /// Sets the echo gain so the target cell has this `SINR_K`.
    SinrKDb,
}

/// Per-sweep-point metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Detection probability; Monte-Carlo runs the full chain.
    Pd,
    /// False-alarm probability at the target cell.
    Pfa,
    Sinr1Db,
    SinrKDb,
    /// `R_EB + R_c`.
    Rate,
    /// Embedded-symbol error rate.
    Ser,
    /// Normalised `|χ(τ, f_d)|` at the series' Doppler (a `lag_s` sweep).
    Acf,
}

/// Metrics evaluated once per series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SummaryMetric {
    /// Largest `ε` (dB) meeting `pd_target`.
    RequiredSicDb,
    /// Largest range meeting `pd_target` on a `range_step_m` grid.
    MaxRangeM,
    /// Peak sidelobe of the ACF over lags `0..=Tp`.
    PslDb,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Pd => "pd",
            Metric::Pfa => "pfa",
            Metric::Sinr1Db => "sinr1_db",
            Metric::SinrKDb => "sinr_k_db",
            Metric::Rate => "rate",
            Metric::Ser => "ser",
            Metric::Acf => "acf",
        }
    }
}

impl SummaryMetric {
    pub fn name(self) -> &'static str {
        match self {
            SummaryMetric::RequiredSicDb => "required_sic_db",
            SummaryMetric::MaxRangeM => "max_range_m",
            SummaryMetric::PslDb => "psl_db",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveformDoc {
    pub bandwidth_hz: Option<f64>,
    pub pri_s: Option<f64>,
    pub pulse_duration_s: Option<f64>,
    pub pris_per_cpi: Option<usize>,
    pub radar_power_w: Option<f64>,
    pub comm_power_w: Option<f64>,
    pub psk_order: Option<usize>,
    pub code: Option<CodeKind>,
    pub comm_constellation: Option<Constellation>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDoc {
    pub carrier_freq_hz: Option<f64>,
    pub tx_gain_db: Option<f64>,
    pub rx_gain_db: Option<f64>,
    pub comm_rx_gain_db: Option<f64>,
    pub rcs_m2: Option<f64>,
    pub target_range_m: Option<f64>,
    pub comm_range_m: Option<f64>,
    pub pathloss_exponent: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelDoc {
    pub si_gain_db: Option<f64>,
    pub sic_factor_db: Option<f64>,
    pub noise_psd_dbm_per_hz_db: Option<f64>,
    pub doppler_bin: Option<i64>,
    pub delay_bin: Option<usize>,
}

/// One curve of a figure: overrides applied on top of the base scenario.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Series {
    pub label: String,
    pub radar_power_w: Option<f64>,
    pub comm_power_w: Option<f64>,
    pub sic_factor_db: Option<f64>,
    pub target_range_m: Option<f64>,
    pub doppler_hz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepDoc {
    pub variable: SweepVariable,
    pub values: Option<Vec<f64>>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub step: Option<f64>,
}

/// `ρ·Pr + (1-ρ)·Pc = P̄` and `Pr, Pc ≤ P_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerConstraint {
    pub avg_power_w: f64,
    pub max_power_w: f64,
}

/// Scenario file as written on disk.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub waveform: WaveformDoc,
    #[serde(default)]
    pub link: LinkDoc,
    #[serde(default)]
    pub channel: ChannelDoc,
    pub pfa: Option<f64>,
    pub pd_target: Option<f64>,
    pub range_step_m: Option<f64>,
    pub acf_oversampling: Option<usize>,
    #[serde(default)]
    pub series: Vec<Series>,
    pub sweep: Option<SweepDoc>,
    #[serde(default)]
    pub metrics: Vec<Metric>,
    #[serde(default)]
    pub summary_metrics: Vec<SummaryMetric>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub mode: Option<Mode>,
    pub constraints: Option<PowerConstraint>,
}

/// SI, cancellation and noise settings shared by every sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSettings {
    pub si_gain: Complex64,
    pub sic_factor: f64,
    pub noise_psd: f64,
    pub doppler_bin: i64,
    pub delay_bin: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub waveform: WaveformConfig,
    pub link: LinkBudget,
    pub channel: ChannelSettings,
    pub pfa: f64,
    pub pd_target: f64,
    pub range_step_m: f64,
    pub acf_oversampling: usize,
    /// Never empty: a scenario without series gets one unlabelled series.
    pub series: Vec<Series>,
    pub sweep: Option<Sweep>,
    pub metrics: Vec<Metric>,
    pub summary_metrics: Vec<SummaryMetric>,
    pub trials: u64,
    pub seed: u64,
    pub mode: Mode,
    pub constraints: Option<PowerConstraint>,
}

fn sweep_values(doc: &SweepDoc, errs: &mut Vec<String>) -> Vec<f64> {
    let values = match (&doc.values, doc.start, doc.stop, doc.step) {
        (Some(v), None, None, None) => v.clone(),
        (None, Some(a), Some(b), Some(s)) => {
            if !(s > 0.0 && a.is_finite() && b.is_finite()) || b < a {
                errs.push(format!("sweep range needs start <= stop and step > 0, got {a}..{b} step {s}"));
                return Vec::new();
            }
            let count = ((b - a) / s + 1e-9).floor() as usize + 1;
            if count > 1_000_000 {
                errs.push(format!("sweep has {count} points; limit is 1e6"));
                return Vec::new();
            }
            (0..count).map(|i| a + i as f64 * s).collect()
        }
        _ => {
            errs.push("sweep needs either 'values' or all of 'start', 'stop', 'step'".into());
            return Vec::new();
        }
    };
    if values.is_empty() {
        errs.push("sweep has no values".into());
    }
    if values.iter().any(|v| !v.is_finite()) {
        errs.push("sweep values must be finite".into());
    }
    values
}

fn plain_text(field: &str, v: &str, errs: &mut Vec<String>) {
    if v.is_empty() {
        errs.push(format!("{field} must not be empty"));
    }
    if v.contains([',', '"', '\n', '\r']) {
        errs.push(format!("{field} '{v}' must not contain commas, quotes or newlines"));
    }
}

impl ScenarioDoc {
    /// Fills defaults and checks every field, reporting all problems at once.
    pub fn validate(self) -> Result<Scenario> {
        let mut errs = Vec::new();
        plain_text("name", &self.name, &mut errs);

        let base = WaveformParams::table_one();
        let w = &self.waveform;
        let params = WaveformParams {
            bandwidth_hz: w.bandwidth_hz.unwrap_or(base.bandwidth_hz),
            pri_s: w.pri_s.unwrap_or(base.pri_s),
            pulse_duration_s: w.pulse_duration_s.unwrap_or(base.pulse_duration_s),
            pris_per_cpi: w.pris_per_cpi.unwrap_or(base.pris_per_cpi),
            radar_power_w: w.radar_power_w.unwrap_or(base.radar_power_w),
            comm_power_w: w.comm_power_w.unwrap_or(base.comm_power_w),
            psk_order: w.psk_order.unwrap_or(base.psk_order),
            code: w.code.unwrap_or(base.code),
            comm_constellation: w.comm_constellation.unwrap_or(base.comm_constellation),
        };
        if params.code == CodeKind::Custom {
            errs.push("waveform.code 'custom' needs explicit chips and is not available in scenario files".into());
        }
        let waveform = match WaveformConfig::new(params) {
            Ok(c) => Some(c),
            Err(Error::ConfigInvalid(e)) => {
                errs.extend(e.into_iter().map(|m| format!("waveform: {m}")));
                None
            }
            Err(e) => return Err(e),
        };
        if let Some(cfg) = waveform.as_ref().filter(|c| c.code_kind() == CodeKind::Barker) {
            if !crate::waveform::BARKER_LENGTHS.contains(&cfg.n()) {
                errs.push(format!("waveform: no Barker code of length N = {}", cfg.n()));
            }
        }

        let lb0 = LinkBudget::table_one();
        let l = &self.link;
        let link = LinkBudget {
            carrier_freq_hz: l.carrier_freq_hz.unwrap_or(lb0.carrier_freq_hz),
            tx_gain: l.tx_gain_db.map_or(lb0.tx_gain, db_to_linear),
            rx_gain: l.rx_gain_db.map_or(lb0.rx_gain, db_to_linear),
            comm_rx_gain: l.comm_rx_gain_db.map_or(lb0.comm_rx_gain, db_to_linear),
            rcs_m2: l.rcs_m2.unwrap_or(lb0.rcs_m2),
            target_range_m: l.target_range_m.unwrap_or(lb0.target_range_m),
            comm_range_m: l.comm_range_m.unwrap_or(lb0.comm_range_m),
            pathloss_exponent: l.pathloss_exponent.unwrap_or(lb0.pathloss_exponent),
        };
        errs.extend(link.validate().into_iter().map(|m| format!("link: {m}")));

        let c = &self.channel;
        let eps_db = c.sic_factor_db.unwrap_or(-80.0);
        if eps_db > 0.0 || eps_db.is_nan() {
            errs.push(format!("channel.sic_factor_db must be <= 0, got {eps_db}"));
        }
        let beta_db = c.si_gain_db.unwrap_or(-20.0);
        if !beta_db.is_finite() {
            errs.push(format!("channel.si_gain_db must be finite, got {beta_db}"));
        }
        let n0_db = c.noise_psd_dbm_per_hz_db.unwrap_or(-169.0);
        if n0_db.is_nan() || n0_db == f64::INFINITY {
            errs.push(format!("channel.noise_psd_dbm_per_hz_db must be finite or -inf, got {n0_db}"));
        }
        let channel = ChannelSettings {
            si_gain: Complex64::new(db_to_linear(beta_db).sqrt(), 0.0),
            sic_factor: db_to_linear(eps_db),
            noise_psd: db_to_linear(n0_db - 30.0),
            doppler_bin: c.doppler_bin.unwrap_or(0),
            delay_bin: c.delay_bin,
        };
        if let Some(cfg) = &waveform {
            let kh = (cfg.k() / 2) as i64;
            if channel.doppler_bin.abs() > kh {
                errs.push(format!("channel.doppler_bin must lie in -{kh}..={kh}, got {}", channel.doppler_bin));
            }
            if let Some(d) = channel.delay_bin {
                if d == 0 || d > cfg.j() {
                    errs.push(format!("channel.delay_bin must lie in 1..={}, got {d}", cfg.j()));
                }
            }
        }

        let pfa = self.pfa.unwrap_or(1e-8);
        if !(pfa > 0.0 && pfa < 1.0) {
            errs.push(format!("pfa must lie strictly between 0 and 1, got {pfa}"));
        }
        let pd_target = self.pd_target.unwrap_or(0.99);
        if !(pd_target > 0.0 && pd_target < 1.0) {
            errs.push(format!("pd_target must lie strictly between 0 and 1, got {pd_target}"));
        }
        let range_step_m = self.range_step_m.unwrap_or(1.0);
        if !(range_step_m > 0.0 && range_step_m.is_finite()) {
            errs.push(format!("range_step_m must be positive, got {range_step_m}"));
        }
        let acf_oversampling = self.acf_oversampling.unwrap_or(1);
        if !(1..=64).contains(&acf_oversampling) {
            errs.push(format!("acf_oversampling must lie in 1..=64, got {acf_oversampling}"));
        }

        let mut series = self.series.clone();
        if series.is_empty() {
            series.push(Series::default());
        } else {
            let mut seen = HashSet::new();
            for s in &series {
                plain_text("series label", &s.label, &mut errs);
                if !seen.insert(s.label.clone()) {
                    errs.push(format!("series label '{}' is repeated", s.label));
                }
            }
        }
        for s in &series {
            let tag = if s.label.is_empty() { "series".to_string() } else { format!("series '{}'", s.label) };
            for (f, v) in [("radar_power_w", s.radar_power_w), ("comm_power_w", s.comm_power_w)] {
                if let Some(v) = v {
                    if !(v >= 0.0 && v.is_finite()) {
                        errs.push(format!("{tag}: {f} must be >= 0, got {v}"));
                    }
                }
            }
            if let Some(v) = s.sic_factor_db {
                if v > 0.0 || v.is_nan() {
                    errs.push(format!("{tag}: sic_factor_db must be <= 0, got {v}"));
                }
            }
            if let Some(r) = s.target_range_m {
                if !(r > 0.0 && r.is_finite()) {
                    errs.push(format!("{tag}: target_range_m must be positive, got {r}"));
                }
            }
            if let (Some(fd), Some(cfg)) = (s.doppler_hz, &waveform) {
                if !fd.is_finite() || fd.abs() * cfg.pri() > 0.5 {
                    errs.push(format!("{tag}: doppler_hz must satisfy |f_d| <= 1/(2T), got {fd}"));
                }
            }
            if let (Some(k), Some(cfg)) = (&self.constraints, &waveform) {
                let pr = s.radar_power_w.unwrap_or(cfg.pr());
                let pc = s.comm_power_w.unwrap_or(cfg.pc());
                let avg = cfg.duty_cycle() * pr + (1.0 - cfg.duty_cycle()) * pc;
                if (avg - k.avg_power_w).abs() > 1e-9 {
                    errs.push(format!(
                        "{tag}: average power rho*Pr + (1-rho)*Pc = {avg} differs from the constraint {}",
                        k.avg_power_w
                    ));
                }
                if pr > k.max_power_w + 1e-12 || pc > k.max_power_w + 1e-12 {
                    errs.push(format!("{tag}: powers ({pr}, {pc}) exceed max_power_w {}", k.max_power_w));
                }
            }
        }
        if let Some(k) = &self.constraints {
            if !(k.avg_power_w > 0.0 && k.max_power_w >= k.avg_power_w) {
                errs.push(format!(
                    "constraints need 0 < avg_power_w <= max_power_w, got {} and {}",
                    k.avg_power_w, k.max_power_w
                ));
            }
        }

        let sweep = self.sweep.as_ref().map(|d| Sweep { variable: d.variable, values: sweep_values(d, &mut errs) });
        if let Some(sw) = &sweep {
            if sw.variable == SweepVariable::LagS {
                if let Some(cfg) = &waveform {
                    let max = cfg.pri() - cfg.pulse_duration();
                    if sw.values.iter().any(|v| v.abs() > max) {
                        errs.push(format!("lag sweep must stay within +/-(T - Tp) = {max} s"));
                    }
                }
            }
            if self.constraints.is_some()
                && matches!(sw.variable, SweepVariable::RadarPowerW | SweepVariable::CommPowerW)
            {
                errs.push("power sweeps cannot be combined with a power constraint".into());
            }
        }
        if self.metrics.is_empty() && self.summary_metrics.is_empty() {
            errs.push("at least one entry in 'metrics' or 'summary_metrics' is required".into());
        }
        if !self.metrics.is_empty() && sweep.is_none() {
            errs.push("'metrics' need a 'sweep'; use 'summary_metrics' for single values".into());
        }
        let is_lag = sweep.as_ref().is_some_and(|s| s.variable == SweepVariable::LagS);
        if self.metrics.contains(&Metric::Acf) != is_lag || (is_lag && self.metrics.len() > 1) {
            errs.push("metric 'acf' goes with a 'lag_s' sweep, alone".into());
        }
        let mut seen = HashSet::new();
        for m in &self.metrics {
            if !seen.insert(m.name()) {
                errs.push(format!("metric '{}' is repeated", m.name()));
            }
        }
        for m in &self.summary_metrics {
            if !seen.insert(m.name()) {
                errs.push(format!("summary metric '{}' is repeated", m.name()));
            }
        }

        let mode = self.mode.unwrap_or(Mode::Analytic);
        let trials = self.trials.unwrap_or(1000);
        if mode.monte_carlo() && trials == 0 {
            errs.push("trials must be positive for Monte-Carlo runs".into());
        }

        if !errs.is_empty() {
            return Err(Error::ConfigInvalid(errs));
        }
        Ok(Scenario {
            name: self.name,
            description: self.description,
            waveform: waveform.expect("checked above"),
            link,
            channel,
            pfa,
            pd_target,
            range_step_m,
            acf_oversampling,
            series,
            sweep,
            metrics: self.metrics,
            summary_metrics: self.summary_metrics,
            trials,
            seed: self.seed.unwrap_or(1),
            mode,
            constraints: self.constraints,
        })
    }
}

/// Parses and validates a scenario document. Syntax and schema errors are
/// reported as [`Error::ConfigInvalid`] too.
pub fn validate_scenario(json: &str) -> Result<Scenario> {
    let doc: ScenarioDoc = serde_json::from_str(json).map_err(|e| Error::config(format!("scenario JSON: {e}")))?;
    doc.validate()
}

impl Scenario {
    /// Applies command-line overrides and re-checks the Monte-Carlo settings.
    pub fn with_overrides(mut self, trials: Option<u64>, seed: Option<u64>, mode: Option<Mode>) -> Result<Self> {
        if let Some(t) = trials {
            self.trials = t;
        }
        if let Some(s) = seed {
            self.seed = s;
        }
        if let Some(m) = mode {
            self.mode = m;
        }
        if self.mode.monte_carlo() && self.trials == 0 {
            return Err(Error::config("trials must be positive for Monte-Carlo runs"));
        }
        Ok(self)
    }

    /// `ε` of a series in dB.
    pub fn sic_factor_db(&self, series: &Series) -> f64 {
        series.sic_factor_db.unwrap_or_else(|| linear_to_db(self.channel.sic_factor))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn errors(json: &str) -> Vec<String> {
        match validate_scenario(json) {
            Err(Error::ConfigInvalid(e)) => e,
            other => panic!("expected ConfigInvalid, got {other:?}"),
        }
    }

    #[test]
    fn table_one_defaults() {
        let sc = validate_scenario(r#"{"name": "t", "summary_metrics": ["max_range_m"]}"#).unwrap();
        assert_eq!((sc.waveform.n(), sc.waveform.j(), sc.waveform.k()), (100, 900, 100));
        assert_eq!(sc.pfa, 1e-8);
        assert_eq!(sc.link, LinkBudget::table_one());
        assert!((sc.channel.noise_psd / 1.2589254117941673e-20 - 1.0).abs() < 1e-12);
        assert!((sc.channel.si_gain.norm_sqr() - 0.01).abs() < 1e-15);
        assert_eq!(sc.series.len(), 1);
        assert_eq!(sc.mode, Mode::Analytic);
    }

    #[test]
    fn pulse_longer_than_pri() {
        let e = errors(r#"{"name": "t", "waveform": {"pulse_duration_s": 2e-5}, "summary_metrics": ["psl_db"]}"#);
        assert!(e.iter().any(|m| m.contains("pulse_duration_s")), "{e:?}");
    }

    #[test]
    fn average_power_constraint() {
        let e = errors(
            r#"{"name": "t", "constraints": {"avg_power_w": 0.1, "max_power_w": 1.0},
                "series": [{"label": "x", "radar_power_w": 1.0, "comm_power_w": 0.5}],
                "summary_metrics": ["max_range_m"]}"#,
        );
        assert!(e.iter().any(|m| m.contains("0.55")), "{e:?}");
    }

    #[test]
    fn every_problem_is_listed() {
        let e = errors(
            r#"{"name": "a,b", "pfa": 2.0, "waveform": {"pris_per_cpi": 1},
                "channel": {"sic_factor_db": 3}, "metrics": ["pd"]}"#,
        );
        assert!(e.len() >= 5, "{e:?}");
    }

    #[test]
    fn schema_errors_are_config_errors() {
        assert!(!errors(r#"{"name": "t", "bogus": 1}"#).is_empty());
        assert!(!errors("{not json").is_empty());
    }

    #[test]
    fn sweep_forms() {
        let sc = validate_scenario(
            r#"{"name": "t", "sweep": {"variable": "epsilon_db", "start": -10, "stop": -8, "step": 0.5},
                "metrics": ["pd"]}"#,
        )
        .unwrap();
        assert_eq!(sc.sweep.unwrap().values, vec![-10.0, -9.5, -9.0, -8.5, -8.0]);
        let e =
            errors(r#"{"name": "t", "sweep": {"variable": "range_m", "values": [1], "step": 1}, "metrics": ["pd"]}"#);
        assert!(!e.is_empty());
        let e = errors(r#"{"name": "t", "sweep": {"variable": "range_m", "values": [100]}, "metrics": ["acf"]}"#);
        assert!(e.iter().any(|m| m.contains("acf")));
    }

    #[test]
    fn overrides_recheck_trials() {
        let sc = validate_scenario(r#"{"name": "t", "summary_metrics": ["psl_db"]}"#).unwrap();
        assert!(sc.clone().with_overrides(Some(0), None, Some(Mode::Mc)).is_err());
        let sc = sc.with_overrides(Some(5), Some(9), Some(Mode::Both)).unwrap();
        assert_eq!((sc.trials, sc.seed, sc.mode), (5, 9, Mode::Both));
        assert!("bogus".parse::<Mode>().is_err());
    }
}
