//! CSV persistence and text sparklines for result rows.

use std::path::Path;

use super::run::ResultRow;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 8] = ["scenario", "sweep_value", "metric", "analytic", "mc", "mc_ci95", "trials", "seed"];

/// Formats `x` with 9 significant digits, `%.9g` style.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..9).contains(&exp) {
        format!("{}e{exp}", trim_zeros(mant))
    } else {
        trim_zeros(&format!("{:.*}", (8 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt_num(v: Option<f64>) -> String {
    v.map(format_number).unwrap_or_default()
}

fn parse_opt<T: std::str::FromStr>(field: &str, s: &str) -> Result<Option<T>> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| Error::config(format!("cannot parse {field} value '{s}'")))
}

/// Renders rows as CSV text with the standard header.
pub fn csv_string(rows: &[ResultRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyResults);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(to_io)?;
    for r in rows {
        w.write_record([
            r.scenario.clone(),
            opt_num(r.sweep_value),
            r.metric.clone(),
            opt_num(r.analytic),
            opt_num(r.mc),
            opt_num(r.mc_ci95),
            r.trials.map(|t| t.to_string()).unwrap_or_default(),
            r.seed.to_string(),
        ])
        .map_err(to_io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields"))
}

/// Writes rows to `path`. Nothing is created when `rows` is empty.
pub fn emit_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    let text = csv_string(rows)?;
    std::fs::write(path, text)?;
    Ok(())
}

/// Parses CSV text produced by [`csv_string`].
pub fn parse_csv(text: &str) -> Result<Vec<ResultRow>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let bad = |e: csv::Error| Error::config(format!("results CSV: {e}"));
    let header = rd.headers().map_err(bad)?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::config(format!("results CSV: unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(bad)?;
        rows.push(ResultRow {
            scenario: rec[0].to_string(),
            sweep_value: parse_opt("sweep_value", &rec[1])?,
            metric: rec[2].to_string(),
            analytic: parse_opt("analytic", &rec[3])?,
            mc: parse_opt("mc", &rec[4])?,
            mc_ci95: parse_opt("mc_ci95", &rec[5])?,
            trials: parse_opt("trials", &rec[6])?,
            seed: parse_opt("seed", &rec[7])?.ok_or_else(|| Error::config("results CSV: missing seed"))?,
        });
    }
    Ok(rows)
}

const BARS: [char; 8] = ['▁', '▂', '▃', '▄', '▅', '▆', '▇', '█'];

/// Longest sparkline; longer sweeps are sampled evenly.
const MAX_CURVE_WIDTH: usize = 80;

/// One sparkline per metric over its sweep, using the analytic value where
/// present and the Monte-Carlo value otherwise. The range shown covers every
/// point, including those dropped from a long line.
pub fn emit_curve(rows: &[ResultRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyResults);
    }
    let mut order: Vec<&str> = Vec::new();
    for r in rows {
        if !order.contains(&r.metric.as_str()) {
            order.push(&r.metric);
        }
    }
    let width = order.iter().map(|m| m.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for m in order {
        let vals: Vec<Option<f64>> =
            rows.iter().filter(|r| r.metric == m).map(|r| r.analytic.or(r.mc).filter(|v| v.is_finite())).collect();
        let finite: Vec<f64> = vals.iter().flatten().copied().collect();
        let (lo, hi) = finite.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        let shown: Vec<Option<f64>> = if vals.len() > MAX_CURVE_WIDTH {
            (0..MAX_CURVE_WIDTH).map(|i| vals[i * (vals.len() - 1) / (MAX_CURVE_WIDTH - 1)]).collect()
        } else {
            vals.clone()
        };
        let line: String = shown
            .iter()
            .map(|v| match v {
                None => ' ',
                Some(v) if hi > lo => BARS[(((v - lo) / (hi - lo)) * 7.0).round() as usize],
                Some(_) => BARS[3],
            })
            .collect();
        let range = if finite.is_empty() {
            "[no values]".to_string()
        } else {
            format!("[{}, {}]", format_number(lo), format_number(hi))
        };
        out.push_str(&format!("{m:<width$}  {line}  {range}\n"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: f64) -> ResultRow {
        ResultRow {
            scenario: "s".into(),
            sweep_value: Some(v),
            metric: "pd".into(),
            analytic: Some(v * v),
            mc: None,
            mc_ci95: None,
            trials: None,
            seed: 7,
        }
    }

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(0.007), "0.007");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333");
        assert_eq!(format_number(-123456789.4), "-123456789");
        assert_eq!(format_number(1234567890.0), "1.23456789e9");
        assert_eq!(format_number(2.796022430406e-15), "2.79602243e-15");
        assert_eq!(format_number(9.9999999999), "10");
        assert_eq!(format_number(1e-5), "0.00001");
        assert_eq!(format_number(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn empty_rows_rejected() {
        assert!(matches!(csv_string(&[]), Err(Error::EmptyResults)));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        assert!(emit_csv(&[], &path).is_err());
        assert!(!path.exists());
    }

    #[test]
    fn single_row_is_two_lines() {
        let text = csv_string(&[row(0.5)]).unwrap();
        assert_eq!(text, "scenario,sweep_value,metric,analytic,mc,mc_ci95,trials,seed\ns,0.5,pd,0.25,,,,7\n");
    }

    #[test]
    fn round_trip() {
        let rows: Vec<ResultRow> = (0..20).map(|i| row(i as f64 * 0.1372)).collect();
        let text = csv_string(&rows).unwrap();
        let back = parse_csv(&text).unwrap();
        assert_eq!(csv_string(&back).unwrap(), text);
    }

    #[test]
    fn sparkline_spans_range() {
        let rows: Vec<ResultRow> = (0..8).map(|i| row(i as f64)).collect();
        let s = emit_curve(&rows).unwrap();
        assert!(s.starts_with("pd  ▁"));
        assert!(s.contains('█'));
        assert!(s.trim_end().ends_with("[0, 49]"));
    }

    #[test]
    fn long_sweeps_are_sampled() {
        let rows: Vec<ResultRow> = (0..1801).map(|i| row(i as f64)).collect();
        let s = emit_curve(&rows).unwrap();
        let bars = s.chars().filter(|c| BARS.contains(c)).count();
        assert_eq!(bars, MAX_CURVE_WIDTH);
        assert!(s.starts_with("pd  ▁"));
    }
}
