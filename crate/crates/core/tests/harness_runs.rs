use fdisac::harness::mc::{run_trials_with, RadarChain};
use fdisac::harness::{
    builtin_scenario, builtin_scenarios, csv_string, emit_csv, parse_csv, run_scenario, validate_scenario, Mode,
    BUILTIN_SCENARIOS, CSV_HEADER,
};
use fdisac::Error;

const SMALL_MC: &str = r#"{
  "name": "small_mc",
  "waveform": {
    "bandwidth_hz": 1e6, "pri_s": 24e-6, "pulse_duration_s": 4e-6, "pris_per_cpi": 8,
    "radar_power_w": 1.0, "comm_power_w": 0.25, "psk_order": 4, "comm_constellation": "psk"
  },
  "channel": { "si_gain_db": -20, "sic_factor_db": -30, "noise_psd_dbm_per_hz_db": -83, "delay_bin": 3, "doppler_bin": 2 },
  "pfa": 1e-2,
  "sweep": { "variable": "sinr_k_db", "values": [3, 8] },
  "metrics": ["pd", "pfa"],
  "trials": 2000,
  "seed": 11,
  "mode": "both"
}"#;

#[test]
fn identical_runs_give_identical_csv() {
    let sc = validate_scenario(SMALL_MC).unwrap();
    let a = csv_string(&run_scenario(&sc).unwrap()).unwrap();
    let b = csv_string(&run_scenario(&sc).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with(&CSV_HEADER.join(",")));

    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    emit_csv(&run_scenario(&sc).unwrap(), &p1).unwrap();
    emit_csv(&run_scenario(&sc).unwrap(), &p2).unwrap();
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
}

#[test]
fn seed_changes_monte_carlo_columns_only() {
    let sc = validate_scenario(SMALL_MC).unwrap();
    let a = run_scenario(&sc).unwrap();
    let b = run_scenario(&sc.clone().with_overrides(None, Some(12), None).unwrap()).unwrap();
    assert_eq!(a.len(), b.len());
    assert!(a.iter().zip(&b).all(|(x, y)| x.analytic == y.analytic));
    assert!(a.iter().zip(&b).any(|(x, y)| x.mc != y.mc));
}

#[test]
fn worker_count_does_not_change_trials() {
    let sc = validate_scenario(SMALL_MC).unwrap();
    let p = fdisac::harness::build_point(&sc, &sc.series[0], None).unwrap();
    let chain = RadarChain::new(p.cfg, p.channel, sc.pfa).unwrap();
    let reference = run_trials_with(500, 3, 1, |s| chain.cell_magnitude(s, true)).unwrap();
    for workers in [2, 3, 8] {
        let other = run_trials_with(500, 3, workers, |s| chain.cell_magnitude(s, true)).unwrap();
        assert_eq!(reference, other, "{workers} workers");
    }
}

#[test]
fn monte_carlo_error_shrinks_with_trials() {
    let sc = validate_scenario(SMALL_MC).unwrap();
    let mean_err = |trials: u64| {
        let rows = run_scenario(&sc.clone().with_overrides(Some(trials), None, None).unwrap()).unwrap();
        let errs: Vec<f64> = rows.iter().map(|r| (r.mc.unwrap() - r.analytic.unwrap()).abs()).collect();
        errs.iter().sum::<f64>() / errs.len() as f64
    };
    let coarse = mean_err(1_000);
    let fine = mean_err(100_000);
    // O(1/sqrt(n)) predicts a tenfold drop; allow generous slack for one draw
    assert!(fine < coarse / 3.0, "mean |error| {coarse} at 1e3, {fine} at 1e5");
}

#[test]
fn csv_round_trip_of_scenario_output() {
    let sc = validate_scenario(SMALL_MC).unwrap();
    let rows = run_scenario(&sc).unwrap();
    let text = csv_string(&rows).unwrap();
    let back = parse_csv(&text).unwrap();
    assert_eq!(back.len(), rows.len());
    assert_eq!(csv_string(&back).unwrap(), text);
}

#[test]
fn every_builtin_validates_and_runs_analytically() {
    assert_eq!(builtin_scenarios().unwrap().len(), BUILTIN_SCENARIOS.len());
    for (name, _) in BUILTIN_SCENARIOS {
        let sc = builtin_scenario(name).unwrap().unwrap();
        let sc = sc.with_overrides(Some(200), None, Some(Mode::Analytic)).unwrap();
        let rows = run_scenario(&sc).unwrap();
        assert!(!rows.is_empty(), "{name}");
        assert!(rows.iter().all(|r| r.scenario == *name));
    }
}

#[test]
fn invalid_documents_are_rejected() {
    let bad = SMALL_MC.replace("\"pulse_duration_s\": 4e-6", "\"pulse_duration_s\": 40e-6");
    assert!(matches!(validate_scenario(&bad), Err(Error::ConfigInvalid(_))));
    assert!(matches!(validate_scenario("{ not json"), Err(Error::ConfigInvalid(_))));
    let unknown = SMALL_MC.replace("\"seed\": 11", "\"seed\": 11, \"sead\": 3");
    assert!(matches!(validate_scenario(&unknown), Err(Error::ConfigInvalid(_))));
}
