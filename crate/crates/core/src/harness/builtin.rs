//! Scenario files shipped under `scenarios/`, compiled in.

use super::scenario::{validate_scenario, Scenario};
use crate::error::Result;

macro_rules! builtin {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../../../scenarios/", $name, ".json")))),*]
    };
}

/// `(name, JSON document)` for every builtin scenario.
pub const BUILTIN_SCENARIOS: &[(&str, &str)] = builtin!(
    "fig_sic_factor",
    "fig_pd_vs_rate",
    "fig_pd_vs_range",
    "fig_acf",
    "mc_validation",
    "comm_ser",
    "ser_validation",
);

/// All builtin scenarios, validated.
pub fn builtin_scenarios() -> Result<Vec<Scenario>> {
    BUILTIN_SCENARIOS.iter().map(|(_, json)| validate_scenario(json)).collect()
}

pub fn builtin_scenario(name: &str) -> Option<Result<Scenario>> {
    BUILTIN_SCENARIOS.iter().find(|(n, _)| *n == name).map(|(_, json)| validate_scenario(json))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate_and_match_names() {
        for (name, json) in BUILTIN_SCENARIOS {
            let sc = validate_scenario(json).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(&sc.name, name);
        }
        assert!(builtin_scenario("nope").is_none());
    }
}
