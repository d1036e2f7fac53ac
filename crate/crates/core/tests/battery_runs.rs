use hhinv::battery::{run_battery, BatteryConfig, FAMILIES};

fn quick(only: &[&str]) -> BatteryConfig {
    BatteryConfig {
        dims: vec![3, 4],
        only: only.iter().map(|s| s.to_string()).collect(),
        ..Default::default()
    }
}

#[test]
fn repeated_runs_are_bit_identical() {
    let cfg = quick(&["moebius-scalar-product", "exp-integral", "hlaplacian"]);
    let a = run_battery(&cfg).unwrap().to_json().unwrap();
    let b = run_battery(&cfg).unwrap().to_json().unwrap();
    assert_eq!(a, b);
}

#[test]
fn seed_changes_sampled_checks() {
    let a = run_battery(&quick(&["moebius-scalar-product"])).unwrap();
    let b = run_battery(&BatteryConfig {
        seed: 7,
        ..quick(&["moebius-scalar-product"])
    })
    .unwrap();
    assert_ne!(a.checks[0].residual, b.checks[0].residual);
}

#[test]
fn every_family_has_a_default_tolerance() {
    let cfg = BatteryConfig::default();
    for f in FAMILIES {
        assert!(cfg.tolerance(f.name) > 0.0, "{}", f.name);
    }
}

#[test]
fn families_without_a_rule_are_listed_as_omitted() {
    let cfg = BatteryConfig {
        dims: vec![6],
        only: vec!["quadrature-moments".into(), "series-identity".into()],
        ..Default::default()
    };
    let r = run_battery(&cfg).unwrap();
    assert_eq!(r.checks.len(), 1);
    let omitted = r.config["omitted"].as_array().unwrap();
    assert_eq!(omitted.len(), 1);
    assert_eq!(omitted[0]["family"], "quadrature-moments");
}
