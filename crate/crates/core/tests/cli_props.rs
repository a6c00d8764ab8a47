use proptest::prelude::*;
use rankgrowth::cli::{run, Command, RunConfig, RunInputs};

fn report(cmd: Command, cfg: &RunConfig) -> String {
    let mut buf = vec![];
    run(cmd, cfg, &RunInputs::default(), &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn reports_are_byte_identical_and_tagged() {
    let mut cfg = RunConfig::default();
    cfg.bounds.census_x_max = 1 << 15;
    cfg.bounds.audit_samples = 5;
    cfg.bounds.principal_x = 5_000;
    for cmd in [Command::Audit, Command::CharCheck, Command::Census, Command::ClassGroup, Command::Principal, Command::Admissible, Command::Quartics] {
        let a = report(cmd, &cfg);
        assert_eq!(a, report(cmd, &cfg), "{}", cmd.name());
        for line in a.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v["tag"].as_str().is_some_and(|t| !t.is_empty()), "{line}");
            assert_eq!(v["cmd"], cmd.name());
        }
    }
}

#[test]
fn ledger_from_json() {
    let inputs = RunInputs { ledger_json: Some(r#"{"dim_sel": 2, "dim_vt": 2, "local_dims": [1, 1]}"#.into()) };
    let mut buf = vec![];
    run(Command::SelmerLedger, &RunConfig::default(), &inputs, &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 4);
    let bad = RunInputs { ledger_json: Some("{".into()) };
    assert_eq!(run(Command::SelmerLedger, &RunConfig::default(), &bad, &mut vec![]).unwrap_err().exit_code(), 3);
}

proptest! {
    #[test]
    fn config_round_trips_through_toml(h in 0i64..6, x in 10u64..30, seed in any::<u32>()) {
        let mut cfg = RunConfig { seed: seed as u64, ..Default::default() };
        cfg.bounds.height = h;
        cfg.bounds.census_x_max = 1 << x;
        let text = toml::to_string(&cfg).unwrap();
        prop_assert_eq!(RunConfig::from_toml(&text).unwrap(), cfg);
    }
}
