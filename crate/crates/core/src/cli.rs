//! Configuration, subcommand dispatch and JSON-lines reporting for the
//! `rankgrowth` binary.
//!
//! Config is TOML. Every key is optional:
//!
//! ```toml
//! curve = [1, 1]           # y² = x³ + A x + B
//! cubic = [0, -1, -1]      # x³ + a x² + b x + c
//! mode = "S3"              # or "C3"; must match the cubic
//! seed = 1
//! timing = false           # fill elapsed_ms
//!
//! [bounds]
//! census_x_min = 1024
//! census_x_max = 1048576
//! height = 2               # box for square-norm classes
//! disc_cap = 1000000
//! principal_budget = 20000000
//! principal_x = 40000      # degree-2 primes of norm below this
//! audit_samples = 100
//! audit_full = true
//! parity = "odd"           # or "even"
//!
//! [external]               # Selmer dimensions, for `pipeline`
//! sel_q = 0
//! sel_k3 = 2
//!
//! [ledger]                 # for `selmer-ledger` without --ledger
//! dim_sel = 2
//! dim_vt = 2
//! local_dims = [1, 1]
//! ```
//!
//! Bounds may be overridden by `RANKGROWTH_<KEY>` in upper case, for example
//! `RANKGROWTH_CENSUS_X_MAX`, as may `RANKGROWTH_SEED`.

use crate::audit::{audit_all, audit_group, build_ambient, AuditMode, TopMode};
use crate::chars::{decompose, ClassFunction, IdentitySetup};
use crate::ellcurve::{admissible_check, AdmissibilityReport, EllipticCurve, ParityMode};
use crate::error::{Error, Result};
use crate::numfield::{
    census, census_ladder, class_group_with, cubic_field, fit_exponent, is_principal_with_congruence,
    modulus_for_discriminant, pattern_fraction, signed_places, CensusMode, CensusRecord, CensusSetup,
    ClassGroupOptions, CubicField, GaloisType, Ideal, PrincipalityOptions, RayGroup, SurrogateOptions,
};
use crate::quartic::correspondence_census;
use crate::selmer::{corollary_cases, descent_ladder, rank_bound, twist_count_projection, twist_dim_relation, SelmerLedger};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::io::Write;
use std::time::Instant;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    pub census_x_min: u64,
    pub census_x_max: u64,
    pub height: i64,
    pub disc_cap: u64,
    pub principal_budget: u64,
    pub principal_x: u64,
    pub audit_samples: usize,
    pub audit_full: bool,
    pub parity: ParityMode,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            census_x_min: 1 << 10,
            census_x_max: 1 << 20,
            height: 2,
            disc_cap: 1_000_000,
            principal_budget: 20_000_000,
            principal_x: 40_000,
            audit_samples: 100,
            audit_full: true,
            parity: ParityMode::Odd,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExternalDims {
    pub sel_q: u64,
    pub sel_k3: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub curve: [i64; 2],
    pub cubic: [i64; 3],
    pub mode: CensusMode,
    pub seed: u64,
    pub timing: bool,
    pub bounds: Bounds,
    pub external: Option<ExternalDims>,
    pub ledger: Option<SelmerLedger>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            curve: [1, 1],
            cubic: [0, -1, -1],
            mode: CensusMode::S3,
            seed: 1,
            timing: false,
            bounds: Bounds::default(),
            external: None,
            ledger: None,
        }
    }
}

fn env_override<T: std::str::FromStr>(name: &str, env: &dyn Fn(&str) -> Option<String>, slot: &mut T) -> Result<()> {
    let key = format!("RANKGROWTH_{name}");
    if let Some(v) = env(&key) {
        *slot = v.trim().parse().map_err(|_| Error::BadInput(format!("{key}={v} does not parse")))?;
    }
    Ok(())
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<RunConfig> {
        toml::from_str(text).map_err(|e| Error::BadInput(format!("malformed config: {e}")))
    }

    /// Apply overrides from a variable lookup; the binary passes `std::env::var`.
    pub fn apply_env(&mut self, env: &dyn Fn(&str) -> Option<String>) -> Result<()> {
        let b = &mut self.bounds;
        env_override("CENSUS_X_MIN", env, &mut b.census_x_min)?;
        env_override("CENSUS_X_MAX", env, &mut b.census_x_max)?;
        env_override("HEIGHT", env, &mut b.height)?;
        env_override("DISC_CAP", env, &mut b.disc_cap)?;
        env_override("PRINCIPAL_BUDGET", env, &mut b.principal_budget)?;
        env_override("PRINCIPAL_X", env, &mut b.principal_x)?;
        env_override("AUDIT_SAMPLES", env, &mut b.audit_samples)?;
        env_override("AUDIT_FULL", env, &mut b.audit_full)?;
        env_override("SEED", env, &mut self.seed)?;
        Ok(())
    }

    /// Check bounds and build the field and curve.
    pub fn validate(&self) -> Result<(CubicField, EllipticCurve)> {
        let b = &self.bounds;
        if b.census_x_min < 2 || b.census_x_max < b.census_x_min {
            return Err(Error::BadInput("census bounds must satisfy 2 ≤ census_x_min ≤ census_x_max".into()));
        }
        if b.height < 0 || b.disc_cap == 0 || b.principal_budget == 0 || b.principal_x == 0 {
            return Err(Error::BadInput("bounds must be positive".into()));
        }
        let k = cubic_field(self.cubic).map_err(|e| match e {
            Error::Reducible => Error::BadInput(format!("reducible polynomial {:?}", self.cubic)),
            e => e,
        })?;
        let want = match self.mode {
            CensusMode::S3 => GaloisType::S3,
            CensusMode::C3 => GaloisType::C3,
        };
        if k.galois != want {
            return Err(Error::BadInput(format!("mode {:?} but the cubic has Galois group {:?}", self.mode, k.galois)));
        }
        let e = EllipticCurve::new(self.curve[0], self.curve[1])?;
        Ok((k, e))
    }

    fn cg_opts(&self) -> ClassGroupOptions {
        ClassGroupOptions { disc_cap: self.bounds.disc_cap, node_budget: self.bounds.principal_budget, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Audit,
    CharCheck,
    Census,
    ClassGroup,
    Principal,
    Admissible,
    Quartics,
    SelmerLedger,
    Pipeline,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Audit => "audit",
            Command::CharCheck => "char-check",
            Command::Census => "census",
            Command::ClassGroup => "classgroup",
            Command::Principal => "principal",
            Command::Admissible => "admissible",
            Command::Quartics => "quartics",
            Command::SelmerLedger => "selmer-ledger",
            Command::Pipeline => "pipeline",
        }
    }
}

/// Writes one JSON object per line: `{"cmd", "tag", "data", "elapsed_ms"}`.
pub struct Reporter<'a> {
    out: &'a mut dyn Write,
    cmd: &'static str,
    timing: bool,
    start: Instant,
}

impl<'a> Reporter<'a> {
    pub fn new(out: &'a mut dyn Write, cmd: Command, timing: bool) -> Self {
        Reporter { out, cmd: cmd.name(), timing, start: Instant::now() }
    }

    pub fn emit(&mut self, tag: &str, data: impl Serialize) -> Result<()> {
        let mut data = serde_json::to_value(data).map_err(|e| Error::Logic(format!("serialization: {e}")))?;
        if !self.timing {
            strip_timing(&mut data);
        }
        let elapsed = self.timing.then(|| self.start.elapsed().as_millis() as u64);
        let line = json!({ "cmd": self.cmd, "tag": tag, "data": data, "elapsed_ms": elapsed });
        writeln!(self.out, "{line}").map_err(|e| Error::Logic(format!("write failed: {e}")))
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            if let Some(t) = m.get_mut("elapsed_ms") {
                *t = Value::Null;
            }
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// Extra inputs not carried by the config file.
#[derive(Clone, Debug, Default)]
pub struct RunInputs {
    /// JSON ledger for `selmer-ledger`.
    pub ledger_json: Option<String>,
}

pub fn run(cmd: Command, cfg: &RunConfig, inputs: &RunInputs, out: &mut dyn Write) -> Result<()> {
    let mut rep = Reporter::new(out, cmd, cfg.timing);
    match cmd {
        Command::Audit => run_audit(cfg, &mut rep),
        Command::CharCheck => run_char_check(&mut rep),
        Command::SelmerLedger => {
            let ledger = match &inputs.ledger_json {
                Some(s) => serde_json::from_str(s).map_err(|e| Error::BadInput(format!("malformed ledger: {e}")))?,
                None => cfg
                    .ledger
                    .clone()
                    .ok_or_else(|| Error::BadInput("no ledger given: use --ledger or a [ledger] table".into()))?,
            };
            run_ledger(&ledger, &mut rep)
        }
        _ => {
            let (k, e) = cfg.validate()?;
            match cmd {
                Command::Census => run_census(cfg, &k, &e, &mut rep).map(|_| ()),
                Command::ClassGroup => run_classgroup(cfg, &k, &mut rep),
                Command::Principal => run_principal(cfg, &k, &e, &mut rep),
                Command::Admissible => run_admissible(cfg, &k, &e, &mut rep).map(|_| ()),
                Command::Quartics => run_quartics(cfg, &k, &mut rep),
                Command::Pipeline => run_pipeline(cfg, &k, &e, &mut rep),
                _ => unreachable!(),
            }
        }
    }
}

fn top_mode(m: CensusMode) -> TopMode {
    match m {
        CensusMode::S3 => TopMode::S3,
        CensusMode::C3 => TopMode::C3,
    }
}

fn run_audit(cfg: &RunConfig, rep: &mut Reporter) -> Result<()> {
    let mode = top_mode(cfg.mode);
    let ambient = build_ambient(mode);
    let mut bad = 0;
    if cfg.bounds.audit_full {
        let r = audit_group("ambient".into(), &ambient.group, ambient.pairs(), mode);
        bad += usize::from(r.counterexample || r.validated != Some(true));
        rep.emit("audit-ambient", &r)?;
    }
    let samples = cfg.bounds.audit_samples;
    let run = audit_all(
        &ambient,
        AuditMode::Sampled { samples, seed: cfg.seed, max_draws: samples.saturating_mul(50).max(1) },
        0,
    )?;
    for r in &run.reports {
        rep.emit("audit-sample", r)?;
    }
    let counter = run.counterexamples().count();
    bad += counter;
    rep.emit(
        "audit-summary",
        json!({ "mode": mode, "samples": run.reports.len(), "distinct": run.distinct, "rejected": run.rejected, "counterexamples": counter }),
    )?;
    if bad > 0 {
        return Err(Error::Logic(format!("{bad} audited groups lack a verified witness")));
    }
    Ok(())
}

#[derive(Serialize)]
struct CharCheck {
    group: String,
    ind_k: Vec<String>,
    ind_k3: Vec<String>,
    ind_m: Vec<String>,
    ind_k_ok: bool,
    ind_k3_ok: bool,
    ind_m_ok: bool,
    basis_size: usize,
    identity_holds: bool,
}

pub fn char_check(s: &IdentitySetup) -> Result<bool> {
    let one_std = s.trivial.add(&s.std)?;
    let one_theta = s.trivial.add(&s.theta)?;
    let target_m = one_theta.add(&s.std)?;
    let mut ok = s.ind_k == one_std && s.ind_k3 == one_theta && s.ind_m == target_m;
    for chi in s.class_indicators().iter().chain(&s.table) {
        let (l, r) = s.rank_growth_identity(chi)?;
        ok &= l == r;
    }
    Ok(ok)
}

fn run_char_check(rep: &mut Reporter) -> Result<()> {
    let mut all = true;
    for s in [IdentitySetup::s4()?, IdentitySetup::a4()?] {
        let dec = |f: &ClassFunction| -> Result<Vec<String>> {
            Ok(decompose(&s.table, f)?.iter().map(|c| c.to_string()).collect())
        };
        let basis = s.class_indicators();
        let mut identity = true;
        for chi in &basis {
            let (l, r) = s.rank_growth_identity(chi)?;
            identity &= l == r;
        }
        let row = CharCheck {
            group: s.classes.name.clone(),
            ind_k: dec(&s.ind_k)?,
            ind_k3: dec(&s.ind_k3)?,
            ind_m: dec(&s.ind_m)?,
            ind_k_ok: s.ind_k == s.trivial.add(&s.std)?,
            ind_k3_ok: s.ind_k3 == s.trivial.add(&s.theta)?,
            ind_m_ok: s.ind_m == s.trivial.add(&s.theta)?.add(&s.std)?,
            basis_size: basis.len(),
            identity_holds: identity,
        };
        all &= row.ind_k_ok && row.ind_k3_ok && row.ind_m_ok && row.identity_holds;
        rep.emit("character-identity", &row)?;
    }
    if !all {
        return Err(Error::Logic("character identity failed".into()));
    }
    Ok(())
}

fn ladder_xs(cfg: &RunConfig) -> Vec<u64> {
    let lo = cfg.bounds.census_x_min.next_power_of_two().trailing_zeros();
    let hi = 63 - cfg.bounds.census_x_max.leading_zeros();
    census_ladder(lo, hi.max(lo))
}

fn run_census(cfg: &RunConfig, k: &CubicField, e: &EllipticCurve, rep: &mut Reporter) -> Result<Vec<CensusRecord>> {
    // the congruence surrogate needs an odd class number and a distinguished place
    let adm = admissible_check(e, k, cfg.bounds.parity, &cfg.cg_opts())?;
    let odd_h = adm.class_number.parse::<u64>().is_ok_and(|h| h % 2 == 1);
    let sur = (odd_h && adm.v0.is_some()).then(|| SurrogateOptions {
        v0: adm.v0.as_ref().map(|p| p.place),
        class_group: cfg.cg_opts(),
        ..Default::default()
    });
    let setup = CensusSetup::new(k, e, cfg.mode, cfg.bounds.census_x_max, sur.as_ref())?;
    rep.emit(
        "census-setup",
        json!({
            "mode": cfg.mode,
            "qualifying_primes": setup.primes.len(),
            "first_primes": setup.primes.iter().take(8).map(|p| p.p).collect::<Vec<_>>(),
            "m_degree": setup.m_degree,
            "s_size": setup.s_size,
            "surrogate": setup.surrogate.is_some(),
            "excluded": setup.excluded,
        }),
    )?;
    let sqrt_bound = (cfg.bounds.census_x_max as f64).sqrt() as u64 + 1;
    let (hits, total) = pattern_fraction(k, cfg.mode, sqrt_bound.max(100))?;
    rep.emit(
        "chebotarev",
        json!({ "bound": sqrt_bound.max(100), "hits": hits, "primes": total, "fraction": hits as f64 / total.max(1) as f64 }),
    )?;
    let records = census(&setup, &ladder_xs(cfg))?;
    for r in &records {
        rep.emit("census-count", r)?;
    }
    match fit_exponent(&records) {
        Ok(f) => rep.emit("census-fit", &f)?,
        Err(e) => rep.emit("census-fit", json!({ "skipped": e.to_string() }))?,
    }
    Ok(records)
}

fn run_classgroup(cfg: &RunConfig, k: &CubicField, rep: &mut Reporter) -> Result<()> {
    let cg = class_group_with(k, &cfg.cg_opts())?;
    rep.emit(
        "class-group",
        json!({
            "cubic": k.coeffs,
            "disc": k.disc.to_string(),
            "invariants": cg.invariants.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "order": cg.order.to_string(),
            "two_rank": cg.two_rank(),
            "factor_base": cg.factor_base.len(),
            "relations": cg.relations,
            "units": &cg.units,
        }),
    )
}

fn run_principal(cfg: &RunConfig, k: &CubicField, e: &EllipticCurve, rep: &mut Reporter) -> Result<()> {
    let cg = class_group_with(k, &cfg.cg_opts())?;
    let adm = admissible_check(e, k, cfg.bounds.parity, &cfg.cg_opts())?;
    let v0 = adm.v0.as_ref().map(|p| p.place);
    let ray = RayGroup::new(k, modulus_for_discriminant(e.discriminant()), signed_places(k, v0))?;
    let opts = PrincipalityOptions { node_budget: cfg.bounds.principal_budget, ..Default::default() };
    for q in k.degree2_primes(cfg.bounds.principal_x) {
        let a = Ideal::prime(k, &q);
        let r = is_principal_with_congruence(k, &cg, &ray, &a, &opts)?;
        rep.emit("principality", json!({ "p": q.p, "modulus": ray.modulus, "v0": v0, "result": r }))?;
    }
    Ok(())
}

fn run_admissible(cfg: &RunConfig, k: &CubicField, e: &EllipticCurve, rep: &mut Reporter) -> Result<AdmissibilityReport> {
    let r = admissible_check(e, k, cfg.bounds.parity, &cfg.cg_opts())?;
    rep.emit("admissibility", &r)?;
    Ok(r)
}

fn run_quartics(cfg: &RunConfig, k: &CubicField, rep: &mut Reporter) -> Result<()> {
    let (c, pairs) = correspondence_census(k, cfg.bounds.height)?;
    for (cls, q) in &pairs {
        rep.emit("quartic-class", json!({ "class": cls, "quartic": q }))?;
    }
    rep.emit("correspondence", &c)?;
    if c.resolvent_failures > 0 {
        return Err(Error::Logic(format!("{} quartics have the wrong resolvent field", c.resolvent_failures)));
    }
    Ok(())
}

fn run_ledger(l: &SelmerLedger, rep: &mut Reporter) -> Result<()> {
    rep.emit("selmer-relation", json!({ "ledger": l, "possible_dims": twist_dim_relation(l)? }))?;
    rep.emit("selmer-corollary", corollary_cases(l)?)?;
    rep.emit("descent-ladder", descent_ladder(l.dim_sel as i64)?)?;
    rep.emit("rank-bound", rank_bound(l)?)
}

fn run_pipeline(cfg: &RunConfig, k: &CubicField, e: &EllipticCurve, rep: &mut Reporter) -> Result<()> {
    let ext = cfg.external.ok_or_else(|| Error::BadInput("pipeline needs [external] sel_q and sel_k3".into()))?;
    let adm = run_admissible(cfg, k, e, rep)?;
    let hypothesis = ext.sel_q == 0;
    rep.emit("base-selmer", json!({ "sel_q": ext.sel_q, "sel_k3": ext.sel_k3, "vanishes_over_q": hypothesis }))?;
    if !hypothesis {
        return Err(Error::Logic(format!("Sel_2(E/Q) has dimension {}, need 0", ext.sel_q)));
    }
    let ladder = descent_ladder(ext.sel_k3 as i64)?;
    rep.emit("descent-ladder", &ladder)?;
    let records = run_census(cfg, k, e, rep)?;
    let proj = twist_count_projection(&records, ladder.endpoint, cfg.mode, true)?;
    rep.emit("twist-projection", &proj)?;
    let ledger = SelmerLedger { dim_sel: ladder.endpoint, dim_vt: 0, local_dims: vec![], torsion_dim: None, sha_dim: None };
    let rb = rank_bound(&ledger)?;
    let mut assumptions = ladder.assumptions.clone();
    assumptions.extend(proj.assumptions.iter().cloned());
    if rb.assumes_parity {
        assumptions.push("parity conjecture for the twist".into());
    }
    rep.emit(
        "rank-conclusion",
        json!({
            "admissible": adm.admissible,
            "twist_selmer_dim": ladder.endpoint,
            "rank": rb.rank,
            "assumes_parity": rb.assumes_parity,
            "assumptions": assumptions,
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_lines(cmd: Command, cfg: &RunConfig) -> (Result<()>, Vec<Value>) {
        let mut buf = vec![];
        let r = run(cmd, cfg, &RunInputs::default(), &mut buf);
        let lines = String::from_utf8(buf).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        (r, lines)
    }

    #[test]
    fn char_check_default_config() {
        let (r, lines) = run_lines(Command::CharCheck, &RunConfig::default());
        r.unwrap();
        assert_eq!(lines.len(), 2);
        assert!(lines.iter().all(|l| l["data"]["identity_holds"] == true && l["elapsed_ms"].is_null()));
    }

    #[test]
    fn config_parsing_and_env() {
        let c = RunConfig::from_toml("cubic = [0, -3, -1]\nmode = \"C3\"\n[bounds]\nheight = 1\n").unwrap();
        assert_eq!((c.mode, c.bounds.height, c.bounds.census_x_max), (CensusMode::C3, 1, 1 << 20));
        assert!(c.validate().is_ok());
        assert!(RunConfig::from_toml("bogus = 1").is_err());
        let mut c = RunConfig::default();
        c.apply_env(&|k| (k == "RANKGROWTH_HEIGHT").then(|| "3".to_string())).unwrap();
        assert_eq!(c.bounds.height, 3);
        let e = c.apply_env(&|_| Some("x".into())).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn reducible_and_mismatched_cubics_are_rejected() {
        let c = RunConfig { cubic: [0, -1, 0], ..Default::default() };
        let e = c.validate().unwrap_err();
        assert!(e.to_string().contains("reducible polynomial"), "{e}");
        assert_eq!(e.exit_code(), 3);
        let c = RunConfig { mode: CensusMode::C3, ..Default::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn pipeline_even_and_odd() {
        let mut cfg = RunConfig { external: Some(ExternalDims { sel_q: 0, sel_k3: 2 }), ..Default::default() };
        cfg.bounds.census_x_max = 1 << 16;
        let (r, lines) = run_lines(Command::Pipeline, &cfg);
        r.unwrap();
        let last = lines.last().unwrap();
        assert_eq!(last["tag"], "rank-conclusion");
        assert_eq!(last["data"]["rank"], 0);
        assert_eq!(last["data"]["assumes_parity"], false);
        assert_eq!(lines[0]["data"]["admissible"], true);
        cfg.external = Some(ExternalDims { sel_q: 0, sel_k3: 3 });
        let (_, lines) = run_lines(Command::Pipeline, &cfg);
        let last = lines.last().unwrap();
        assert_eq!((last["data"]["rank"].clone(), last["data"]["assumes_parity"].clone()), (json!(1), json!(true)));
        cfg.external = Some(ExternalDims { sel_q: 1, sel_k3: 2 });
        assert_eq!(run_lines(Command::Pipeline, &cfg).0.unwrap_err().exit_code(), 1);
    }

    #[test]
    fn reports_are_deterministic() {
        let mut cfg = RunConfig::default();
        cfg.bounds.census_x_max = 1 << 14;
        let a = run_lines(Command::Census, &cfg).1;
        let b = run_lines(Command::Census, &cfg).1;
        assert_eq!(a, b);
        let ledger = RunConfig { ledger: Some(SelmerLedger { dim_sel: 2, dim_vt: 2, local_dims: vec![1, 1], torsion_dim: None, sha_dim: None }), ..Default::default() };
        let (r, lines) = run_lines(Command::SelmerLedger, &ledger);
        r.unwrap();
        assert_eq!(lines[1]["data"], json!({ "kind": "exact", "value": 0 }));
    }
}
