//! Claim verification, generic cohomology queries and JSON reports, shared by
//! the `modlie` binary and the acceptance tests.

pub mod claims;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::Fp;
use crate::ceco::cache::{algebra_hash, cached_cohomology, Cache};
use crate::ceco::{CochainDoc, ComplexSlice, Module, SliceSpec, DEFAULT_NNZ_BUDGET};
use crate::commalg::{divided_partial, make_divided_powers};
use crate::error::{Error, Result};
use crate::hochschild::DEFAULT_TUPLE_BUDGET;
use crate::liealg::{current_algebra, make_deformed, make_sl2, make_w1, semidirect_current, LieAlgebra};
use claims::{Check, ClaimDef, Ctx};

pub const SCHEMA: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Commit the library was built from, or "unknown" outside a git checkout.
pub fn git_hash() -> &'static str {
    option_env!("MODLIE_GIT_HASH").unwrap_or("unknown")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedBudget,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub schema: u32,
    pub version: String,
    pub git_hash: String,
    pub claim: String,
    pub reference: String,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub status: Status,
    pub cached: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Parameters for `verify`. Unset values take each claim's defaults.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub p: Option<u32>,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub seed: Option<u64>,
    pub weight_reduction: bool,
    pub budget: Option<u64>,
    /// Lift all budgets instead of skipping a claim that exceeds one.
    pub force: bool,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { p: None, n: None, m: None, seed: None, weight_reduction: true, budget: None, force: false, timings: false }
    }
}

pub const DEFAULT_P: u32 = 5;
pub const DEFAULT_SEED: u64 = 0;

fn resolve(def: &ClaimDef, o: &VerifyOptions) -> Result<(Ctx, BTreeMap<String, Value>)> {
    let field = Fp::new(o.p.unwrap_or(DEFAULT_P))?;
    let n = def.uses.n.map(|d| o.n.unwrap_or(d));
    let m = def.uses.m.map(|d| o.m.unwrap_or(d));
    if let Some(n) = n.filter(|&n| n < def.min_n) {
        return Err(Error::Precondition(format!("{} needs n >= {}, got {n}", def.id, def.min_n)));
    }
    if let Some(m) = m.filter(|&m| m < def.min_m) {
        return Err(Error::Precondition(format!("{} needs m >= {}, got {m}", def.id, def.min_m)));
    }
    let seed = def.uses.seed.then(|| o.seed.unwrap_or(DEFAULT_SEED));
    let mut params = BTreeMap::new();
    params.insert("p".to_string(), Value::from(field.p()));
    if let Some(n) = n {
        params.insert("n".into(), n.into());
    }
    if let Some(m) = m {
        params.insert("m".into(), m.into());
    }
    if let Some(s) = seed {
        params.insert("seed".into(), s.into());
    }
    params.insert("weight_reduction".into(), o.weight_reduction.into());
    let (budget, tuple_budget) =
        if o.force { (u64::MAX, u64::MAX) } else { (o.budget.unwrap_or(DEFAULT_NNZ_BUDGET), DEFAULT_TUPLE_BUDGET) };
    let ctx = Ctx {
        field,
        n: n.unwrap_or(0),
        m: m.unwrap_or(0),
        seed: seed.unwrap_or(DEFAULT_SEED),
        weight_reduction: o.weight_reduction,
        budget,
        tuple_budget,
    };
    Ok((ctx, params))
}

fn claim_key(id: &str, params: &BTreeMap<String, Value>) -> String {
    format!("claim/{id}/{}/schema={SCHEMA}/v{VERSION}", serde_json::to_string(params).expect("serializable"))
}

/// Runs one claim, serving it from `cache` when a previous run is stored.
/// Invalid parameters are an error; a failed computation is a `fail` report.
pub fn verify_claim(def: &ClaimDef, o: &VerifyOptions, cache: Option<&Cache>) -> Result<ClaimReport> {
    let (ctx, params) = resolve(def, o)?;
    let key = claim_key(def.id, &params);
    let start = Instant::now();
    let elapsed = |r: &mut ClaimReport| {
        if o.timings {
            r.wall_time_ms = Some(start.elapsed().as_millis() as u64);
        }
    };
    if let Some(mut r) = cache.and_then(|c| c.get::<ClaimReport>(&key)) {
        r.cached = true;
        elapsed(&mut r);
        return Ok(r);
    }
    let mut report = ClaimReport {
        schema: SCHEMA,
        version: VERSION.into(),
        git_hash: git_hash().into(),
        claim: def.id.into(),
        reference: def.reference.into(),
        params,
        checks: Vec::new(),
        status: Status::Fail,
        cached: false,
        error: None,
        details: None,
        wall_time_ms: None,
    };
    match def.run(&ctx) {
        Ok((checks, details)) => {
            report.status = if !checks.is_empty() && checks.iter().all(Check::passed) { Status::Pass } else { Status::Fail };
            report.checks = checks;
            report.details = details;
            if let Some(c) = cache {
                if let Err(e) = c.put(&key, &report) {
                    log::warn!("could not write cache entry for {}: {e}", def.id);
                }
            }
        }
        Err(e @ Error::Budget { .. }) => {
            report.status = Status::SkippedBudget;
            report.error = Some(format!("{e}; rerun with --force or a larger --budget"));
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    elapsed(&mut report);
    Ok(report)
}

/// `id` or `"all"`. Claims run in parallel; reports come back in registry order.
pub fn verify(id: &str, o: &VerifyOptions, cache: Option<&Cache>) -> Result<Vec<ClaimReport>> {
    let defs: Vec<&ClaimDef> = if id == "all" { claims::registry().iter().collect() } else { vec![claims::find(id)?] };
    defs.into_par_iter().map(|d| verify_claim(d, o, cache)).collect()
}

pub fn reports_json(reports: &[ClaimReport]) -> String {
    serde_json::to_string_pretty(reports).expect("serializable")
}

fn short(v: &Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 48 {
        format!("{}...", s.chars().take(45).collect::<String>())
    } else {
        s
    }
}

pub fn reports_table(reports: &[ClaimReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::SkippedBudget => "SKIP",
        };
        let params: Vec<String> = r.params.iter().filter(|(k, _)| *k != "weight_reduction").map(|(k, v)| format!("{k}={v}")).collect();
        let cached = if r.cached { " (cached)" } else { "" };
        let time = r.wall_time_ms.map(|t| format!(" {t} ms")).unwrap_or_default();
        let _ = writeln!(out, "{status} {} [{}]{cached}{time}", r.claim, params.join(" "));
        for c in &r.checks {
            let mark = if c.passed() { "ok" } else { "MISMATCH" };
            let tag = serde_json::to_value(c.provenance).expect("serializable");
            let _ = writeln!(
                out,
                "    {mark:8} {}: expected {} {} computed {}",
                c.name,
                short(&c.expected),
                tag.as_str().unwrap_or_default(),
                short(&c.computed)
            );
        }
        if let Some(e) = &r.error {
            let _ = writeln!(out, "    error: {e}");
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let _ = writeln!(out, "{passed}/{} claims pass", reports.len());
    out
}

/// Named algebras for the `cohomology` command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `W1(n)`.
    W1n,
    /// `sl(2)`, or `sl(2) ⊗ O_1(m)` for `m > 0`.
    Sl2,
    /// `W1(n) ⊗ O_1(m)`.
    Current,
    /// `L(O_1(m), ∂)`.
    Deformed,
    /// `W1(n) ⊗ O_1(m) + 1 ⊗ K∂`.
    Semidirect,
}

impl std::str::FromStr for Builtin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "w1n" => Ok(Builtin::W1n),
            "sl2" => Ok(Builtin::Sl2),
            "current" => Ok(Builtin::Current),
            "deformed" => Ok(Builtin::Deformed),
            "semidirect" => Ok(Builtin::Semidirect),
            _ => Err(Error::Malformed(format!("unknown builtin `{s}` (w1n, sl2, current, deformed, semidirect)"))),
        }
    }
}

pub fn builtin_algebra(b: Builtin, p: u32, n: u32, m: u32) -> Result<(LieAlgebra, String)> {
    let f = Fp::new(p)?;
    let needs_m = || if m == 0 { Err(Error::Precondition("this builtin needs m >= 1".into())) } else { make_divided_powers(m, &f) };
    Ok(match b {
        Builtin::W1n => (make_w1(n, &f)?, format!("W1({n})")),
        Builtin::Sl2 if m == 0 => (make_sl2(&f)?, "sl(2)".into()),
        Builtin::Sl2 => (current_algebra(&make_sl2(&f)?, &make_divided_powers(m, &f)?)?, format!("sl(2) (x) O_1({m})")),
        Builtin::Current => (current_algebra(&make_w1(n, &f)?, &needs_m()?)?, format!("W1({n}) (x) O_1({m})")),
        Builtin::Deformed => {
            let a = needs_m()?;
            (make_deformed(&a, &divided_partial(&a))?, format!("L(O_1({m}), d)"))
        }
        Builtin::Semidirect => {
            let a = needs_m()?;
            let d = divided_partial(&a);
            (semidirect_current(&make_w1(n, &f)?, &a, &[d])?, format!("W1({n}) (x) O_1({m}) + 1 (x) Kd"))
        }
    })
}

#[derive(Clone, Debug)]
pub struct CohomologyQuery {
    pub degree: usize,
    pub module: Module,
    /// Explicit weight slice; with `None` and weight reduction on, the
    /// weight-zero slice (which carries all of the cohomology) is used.
    pub weight: Option<u32>,
    pub degree_shift: Option<i64>,
    pub weight_reduction: bool,
    pub budget: u64,
    pub dump: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub schema: u32,
    pub version: String,
    pub git_hash: String,
    pub algebra: String,
    pub algebra_sha256: String,
    pub p: u32,
    pub algebra_dim: usize,
    pub degree: usize,
    pub module: String,
    pub slice: String,
    pub dim: usize,
    pub cochain_dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub cached: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<CochainDoc>>,
}

pub fn cohomology_report(l: &LieAlgebra, name: &str, q: &CohomologyQuery, cache: Option<&Cache>) -> Result<CohomologyReport> {
    let weight = q.weight.or_else(|| (q.weight_reduction && l.toral().is_some()).then_some(0));
    let spec = SliceSpec { weight, degree: q.degree_shift };
    let slice = ComplexSlice::new(l, q.module, spec)?;
    let (h, cached) = cached_cohomology(cache, &slice, q.degree, q.budget)?;
    Ok(CohomologyReport {
        schema: SCHEMA,
        version: VERSION.into(),
        git_hash: git_hash().into(),
        algebra: name.into(),
        algebra_sha256: algebra_hash(l),
        p: l.field().p(),
        algebra_dim: l.dim(),
        degree: q.degree,
        module: q.module.to_string(),
        slice: spec.describe(),
        dim: h.dim,
        cochain_dim: h.cochain_dim,
        cocycle_dim: h.cocycle_dim,
        coboundary_dim: h.coboundary_dim,
        cached,
        representatives: q.dump.then(|| h.representatives.iter().map(|c| c.to_doc()).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_run_is_cached_and_identical() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let o = VerifyOptions { p: Some(7), ..Default::default() };
        let a = verify("lambda-identities", &o, Some(&cache)).unwrap();
        let b = verify("lambda-identities", &o, Some(&cache)).unwrap();
        assert!(!a[0].cached && b[0].cached && a[0].passed());
        assert_eq!(a[0].checks, b[0].checks);
        cache.clear().unwrap();
        let c = verify("lambda-identities", &o, Some(&cache)).unwrap();
        assert_eq!(reports_json(&a), reports_json(&c));
    }

    #[test]
    fn budget_skip_and_force() {
        let o = VerifyOptions { n: Some(1), budget: Some(10), ..Default::default() };
        let r = verify("dimh2-w1n", &o, None).unwrap();
        assert_eq!(r[0].status, Status::SkippedBudget);
        let forced = verify("dimh2-w1n", &VerifyOptions { force: true, ..o }, None).unwrap();
        assert_eq!(forced[0].status, Status::Pass);
    }

    #[test]
    fn invalid_parameters_are_errors() {
        assert!(matches!(verify("nope", &VerifyOptions::default(), None), Err(Error::UnknownClaim(_))));
        let o = VerifyOptions { p: Some(3), ..Default::default() };
        assert!(verify("lambda-identities", &o, None).is_err());
        let o = VerifyOptions { n: Some(1), ..Default::default() };
        assert!(verify("kuznetsov", &o, None).is_err());
    }

    #[test]
    fn builtin_cohomology_of_sl2_current() {
        let (l, name) = builtin_algebra(Builtin::Sl2, 5, 1, 1).unwrap();
        let q = CohomologyQuery {
            degree: 2,
            module: Module::Adjoint,
            weight: None,
            degree_shift: None,
            weight_reduction: true,
            budget: DEFAULT_NNZ_BUDGET,
            dump: true,
        };
        let r = cohomology_report(&l, &name, &q, None).unwrap();
        assert_eq!(r.dim, 5);
        assert_eq!(r.representatives.unwrap().len(), 5);
    }
}
