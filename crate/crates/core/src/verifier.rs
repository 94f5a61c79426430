//! Sweep engine: expands a parameter grid into [`IdentityCase`]s, evaluates
//! both sides on a worker pool, compares them exactly, and assembles a
//! [`Report`] whose result order is the grid order regardless of scheduling.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genbinom::{gen_binom_bruteforce_all, DEFAULT_ORACLE_LIMIT};
use crate::identities::{Evaluator, Form, IdentityCase, IdentityId, SideValue};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep configuration: {0}")]
    Config(String),
    #[error("generalized binomial table for {partition} disagrees with the brute-force count at r = {r}")]
    OracleMismatch { partition: String, r: usize },
    #[error("failed to start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Inclusive integer interval, written `a..b` or a single `a`. Serializes as
/// `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct InclusiveRange {
    pub lo: u32,
    pub hi: u32,
}

impl InclusiveRange {
    pub fn new(lo: u32, hi: u32) -> Self {
        InclusiveRange { lo, hi }
    }

    pub fn single(v: u32) -> Self {
        InclusiveRange { lo: v, hi: v }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl From<(u32, u32)> for InclusiveRange {
    fn from((lo, hi): (u32, u32)) -> Self {
        InclusiveRange { lo, hi }
    }
}

impl From<InclusiveRange> for (u32, u32) {
    fn from(r: InclusiveRange) -> Self {
        (r.lo, r.hi)
    }
}

impl fmt::Display for InclusiveRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for InclusiveRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid range `{s}` (expected `a..b` or `a`)");
        let int = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        match s.split_once("..") {
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                Ok(InclusiveRange::new(int(lo)?, int(hi)?))
            }
            None => Ok(InclusiveRange::single(int(s)?)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum FormSelection {
    Signed,
    Unsigned,
    Both,
}

impl FormSelection {
    fn forms(self) -> &'static [Form] {
        match self {
            FormSelection::Signed => &[Form::Signed],
            FormSelection::Unsigned => &[Form::Unsigned],
            FormSelection::Both => &[Form::Signed, Form::Unsigned],
        }
    }
}

impl FromStr for FormSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "SIGNED" => Ok(FormSelection::Signed),
            "UNSIGNED" => Ok(FormSelection::Unsigned),
            "BOTH" => Ok(FormSelection::Both),
            _ => Err(format!("unknown form `{s}` (expected SIGNED, UNSIGNED or BOTH)")),
        }
    }
}

/// Largest accepted oracle limit; brute force visits `2^limit` subsets.
pub const MAX_ORACLE_LIMIT: u32 = 24;

fn default_workers() -> usize {
    1
}

fn default_oracle_limit() -> u32 {
    DEFAULT_ORACLE_LIMIT
}

fn default_true() -> bool {
    true
}

/// A parameter grid. Identities that take no `r` (or `s`, or form) ignore
/// that axis; identities that require `s >= 1` skip `s = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub identity_ids: BTreeSet<IdentityId>,
    pub n_range: InclusiveRange,
    pub r_range: InclusiveRange,
    pub s_range: InclusiveRange,
    pub form: FormSelection,
    #[serde(default = "default_workers")]
    pub worker_count: usize,
    /// Partitions of weight up to this limit have their `⟨λ, r⟩` tables
    /// cross-checked against brute-force counting before evaluation.
    #[serde(default = "default_oracle_limit")]
    pub oracle_limit: u32,
    /// Mark cases outside the conventions the identities are stated for
    /// (`CONJ4` with `r = 1`, `HOCKEY_STICK` with `k = 1`) as SKIPPED.
    #[serde(default = "default_true")]
    pub skip_conventional: bool,
    /// Test fixture: add one to every right side.
    #[serde(default)]
    pub perturb_rhs: bool,
}

impl SweepConfig {
    pub fn new<I: IntoIterator<Item = IdentityId>>(
        ids: I,
        n_range: InclusiveRange,
        r_range: InclusiveRange,
        s_range: InclusiveRange,
        form: FormSelection,
    ) -> Self {
        SweepConfig {
            identity_ids: ids.into_iter().collect(),
            n_range,
            r_range,
            s_range,
            form,
            worker_count: default_workers(),
            oracle_limit: DEFAULT_ORACLE_LIMIT,
            skip_conventional: true,
            perturb_rhs: false,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.worker_count = workers;
        self
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        let err = |m: String| Err(SweepError::Config(m));
        if self.identity_ids.is_empty() {
            return err("no identities selected".into());
        }
        for (name, range) in [("n", self.n_range), ("r", self.r_range), ("s", self.s_range)] {
            if range.is_empty() {
                return err(format!("{name} range {range} is empty"));
            }
        }
        if self.n_range.lo < 1 {
            return err("n range must start at 1 or above".into());
        }
        if self.r_range.lo < 1 {
            return err("r range must start at 1 or above".into());
        }
        let zero_s_ok = self.identity_ids.iter().any(|id| id.min_s() == 0);
        if self.s_range.lo < 1 && !zero_s_ok {
            return err("s = 0 is only meaningful for CONJ3 or BINOMIAL_TYPE".into());
        }
        if self.worker_count < 1 {
            return err("worker count must be at least 1".into());
        }
        if !(1..=MAX_ORACLE_LIMIT).contains(&self.oracle_limit) {
            return err(format!("oracle limit must lie in 1..{MAX_ORACLE_LIMIT}"));
        }
        Ok(())
    }

    /// Every case of the grid in `(identity, n, r, s, form)` order.
    pub fn cases(&self) -> Vec<IdentityCase> {
        let mut out = Vec::new();
        for &id in &self.identity_ids {
            let rs: Vec<Option<u32>> = if id.takes_r() {
                self.r_range.iter().map(Some).collect()
            } else {
                vec![None]
            };
            let ss: Vec<Option<u32>> = if id.takes_s() {
                self.s_range
                    .iter()
                    .filter(|&s| s >= id.min_s())
                    .map(Some)
                    .collect()
            } else {
                vec![None]
            };
            let forms: Vec<Option<Form>> = if id.takes_form() {
                self.form.forms().iter().copied().map(Some).collect()
            } else {
                vec![None]
            };
            for n in self.n_range.iter() {
                for &r in &rs {
                    for &s in &ss {
                        for &form in &forms {
                            let case = IdentityCase::new(id, n, r, s, form)
                                .expect("grid parameters satisfy case constraints after validation");
                            out.push(case);
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CaseStatus {
    Verified,
    Counterexample,
    Skipped,
}

impl fmt::Display for CaseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseStatus::Verified => "VERIFIED",
            CaseStatus::Counterexample => "COUNTEREXAMPLE",
            CaseStatus::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: IdentityCase,
    pub status: CaseStatus,
    pub lhs: Option<SideValue>,
    pub rhs: Option<SideValue>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub verified: usize,
    pub counterexamples: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: SweepConfig,
    pub results: Vec<CaseResult>,
    pub summary: Summary,
    pub total_ms: f64,
}

impl Report {
    pub fn has_counterexample(&self) -> bool {
        self.summary.counterexamples > 0
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &CaseResult> {
        self.results
            .iter()
            .filter(|c| c.status == CaseStatus::Counterexample)
    }

    /// 0 when nothing failed, 1 when any case is a counterexample.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_counterexample())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    /// The report with timing fields zeroed and the worker count cleared, for
    /// comparing runs that differ only in scheduling.
    pub fn without_timing(&self) -> Report {
        let mut copy = self.clone();
        copy.total_ms = 0.0;
        copy.config.worker_count = 0;
        for result in &mut copy.results {
            result.elapsed_ms = 0.0;
        }
        copy
    }

    /// One row per case: `case,status,lhs,rhs,elapsed_ms`, sides as JSON text.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["case", "status", "lhs", "rhs", "elapsed_ms"])
            .expect("in-memory csv write");
        for result in &self.results {
            let side = |v: &Option<SideValue>| {
                v.as_ref()
                    .map(|v| serde_json::to_string(v).expect("side serialization"))
                    .unwrap_or_default()
            };
            writer
                .write_record([
                    result.case.to_string(),
                    result.status.to_string(),
                    side(&result.lhs),
                    side(&result.rhs),
                    format!("{:.3}", result.elapsed_ms),
                ])
                .expect("in-memory csv write");
        }
        String::from_utf8(writer.into_inner().expect("csv flush")).expect("csv is utf-8")
    }
}

/// Evaluates single cases against a shared [`Evaluator`].
#[derive(Debug)]
pub struct Verifier {
    evaluator: Evaluator,
    skip_conventional: bool,
    perturb_rhs: bool,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier::new()
    }
}

impl Verifier {
    pub fn new() -> Self {
        Verifier {
            evaluator: Evaluator::new(),
            skip_conventional: true,
            perturb_rhs: false,
        }
    }

    pub fn with_options(skip_conventional: bool, perturb_rhs: bool) -> Self {
        Verifier {
            evaluator: Evaluator::new(),
            skip_conventional,
            perturb_rhs,
        }
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.evaluator
    }

    fn is_conventional_boundary(case: &IdentityCase) -> bool {
        matches!(
            (case.id(), case.r()),
            (IdentityId::Conj4, Some(1)) | (IdentityId::HockeyStick, Some(1))
        )
    }

    pub fn compare_case(&self, case: &IdentityCase) -> CaseResult {
        let start = Instant::now();
        if self.skip_conventional && Self::is_conventional_boundary(case) {
            return CaseResult {
                case: *case,
                status: CaseStatus::Skipped,
                lhs: None,
                rhs: None,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            };
        }
        let (lhs, mut rhs) = self.evaluator.sides(case);
        if self.perturb_rhs {
            rhs = rhs.perturbed();
        }
        let status = if lhs == rhs {
            CaseStatus::Verified
        } else {
            CaseStatus::Counterexample
        };
        CaseResult {
            case: *case,
            status,
            lhs: Some(lhs),
            rhs: Some(rhs),
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }

    /// Checks the `⟨λ, r⟩` table of every partition of `n` against brute force.
    fn cross_check_genbinom(&self, n: u32, limit: u32) -> Result<(), SweepError> {
        for lambda in self.evaluator.partitions(n, 0, None).iter() {
            let counts = gen_binom_bruteforce_all(lambda, limit)
                .expect("weight is within the oracle limit by construction");
            let table = self.evaluator.genbinom_cache().get(lambda);
            for (r, &count) in counts.iter().enumerate() {
                if table.coeff(r) != num_bigint::BigUint::from(count) {
                    return Err(SweepError::OracleMismatch {
                        partition: lambda.to_string(),
                        r,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Runs the whole grid. Caches are filled for every `n` before fan-out so
/// workers only read them.
pub fn run_sweep(config: &SweepConfig) -> Result<Report, SweepError> {
    config.validate()?;
    let start = Instant::now();
    let cases = config.cases();
    let verifier = Verifier::with_options(config.skip_conventional, config.perturb_rhs);

    if config
        .identity_ids
        .iter()
        .any(|id| matches!(id, IdentityId::Conj1 | IdentityId::TopCoeff))
    {
        for n in config.n_range.iter() {
            verifier.evaluator().prefill(n);
            if n <= config.oracle_limit {
                verifier.cross_check_genbinom(n, config.oracle_limit)?;
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.worker_count)
        .build()?;
    let results: Vec<CaseResult> =
        pool.install(|| cases.par_iter().map(|c| verifier.compare_case(c)).collect());

    let mut summary = Summary::default();
    for result in &results {
        match result.status {
            CaseStatus::Verified => summary.verified += 1,
            CaseStatus::Counterexample => summary.counterexamples += 1,
            CaseStatus::Skipped => summary.skipped += 1,
        }
    }
    Ok(Report {
        config: config.clone(),
        results,
        summary,
        total_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(list: &[IdentityId]) -> BTreeSet<IdentityId> {
        list.iter().copied().collect()
    }

    #[test]
    fn range_parsing() {
        assert_eq!(
            "1..7".parse::<InclusiveRange>().unwrap(),
            InclusiveRange::new(1, 7)
        );
        assert_eq!(
            "1..=7".parse::<InclusiveRange>().unwrap(),
            InclusiveRange::new(1, 7)
        );
        assert_eq!("4".parse::<InclusiveRange>().unwrap(), InclusiveRange::single(4));
        assert!("a..3".parse::<InclusiveRange>().is_err());
    }

    #[test]
    fn grid_order_and_axes() {
        let config = SweepConfig::new(
            [IdentityId::Conj2, IdentityId::Classical],
            InclusiveRange::new(1, 2),
            InclusiveRange::new(1, 3),
            InclusiveRange::new(1, 2),
            FormSelection::Both,
        );
        let text: Vec<String> = config.cases().iter().map(|c| c.to_string()).collect();
        assert_eq!(
            text,
            [
                "CLASSICAL(n=1,form=SIGNED)",
                "CLASSICAL(n=1,form=UNSIGNED)",
                "CLASSICAL(n=2,form=SIGNED)",
                "CLASSICAL(n=2,form=UNSIGNED)",
                "CONJ2(n=1,s=1,form=SIGNED)",
                "CONJ2(n=1,s=1,form=UNSIGNED)",
                "CONJ2(n=1,s=2,form=SIGNED)",
                "CONJ2(n=1,s=2,form=UNSIGNED)",
                "CONJ2(n=2,s=1,form=SIGNED)",
                "CONJ2(n=2,s=1,form=UNSIGNED)",
                "CONJ2(n=2,s=2,form=SIGNED)",
                "CONJ2(n=2,s=2,form=UNSIGNED)",
            ]
        );
    }

    #[test]
    fn zero_s_is_dropped_for_identities_that_need_positive_s() {
        let config = SweepConfig::new(
            [IdentityId::Conj1, IdentityId::Conj3],
            InclusiveRange::single(2),
            InclusiveRange::single(1),
            InclusiveRange::new(0, 1),
            FormSelection::Signed,
        );
        let text: Vec<String> = config.cases().iter().map(|c| c.to_string()).collect();
        assert_eq!(
            text,
            [
                "CONJ1(n=2,r=1,s=1,form=SIGNED)",
                "CONJ3(n=2,r=1,s=0)",
                "CONJ3(n=2,r=1,s=1)"
            ]
        );
    }

    #[test]
    fn config_errors() {
        let base = SweepConfig::new(
            [IdentityId::Conj1],
            InclusiveRange::new(1, 3),
            InclusiveRange::new(1, 3),
            InclusiveRange::new(1, 3),
            FormSelection::Both,
        );
        let mut c = base.clone();
        c.n_range = InclusiveRange::new(4, 2);
        assert!(matches!(run_sweep(&c), Err(SweepError::Config(_))));
        let mut c = base.clone();
        c.s_range = InclusiveRange::new(0, 2);
        assert!(matches!(run_sweep(&c), Err(SweepError::Config(_))));
        let mut c = base.clone();
        c.identity_ids = ids(&[]);
        assert!(matches!(run_sweep(&c), Err(SweepError::Config(_))));
        let mut c = base.clone();
        c.worker_count = 0;
        assert!(matches!(run_sweep(&c), Err(SweepError::Config(_))));
        let mut c = base;
        c.n_range = InclusiveRange::new(0, 2);
        assert!(matches!(run_sweep(&c), Err(SweepError::Config(_))));
    }

    #[test]
    fn compare_case_examples() {
        let v = Verifier::new();
        let r = v.compare_case(&"CONJ2(n=2,s=2,form=SIGNED)".parse().unwrap());
        assert_eq!(r.status, CaseStatus::Verified);
        assert_eq!(r.lhs.as_ref().unwrap().to_string(), "2\u{b7}X \u{2212} 3");
        let r = v.compare_case(&IdentityCase::conj1(3, 5, 1, Form::Signed).unwrap());
        assert_eq!(r.status, CaseStatus::Verified);
        assert!(r.lhs.unwrap().as_poly().unwrap().is_zero());
        let r = v.compare_case(&IdentityCase::conj3(3, 2, 1).unwrap());
        assert_eq!(
            (r.status, r.lhs.unwrap().to_string()),
            (CaseStatus::Verified, "3".to_string())
        );
    }

    #[test]
    fn conventional_boundaries() {
        let case = IdentityCase::conj4(4, 1, 2).unwrap();
        assert_eq!(Verifier::new().compare_case(&case).status, CaseStatus::Skipped);
        assert_eq!(
            Verifier::with_options(false, false).compare_case(&case).status,
            CaseStatus::Counterexample
        );
        let hs = IdentityCase::hockey_stick(5, 1).unwrap();
        assert_eq!(Verifier::new().compare_case(&hs).status, CaseStatus::Skipped);
    }

    #[test]
    fn perturbed_rhs_is_reported() {
        let mut config = SweepConfig::new(
            [IdentityId::Conj1, IdentityId::Conj3],
            InclusiveRange::new(1, 3),
            InclusiveRange::new(1, 3),
            InclusiveRange::new(1, 2),
            FormSelection::Signed,
        );
        config.perturb_rhs = true;
        let report = run_sweep(&config).unwrap();
        assert_eq!(report.summary.verified, 0);
        assert_eq!(report.summary.counterexamples, report.results.len());
        assert_eq!(report.exit_code(), 1);
        let first = report.counterexamples().next().unwrap();
        assert!(first.lhs.is_some() && first.rhs.is_some());
        assert_ne!(first.lhs, first.rhs);
    }

    #[test]
    fn report_json_shape() {
        let config = SweepConfig::new(
            [IdentityId::Conj3],
            InclusiveRange::single(3),
            InclusiveRange::single(2),
            InclusiveRange::single(1),
            FormSelection::Both,
        );
        let report = run_sweep(&config).unwrap();
        let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 4);
        for key in ["config", "results", "summary", "total_ms"] {
            assert!(keys.contains(&key), "missing {key}");
        }
        let result = &value["results"][0];
        assert_eq!(result["case"], "CONJ3(n=3,r=2,s=1)");
        assert_eq!(result["status"], "VERIFIED");
        assert_eq!(result["lhs"], "3");
        assert!(result["elapsed_ms"].is_number());
        assert_eq!(value["summary"]["verified"], 1);
        assert_eq!(value["config"]["n_range"], serde_json::json!([3, 3]));
        let back: Report = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back.without_timing(), report.without_timing());
    }

    #[test]
    fn csv_has_one_row_per_case() {
        let config = SweepConfig::new(
            [IdentityId::Classical],
            InclusiveRange::new(1, 3),
            InclusiveRange::single(1),
            InclusiveRange::single(1),
            FormSelection::Both,
        );
        let csv = run_sweep(&config).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], "case,status,lhs,rhs,elapsed_ms");
        assert!(lines[1].starts_with("\"CLASSICAL(n=1,form=SIGNED)\",VERIFIED,"));
    }
}
