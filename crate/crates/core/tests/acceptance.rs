//! Acceptance suite. Every criterion runs in sequence so its wall-clock
//! budget is measured without interference, and prints one PASS/FAIL line.
//! All comparisons are exact.
//!
//!     cargo test -p partition-identities --test acceptance -- --nocapture

mod common;

use std::time::{Duration, Instant};

use partition_identities::genbinom::{gen_binom, gen_binom_bruteforce_all, DEFAULT_ORACLE_LIMIT};
use partition_identities::identities::{
    conj3_r1_closed_form, conj3_r2_closed_form, conj3_rhs, conj4_rhs, Evaluator, Form, IdentityId,
};
use partition_identities::partitions::enumerate_partitions;
use partition_identities::verifier::{
    run_sweep, CaseStatus, FormSelection, InclusiveRange, Report, SweepConfig,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);

fn range(lo: u32, hi: u32) -> InclusiveRange {
    InclusiveRange::new(lo, hi)
}

fn all_verified(report: &Report) -> Result<usize, String> {
    if let Some(bad) = report.results.iter().find(|r| r.status != CaseStatus::Verified) {
        return Err(format!(
            "{} is {}: lhs={:?} rhs={:?}",
            bad.case, bad.status, bad.lhs, bad.rhs
        ));
    }
    Ok(report.results.len())
}

fn sweep(
    ids: &[IdentityId],
    n: InclusiveRange,
    r: InclusiveRange,
    s: InclusiveRange,
    workers: usize,
) -> Result<Report, String> {
    let config = SweepConfig::new(ids.iter().copied(), n, r, s, FormSelection::Both).with_workers(workers);
    run_sweep(&config).map_err(|e| e.to_string())
}

fn criterion_4_config(workers: usize) -> SweepConfig {
    SweepConfig::new(
        [IdentityId::Conj1],
        range(1, 7),
        range(1, 7),
        range(1, 8),
        FormSelection::Both,
    )
    .with_workers(workers)
}

fn c1_partition_counts() -> Outcome {
    let oracle = common::partition_counts_pentagonal(30);
    for n in 0..=30u32 {
        let got = enumerate_partitions(n, 0, None).len() as u64;
        if got != oracle[n as usize] {
            return Err(format!(
                "p({n}): enumerated {got}, pentagonal {}",
                oracle[n as usize]
            ));
        }
    }
    Ok(format!("p(0..=30) match, p(30) = {}", oracle[30]))
}

fn c2_genbinom_oracle() -> Outcome {
    let mut checked = 0usize;
    for n in 0..=10u32 {
        for lambda in enumerate_partitions(n, 0, None) {
            let counts =
                gen_binom_bruteforce_all(&lambda, DEFAULT_ORACLE_LIMIT).map_err(|e| e.to_string())?;
            for (r, &count) in counts.iter().enumerate() {
                if gen_binom(&lambda, r) != count.into() {
                    return Err(format!("<{lambda},{r}> differs from brute force {count}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (λ, r) pairs agree"))
}

fn c3_classical() -> Outcome {
    let report = sweep(
        &[IdentityId::Classical],
        range(1, 12),
        range(1, 1),
        range(1, 1),
        4,
    )?;
    Ok(format!("{} cases verified", all_verified(&report)?))
}

fn c4_conj1_small_n() -> Outcome {
    let report = run_sweep(&criterion_4_config(4)).map_err(|e| e.to_string())?;
    Ok(format!("{} cases verified", all_verified(&report)?))
}

fn c5_conj1_regimes() -> Outcome {
    let unit_s = sweep(&[IdentityId::Conj1], range(1, 10), range(1, 10), range(1, 1), 4)?;
    let small_r = sweep(&[IdentityId::Conj1], range(1, 10), range(1, 3), range(1, 10), 4)?;
    Ok(format!(
        "s=1: {} cases, r<=3: {} cases verified",
        all_verified(&unit_s)?,
        all_verified(&small_r)?
    ))
}

fn c6_conj2() -> Outcome {
    let report = sweep(&[IdentityId::Conj2], range(1, 9), range(1, 1), range(1, 8), 4)?;
    let count = all_verified(&report)?;
    let ev = Evaluator::new();
    for n in 1..=9 {
        for s in 1..=8 {
            for form in [Form::Signed, Form::Unsigned] {
                if ev.conj2_sides(n, s, form) != ev.conj1_sides(n, n, s, form) {
                    return Err(format!("CONJ2(n={n},s={s},{form}) differs from CONJ1 at r=n"));
                }
            }
        }
    }
    Ok(format!("{count} cases verified, CONJ2 = CONJ1(r=n) on 144 cells"))
}

fn c7_conj3() -> Outcome {
    let report = sweep(&[IdentityId::Conj3], range(1, 14), range(1, 14), range(0, 8), 4)?;
    let count = all_verified(&report)?;
    for n in 1..=14 {
        for s in 0..=8 {
            let (l1, r1) = conj3_r1_closed_form(n, s);
            if l1 != r1 {
                return Err(format!("r=1 closed form fails at n={n} s={s}"));
            }
            let (l2, r2) = conj3_r2_closed_form(n, s);
            if n >= 2 && l2 != r2 {
                return Err(format!("r=2 closed form fails at n={n} s={s}"));
            }
        }
    }
    Ok(format!(
        "{count} cases verified (s=0 and s=1 included), r=1 and r=2 closed forms hold"
    ))
}

fn c8_conj4() -> Outcome {
    let report = sweep(&[IdentityId::Conj4], range(2, 14), range(2, 14), range(1, 8), 4)?;
    let count = all_verified(&report)?;
    for n in 2..=14 {
        for r in 2..=n {
            for s in 1..=8 {
                if conj3_rhs(n, r, s) != conj4_rhs(n, r, s) {
                    return Err(format!("closed forms differ at n={n} r={r} s={s}"));
                }
            }
        }
    }
    Ok(format!("{count} cases verified, closed forms agree"))
}

fn c9_coefficient_bridges() -> Outcome {
    let ev = Evaluator::new();
    let mut checks = 0usize;
    for n in 1..=7 {
        for r in 1..=7 {
            for s in 1..=8 {
                for check in ev.top_coeff_checks(n, r, s) {
                    if !check.holds() {
                        return Err(format!(
                            "n={n} r={r} s={s} {}: extracted {} vs {}",
                            check.label, check.extracted, check.closed_form
                        ));
                    }
                    checks += 1;
                }
            }
        }
    }
    let report = sweep(
        &[IdentityId::TopCoeff, IdentityId::ConstTerm],
        range(1, 7),
        range(1, 7),
        range(1, 8),
        4,
    )?;
    Ok(format!(
        "{checks} extractions hold, {} TOP_COEFF/CONST_TERM cases verified",
        all_verified(&report)?
    ))
}

fn c10_sign_flip() -> Outcome {
    let ev = Evaluator::new();
    for n in 1..=7 {
        for r in 1..=7 {
            for s in 1..=8 {
                if !ev.sign_flip_check(n, r, s) {
                    return Err(format!("X -> -X relation fails at n={n} r={r} s={s}"));
                }
            }
        }
    }
    Ok("392 (n, r, s) cells".into())
}

fn c11_determinism() -> Outcome {
    let serial = run_sweep(&criterion_4_config(1)).map_err(|e| e.to_string())?;
    let parallel = run_sweep(&criterion_4_config(8)).map_err(|e| e.to_string())?;
    let repeat = run_sweep(&criterion_4_config(8)).map_err(|e| e.to_string())?;
    let a = serial.without_timing().to_json();
    if a != parallel.without_timing().to_json() || a != repeat.without_timing().to_json() {
        return Err("reports differ beyond timing fields".into());
    }
    Ok(format!(
        "workers 1 vs 8: {} results byte-identical",
        serial.results.len()
    ))
}

fn c12_counterexample_reporting() -> Outcome {
    let mut config = criterion_4_config(2);
    config.perturb_rhs = true;
    let report = run_sweep(&config).map_err(|e| format!("sweep should succeed with counterexamples: {e}"))?;
    if report.exit_code() != 1 || report.summary.counterexamples != report.results.len() {
        return Err("perturbed right sides were not reported as counterexamples".into());
    }
    let first = report
        .counterexamples()
        .next()
        .ok_or("no counterexample listed")?;
    if first.lhs.is_none() || first.rhs.is_none() {
        return Err("counterexample is missing its serialized sides".into());
    }
    Ok(format!(
        "{} counterexamples reported with exit code 1",
        report.summary.counterexamples
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 12] = [
        (
            "C1",
            "partition counts vs pentagonal recurrence, n <= 30",
            Duration::from_secs(5),
            c1_partition_counts,
        ),
        (
            "C2",
            "<λ,r> vs brute force, |λ| <= 10",
            Duration::from_secs(30),
            c2_genbinom_oracle,
        ),
        (
            "C3",
            "classical identities, n <= 12, both forms",
            Duration::from_secs(5),
            c3_classical,
        ),
        (
            "C4",
            "CONJ1, n,r <= 7, s <= 8, both forms",
            Duration::from_secs(30),
            c4_conj1_small_n,
        ),
        (
            "C5",
            "CONJ1, s = 1 (n,r <= 10) and r <= 3 (n,s <= 10)",
            Duration::from_secs(60),
            c5_conj1_regimes,
        ),
        (
            "C6",
            "CONJ2, n <= 9, s <= 8, both forms",
            Duration::from_secs(60),
            c6_conj2,
        ),
        (
            "C7",
            "CONJ3, r <= n <= 14, 0 <= s <= 8",
            Duration::from_secs(60),
            c7_conj3,
        ),
        (
            "C8",
            "CONJ4, 2 <= r <= n <= 14, s <= 8",
            Duration::from_secs(60),
            c8_conj4,
        ),
        (
            "C9",
            "coefficient bridges on the C4 grid",
            Duration::from_secs(60),
            c9_coefficient_bridges,
        ),
        (
            "C10",
            "X -> -X equivalence on the C4 grid",
            Duration::from_secs(60),
            c10_sign_flip,
        ),
        (
            "C11",
            "determinism, 1 vs 8 workers",
            Duration::from_secs(60),
            c11_determinism,
        ),
        (
            "C12",
            "counterexamples are reported, not fatal",
            Duration::from_secs(60),
            c12_counterexample_reporting,
        ),
    ];

    let mut failures = Vec::new();
    for (id, title, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(detail) if elapsed <= budget => Ok(detail),
            Ok(detail) => Err(format!("{detail}, but took {elapsed:?} > {budget:?}")),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(detail) => println!(
                "[PASS] {id} {title}: {detail} ({:.1} ms)",
                elapsed.as_secs_f64() * 1e3
            ),
            Err(e) => {
                println!("[FAIL] {id} {title}: {e} ({:.1} ms)", elapsed.as_secs_f64() * 1e3);
                failures.push(id);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
