//! The eight acceptance criteria at exact tolerance, one line each.
//!
//! A criterion prints FAIL when any of its reports is not an exact pass.
//! Criteria known to stay red carry the exact mismatches they are expected
//! to show; the target exits non-zero only when the outcome drifts from
//! that record in either direction.

use std::collections::BTreeSet;
use std::process::ExitCode;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use jacquet::atom::ClassAtom;
use jacquet::mustar::mu_star_iterated;
use jacquet::verify::claims::{normalize_key, triple_env};
use jacquet::verify::{
    self, ClaimCatalog, ClaimReport, Outcome, ParamPoint, SuiteOptions, SuiteReport,
};
use jacquet::Segment;

/// Mismatches a red claim shows on every grid triple, as `(key, computed)`.
/// Keys are written in `a, b, c` and normalised per triple.
const KNOWN: &[(&str, &[(&str, &str)])] = &[
    (
        "discrete-series",
        &[
            ("plus/ds3{a=a,b=b,c=c,minus_bca}", "0"),
            ("plus/ds3{a=a,b=b,c=c,minus_abc}", "0..2"),
            ("minus/ds3{a=a,b=b,c=c,minus_abc}", "0..1"),
        ],
    ),
    ("leading-term", &[("counts/plus", "3")]),
    (
        "candidate-multiplicities",
        &[("psi/L(d(-b,c) ; sigma_a{a})", "1..2")],
    ),
    (
        "two-segment-quotient",
        &[("psi/L(d(-b,c) x d(1/2,a) ; sigma)", "1..2")],
    ),
    (
        "factor-list",
        &[
            ("psi/L(d(-b,c) ; sigma_a{a})", "1..2"),
            ("psi/L(d(-b,c) x d(1/2,a) ; sigma)", "1..2"),
            ("plus/L(d(-b,c) ; sigma_a{a})", "1..2"),
            ("plus/L(d(-b,c) x d(1/2,a) ; sigma)", "0..1"),
            ("plus/ds3{a=a,b=b,c=c,minus_abc}", "0..2"),
            ("plus/ds3{a=a,b=b,c=c,minus_bca}", "0"),
            ("minus/L(d(-b,c) x d(1/2,a) ; sigma)", "0..1"),
            ("minus/ds3{a=a,b=b,c=c,minus_abc}", "0..1"),
        ],
    ),
    (
        "filtration-layers",
        &[
            ("psi/L(d(-b,c) ; sigma_a{a})", "1..2"),
            ("psi/L(d(-b,c) x d(1/2,a) ; sigma)", "1..2"),
            ("plus/L(d(-b,c) ; sigma_a{a})", "1..2"),
            ("plus/L(d(-b,c) x d(1/2,a) ; sigma)", "0..1"),
            ("plus/ds3{a=a,b=b,c=c,minus_abc}", "0..2"),
            ("plus/ds3{a=a,b=b,c=c,minus_bca}", "0"),
            ("minus/L(d(-b,c) x d(1/2,a) ; sigma)", "0..1"),
            ("minus/ds3{a=a,b=b,c=c,minus_abc}", "0..1"),
        ],
    ),
    (
        "composition-series",
        &[
            ("psi/L(d(-b,c) ; sigma_a{a})", "1..2"),
            ("psi/L(d(-b,c) x d(1/2,a) ; sigma)", "1..2"),
        ],
    ),
    (
        "kernel-pieces",
        &[
            ("k4/L(d(-b,c) ; sigma_a{a})", "0..1"),
            ("k4/L(d(-b,c) x d(1/2,a) ; sigma)", "0..1"),
            ("k4/ds3{a=a,b=b,c=c,minus_abc}", "0..2"),
        ],
    ),
];

struct Criterion {
    n: usize,
    title: &'static str,
    claims: &'static [&'static str],
}

const CRITERIA: [Criterion; 6] = [
    Criterion {
        n: 1,
        title: "partition identity",
        claims: &["segment-partition"],
    },
    Criterion {
        n: 2,
        title: "discrete-series multiplicities",
        claims: &["discrete-series"],
    },
    Criterion {
        n: 3,
        title: "leading-term multiplicities",
        claims: &["leading-term"],
    },
    Criterion {
        n: 4,
        title: "Langlands-candidate multiplicities",
        claims: &["candidate-multiplicities", "two-segment-quotient"],
    },
    Criterion {
        n: 5,
        title: "factor-list identity",
        claims: &[
            "intertwining-estimate",
            "kernel-pieces",
            "factor-list",
            "filtration-layers",
            "composition-series",
        ],
    },
    Criterion {
        n: 6,
        title: "candidate enumeration",
        claims: &["nontempered-candidates"],
    },
];

fn known_for(claim: &str, p: ParamPoint) -> BTreeSet<(String, String)> {
    let ParamPoint::Triple(a, b, c) = p else {
        return BTreeSet::new();
    };
    let env = triple_env(a, b, c);
    KNOWN
        .iter()
        .filter(|(id, _)| *id == claim)
        .flat_map(|(_, ms)| ms.iter())
        .map(|(k, v)| {
            let (table, key) = k.split_once('/').expect("table/key");
            let key = normalize_key(key, &env).expect("known key parses");
            (format!("{table}/{key}"), v.to_string())
        })
        .collect()
}

fn shown(r: &ClaimReport) -> BTreeSet<(String, String)> {
    r.mismatches
        .iter()
        .map(|m| (m.key.clone(), m.computed.clone()))
        .collect()
}

/// Returns (all pass, matches the record, detail).
fn judge(report: &SuiteReport, c: &Criterion) -> (bool, bool, String) {
    let rs: Vec<&ClaimReport> = report
        .reports
        .iter()
        .filter(|r| c.claims.contains(&r.claim_id.as_str()))
        .collect();
    let passed = rs.iter().filter(|r| r.verdict == Outcome::Pass).count();
    let mut drift = Vec::new();
    for r in &rs {
        let want = known_for(&r.claim_id, r.params);
        let got = shown(r);
        if got != want {
            drift.push(format!(
                "{} {}: {:?} vs recorded {:?}",
                r.claim_id, r.params, got, want
            ));
        }
    }
    let all = !rs.is_empty() && passed == rs.len();
    let mut detail = format!("{passed}/{} reports pass", rs.len());
    if let Some(r) = rs.iter().find(|r| r.verdict != Outcome::Pass) {
        let ids: BTreeSet<&str> = rs
            .iter()
            .filter(|r| r.verdict != Outcome::Pass)
            .map(|r| r.claim_id.as_str())
            .collect();
        detail.push_str(&format!(
            " (off: {})",
            ids.into_iter().collect::<Vec<_>>().join(", ")
        ));
        if let Some(m) = r.mismatches.first() {
            detail.push_str(&format!(
                "; e.g. {} at {}: computed {}, expected {}",
                m.key, r.params, m.computed, m.expected
            ));
        }
    }
    for d in &drift {
        eprintln!("  drift: {d}");
    }
    (all, drift.is_empty(), detail)
}

fn segment() -> impl Strategy<Value = Segment> {
    (-9i64..=9, 0i64..=4).prop_map(|(x, len)| {
        let lo = jacquet::HalfInt::from_twice(x);
        Segment::new(lo, lo.step(len)).expect("valid by construction")
    })
}

/// Fold order of the structure formula over 100 random two-segment inputs.
fn fold_order() -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: 100,
        rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(segment(), segment()), |(s, t)| {
            let one = mu_star_iterated(&[s, t], &ClassAtom::Cusp).unwrap();
            let two = mu_star_iterated(&[t, s], &ClassAtom::Cusp).unwrap();
            prop_assert_eq!(one, two);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn line(ok: bool, n: usize, title: &str, detail: &str) {
    println!(
        "{} criterion {n}: {title}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn main() -> ExitCode {
    let catalog = ClaimCatalog::builtin();
    let grid = verify::default_grid();
    let report = verify::run_suite(&catalog, &grid, "*", SuiteOptions { timings: true })
        .expect("suite runs");
    let mut consistent = report.errors.is_empty() && report.conflicts.is_empty();
    for e in report.errors.iter().chain(&report.conflicts) {
        eprintln!("  {e}");
    }

    for c in &CRITERIA {
        let (ok, matches, mut detail) = judge(&report, c);
        if c.n == 1 {
            let slow = report
                .reports
                .iter()
                .filter(|r| r.claim_id == "segment-partition")
                .filter_map(|r| r.elapsed_ms)
                .fold(0.0f64, f64::max);
            detail.push_str(&format!("; slowest pair {slow:.1} ms"));
        }
        line(ok, c.n, c.title, &detail);
        consistent &= matches;
    }

    let signs: Vec<&ClaimReport> = report
        .reports
        .iter()
        .filter(|r| r.claim_id == "sign-words")
        .collect();
    let ok7 = !signs.is_empty() && signs.iter().all(|r| r.verdict == Outcome::Pass);
    let pairs = signs.len();
    line(
        ok7,
        7,
        "sign criterion",
        &format!("{pairs} pairs with both signs"),
    );
    consistent &= ok7;

    let upto5: Vec<&ClaimReport> = report
        .reports
        .iter()
        .filter(|r| {
            CRITERIA[..5]
                .iter()
                .any(|c| c.claims.contains(&r.claim_id.as_str()))
        })
        .collect();
    let checked: u64 = upto5.iter().map(|r| r.oracle.checked).sum();
    let violations: Vec<&String> = upto5.iter().flat_map(|r| &r.oracle.violations).collect();
    let fold = fold_order();
    let ok8 = checked > 0 && violations.is_empty() && fold.is_ok();
    let mut detail = format!(
        "{checked} exact verdicts inside their word bounds, {} outside",
        violations.len()
    );
    match &fold {
        Ok(()) => detail.push_str("; fold order agrees on 100 two-segment inputs"),
        Err(e) => detail.push_str(&format!("; fold order: {e}")),
    }
    line(ok8, 8, "oracle dominance", &detail);
    consistent &= ok8;

    if consistent {
        ExitCode::SUCCESS
    } else {
        eprintln!("acceptance outcome differs from the recorded one");
        ExitCode::FAILURE
    }
}
