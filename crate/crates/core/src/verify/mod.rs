//! Batch verification of the claims catalog over parameter grids.
//!
//! Triple claims share one [`TripleContext`] per triple, so the engine's
//! memo is reused across claims. Triples run in parallel; reports are merged
//! and sorted by `(claim_id, params)`.

use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;

use crate::atom::check_triple;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::rulebase::Catalog;

pub mod checks;
pub mod claims;
pub mod context;
pub mod oracle;
pub mod report;
pub mod value;

pub use claims::{Claim, ClaimCatalog, ParamKind};
pub use context::TripleContext;
pub use report::{ClaimReport, ParamPoint, SuiteReport, Summary};
pub use value::{compare, Count, Outcome, Value};

pub type Triple = (HalfInt, HalfInt, HalfInt);

pub fn default_grid() -> Vec<Triple> {
    [(1, 3, 5), (1, 3, 7), (1, 5, 7), (3, 5, 7)]
        .map(|(a, b, c)| {
            (
                HalfInt::from_twice(a),
                HalfInt::from_twice(b),
                HalfInt::from_twice(c),
            )
        })
        .to_vec()
}

/// `(c,d)` with `c, d ∈ {±1/2, …, ±9/2}`, `c ≥ -1/2` and `d ≥ -c`.
pub fn pair_grid() -> Vec<(HalfInt, HalfInt)> {
    let vals: Vec<HalfInt> = (-9..=9).step_by(2).map(HalfInt::from_twice).collect();
    let mut out = Vec::new();
    for &c in &vals {
        for &d in &vals {
            if c >= -HalfInt::HALF && d >= -c {
                out.push((c, d));
            }
        }
    }
    out
}

/// One `a,b,c` per line; blank lines and `#` comments are skipped.
pub fn parse_grid(text: &str) -> Result<Vec<Triple>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let t = crate::parse::parse_triple(line).map_err(|e| Error::Parse {
            pos: 0,
            msg: format!("grid line {}: {e}", n + 1),
        })?;
        out.push(t);
    }
    Ok(out)
}

pub fn builtin_catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(Catalog::builtin)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    /// Record wall-clock time per report.
    pub timings: bool,
}

fn finish(
    claim: &Claim,
    params: ParamPoint,
    computed: checks::Computed,
    expected: Value,
    elapsed: Option<f64>,
) -> ClaimReport {
    let (verdict, mismatches) = compare(&computed.value, &expected);
    ClaimReport {
        claim_id: claim.id.clone(),
        params,
        verdict,
        computed: computed.value,
        expected,
        citation: claim.citation.clone(),
        mismatches,
        notes: computed.notes,
        oracle: computed.oracle,
        elapsed_ms: elapsed,
    }
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 10_000.0).round() / 10.0
}

fn run_pair(claim: &Claim, c: HalfInt, d: HalfInt, opts: SuiteOptions) -> Result<ClaimReport> {
    let t = Instant::now();
    let computed = checks::pair(&claim.id, c, d)?;
    let env = move |n: &str| match n {
        "c" => Some(c),
        "d" => Some(d),
        _ => None,
    };
    let expected = claim.expected(&env)?;
    Ok(finish(
        claim,
        ParamPoint::Pair(c, d),
        computed,
        expected,
        opts.timings.then(|| ms(t)),
    ))
}

fn run_triple(
    claims: &[&Claim],
    (a, b, c): Triple,
    opts: SuiteOptions,
) -> Result<(Vec<ClaimReport>, Vec<String>)> {
    let ctx = TripleContext::new(builtin_catalog(), a, b, c)?;
    let mut out = Vec::new();
    for claim in claims {
        let t = Instant::now();
        let computed = checks::triple(&claim.id, &ctx)?;
        let expected = claim.expected(&ctx.env())?;
        out.push(finish(
            claim,
            ParamPoint::Triple(a, b, c),
            computed,
            expected,
            opts.timings.then(|| ms(t)),
        ));
    }
    let conflicts = ctx
        .conflicts()
        .into_iter()
        .map(|s| format!("({a},{b},{c}) {s}"))
        .collect();
    Ok((out, conflicts))
}

/// Pair claims run on [`pair_grid`] (where the claim applies); triple claims
/// on `grid`. Invalid triples are reported and skipped.
pub fn run_suite(
    catalog: &ClaimCatalog,
    grid: &[Triple],
    filter: &str,
    opts: SuiteOptions,
) -> Result<SuiteReport> {
    let selected = catalog.select(filter)?;
    let triple_claims: Vec<&Claim> = selected
        .iter()
        .copied()
        .filter(|c| c.params == ParamKind::Triple)
        .collect();
    let pair_claims: Vec<&Claim> = selected
        .iter()
        .copied()
        .filter(|c| c.params == ParamKind::Pairs)
        .collect();

    let mut reports = Vec::new();
    let mut errors = Vec::new();
    let mut conflicts = Vec::new();

    let pairs = pair_grid();
    let jobs: Vec<(&Claim, HalfInt, HalfInt)> = pair_claims
        .iter()
        .flat_map(|cl| pairs.iter().map(move |&(c, d)| (*cl, c, d)))
        .collect();
    let pair_results: Vec<Result<ClaimReport>> = jobs
        .par_iter()
        .map(|&(cl, c, d)| run_pair(cl, c, d, opts))
        .collect();
    for r in pair_results {
        match r {
            Ok(r) => reports.push(r),
            // the claim does not apply at this pair
            Err(Error::Domain(_)) => {}
            Err(e) => return Err(e),
        }
    }

    if !triple_claims.is_empty() {
        let results: Vec<(Triple, Result<(Vec<ClaimReport>, Vec<String>)>)> = grid
            .par_iter()
            .map(|&t| (t, run_triple(&triple_claims, t, opts)))
            .collect();
        for ((a, b, c), r) in results {
            match r {
                Ok((rs, cs)) => {
                    reports.extend(rs);
                    conflicts.extend(cs);
                }
                Err(e) => errors.push(format!("({a},{b},{c}): {e}")),
            }
        }
    }
    Ok(SuiteReport::new(reports, errors, conflicts))
}

/// One claim at one parameter point.
pub fn verify_claim(
    catalog: &ClaimCatalog,
    claim_id: &str,
    params: ParamPoint,
) -> Result<ClaimReport> {
    let claim = catalog.get(claim_id)?;
    match (claim.params, params) {
        (ParamKind::Triple, ParamPoint::Triple(a, b, c)) => {
            check_triple(a, b, c).map_err(|e| Error::Domain(e.to_string()))?;
            let (mut rs, _) = run_triple(&[claim], (a, b, c), SuiteOptions::default())?;
            Ok(rs.remove(0))
        }
        (ParamKind::Pairs, ParamPoint::Pair(c, d)) => {
            run_pair(claim, c, d, SuiteOptions::default())
        }
        _ => Err(Error::Domain(format!("{claim_id} does not take {params}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(pair_grid().len(), 45);
        assert_eq!(default_grid().len(), 4);
    }

    #[test]
    fn grid_files() {
        let g = parse_grid("# triples\n1/2,3/2,5/2\n\n3/2, 5/2, 9/2  # interior\n").unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[1].2, HalfInt::from_twice(9));
        let e = parse_grid("1/2,3/2,5/2\n1/2,3/2\n").unwrap_err();
        assert!(e.to_string().contains("grid line 2"));
    }

    #[test]
    fn empty_grid_is_empty_success() {
        let cat = ClaimCatalog::builtin();
        let r = run_suite(&cat, &[], "kernel-*", SuiteOptions::default()).unwrap();
        assert!(r.reports.is_empty());
        assert!(!r.any_failed());
    }

    #[test]
    fn partition_example() {
        let cat = ClaimCatalog::builtin();
        let r = verify_claim(
            &cat,
            "segment-partition",
            ParamPoint::Pair(HalfInt::HALF, HalfInt::from_twice(3)),
        )
        .unwrap();
        assert_eq!(r.verdict, Outcome::Pass);
        assert!(verify_claim(
            &cat,
            "segment-partition",
            ParamPoint::Pair(-HalfInt::from_twice(3), HalfInt::HALF)
        )
        .is_err());
        assert!(verify_claim(
            &cat,
            "no-such-claim",
            ParamPoint::Pair(HalfInt::HALF, HalfInt::HALF)
        )
        .is_err());
    }

    #[test]
    fn bad_triples_are_reported_per_item() {
        let cat = ClaimCatalog::builtin();
        let bad = (
            HalfInt::from_twice(3),
            HalfInt::from_twice(1),
            HalfInt::from_twice(5),
        );
        let r = run_suite(&cat, &[bad], "tempered-in-big", SuiteOptions::default()).unwrap();
        assert_eq!(r.errors.len(), 1);
        assert!(r.reports.is_empty());
    }
}
