//! Replay of the embedding analysis that lists the possible non-tempered
//! subquotients of `δ([½,c]) ⋊ σ^ε_{ab}`.

use serde::Serialize;

use crate::atom::{check_triple, ClassAtom, InducedLabel, Sign};
use crate::error::Result;
use crate::gl::GlPart;
use crate::half::HalfInt;
use crate::mustar::mu_star_base;
use crate::segment::Segment;

/// One embedding `π ↪ δ([-α₁,β₁]) ⋊ π'` considered by the analysis.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateBranch {
    pub beta1: HalfInt,
    pub alpha1: HalfInt,
    /// `σ₁` with `μ*(σ^ε_{ab}) ≥ δ([½,β₁]) ⊗ σ₁`.
    pub sigma1: String,
    /// Possible `π'`.
    pub pi_prime: Vec<String>,
    /// The Langlands quotient `π` is forced to be.
    #[serde(serialize_with = "as_strings")]
    pub result: Vec<ClassAtom>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub sign: Sign,
    #[serde(serialize_with = "as_strings")]
    pub candidates: Vec<ClassAtom>,
    pub branches: Vec<CandidateBranch>,
    /// Irregularities met while replaying the case table.
    pub flags: Vec<String>,
}

fn as_strings<S: serde::Serializer>(
    xs: &[ClassAtom],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(ToString::to_string))
}

fn seg(lo: HalfInt, hi: HalfInt) -> Segment {
    Segment::new(lo, hi).expect("candidate segment")
}

fn range(lo: HalfInt, hi: HalfInt) -> impl Iterator<Item = HalfInt> {
    let n = if hi < lo {
        0
    } else {
        hi.int_diff(lo).expect("same class") + 1
    };
    (0..n).map(move |k| lo.step(k))
}

/// Discrete series `σ₁` with `μ*(x) ≥ δ([½,β]) ⊗ σ₁`, read off the closed
/// form.
fn jacquet_quotients(x: &ClassAtom, beta: HalfInt) -> Result<Vec<ClassAtom>> {
    let want = GlPart::delta(seg(HalfInt::HALF, beta));
    let mu = mu_star_base(x)?;
    Ok(mu
        .iter()
        .filter(|(g, _, n)| **g == want && *n > 0)
        .filter_map(|(_, c, _)| c.as_atom().cloned())
        .filter(ClassAtom::is_discrete_series)
        .collect())
}

/// Possible non-tempered irreducible subquotients of `δ([½,c]) ⋊ σ^ε_{ab}`
/// other than its Langlands quotient.
pub fn enumerate_nontempered_candidates(
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
    sign: Sign,
) -> Result<CandidateReport> {
    check_triple(a, b, c)?;
    let half = HalfInt::HALF;
    let one = HalfInt::ONE;
    let base = ClassAtom::signed_seg(a, b, sign)?;
    let sg = |x| ClassAtom::sigma(x).expect("sigma");
    let lang = |lo, hi, tau| ClassAtom::lang(vec![seg(lo, hi)], tau).expect("Langlands datum");
    let mut branches = Vec::new();
    let mut flags = Vec::new();

    // β₁ = -½, tempered π': 2α₁+1 ∈ Jord(σ^ε_{ab}) and π' = σ^ε with that
    // jump moved to c.
    for (alpha1, pi1) in [
        (a, ClassAtom::signed_seg(b, c, sign)?),
        (b, ClassAtom::signed_seg(a, c, sign)?),
    ] {
        branches.push(CandidateBranch {
            beta1: -half,
            alpha1,
            sigma1: base.to_string(),
            pi_prime: vec![pi1.to_string()],
            result: vec![lang(half, alpha1, pi1)],
        });
    }

    // β₁ = -½, non-tempered π': needs α₁ ≤ a < b < α₂ ≤ c together with
    // -α₁ - ½ ≤ -α₂ - b.
    let feasible = range(half, a)
        .flat_map(|a1| range(b + one, c).map(move |a2| (a1, a2)))
        .filter(|&(a1, a2)| -a1 - half <= -a2 - b)
        .count();
    if feasible > 0 {
        flags.push(format!(
            "{feasible} non-tempered π' embeddings survive the inequality"
        ));
    }

    // β₁ = a
    for s1 in jacquet_quotients(&base, a)? {
        if s1 != sg(b) {
            flags.push(format!("unexpected σ₁ = {s1} for β₁ = {a}"));
            continue;
        }
        for alpha1 in range(a + one, c) {
            let (pi, res): (Vec<String>, Vec<ClassAtom>) = if alpha1 < b {
                (
                    vec![
                        lang(alpha1 + one, b, sg(c)).to_string(),
                        lang(alpha1 + one, c, sg(b)).to_string(),
                    ],
                    vec![lang(-a, b, sg(c)), lang(-a, c, sg(b))],
                )
            } else if alpha1 == b {
                (
                    vec![sg(c).to_string(), lang(b + one, c, sg(b)).to_string()],
                    vec![lang(-a, b, sg(c)), lang(-a, c, sg(b))],
                )
            } else if alpha1 < c {
                (
                    vec![lang(alpha1 + one, c, sg(b)).to_string()],
                    vec![lang(-a, c, sg(b))],
                )
            } else {
                flags.push(format!(
                    "last row of the case table is stated for α₁ = b; it applies to α₁ = c = {c}"
                ));
                (vec![sg(b).to_string()], vec![lang(-a, c, sg(b))])
            };
            branches.push(CandidateBranch {
                beta1: a,
                alpha1,
                sigma1: s1.to_string(),
                pi_prime: pi,
                result: res,
            });
        }
    }

    // β₁ = b: δ([α₁+1,c]) ⋊ σ_a is irreducible
    for s1 in jacquet_quotients(&base, b)? {
        if s1 != sg(a) {
            flags.push(format!("unexpected σ₁ = {s1} for β₁ = {b}"));
            continue;
        }
        for alpha1 in range(b + one, c) {
            let pi = if alpha1 < c {
                InducedLabel::new(vec![seg(alpha1 + one, c)], sg(a)).to_string()
            } else {
                sg(a).to_string()
            };
            branches.push(CandidateBranch {
                beta1: b,
                alpha1,
                sigma1: s1.to_string(),
                pi_prime: vec![pi],
                result: vec![lang(-b, c, sg(a))],
            });
        }
    }

    let mut candidates: Vec<ClassAtom> = branches
        .iter()
        .flat_map(|b| b.result.iter().cloned())
        .collect();
    candidates.sort();
    candidates.dedup();
    Ok(CandidateReport {
        sign,
        candidates,
        branches,
        flags,
    })
}
