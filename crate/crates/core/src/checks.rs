//! Corpus-wide consistency checks between independent computations.
//!
//! Each check walks the corpus of [`crate::corpus`], compares two routes to
//! the same quantity exactly, and reports how many cases it covered.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::corpus;
use crate::error::{Error, Result};
use crate::extensions::{build, inseparable_base_change, Cover, CoverSpec};
use crate::nearby::{
    boundedness_certificate, pushforward, sheaf_representation, tower, witness_slopes,
};
use crate::numerics::{fmt_rational, Rational};
use crate::ramification::{coset_filtration, hasse_arf_check, RamificationFiltration};
use crate::reps::{break_decomposition, Representation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }

    fn collect(results: Vec<Result<Vec<String>>>) -> Self {
        let mut cases = 0;
        let mut failures = Vec::new();
        for r in results {
            cases += 1;
            match r {
                Ok(f) => failures.extend(f),
                Err(e) => failures.push(e.to_string()),
            }
        }
        CheckOutcome { cases, failures }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} cases", self.cases)?;
        if let Some(first) = self.failures.first() {
            write!(f, ", {} failures, first: {first}", self.failures.len())?;
        }
        Ok(())
    }
}

fn corpus_covers() -> Vec<(u32, CoverSpec)> {
    corpus::PRIMES
        .iter()
        .flat_map(|&p| corpus::covers(p).into_iter().map(move |c| (p, c)))
        .collect()
}

fn corpus_towers() -> Vec<(u32, CoverSpec, CoverSpec)> {
    corpus::PRIMES
        .iter()
        .flat_map(|&p| corpus::towers(p).into_iter().map(move |(f, c)| (p, f, c)))
        .collect()
}

fn build_corpus(p: u32, spec: &CoverSpec, prec: i64) -> Result<std::sync::Arc<Cover>> {
    let field = corpus::field_for(p, &[spec])?;
    build(&field, spec, prec)
}

fn set(v: impl IntoIterator<Item = Rational>) -> BTreeSet<Rational> {
    v.into_iter().collect()
}

fn show(s: &BTreeSet<Rational>) -> String {
    let v: Vec<String> = s.iter().map(fmt_rational).collect();
    format!("{{{}}}", v.join(", "))
}

/// Slopes of the regular representation equal `{0} ∪ upper jumps`.
pub fn regular_slopes_are_jumps(prec: i64) -> CheckOutcome {
    let results = corpus_covers()
        .par_iter()
        .map(|(p, spec)| {
            let c = build_corpus(*p, spec, prec)?;
            let filt = RamificationFiltration::of_cover(&c)?;
            let g = c.group();
            let reg = Representation::regular(g, &g.whole())?;
            let lhs = set(break_decomposition(&reg, &filt)?.slopes());
            let mut rhs = set(filt.upper_jumps().iter().cloned());
            rhs.insert(Rational::default());
            Ok(if lhs == rhs {
                vec![]
            } else {
                vec![format!("{spec} (p={p}): slopes {} vs jumps {}", show(&lhs), show(&rhs))]
            })
        })
        .collect();
    CheckOutcome::collect(results)
}

/// For every proper subgroup, the top slope of `Q[G/H]` is the highest
/// jump of the coset filtration.
pub fn coset_slope_is_highest_jump(prec: i64) -> CheckOutcome {
    let results = corpus_covers()
        .par_iter()
        .flat_map(|(p, spec)| {
            let c = match build_corpus(*p, spec, prec) {
                Ok(c) => c,
                Err(e) => return vec![Err(e)],
            };
            let g = c.group().clone();
            g.all_subgroups()
                .into_iter()
                .filter(|h| h.len() < g.order())
                .map(|h| {
                    let filt = RamificationFiltration::of_cover(&c)?;
                    let v = Representation::coset(&g, &g.whole(), &h)?;
                    let top = break_decomposition(&v, &filt)?.max_slope().cloned().unwrap_or_default();
                    let jump = coset_filtration(&filt, &h)?.highest_jump();
                    Ok(if top == jump {
                        vec![]
                    } else {
                        vec![format!(
                            "{spec} (p={p}), H={h:?}: slope {} vs jump {}",
                            fmt_rational(&top),
                            fmt_rational(&jump)
                        )]
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    CheckOutcome::collect(results)
}

/// Every `(tower, sheaf)` pair of the corpus.
pub fn sheaf_cases() -> Vec<(u32, CoverSpec, CoverSpec, crate::nearby::SheafSpec)> {
    corpus_towers()
        .into_iter()
        .flat_map(|(p, f, c)| {
            corpus::sheaves(&c)
                .into_iter()
                .map(move |s| (p, f.clone(), c.clone(), s))
        })
        .collect()
}

/// On the identity morphism, nearby slopes are the slopes of the sheaf, and
/// the pushforward slopes agree with the slopes certified by rank-one
/// witnesses.
pub fn witnesses_agree(prec: i64, limit: usize) -> CheckOutcome {
    let mut cases: Vec<_> = sheaf_cases()
        .into_iter()
        .filter(|(_, f, _, _)| *f == CoverSpec::Trivial)
        .collect();
    cases.extend(sheaf_cases().into_iter().filter(|(_, f, _, _)| *f != CoverSpec::Trivial));
    cases.truncate(limit);
    let results = cases
        .par_iter()
        .map(|(p, f, c, s)| {
            let field = corpus::tower_field(*p, f, c)?;
            let t = tower(&field, f, c, prec)?;
            let push = pushforward(&t, s)?;
            let mut out = Vec::new();
            let direct = set(push.slopes.slopes());
            let witnessed = set(witness_slopes(&push)?);
            if direct != witnessed {
                out.push(format!(
                    "{s} on {c} along {f} (p={p}): pushforward {} vs witnesses {}",
                    show(&direct),
                    show(&witnessed)
                ));
            }
            if *f == CoverSpec::Trivial {
                let own = sheaf_representation(&t.monodromy, s)?;
                let filt = RamificationFiltration::of_cover(&t.monodromy)?;
                if break_decomposition(&own, &filt)? != push.slopes {
                    out.push(format!("{s} on {c} (p={p}): identity changes the slopes"));
                }
            }
            Ok(out)
        })
        .collect();
    CheckOutcome::collect(results)
}

/// The boundedness certificate on every `(f, M)` pair, including the exact
/// concavity inequality `φ_{L/K}(C_M) ≤ C_M`.
pub fn certificates_hold(prec: i64) -> CheckOutcome {
    let results = sheaf_cases()
        .par_iter()
        .map(|(p, f, c, s)| {
            let field = corpus::tower_field(*p, f, c)?;
            let t = tower(&field, f, c, prec)?;
            let cert = boundedness_certificate(&t, s)?;
            let mut out = Vec::new();
            if !(cert.inclusion_holds && cert.trivial_beyond_bound && cert.concavity_holds) {
                out.push(format!("{s} along {f}: certificate flags {cert:?}"));
            }
            if cert.phi_c_m > cert.c_m {
                out.push(format!("{s} along {f}: concavity fails"));
            }
            Ok(out)
        })
        .collect();
    CheckOutcome::collect(results)
}

/// Upper jumps are unchanged by purely inseparable base change of degree
/// `p` and `p^2`.
pub fn base_change_keeps_jumps(prec: i64) -> CheckOutcome {
    let results = corpus_covers()
        .par_iter()
        .map(|(p, spec)| {
            let c = build_corpus(*p, spec, prec)?;
            let before = RamificationFiltration::of_cover(&c)?;
            let mut out = Vec::new();
            for n in [1, 2] {
                let bc = inseparable_base_change(&c, n)?;
                let after = RamificationFiltration::of_cover(&bc.changed)?;
                if after.upper_jumps() != before.upper_jumps() {
                    out.push(format!("{spec} (p={p}) changes under base change of degree {p}^{n}"));
                }
            }
            Ok(out)
        })
        .collect();
    CheckOutcome::collect(results)
}

/// Upper jumps of abelian covers are integers.
pub fn hasse_arf(prec: i64) -> CheckOutcome {
    let results = corpus_covers()
        .par_iter()
        .map(|(p, spec)| {
            let c = build_corpus(*p, spec, prec)?;
            let filt = RamificationFiltration::of_cover(&c)?;
            Ok(if hasse_arf_check(&filt)? {
                vec![]
            } else {
                vec![format!("{spec} (p={p}) has a non-integral upper jump")]
            })
        })
        .collect();
    CheckOutcome::collect(results)
}

/// `φ_{L/K} = φ_{M/K} ∘ φ_{L/M}` for every tower `K ⊂ M ⊂ L` of the corpus:
/// the nearby towers and the factors of every compositum. `φ_{M/K}` comes
/// from `M`'s own automorphisms, not from `L`.
pub fn phi_is_transitive(prec: i64) -> CheckOutcome {
    let mut jobs: Vec<Job> = corpus_towers()
        .into_iter()
        .map(|(p, f, c)| Job::Tower(p, f, c))
        .collect();
    jobs.extend(
        corpus_covers()
            .into_iter()
            .filter(|(_, s)| matches!(s, CoverSpec::Compositum(..)))
            .map(|(p, s)| Job::Compositum(p, s)),
    );
    let results = jobs
        .par_iter()
        .map(|job| {
            let mut out = Vec::new();
            let (l, pieces) = match job {
                Job::Tower(p, f, c) => {
                    let field = corpus::tower_field(*p, f, c)?;
                    let t = tower(&field, f, c, prec)?;
                    let l = t.cover.clone();
                    (l, vec![(t.source.clone(), t.h0.clone())])
                }
                Job::Compositum(p, s) => {
                    let l = build_corpus(*p, s, prec)?;
                    let pieces = l.factors.iter().map(|f| (f.cover.clone(), f.kernel())).collect();
                    (l, pieces)
                }
            };
            let whole = RamificationFiltration::of_cover(&l)?;
            for (m, h) in pieces {
                let lower = RamificationFiltration::of_subgroup(l.group(), &h)?;
                let below = RamificationFiltration::of_cover(&m)?;
                let composed = below.phi().compose(lower.phi())?;
                if &composed != whole.phi() {
                    out.push(format!(
                        "{}: φ_L/K = {} but φ_M/K ∘ φ_L/M = {composed} for M = {}",
                        l.spec(),
                        whole.phi(),
                        m.spec()
                    ));
                }
            }
            Ok(out)
        })
        .collect();
    CheckOutcome::collect(results)
}

enum Job {
    Tower(u32, CoverSpec, CoverSpec),
    Compositum(u32, CoverSpec),
}

/// Total multiplicity of every nearby slope multiset is `deg f · rank F`.
pub fn slope_totals(prec: i64) -> CheckOutcome {
    let results = sheaf_cases()
        .par_iter()
        .map(|(p, f, c, s)| {
            let field = corpus::tower_field(*p, f, c)?;
            let t = tower(&field, f, c, prec)?;
            let push = pushforward(&t, s)?;
            let expected = t.source.degree() * push.sheaf.dim();
            Ok(if push.slopes.total() == expected {
                vec![]
            } else {
                vec![format!(
                    "{s} along {f} (p={p}): total {} but deg·rank = {expected}",
                    push.slopes.total()
                )]
            })
        })
        .collect();
    CheckOutcome::collect(results)
}

/// Runs a check, turning a failed outcome into an error.
pub fn require(name: &str, outcome: CheckOutcome) -> Result<CheckOutcome> {
    if outcome.passed() {
        Ok(outcome)
    } else {
        Err(Error::Domain(format!("{name}: {outcome}")))
    }
}
