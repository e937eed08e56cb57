//! Nearby slopes of sheaves along finite morphisms of traits.
//!
//! For `f: S_0 → S` finite and `F` a sheaf on the generic point of `S_0`
//! whose monodromy factors through a Galois cover `L/K_0`, the nearby slopes
//! are the slopes of `f_*F`, i.e. of the induced representation from
//! `Gal(L/K_0)` to `Gal(L/K)`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extensions::{build, compositum, kummer, Cover, CoverSpec, FieldConst};
use crate::field::FiniteField;
use crate::group::{GaloisGroup, Layer, Subgroup};
use crate::numerics::{fmt_rational, rat, PiecewiseLinearFn, Rational};
use crate::precision::PrecisionPolicy;
use crate::ramification::{coset_filtration, RamificationFiltration};
use crate::reps::{all_characters, break_decomposition, Representation, SlopeMultiset};
use crate::series::LaurentSeries;

/// A sheaf given by the representation of the monodromy group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SheafSpec {
    /// The constant sheaf of the given rank.
    Trivial { rank: u64 },
    /// The regular representation of the monodromy group.
    Regular,
    /// The character `θ^tame · ∏ ψ_i^{wild_i}`: `θ` is the tame character
    /// `σ ↦ σ(u)/u mod u` and `ψ_i` the additive character of the `i`-th
    /// Artin-Schreier layer.
    Character { tame: i64, wild: Vec<i64> },
    Sum(Vec<SheafSpec>),
}

impl fmt::Display for SheafSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafSpec::Trivial { rank } => write!(f, "trivial(rank={rank})"),
            SheafSpec::Regular => write!(f, "regular"),
            SheafSpec::Character { tame, wild } => {
                let w: Vec<String> = wild.iter().map(|k| k.to_string()).collect();
                write!(f, "character(tame={tame}, wild=[{}])", w.join(","))
            }
            SheafSpec::Sum(parts) => {
                let p: Vec<String> = parts.iter().map(|s| s.to_string()).collect();
                write!(f, "{}", p.join(" + "))
            }
        }
    }
}

/// `x`-exponent of the tame character `θ(σ) = σ(u)/u mod u` in
/// `Z[x]/(x^e - 1)`, `e` the group exponent.
pub fn tame_exponent(cover: &Cover, index: usize) -> Result<u64> {
    let field = cover.field();
    let e = cover.group().exponent();
    let log = tame_log(cover.group(), index)? as u64;
    let qm1 = field.order() - 1;
    if !(log * e).is_multiple_of(qm1) {
        return Err(Error::Domain(format!(
            "tame character value g^{log} has order not dividing the group exponent {e}"
        )));
    }
    Ok((log * e / qm1) % e)
}

fn tame_log(group: &GaloisGroup, index: usize) -> Result<u32> {
    let s = &group.element(index).substitution;
    s.coeff(1)
        .and_then(|c| c.log())
        .ok_or_else(|| Error::PrecisionExhausted("leading coefficient of σ(u) unknown".into()))
}

fn wild_layers(group: &GaloisGroup) -> Vec<usize> {
    group
        .layers()
        .iter()
        .enumerate()
        .filter(|(_, l)| matches!(l, Layer::Wild(_)))
        .map(|(i, _)| i)
        .collect()
}

/// The representation of `Gal(C/K)` described by `spec`.
pub fn sheaf_representation(cover: &Cover, spec: &SheafSpec) -> Result<Representation> {
    let g = cover.group();
    let whole = g.whole();
    match spec {
        SheafSpec::Trivial { rank } => {
            if *rank == 0 {
                return Err(Error::Domain("sheaf rank must be positive".into()));
            }
            let t = Representation::trivial(g, &whole)?;
            let mut acc = t.clone();
            for _ in 1..*rank {
                acc = acc.sum(&t)?;
            }
            Ok(acc)
        }
        SheafSpec::Regular => Representation::regular(g, &whole),
        SheafSpec::Character { tame, wild } => {
            let wl = wild_layers(g);
            if wl.len() != wild.len() {
                return Err(Error::Domain(format!(
                    "cover has {} wild layers but the character lists {} exponents",
                    wl.len(),
                    wild.len()
                )));
            }
            let e = g.exponent() as i64;
            let mut exps = Vec::with_capacity(g.order());
            for i in 0..g.order() {
                let mut k = tame.rem_euclid(e) * tame_exponent(cover, i)? as i64 % e;
                for (&layer, &w) in wl.iter().zip(wild) {
                    let p = g.layers()[layer].modulus() as i64;
                    k += w.rem_euclid(p) * g.element(i).label[layer] as i64 % p * (e / p);
                }
                exps.push(k.rem_euclid(e) as u64);
            }
            Representation::character(g, &whole, exps)
        }
        SheafSpec::Sum(parts) => {
            let mut iter = parts.iter();
            let first = iter
                .next()
                .ok_or_else(|| Error::Domain("empty sum of sheaves".into()))?;
            let mut acc = sheaf_representation(cover, first)?;
            for p in iter {
                acc = acc.sum(&sheaf_representation(cover, p)?)?;
            }
            Ok(acc)
        }
    }
}

/// The tower `K ⊂ K_0 ⊂ L`: `f = K_0/K` and the monodromy cover `L/K_0`,
/// realized inside one Galois cover `L/K`.
#[derive(Clone, Debug)]
pub struct Tower {
    pub source: Arc<Cover>,
    /// Standalone model of `L/K_0`, built over `k((π_0))`.
    pub monodromy: Arc<Cover>,
    pub cover: Arc<Cover>,
    /// `π_0` as a series in the uniformizer of `L`.
    pub source_uniformizer: LaurentSeries,
    /// `Gal(L/K_0)`.
    pub h0: Subgroup,
    /// Element of `h0` matching each element of the monodromy group.
    pub monodromy_to_h0: Vec<usize>,
}

/// Builds the tower for `f` and a monodromy cover of the source.
///
/// Supported: either side trivial, two Kummer covers, Kummer `n` below an
/// Artin-Schreier cover with break divisible by `n`, and an Artin-Schreier
/// cover below a Kummer cover. These are the shapes with `L/K` Galois.
pub fn tower(field: &Arc<FiniteField>, f: &CoverSpec, monodromy: &CoverSpec, prec: i64) -> Result<Tower> {
    let source = build(field, f, prec)?;
    let mono = build(field, monodromy, prec)?;
    let (cover, pi0) = match (f, monodromy) {
        (CoverSpec::Trivial, _) => (mono.clone(), mono.embedding().clone()),
        (_, CoverSpec::Trivial) => (source.clone(), LaurentSeries::variable(field)),
        (CoverSpec::Kummer { n }, CoverSpec::Kummer { n: n2 }) => {
            let l = kummer(field, n * n2)?;
            (l, LaurentSeries::monomial(field, crate::field::Fe::ONE, *n2 as i64))
        }
        (CoverSpec::Kummer { n }, CoverSpec::ArtinSchreier { m, a }) => {
            if m % n != 0 {
                return Err(Error::UnsupportedTower(format!(
                    "break {m} over a Kummer cover of degree {n} does not descend to the base"
                )));
            }
            let below = CoverSpec::ArtinSchreier { m: m / n, a: *a };
            let l = compositum(field, f, &below, prec)?;
            let pi0 = l.factors[0].uniformizer.clone();
            (l, pi0)
        }
        (CoverSpec::ArtinSchreier { .. }, CoverSpec::Kummer { .. }) => {
            let l = compositum(field, f, monodromy, prec)?;
            let pi0 = l.factors[0].uniformizer.clone();
            (l, pi0)
        }
        _ => {
            return Err(Error::UnsupportedTower(format!("{monodromy} over {f}")));
        }
    };
    let moved = source.embedding().substitute(&pi0)?;
    if !moved.agrees_with(cover.embedding()) {
        return Err(Error::UnsupportedTower("source cover does not sit inside L".into()));
    }
    let g = cover.group();
    let mut h0 = Vec::new();
    for (i, e) in g.elements().iter().enumerate() {
        if pi0.substitute(&e.substitution)?.agrees_with(&pi0) {
            h0.push(i);
        }
    }
    let h0 = g.subgroup(&h0)?;
    if h0.len() as u64 * source.degree() != g.order() as u64 || h0.len() != mono.group().order() {
        return Err(Error::UnsupportedTower(format!(
            "Gal(L/K_0) has order {} but the monodromy cover has degree {}",
            h0.len(),
            mono.degree()
        )));
    }
    let monodromy_to_h0 = match_monodromy(&cover, &h0, &mono)?;
    Ok(Tower {
        source,
        monodromy: mono,
        cover,
        source_uniformizer: pi0,
        h0,
        monodromy_to_h0,
    })
}

// Elements are matched by their intrinsic invariants: the tame character
// value and the Artin-Schreier translation constants of the monodromy's wild
// layers.
fn match_monodromy(l: &Cover, h0: &[usize], mono: &Cover) -> Result<Vec<usize>> {
    let mono_wild = wild_layers(mono.group());
    let l_wild = wild_layers(l.group());
    let l_wild = &l_wild[l_wild.len() - mono_wild.len()..];
    let key = |g: &GaloisGroup, i: usize, layers: &[usize]| -> Result<(u32, Vec<u64>)> {
        let labels = layers.iter().map(|&k| g.element(i).label[k]).collect();
        Ok((tame_log(g, i)?, labels))
    };
    let l_keys = h0
        .iter()
        .map(|&i| key(l.group(), i, l_wild))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(mono.group().order());
    for j in 0..mono.group().order() {
        let k = key(mono.group(), j, &mono_wild)?;
        let hits: Vec<usize> = (0..h0.len()).filter(|&x| l_keys[x] == k).collect();
        match hits.as_slice() {
            [x] => out.push(h0[*x]),
            _ => {
                return Err(Error::UnsupportedTower(
                    "monodromy group does not match Gal(L/K_0)".into(),
                ))
            }
        }
    }
    Ok(out)
}

/// `f_*F` with the data used to compute it.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub filtration: RamificationFiltration,
    /// `F` as a representation of `Gal(L/K_0)`.
    pub sheaf: Representation,
    pub pushforward: Representation,
    pub slopes: SlopeMultiset,
}

pub fn pushforward(tower: &Tower, sheaf: &SheafSpec) -> Result<Pushforward> {
    let on_mono = sheaf_representation(&tower.monodromy, sheaf)?;
    let g = tower.cover.group();
    let on_h0 = on_mono.transport(g, &tower.h0, &tower.monodromy_to_h0)?;
    let push = on_h0.induce(&g.whole())?;
    let filtration = RamificationFiltration::of_cover(&tower.cover)?;
    let slopes = break_decomposition(&push, &filtration)?;
    Ok(Pushforward {
        filtration,
        sheaf: on_h0,
        pushforward: push,
        slopes,
    })
}

pub fn nearby_slopes(tower: &Tower, sheaf: &SheafSpec) -> Result<SlopeMultiset> {
    Ok(pushforward(tower, sheaf)?.slopes)
}

/// `Max Sl^nb_f(Q_ℓ)`, with `+∞` kept as a separate marker.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SlopeBound {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for SlopeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeBound::Finite(r) => f.write_str(&fmt_rational(r)),
            SlopeBound::Infinite => f.write_str("infinity"),
        }
    }
}

/// Highest jump of the coset filtration on `Gal(L/K)/Gal(L/K_0)`.
pub fn max_trivial_nearby_slope(tower: &Tower) -> Result<SlopeBound> {
    let filt = RamificationFiltration::of_cover(&tower.cover)?;
    let cf = coset_filtration(&filt, &tower.h0)?;
    Ok(SlopeBound::Finite(cf.highest_jump()))
}

/// `r / (1 + max)` for every slope; empty when the maximum is infinite.
pub fn weighted_slopes(slopes: &SlopeMultiset, max: &SlopeBound) -> Vec<Rational> {
    match max {
        SlopeBound::Infinite => Vec::new(),
        SlopeBound::Finite(m) => {
            let d = Rational::one() + m;
            slopes.slopes().iter().map(|r| r / &d).collect()
        }
    }
}

/// The exact values behind the boundedness statement
/// `Sl^nb_f(M) ⊂ [0, max(C_M, r_0)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub slopes: SlopeMultiset,
    /// `Max Sl^nb_f(Q_ℓ)`.
    pub r0: Rational,
    /// Highest jump of `L'/K_0`, `L'` the field cut out by the monodromy.
    pub r_m: Rational,
    /// `ψ_{L'/K_0}(r_M)`.
    pub c_m: Rational,
    /// `φ_{L'/K}(C_M)`.
    pub phi_c_m: Rational,
    /// `max(r_0, φ_{L'/K}(C_M))`: beyond it `Gal(L'/K)^r` is trivial.
    pub bound: Rational,
    /// `max(C_M, r_0)`.
    pub inclusion_bound: Rational,
    /// Highest jump of `Gal(L'/K)`.
    pub last_jump: Rational,
    pub monodromy_order: usize,
    pub inclusion_holds: bool,
    pub trivial_beyond_bound: bool,
    pub concavity_holds: bool,
}

/// Computes and checks the boundedness certificate for `f_*M`.
///
/// `L' = L^N` with `N` the largest subgroup of `Gal(L/K)` normal in it and
/// acting trivially through `M`, so `L'/K` is Galois and `M` factors through
/// `Gal(L'/K_0)`. Herbrand functions of `L'` are obtained from those of `L`
/// by transitivity: `ψ_{L'/K_0} = φ_{L/L'} ∘ ψ_{L/K_0}` and
/// `φ_{L'/K} = φ_{L/K} ∘ ψ_{L/L'}`.
pub fn boundedness_certificate(tower: &Tower, sheaf: &SheafSpec) -> Result<Certificate> {
    let push = pushforward(tower, sheaf)?;
    let g = tower.cover.group();
    let filt = &push.filtration;
    let dim = push.sheaf.dim() as i64;
    let kernel: Vec<usize> = tower
        .h0
        .iter()
        .copied()
        .filter(|&h| push.sheaf.value(h).unwrap().as_integer() == Some(dim))
        .collect();
    let n = g.core(&g.subgroup(&kernel)?);
    let r0 = coset_filtration(filt, &tower.h0)?.highest_jump();

    let filt_k0 = RamificationFiltration::of_subgroup(g, &tower.h0)?;
    let filt_n = RamificationFiltration::of_subgroup(g, &n)?;
    let r_m = coset_filtration(&filt_k0, &n)?.highest_jump();
    let psi_top_k0 = filt_n.phi().compose(filt_k0.psi())?;
    let c_m = psi_top_k0.eval(&r_m)?;
    let phi_top_k: PiecewiseLinearFn = filt.phi().compose(filt_n.psi())?;
    let phi_c_m = phi_top_k.eval(&c_m)?;
    let bound = r0.clone().max(phi_c_m.clone());
    let inclusion_bound = c_m.clone().max(r0.clone());
    let last_jump = coset_filtration(filt, &n)?.highest_jump();

    let max_slope = push.slopes.max_slope().cloned().unwrap_or_else(Rational::zero);
    let inclusion_holds = max_slope <= inclusion_bound && max_slope <= bound;
    let mut trivial_beyond_bound = last_jump <= bound;
    for step in [rat(1, 2), Rational::one()] {
        let r = &bound + step;
        let gr = filt.upper_subgroup(&r)?;
        trivial_beyond_bound &= gr.iter().all(|x| n.binary_search(x).is_ok());
    }
    let concavity_holds = phi_top_k.is_herbrand_shaped() && phi_c_m <= c_m;

    let cert = Certificate {
        slopes: push.slopes,
        r0,
        r_m,
        c_m,
        phi_c_m,
        bound,
        inclusion_bound,
        last_jump,
        monodromy_order: tower.h0.len() / n.len(),
        inclusion_holds,
        trivial_beyond_bound,
        concavity_holds,
    };
    if !(cert.inclusion_holds && cert.trivial_beyond_bound && cert.concavity_holds) {
        return Err(Error::CertificateViolation(format!(
            "slopes {} against bound {} (C_M = {}, r_0 = {}, last jump {})",
            cert.slopes,
            fmt_rational(&cert.bound),
            fmt_rational(&cert.c_m),
            fmt_rational(&cert.r0),
            fmt_rational(&cert.last_jump)
        )));
    }
    Ok(cert)
}

/// Slope-0 multiplicity of `V ⊗ N` for a rank-one `N` of pure slope `r`.
pub fn witness_probe(
    v: &Representation,
    filt: &RamificationFiltration,
    r: &Rational,
    n: &Representation,
) -> Result<u64> {
    let s = break_decomposition(n, filt)?;
    if n.dim() != 1 || s.slopes() != [r.clone()] {
        return Err(Error::NotPureSlope(fmt_rational(r)));
    }
    let twisted = v.tensor(n)?;
    twisted.fixed_dim(&filt.upper_subgroup_plus(&Rational::zero())?)
}

/// Slopes certified by rank-one witnesses: `r` such that some character `N`
/// of pure slope `r` makes `f_*F ⊗ N` have a tame part.
pub fn witness_slopes(push: &Pushforward) -> Result<Vec<Rational>> {
    let v = &push.pushforward;
    let g = v.group();
    let mut found = BTreeSet::new();
    for exps in all_characters(g, &g.whole())? {
        let chi = Representation::character(g, &g.whole(), exps)?;
        let r = break_decomposition(&chi, &push.filtration)?
            .max_slope()
            .cloned()
            .unwrap();
        if witness_probe(v, &push.filtration, &r, &chi)? > 0 {
            found.insert(r);
        }
    }
    Ok(found.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TamenessProbe {
    pub cover: CoverSpec,
    pub slopes: SlopeMultiset,
    pub max_trivial: SlopeBound,
    pub holds: bool,
}

/// Checks `Sl^nb_f(F) ⊂ [0, Max Sl^nb_f(Q_ℓ)]` over a finite set of `f`.
/// Passing is evidence of tameness, failing disproves it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TamenessReport {
    pub probes: Vec<TamenessProbe>,
    pub consistent_with_tame: bool,
}

pub fn tameness_check(
    field: &Arc<FiniteField>,
    monodromy: &CoverSpec,
    sheaf: &SheafSpec,
    covers: &[CoverSpec],
    prec: i64,
) -> Result<TamenessReport> {
    let mut probes = Vec::with_capacity(covers.len());
    for f in covers {
        let t = tower(field, f, monodromy, prec)?;
        let slopes = nearby_slopes(&t, sheaf)?;
        let max_trivial = max_trivial_nearby_slope(&t)?;
        let holds = match (&max_trivial, slopes.max_slope()) {
            (SlopeBound::Infinite, _) | (_, None) => true,
            (SlopeBound::Finite(b), Some(s)) => s <= b,
        };
        probes.push(TamenessProbe {
            cover: f.clone(),
            slopes,
            max_trivial,
            holds,
        });
    }
    let consistent_with_tame = probes.iter().all(|p| p.holds);
    Ok(TamenessReport {
        probes,
        consistent_with_tame,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepOutcome {
    Skipped(String),
    Done {
        slopes: SlopeMultiset,
        max_slope: SlopeBound,
        weighted: Vec<Rational>,
        weighted_max: Option<Rational>,
        precision: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepEntry {
    pub m: u64,
    pub outcome: Result<SweepOutcome>,
}

/// Nearby slopes along `f_m : y^p - y = π^{-m}` for each `m`, in order of
/// `m`. Breaks divisible by `p` are skipped.
pub fn family_sweep(
    field: &Arc<FiniteField>,
    ms: &[u64],
    monodromy: &CoverSpec,
    sheaf: &SheafSpec,
    policy: PrecisionPolicy,
) -> Vec<SweepEntry> {
    let p = field.characteristic() as u64;
    ms.par_iter()
        .map(|&m| {
            if m == 0 || m % p == 0 {
                return SweepEntry {
                    m,
                    outcome: Ok(SweepOutcome::Skipped(format!("p = {p} divides m = {m}"))),
                };
            }
            let f = CoverSpec::ArtinSchreier {
                m,
                a: FieldConst::Int(1),
            };
            let outcome = policy
                .run(|prec| {
                    let t = tower(field, &f, monodromy, prec)?;
                    let slopes = nearby_slopes(&t, sheaf)?;
                    let max = max_trivial_nearby_slope(&t)?;
                    Ok((slopes, max))
                })
                .map(|((slopes, max_slope), precision)| {
                    let weighted = weighted_slopes(&slopes, &max_slope);
                    let weighted_max = weighted.iter().max().cloned();
                    SweepOutcome::Done {
                        slopes,
                        max_slope,
                        weighted,
                        weighted_max,
                        precision,
                    }
                });
            SweepEntry { m, outcome }
        })
        .collect()
}
