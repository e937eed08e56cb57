//! Finite covers of the trait `Spec k[[π]]`: Kummer and Artin-Schreier
//! covers, their composita, and purely inseparable base change.
//!
//! Every cover is totally ramified and described by a uniformizer `u` of
//! the top field: the base uniformizer `π` is a series in `u` (the
//! embedding) and each automorphism is the series `σ(u)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fe, FiniteField};
use crate::group::{Automorphism, GaloisGroup, Layer};
use crate::series::{LaurentSeries, Substituter};

/// A coefficient of the base field: an integer (image in `F_p`) or a power
/// of the chosen generator `g` of `F_q^×`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldConst {
    Int(i64),
    GenPower(i64),
}

impl FieldConst {
    pub fn value(self, field: &FiniteField) -> Fe {
        match self {
            FieldConst::Int(n) => field.from_int(n),
            FieldConst::GenPower(k) => field.generator_power(k),
        }
    }
}

impl fmt::Display for FieldConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConst::Int(n) => write!(f, "{n}"),
            FieldConst::GenPower(k) => write!(f, "g^{k}"),
        }
    }
}

/// How a cover is built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoverSpec {
    Trivial,
    Kummer { n: u64 },
    ArtinSchreier { m: u64, a: FieldConst },
    Compositum(Box<CoverSpec>, Box<CoverSpec>),
    BaseChange { inner: Box<CoverSpec>, n: u32 },
}

impl fmt::Display for CoverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverSpec::Trivial => write!(f, "trivial"),
            CoverSpec::Kummer { n } => write!(f, "kummer(n={n})"),
            CoverSpec::ArtinSchreier { m, a } => write!(f, "artin_schreier(m={m}, a={a})"),
            CoverSpec::Compositum(a, b) => write!(f, "compositum({a}, {b})"),
            CoverSpec::BaseChange { inner, n } => write!(f, "base_change({inner}, n={n})"),
        }
    }
}

impl CoverSpec {
    /// Kummer degrees whose roots of unity the coefficient field must hold.
    pub fn tame_degrees(&self) -> Vec<u64> {
        match self {
            CoverSpec::Kummer { n } => vec![*n],
            CoverSpec::Compositum(a, b) => {
                let mut v = a.tame_degrees();
                v.extend(b.tame_degrees());
                if let (CoverSpec::Kummer { n: x }, CoverSpec::Kummer { n: y }) = (&**a, &**b) {
                    v.push(x * y);
                }
                v
            }
            CoverSpec::BaseChange { inner, .. } => inner.tame_degrees(),
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Trivial,
    Kummer,
    ArtinSchreier,
    Compositum,
    InseparableBaseChange,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Trivial => "trivial",
            Provenance::Kummer => "kummer",
            Provenance::ArtinSchreier => "artin_schreier",
            Provenance::Compositum => "compositum",
            Provenance::InseparableBaseChange => "inseparable_base_change",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct CoverDescription {
    pub field: Arc<FiniteField>,
    /// The base uniformizer `π` as a series in the cover's uniformizer.
    pub embedding: LaurentSeries,
    pub degree: u64,
    pub separable: bool,
    pub provenance: Provenance,
    pub spec: CoverSpec,
}

impl CoverDescription {
    fn new(
        embedding: LaurentSeries,
        degree: u64,
        provenance: Provenance,
        spec: CoverSpec,
    ) -> Result<Self> {
        let v = embedding.valuation()?;
        if v != degree as i64 {
            return Err(Error::Domain(format!(
                "embedding has valuation {v} but the cover has degree {degree}"
            )));
        }
        Ok(CoverDescription {
            field: embedding.field().clone(),
            separable: !embedding.derivative().is_zero_to_precision(),
            embedding,
            degree,
            provenance,
            spec,
        })
    }
}

/// A sub-cover `E` of `L`, with the image of `E`'s uniformizer in `L` and
/// the restriction map `Gal(L/K) → Gal(E/K)`.
#[derive(Clone, Debug)]
pub struct Factor {
    pub cover: Arc<Cover>,
    pub uniformizer: LaurentSeries,
    pub restriction: Vec<usize>,
}

impl Factor {
    /// `Gal(L/E)`.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.restriction.len())
            .filter(|&i| self.restriction[i] == 0)
            .collect()
    }
}

/// A Galois cover with its verified automorphism group.
#[derive(Clone, Debug)]
pub struct Cover {
    pub description: CoverDescription,
    pub group: Arc<GaloisGroup>,
    /// The sub-covers this cover was assembled from (empty for primitive
    /// constructions).
    pub factors: Vec<Factor>,
    // Artin-Schreier generator `y` of the top wild layer, as a series in `u`.
    as_generator: Option<LaurentSeries>,
}

impl Cover {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.description.field
    }

    pub fn degree(&self) -> u64 {
        self.description.degree
    }

    pub fn embedding(&self) -> &LaurentSeries {
        &self.description.embedding
    }

    pub fn spec(&self) -> &CoverSpec {
        &self.description.spec
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    /// Checks that every automorphism fixes the embedded base.
    pub fn automorphisms_fix_base(&self) -> Result<bool> {
        for e in self.group.elements() {
            let moved = self.embedding().substitute(&e.substitution)?;
            if !moved.agrees_with(self.embedding()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `(α, β)` with `-αm + βp = 1` and `0 < α < p` minimal.
pub fn artin_schreier_exponents(p: u64, m: u64) -> (u64, u64) {
    let alpha = (1..p).find(|a| (a * m) % p == p - 1).unwrap_or(1);
    (alpha, (1 + alpha * m) / p)
}

pub fn trivial(field: &Arc<FiniteField>) -> Result<Arc<Cover>> {
    let u = LaurentSeries::variable(field);
    let description = CoverDescription::new(u.clone(), 1, Provenance::Trivial, CoverSpec::Trivial)?;
    let group = GaloisGroup::from_candidates(&u, 1, vec![Automorphism::new(u.clone(), vec![])], vec![])?;
    Ok(Arc::new(Cover {
        description,
        group: Arc::new(group),
        factors: Vec::new(),
        as_generator: None,
    }))
}

/// The tame cover `π = u^n` with group `u ↦ ζ^k u`.
pub fn kummer(field: &Arc<FiniteField>, n: u64) -> Result<Arc<Cover>> {
    let p = field.characteristic() as u64;
    if n == 0 {
        return Err(Error::Domain("Kummer degree must be positive".into()));
    }
    if n.is_multiple_of(p) {
        return Err(Error::TameDegree { p: p as u32, n });
    }
    let zeta = field.root_of_unity(n)?;
    let embedding = LaurentSeries::monomial(field, Fe::ONE, n as i64);
    let candidates = (0..n)
        .map(|k| {
            Automorphism::new(
                LaurentSeries::monomial(field, field.pow(zeta, k as i64), 1),
                vec![k],
            )
        })
        .collect();
    let description = CoverDescription::new(
        embedding.clone(),
        n,
        Provenance::Kummer,
        CoverSpec::Kummer { n },
    )?;
    let group = GaloisGroup::from_candidates(&embedding, n, candidates, vec![Layer::Tame(n)])?;
    Ok(Arc::new(Cover {
        description,
        group: Arc::new(group),
        factors: Vec::new(),
        as_generator: None,
    }))
}

/// The cover `y^p - y = a π^{-m}`.
pub fn artin_schreier(field: &Arc<FiniteField>, m: u64, a: FieldConst, prec: i64) -> Result<Arc<Cover>> {
    let a_val = check_as(field, m, a)?;
    let base = trivial(field)?;
    let t = LaurentSeries::variable(field);
    let g = t.powi(-(m as i64))?.scale(a_val);
    let layer = as_layer(&base, &g, prec)?;
    layer.into_cover(
        Provenance::ArtinSchreier,
        CoverSpec::ArtinSchreier { m, a },
        Vec::new(),
    )
}

fn check_as(field: &FiniteField, m: u64, a: FieldConst) -> Result<Fe> {
    let p = field.characteristic();
    if m == 0 {
        return Err(Error::Domain("Artin-Schreier break must be positive".into()));
    }
    if m.is_multiple_of(p as u64) {
        return Err(Error::WildBreak { p, m });
    }
    let a_val = a.value(field);
    if a_val.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    Ok(a_val)
}

struct AsLayer {
    embedding: LaurentSeries,
    candidates: Vec<Automorphism>,
    layers: Vec<Layer>,
    degree: u64,
    // Base uniformizer `t` and generator `y` as series in `u`.
    t_of_u: LaurentSeries,
    y: LaurentSeries,
}

impl AsLayer {
    fn into_cover(self, provenance: Provenance, spec: CoverSpec, factors: Vec<Factor>) -> Result<Arc<Cover>> {
        let description = CoverDescription::new(self.embedding.clone(), self.degree, provenance, spec)?;
        let group = GaloisGroup::from_candidates(&self.embedding, self.degree, self.candidates, self.layers)?;
        Ok(Arc::new(Cover {
            description,
            group: Arc::new(group),
            factors,
            as_generator: Some(self.y),
        }))
    }
}

/// Adjoins a root of `y^p - y = g` to the base cover, where `g` is a series
/// in the base uniformizer `t` fixed by the base group.
///
/// Leading terms of `g` with exponent divisible by `p` are absorbed into a
/// shift `y' = y - h`, leaving `y'^p - y' = g'` with `-v(g') = m'` prime to
/// `p`. With `t = u^p C^α` and `y' = u^{-m'} C^{-β}` the equation becomes the
/// fixed point problem `C = (1 - u^{m'(p-1)} C^{β(p-1)}) / G(u^p C^α)` for
/// `G = t^{m'} g'`, which gains at least one coefficient per round.
fn as_layer(base: &Cover, g: &LaurentSeries, prec: i64) -> Result<AsLayer> {
    let field = base.field().clone();
    let p = field.characteristic() as u64;
    let pi = p as i64;
    let mut g = g.clone();
    let mut h = LaurentSeries::exact_zero(&field);
    let m_prime = loop {
        if g.is_zero_to_precision() {
            return Err(Error::PrecisionExhausted(
                "Artin-Schreier right-hand side vanishes to precision".into(),
            ));
        }
        let v = g.offset();
        if v >= 0 {
            return Err(Error::UnsupportedCompositum(
                "Artin-Schreier layer is unramified over its base".into(),
            ));
        }
        let k = -v;
        if k % pi != 0 {
            break k as u64;
        }
        let b = g.leading_coefficient().unwrap();
        let c = field.frobenius_inv(b, 1);
        let root = LaurentSeries::monomial(&field, c, -k / pi);
        g = g
            .sub(&LaurentSeries::monomial(&field, b, -k))
            .add(&root);
        h = h.add(&root);
    };
    let (alpha, beta) = artin_schreier_exponents(p, m_prime);
    let big_g = g.shift(m_prime as i64);
    let g0_inv = field.inv(big_g.leading_coefficient().unwrap()).unwrap();
    let one = LaurentSeries::one(&field);

    let mut c = LaurentSeries::from_coeffs(&field, 0, vec![g0_inv], 1);
    loop {
        let t_u = c.pow(alpha).shift(pi);
        let denom = big_g.substitute(&t_u)?;
        let numer = one.sub(&c.pow(beta * (p - 1)).shift((m_prime * (p - 1)) as i64));
        let next = numer.div(&denom)?.truncate(prec);
        if !next.agrees_with(&c) {
            return Err(Error::Domain("Artin-Schreier iteration diverged".into()));
        }
        let progressed = next.abs_precision() > c.abs_precision();
        c = next;
        if c.abs_precision() >= prec || !progressed {
            break;
        }
    }

    let t_of_u = c.pow(alpha).shift(pi);
    let c_inv = c.inverse()?;
    let w = c.pow(beta).shift(m_prime as i64);
    let y_shifted = c_inv.pow(beta).shift(-(m_prime as i64));
    let mut sub_t = Substituter::new(&t_of_u)?;
    let y = if h.is_exact_zero() {
        y_shifted.clone()
    } else {
        y_shifted.add(&sub_t.apply(&h)?)
    };
    let embedding = sub_t.apply(base.embedding())?;
    let u = LaurentSeries::variable(&field);

    let mut candidates = Vec::with_capacity(base.group.order() * p as usize);
    for tau in base.group.elements() {
        let s = &tau.substitution;
        let d = if h.is_exact_zero() {
            LaurentSeries::exact_zero(&field)
        } else {
            sub_t.apply(&h.sub(&h.substitute(s)?))?
        };
        let ratio = sub_t.apply(&s.shift(-1))?.pow(beta);
        for cval in 0..p {
            let shift = d.add(&LaurentSeries::constant(&field, field.from_int(cval as i64)));
            let factor = one.add(&shift.mul(&w)).pow(alpha);
            let image = u.mul(&factor).mul(&ratio);
            let mut label = tau.label.clone();
            label.push(cval);
            candidates.push(Automorphism::new(image, label));
        }
    }
    let mut layers = base.group.layers().to_vec();
    layers.push(Layer::Wild(p));
    Ok(AsLayer {
        embedding,
        candidates,
        layers,
        degree: base.degree() * p,
        t_of_u,
        y,
    })
}

/// Uniformizer `y^α π^β` of the standalone Artin-Schreier cover with break
/// `m`, given its generator `y` and `π` inside a larger field.
fn as_uniformizer(p: u64, m: u64, y: &LaurentSeries, pi: &LaurentSeries) -> LaurentSeries {
    let (alpha, beta) = artin_schreier_exponents(p, m);
    y.pow(alpha).mul(&pi.pow(beta))
}

/// Computes and verifies the restriction map onto a sub-cover given the
/// image of its uniformizer.
fn attach_factor(top: &Cover, sub: Arc<Cover>, uniformizer: LaurentSeries) -> Result<Factor> {
    let images: Vec<LaurentSeries> = sub
        .group
        .elements()
        .iter()
        .map(|tau| tau.substitution.substitute(&uniformizer))
        .collect::<Result<_>>()?;
    let mut restriction = Vec::with_capacity(top.group.order());
    for sigma in top.group.elements() {
        let moved = uniformizer.substitute(&sigma.substitution)?;
        let hits: Vec<usize> = (0..images.len())
            .filter(|&k| images[k].agrees_with(&moved))
            .collect();
        match hits.as_slice() {
            [k] => restriction.push(*k),
            [] => {
                return Err(Error::NotAnAutomorphism(
                    "automorphism does not restrict to the sub-cover".into(),
                ))
            }
            _ => {
                return Err(Error::PrecisionExhausted(
                    "restriction to the sub-cover is ambiguous".into(),
                ))
            }
        }
    }
    let g = &top.group;
    for i in 0..g.order() {
        for j in 0..g.order() {
            if restriction[g.compose(i, j)] != sub.group.compose(restriction[i], restriction[j]) {
                return Err(Error::NotAHomomorphism("restriction map".into()));
            }
        }
    }
    let moved_base = sub.embedding().substitute(&uniformizer)?;
    if !moved_base.agrees_with(top.embedding()) {
        return Err(Error::Domain("sub-cover does not lie over the same base".into()));
    }
    Ok(Factor {
        cover: sub,
        uniformizer,
        restriction,
    })
}

fn with_factors(cover: Arc<Cover>, spec: CoverSpec, factors: Vec<(Arc<Cover>, LaurentSeries)>) -> Result<Arc<Cover>> {
    let mut attached = Vec::with_capacity(factors.len());
    for (sub, unif) in factors {
        attached.push(attach_factor(&cover, sub, unif)?);
    }
    let mut c = (*cover).clone();
    c.description.spec = spec;
    c.description.provenance = Provenance::Compositum;
    c.factors = attached;
    Ok(Arc::new(c))
}

/// The compositum of two covers over the same base.
///
/// Supported shapes: anything with the trivial cover, two Kummer covers of
/// coprime degree, a Kummer cover with an Artin-Schreier cover, and two
/// Artin-Schreier covers with distinct breaks.
pub fn compositum(field: &Arc<FiniteField>, a: &CoverSpec, b: &CoverSpec, prec: i64) -> Result<Arc<Cover>> {
    let spec = CoverSpec::Compositum(Box::new(a.clone()), Box::new(b.clone()));
    let p = field.characteristic() as u64;
    let ca = build(field, a, prec)?;
    let cb = build(field, b, prec)?;
    let u = LaurentSeries::variable(field);
    match (a, b) {
        (CoverSpec::Trivial, _) => {
            let pi = cb.embedding().clone();
            with_factors(cb.clone(), spec, vec![(ca, pi), (cb, u)])
        }
        (_, CoverSpec::Trivial) => {
            let pi = ca.embedding().clone();
            with_factors(ca.clone(), spec, vec![(ca, u), (cb, pi)])
        }
        (CoverSpec::Kummer { n: n1 }, CoverSpec::Kummer { n: n2 }) => {
            if num_integer::gcd(*n1, *n2) != 1 {
                return Err(Error::UnsupportedCompositum(format!(
                    "Kummer degrees {n1} and {n2} are not coprime"
                )));
            }
            let top = kummer(field, n1 * n2)?;
            let fa = LaurentSeries::monomial(field, Fe::ONE, *n2 as i64);
            let fb = LaurentSeries::monomial(field, Fe::ONE, *n1 as i64);
            with_factors(top, spec, vec![(ca, fa), (cb, fb)])
        }
        (CoverSpec::Kummer { n }, CoverSpec::ArtinSchreier { m, a: coef })
        | (CoverSpec::ArtinSchreier { m, a: coef }, CoverSpec::Kummer { n }) => {
            let kum = if matches!(a, CoverSpec::Kummer { .. }) { &ca } else { &cb };
            let asc = if matches!(a, CoverSpec::Kummer { .. }) { &cb } else { &ca };
            let a_val = check_as(field, *m, *coef)?;
            let t = LaurentSeries::variable(field);
            let g = t.powi(-((n * m) as i64))?.scale(a_val);
            let layer = as_layer(kum, &g, prec)?;
            let t_of_u = layer.t_of_u.clone();
            let y = layer.y.clone();
            let top = layer.into_cover(Provenance::Compositum, spec.clone(), Vec::new())?;
            let u_as = as_uniformizer(p, *m, &y, top.embedding());
            let parts = if matches!(a, CoverSpec::Kummer { .. }) {
                vec![(kum.clone(), t_of_u), (asc.clone(), u_as)]
            } else {
                vec![(asc.clone(), u_as), (kum.clone(), t_of_u)]
            };
            with_factors(top, spec, parts)
        }
        (
            CoverSpec::ArtinSchreier { m: m1, a: a1 },
            CoverSpec::ArtinSchreier { m: m2, a: a2 },
        ) => {
            if m1 == m2 {
                return Err(Error::UnsupportedCompositum(format!(
                    "Artin-Schreier covers share the break {m1}"
                )));
            }
            let (base, top_m, top_a, base_first) = if m1 < m2 {
                (&ca, *m2, *a2, true)
            } else {
                (&cb, *m1, *a1, false)
            };
            let a_val = check_as(field, top_m, top_a)?;
            let g = base.embedding().powi(-(top_m as i64))?.scale(a_val);
            let layer = as_layer(base, &g, prec)?;
            let t_of_u = layer.t_of_u.clone();
            let y = layer.y.clone();
            let top = layer.into_cover(Provenance::Compositum, spec.clone(), Vec::new())?;
            let u_top = as_uniformizer(p, top_m, &y, top.embedding());
            let parts = if base_first {
                vec![(ca.clone(), t_of_u), (cb.clone(), u_top)]
            } else {
                vec![(ca.clone(), u_top), (cb.clone(), t_of_u)]
            };
            with_factors(top, spec, parts)
        }
        _ => Err(Error::UnsupportedCompositum(format!("{a} with {b}"))),
    }
}

/// The cover `E'` of `K' = k((π^{1/p^n}))` obtained from `E` by purely
/// inseparable base change, together with the Frobenius cover `K'/K`.
#[derive(Clone, Debug)]
pub struct BaseChangePair {
    pub original: Arc<Cover>,
    pub changed: Arc<Cover>,
    pub frobenius: CoverDescription,
}

/// Purely inseparable base change of degree `p^n`.
///
/// Over the perfect field `k`, `π^{1/p^n}` and `u^{1/p^n}` are obtained by
/// taking `p^n`-th roots of coefficients, so the new embedding and
/// automorphisms are coefficient-wise Frobenius twists. The group of `E'` is
/// recomputed from the twisted series and must have the same table as `E`'s
/// (element `i` of one is `id ⊗ σ_i` of the other).
pub fn inseparable_base_change(e: &Arc<Cover>, n: u32) -> Result<BaseChangePair> {
    let field = e.field().clone();
    let p = field.characteristic() as u64;
    let pn = p.checked_pow(n).filter(|&x| x <= i64::MAX as u64 / 4).ok_or_else(|| {
        Error::Domain(format!("base change degree {p}^{n} is too large"))
    })?;
    let frobenius = CoverDescription::new(
        LaurentSeries::monomial(&field, Fe::ONE, pn as i64),
        pn,
        Provenance::InseparableBaseChange,
        CoverSpec::BaseChange {
            inner: Box::new(CoverSpec::Trivial),
            n,
        },
    )?;
    if n == 0 {
        return Ok(BaseChangePair {
            original: e.clone(),
            changed: e.clone(),
            frobenius,
        });
    }
    let changed = twist_cover(e, n)?;
    if changed.group.table() != e.group.table() {
        return Err(Error::NotAHomomorphism(
            "base change does not preserve the group table".into(),
        ));
    }
    Ok(BaseChangePair {
        original: e.clone(),
        changed,
        frobenius,
    })
}

fn twist_cover(e: &Arc<Cover>, n: u32) -> Result<Arc<Cover>> {
    let embedding = e.embedding().frobenius_twist(n);
    let candidates = e
        .group
        .elements()
        .iter()
        .map(|a| Automorphism::new(a.substitution.frobenius_twist(n), a.label.clone()))
        .collect();
    let spec = CoverSpec::BaseChange {
        inner: Box::new(e.spec().clone()),
        n,
    };
    let description =
        CoverDescription::new(embedding.clone(), e.degree(), Provenance::InseparableBaseChange, spec)?;
    let group = GaloisGroup::from_candidates(&embedding, e.degree(), candidates, e.group.layers().to_vec())?;
    let mut factors = Vec::with_capacity(e.factors.len());
    for f in &e.factors {
        factors.push(Factor {
            cover: twist_cover(&f.cover, n)?,
            uniformizer: f.uniformizer.frobenius_twist(n),
            restriction: f.restriction.clone(),
        });
    }
    Ok(Arc::new(Cover {
        description,
        group: Arc::new(group),
        factors,
        as_generator: e.as_generator.as_ref().map(|y| y.frobenius_twist(n)),
    }))
}

/// Builds the cover described by `spec` with `prec` coefficients of
/// relative precision.
pub fn build(field: &Arc<FiniteField>, spec: &CoverSpec, prec: i64) -> Result<Arc<Cover>> {
    match spec {
        CoverSpec::Trivial => trivial(field),
        CoverSpec::Kummer { n } => kummer(field, *n),
        CoverSpec::ArtinSchreier { m, a } => artin_schreier(field, *m, *a, prec),
        CoverSpec::Compositum(a, b) => compositum(field, a, b, prec),
        CoverSpec::BaseChange { inner, n } => {
            let e = build(field, inner, prec)?;
            Ok(inseparable_base_change(&e, *n)?.changed)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, q: u64) -> Arc<FiniteField> {
        FiniteField::with_order(p, q).unwrap()
    }

    #[test]
    fn kummer_examples() {
        let c = kummer(&field(3, 9), 4).unwrap();
        assert_eq!(c.degree(), 4);
        assert_eq!(c.group.order(), 4);
        assert!(c.description.separable);
        let t = kummer(&field(3, 3), 1).unwrap();
        assert_eq!(t.group.order(), 1);
        assert_eq!(
            kummer(&field(2, 2), 2).unwrap_err(),
            Error::TameDegree { p: 2, n: 2 }
        );
        assert!(matches!(kummer(&field(3, 3), 4), Err(Error::FieldTooSmall(_))));
    }

    #[test]
    fn artin_schreier_examples() {
        let c = artin_schreier(&field(3, 3), 2, FieldConst::Int(1), 64).unwrap();
        assert_eq!(c.degree(), 3);
        assert_eq!(c.group.order(), 3);
        assert!(c.automorphisms_fix_base().unwrap());
        assert!(c.description.separable);
        let c = artin_schreier(&field(2, 2), 1, FieldConst::Int(1), 64).unwrap();
        assert_eq!(c.group.order(), 2);
        assert_eq!(
            artin_schreier(&field(3, 3), 3, FieldConst::Int(1), 64).unwrap_err(),
            Error::WildBreak { p: 3, m: 3 }
        );
        assert_eq!(
            artin_schreier(&field(3, 3), 2, FieldConst::Int(0), 64).unwrap_err(),
            Error::ZeroCoefficient
        );
    }

    #[test]
    fn artin_schreier_generator_satisfies_equation() {
        let f = field(3, 9);
        let a = FieldConst::GenPower(1);
        let c = artin_schreier(&f, 5, a, 64).unwrap();
        let y = c.as_generator.clone().unwrap();
        let lhs = y.pow(3).sub(&y);
        let rhs = c.embedding().powi(-5).unwrap().scale(a.value(&f));
        assert!(lhs.agrees_with(&rhs));
        assert!(lhs.relative_precision() > 40);
    }

    #[test]
    fn exponents_are_minimal() {
        assert_eq!(artin_schreier_exponents(3, 2), (1, 1));
        assert_eq!(artin_schreier_exponents(2, 1), (1, 1));
        assert_eq!(artin_schreier_exponents(5, 3), (3, 2));
    }

    #[test]
    fn compositum_examples() {
        let f = field(5, 25);
        let k2 = CoverSpec::Kummer { n: 2 };
        let k3 = CoverSpec::Kummer { n: 3 };
        let c = compositum(&f, &k2, &k3, 64).unwrap();
        assert_eq!(c.degree(), 6);
        assert_eq!(c.factors.len(), 2);

        let f = field(2, 2);
        let as1 = CoverSpec::ArtinSchreier { m: 1, a: FieldConst::Int(1) };
        let as3 = CoverSpec::ArtinSchreier { m: 3, a: FieldConst::Int(1) };
        let c = compositum(&f, &as1, &as3, 64).unwrap();
        assert_eq!(c.degree(), 4);
        assert_eq!(c.group.order(), 4);
        assert!(c.group.is_abelian());
        assert!((1..4).all(|i| c.group.element_order(i) == 2));
        assert!(matches!(
            compositum(&f, &as1, &as1, 64),
            Err(Error::UnsupportedCompositum(_))
        ));
    }

    #[test]
    fn kummer_with_artin_schreier() {
        let f = field(3, 9);
        let k2 = CoverSpec::Kummer { n: 2 };
        let as2 = CoverSpec::ArtinSchreier { m: 2, a: FieldConst::Int(1) };
        let c = compositum(&f, &as2, &k2, 64).unwrap();
        assert_eq!(c.group.order(), 6);
        assert_eq!(c.factors[0].cover.degree(), 3);
        assert_eq!(c.factors[0].kernel().len(), 2);
        assert_eq!(c.factors[1].kernel().len(), 3);
    }

    #[test]
    fn base_change_examples() {
        let f = field(3, 9);
        let e = artin_schreier(&f, 2, FieldConst::Int(1), 64).unwrap();
        let pair = inseparable_base_change(&e, 1).unwrap();
        assert_eq!(pair.changed.group.order(), 3);
        assert!(!pair.frobenius.separable);
        assert_eq!(pair.frobenius.degree, 3);
        let same = inseparable_base_change(&e, 0).unwrap();
        assert!(Arc::ptr_eq(&same.changed, &e));
        let k = kummer(&f, 4).unwrap();
        let pair = inseparable_base_change(&k, 2).unwrap();
        assert_eq!(pair.changed.group.order(), 4);
    }
}
