//! Characters of finite Galois groups, fixed-space dimensions, break
//! decompositions and Swan conductors.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::group::{GaloisGroup, Subgroup};
use crate::numerics::{fmt_rational, Rational};
use crate::ramification::RamificationFiltration;

/// Provenance of a summand of a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `Q[G/H]`.
    Permutation { subgroup: Subgroup },
    /// One-dimensional character `σ ↦ x^{k_σ}`, exponents listed along the
    /// support.
    Character { exponents: Vec<u64> },
    Tensor(Vec<Atom>, Vec<Atom>),
    Induced { from: Subgroup, inner: Vec<Atom> },
    Dual(Vec<Atom>),
    /// Carried over from an isomorphic group.
    Transported(Vec<Atom>),
}

/// A representation of a subgroup (the support) of a Galois group, stored
/// through its character with values in `Z[x]/(x^e - 1)`, `e` the exponent
/// of the whole group.
#[derive(Clone, Debug)]
pub struct Representation {
    group: Arc<GaloisGroup>,
    support: Subgroup,
    atoms: Vec<Atom>,
    character: Vec<Cyclo>,
}

impl PartialEq for Representation {
    /// Same group, same support, equal character values.
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
            && self.support == other.support
            && self
                .character
                .iter()
                .zip(&other.character)
                .all(|(a, b)| a.value_eq(b))
    }
}

impl Representation {
    fn from_parts(
        group: &Arc<GaloisGroup>,
        support: Subgroup,
        atoms: Vec<Atom>,
        character: Vec<Cyclo>,
    ) -> Result<Self> {
        let rep = Representation {
            group: group.clone(),
            support,
            atoms,
            character,
        };
        match rep.character[0].as_integer() {
            Some(d) if d > 0 => Ok(rep),
            _ => Err(Error::NegativeMultiplicity(format!(
                "character value {} at the identity is not a positive dimension",
                rep.character[0]
            ))),
        }
    }

    fn modulus(group: &GaloisGroup) -> u64 {
        group.exponent()
    }

    /// Permutation module `Q[S/H]` of the support `S`.
    pub fn coset(group: &Arc<GaloisGroup>, support: &[usize], h: &[usize]) -> Result<Self> {
        let support = group.subgroup(support)?;
        let h = group.subgroup(h)?;
        if h.iter().any(|x| support.binary_search(x).is_err()) {
            return Err(Error::NotSubgroup(format!("{h:?} is not inside {support:?}")));
        }
        let e = Self::modulus(group);
        let cosets = group.left_cosets(&support, &h);
        let character = support
            .iter()
            .map(|&g| {
                let fixed = cosets
                    .iter()
                    .filter(|c| c.binary_search(&group.compose(g, c[0])).is_ok())
                    .count();
                Cyclo::integer(e, fixed as i64)
            })
            .collect();
        Self::from_parts(group, support, vec![Atom::Permutation { subgroup: h }], character)
    }

    pub fn regular(group: &Arc<GaloisGroup>, support: &[usize]) -> Result<Self> {
        Self::coset(group, support, &[0])
    }

    pub fn trivial(group: &Arc<GaloisGroup>, support: &[usize]) -> Result<Self> {
        Self::coset(group, support, support)
    }

    /// The character `σ ↦ x^{k_σ}`; must be a homomorphism on the support.
    pub fn character(group: &Arc<GaloisGroup>, support: &[usize], exponents: Vec<u64>) -> Result<Self> {
        let support = group.subgroup(support)?;
        let e = Self::modulus(group);
        if exponents.len() != support.len() {
            return Err(Error::Domain("one exponent per support element required".into()));
        }
        let exponents: Vec<u64> = exponents.into_iter().map(|k| k % e).collect();
        for (a, &ga) in support.iter().enumerate() {
            for (b, &gb) in support.iter().enumerate() {
                let c = support.binary_search(&group.compose(ga, gb)).unwrap();
                if (exponents[a] + exponents[b]) % e != exponents[c] {
                    return Err(Error::NotAHomomorphism(format!(
                        "character exponents fail at elements {ga}, {gb}"
                    )));
                }
            }
        }
        let character = exponents.iter().map(|&k| Cyclo::root(e, k as i64)).collect();
        Self::from_parts(group, support, vec![Atom::Character { exponents }], character)
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn dim(&self) -> u64 {
        self.character[0].as_integer().unwrap() as u64
    }

    /// Character value at the element with global index `g`.
    pub fn value(&self, g: usize) -> Option<&Cyclo> {
        self.support.binary_search(&g).ok().map(|k| &self.character[k])
    }

    pub fn character_values(&self) -> &[Cyclo] {
        &self.character
    }

    fn same_domain(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) && self.support == other.support {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_domain(other)?;
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        let character = self
            .character
            .iter()
            .zip(&other.character)
            .map(|(a, b)| a.add(b))
            .collect();
        Self::from_parts(&self.group, self.support.clone(), atoms, character)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_domain(other)?;
        let character = self
            .character
            .iter()
            .zip(&other.character)
            .map(|(a, b)| a.mul(b))
            .collect();
        Self::from_parts(
            &self.group,
            self.support.clone(),
            vec![Atom::Tensor(self.atoms.clone(), other.atoms.clone())],
            character,
        )
    }

    pub fn dual(&self) -> Self {
        Representation {
            group: self.group.clone(),
            support: self.support.clone(),
            atoms: vec![Atom::Dual(self.atoms.clone())],
            character: self.character.iter().map(Cyclo::conj).collect(),
        }
    }

    /// Induction from the support to the larger subgroup `to`.
    pub fn induce(&self, to: &[usize]) -> Result<Self> {
        let g = &self.group;
        let to = g.subgroup(to)?;
        if self.support.iter().any(|x| to.binary_search(x).is_err()) {
            return Err(Error::NotSubgroup(format!(
                "{:?} is not inside {to:?}",
                self.support
            )));
        }
        let e = Self::modulus(g);
        let h = self.support.len() as i64;
        let mut character = Vec::with_capacity(to.len());
        for &s in &to {
            let mut acc = Cyclo::zero(e);
            for &x in &to {
                let c = g.compose(g.inverse(x), g.compose(s, x));
                if let Some(v) = self.value(c) {
                    acc = acc.add(v);
                }
            }
            let v = acc.div_exact(h).ok_or_else(|| {
                Error::NonIntegerAverage(format!("induced character at {s} is not divisible by {h}"))
            })?;
            character.push(v);
        }
        Self::from_parts(
            g,
            to,
            vec![Atom::Induced {
                from: self.support.clone(),
                inner: self.atoms.clone(),
            }],
            character,
        )
    }

    /// Restriction to a subgroup of the support.
    pub fn restrict(&self, to: &[usize]) -> Result<Self> {
        let to = self.group.subgroup(to)?;
        let character = to
            .iter()
            .map(|&g| {
                self.value(g)
                    .cloned()
                    .ok_or_else(|| Error::NotSubgroup(format!("{g} is outside the support")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(&self.group, to, self.atoms.clone(), character)
    }

    /// Moves the representation to an isomorphic subgroup of another group.
    /// `map[k]` is the element of `target_support` matching `support[k]`.
    pub fn transport(
        &self,
        target: &Arc<GaloisGroup>,
        target_support: &[usize],
        map: &[usize],
    ) -> Result<Self> {
        let target_support = target.subgroup(target_support)?;
        if map.len() != self.support.len() || target_support.len() != map.len() {
            return Err(Error::NotAHomomorphism("transport map has the wrong size".into()));
        }
        let e = Self::modulus(target);
        let mut character = vec![Cyclo::zero(e); map.len()];
        for (k, &t) in map.iter().enumerate() {
            let slot = target_support
                .binary_search(&t)
                .map_err(|_| Error::NotAHomomorphism("transport map leaves the support".into()))?;
            character[slot] = self.character[k].lift(e);
        }
        let g = &self.group;
        for a in 0..map.len() {
            for b in 0..map.len() {
                let c = self
                    .support
                    .binary_search(&g.compose(self.support[a], self.support[b]))
                    .unwrap();
                if target.compose(map[a], map[b]) != map[c] {
                    return Err(Error::NotAHomomorphism("transport map".into()));
                }
            }
        }
        Self::from_parts(
            target,
            target_support,
            vec![Atom::Transported(self.atoms.clone())],
            character,
        )
    }

    /// `dim V^U` as the character average over `U`.
    pub fn fixed_dim(&self, u: &[usize]) -> Result<u64> {
        let u = self.group.subgroup(u)?;
        let e = Self::modulus(&self.group);
        let mut acc = Cyclo::zero(e);
        for &g in &u {
            let v = self
                .value(g)
                .ok_or_else(|| Error::NotSubgroup(format!("{g} is outside the support")))?;
            acc = acc.add(v);
        }
        let total = acc.as_integer().ok_or_else(|| {
            Error::NonIntegerAverage(format!("character sum {acc} is not an integer"))
        })?;
        let n = u.len() as i64;
        if total < 0 || total % n != 0 {
            return Err(Error::NonIntegerAverage(format!("{total}/{n}")));
        }
        Ok((total / n) as u64)
    }

    /// Whether the character is constant on conjugacy classes of the support.
    pub fn is_class_function(&self) -> bool {
        let g = &self.group;
        self.support.iter().all(|&x| {
            self.support.iter().all(|&y| {
                self.value(g.conjugate(y, x))
                    .is_some_and(|v| v.value_eq(self.value(x).unwrap()))
            })
        })
    }
}

/// Every character of an abelian subgroup, as exponent vectors along it.
pub fn all_characters(group: &GaloisGroup, support: &[usize]) -> Result<Vec<Vec<u64>>> {
    let support = group.subgroup(support)?;
    let abelian = support
        .iter()
        .all(|&a| support.iter().all(|&b| group.compose(a, b) == group.compose(b, a)));
    if !abelian {
        return Err(Error::NotAbelian);
    }
    let e = group.exponent();
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![0usize];
    for &g in &support {
        if span.binary_search(&g).is_err() {
            gens.push(g);
            span = group.generated(&gens);
        }
    }
    // Assign x^k to each generator (k·ord ≡ 0 mod e), keep the consistent ones.
    let choices: Vec<Vec<u64>> = gens
        .iter()
        .map(|&g| {
            let step = e / group.element_order(g);
            (0..group.element_order(g)).map(|j| j * step).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; gens.len()];
    loop {
        let assign: Vec<u64> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if let Some(ch) = extend_character(group, &support, &gens, &assign, e) {
            if !out.contains(&ch) {
                out.push(ch);
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                out.sort();
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn extend_character(
    group: &GaloisGroup,
    support: &[usize],
    gens: &[usize],
    assign: &[u64],
    e: u64,
) -> Option<Vec<u64>> {
    let mut val: BTreeMap<usize, u64> = BTreeMap::from([(0, 0)]);
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for (&g, &k) in gens.iter().zip(assign) {
            let y = group.compose(x, g);
            let v = (val[&x] + k) % e;
            match val.get(&y) {
                Some(&w) if w != v => return None,
                Some(_) => {}
                None => {
                    val.insert(y, v);
                    frontier.push(y);
                }
            }
        }
    }
    Some(support.iter().map(|g| val[g]).collect())
}

/// Slopes with multiplicities, strictly increasing, no zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SlopeMultiset {
    entries: Vec<(Rational, u64)>,
}

impl SlopeMultiset {
    pub fn new(entries: impl IntoIterator<Item = (Rational, u64)>) -> Result<Self> {
        let mut map: BTreeMap<Rational, u64> = BTreeMap::new();
        for (r, k) in entries {
            if r.is_negative() {
                return Err(Error::Domain(format!("negative slope {}", fmt_rational(&r))));
            }
            if k > 0 {
                *map.entry(r).or_default() += k;
            }
        }
        Ok(SlopeMultiset {
            entries: map.into_iter().collect(),
        })
    }

    pub fn entries(&self) -> &[(Rational, u64)] {
        &self.entries
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.entries.iter().map(|(r, _)| r.clone()).collect()
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(_, k)| k).sum()
    }

    pub fn max_slope(&self) -> Option<&Rational> {
        self.entries.last().map(|(r, _)| r)
    }

    pub fn multiplicity(&self, r: &Rational) -> u64 {
        self.entries
            .iter()
            .find(|(s, _)| s == r)
            .map_or(0, |(_, k)| *k)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn swan_conductor(&self) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |acc, (r, k)| acc + r * Rational::from_integer((*k).into()))
    }
}

impl fmt::Display for SlopeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(r, k)| format!("{}:{k}", fmt_rational(r)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn swan_conductor(s: &SlopeMultiset) -> Rational {
    s.swan_conductor()
}

/// Splits `V` by the upper filtration: slope 0 gets `dim V^{G^{0+}}`, and
/// each jump `r > 0` gets `dim V^{G^{r+}} - dim V^{G^r}`.
pub fn break_decomposition(v: &Representation, filt: &RamificationFiltration) -> Result<SlopeMultiset> {
    if !Arc::ptr_eq(v.group(), filt.group()) || v.support() != filt.members() {
        return Err(Error::GroupMismatch);
    }
    let zero = Rational::zero();
    let mut entries = vec![(zero.clone(), v.fixed_dim(&filt.upper_subgroup_plus(&zero)?)?)];
    for r in filt.upper_jumps() {
        if !r.is_positive() {
            continue;
        }
        let after = v.fixed_dim(&filt.upper_subgroup_plus(r)?)? as i64;
        let at = v.fixed_dim(&filt.upper_subgroup(r)?)? as i64;
        if after < at {
            return Err(Error::NegativeMultiplicity(format!(
                "at slope {}: {after} - {at}",
                fmt_rational(r)
            )));
        }
        entries.push((r.clone(), (after - at) as u64));
    }
    let s = SlopeMultiset::new(entries)?;
    if s.total() != v.dim() {
        return Err(Error::NegativeMultiplicity(format!(
            "multiplicities sum to {} for a representation of dimension {}",
            s.total(),
            v.dim()
        )));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::{artin_schreier, compositum, CoverSpec, FieldConst};
    use crate::field::FiniteField;
    use crate::numerics::int;

    fn as23() -> (Arc<GaloisGroup>, RamificationFiltration) {
        let f = FiniteField::with_order(3, 3).unwrap();
        let c = artin_schreier(&f, 2, FieldConst::Int(1), 64).unwrap();
        let filt = RamificationFiltration::of_cover(&c).unwrap();
        (c.group().clone(), filt)
    }

    fn klein() -> (Arc<GaloisGroup>, RamificationFiltration) {
        let f = FiniteField::with_order(2, 2).unwrap();
        let c = compositum(
            &f,
            &CoverSpec::ArtinSchreier { m: 1, a: FieldConst::Int(1) },
            &CoverSpec::ArtinSchreier { m: 3, a: FieldConst::Int(1) },
            64,
        )
        .unwrap();
        let filt = RamificationFiltration::of_cover(&c).unwrap();
        (c.group().clone(), filt)
    }

    #[test]
    fn fixed_dim_examples() {
        let (g, _) = as23();
        let whole = g.whole();
        assert_eq!(Representation::regular(&g, &whole).unwrap().fixed_dim(&whole).unwrap(), 1);
        let chars = all_characters(&g, &whole).unwrap();
        assert_eq!(chars.len(), 3);
        let nontrivial = chars.iter().find(|c| c.iter().any(|&k| k != 0)).unwrap();
        let chi = Representation::character(&g, &whole, nontrivial.clone()).unwrap();
        assert_eq!(chi.fixed_dim(&whole).unwrap(), 0);
    }

    #[test]
    fn regular_and_coset_reps() {
        let (g, _) = as23();
        let reg = Representation::regular(&g, &g.whole()).unwrap();
        assert_eq!(reg.dim(), 3);
        assert!((1..3).all(|i| reg.value(i).unwrap().as_integer() == Some(0)));
        let t = Representation::coset(&g, &g.whole(), &g.whole()).unwrap();
        assert_eq!(t.dim(), 1);
        let (k, _) = klein();
        let h = k.generated(&[1]);
        assert_eq!(Representation::coset(&k, &k.whole(), &h).unwrap().dim(), 2);
    }

    #[test]
    fn break_decomposition_examples() {
        let (g, filt) = as23();
        let reg = Representation::regular(&g, &g.whole()).unwrap();
        let s = break_decomposition(&reg, &filt).unwrap();
        assert_eq!(s, SlopeMultiset::new([(int(0), 1), (int(2), 2)]).unwrap());
        assert_eq!(s.swan_conductor(), int(4));
        let triv = Representation::trivial(&g, &g.whole()).unwrap();
        assert_eq!(
            break_decomposition(&triv, &filt).unwrap(),
            SlopeMultiset::new([(int(0), 1)]).unwrap()
        );

        let (k, filt) = klein();
        let reg = Representation::regular(&k, &k.whole()).unwrap();
        let s = break_decomposition(&reg, &filt).unwrap();
        assert_eq!(s, SlopeMultiset::new([(int(0), 1), (int(1), 1), (int(3), 2)]).unwrap());
        assert_eq!(s.swan_conductor(), int(7));
    }

    #[test]
    fn induction_examples() {
        let (k, _) = klein();
        let h = k.generated(&[1]);
        let triv_h = Representation::trivial(&k, &h).unwrap();
        assert_eq!(
            triv_h.induce(&k.whole()).unwrap(),
            Representation::coset(&k, &k.whole(), &h).unwrap()
        );
        let reg_h = Representation::regular(&k, &h).unwrap();
        assert_eq!(
            reg_h.induce(&k.whole()).unwrap(),
            Representation::regular(&k, &k.whole()).unwrap()
        );
        let sign = Representation::character(&k, &h, vec![0, 1]).unwrap();
        let ind = sign.induce(&k.whole()).unwrap();
        assert_eq!(ind.dim(), 2);
    }

    #[test]
    fn tensor_examples() {
        let (g, _) = as23();
        let w = g.whole();
        let reg = Representation::regular(&g, &w).unwrap();
        let triv = Representation::trivial(&g, &w).unwrap();
        assert_eq!(reg.tensor(&triv).unwrap(), reg);
        let sq = reg.tensor(&reg).unwrap();
        assert_eq!(sq.dim(), 9);
        assert!((1..3).all(|i| sq.value(i).unwrap().as_integer() == Some(0)));
        for c in all_characters(&g, &w).unwrap() {
            let chi = Representation::character(&g, &w, c).unwrap();
            assert_eq!(chi.tensor(&chi.dual()).unwrap(), triv);
        }
        let (k, _) = klein();
        let other = Representation::trivial(&k, &k.whole()).unwrap();
        assert_eq!(reg.tensor(&other).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn swan_examples() {
        assert_eq!(SlopeMultiset::new([(int(0), 5)]).unwrap().swan_conductor(), int(0));
        assert_eq!(
            SlopeMultiset::new([(int(1), 1), (int(3), 2)]).unwrap().swan_conductor(),
            int(7)
        );
    }

    #[test]
    fn rejects_non_homomorphism() {
        let (g, _) = as23();
        let r = Representation::character(&g, &g.whole(), vec![0, 1, 1]);
        assert!(matches!(r, Err(Error::NotAHomomorphism(_))));
    }
}
