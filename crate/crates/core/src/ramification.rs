//! Lower and upper ramification filtrations, Herbrand functions and coset
//! filtrations.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::extensions::Cover;
use crate::group::{GaloisGroup, Subgroup};
use crate::numerics::{fmt_rational, int, PiecewiseLinearFn, Rational};
use crate::series::LaurentSeries;

/// `i(σ) = v(σ(u) - u)`; infinite for the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RamNumber {
    Finite(i64),
    Infinite,
}

impl RamNumber {
    /// Whether `σ ∈ G_i`, i.e. `i(σ) ≥ i + 1`.
    fn in_lower(self, i: i64) -> bool {
        match self {
            RamNumber::Infinite => true,
            RamNumber::Finite(v) => v > i,
        }
    }
}

impl fmt::Display for RamNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RamNumber::Finite(v) => write!(f, "{v}"),
            RamNumber::Infinite => write!(f, "infinity"),
        }
    }
}

pub fn ramification_number(group: &GaloisGroup, index: usize) -> Result<RamNumber> {
    if index == 0 {
        return Ok(RamNumber::Infinite);
    }
    let s = &group.element(index).substitution;
    let u = LaurentSeries::variable(s.field());
    Ok(RamNumber::Finite(s.sub(&u).valuation()?))
}

/// The lower filtration of a subgroup `H ≤ Gal(L/K)`, i.e. of `L/L^H`, with
/// its Herbrand functions and upper numbering.
#[derive(Clone, Debug)]
pub struct RamificationFiltration {
    group: Arc<GaloisGroup>,
    members: Subgroup,
    numbers: Vec<RamNumber>,
    lower_jumps: Vec<i64>,
    chain: Vec<Subgroup>,
    phi: PiecewiseLinearFn,
    psi: PiecewiseLinearFn,
    upper_jumps: Vec<Rational>,
}

impl RamificationFiltration {
    /// Filtration of the whole group of the cover.
    pub fn of_cover(cover: &Cover) -> Result<Self> {
        Self::of_subgroup(cover.group(), &cover.group().whole())
    }

    /// Filtration of `L/L^H`, using `H_i = H ∩ G_i`.
    pub fn of_subgroup(group: &Arc<GaloisGroup>, h: &[usize]) -> Result<Self> {
        let members = group.subgroup(h)?;
        let numbers = members
            .iter()
            .map(|&i| ramification_number(group, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_numbers(group.clone(), members, numbers))
    }

    fn from_numbers(group: Arc<GaloisGroup>, members: Subgroup, numbers: Vec<RamNumber>) -> Self {
        let mut lower_jumps: Vec<i64> = numbers
            .iter()
            .filter_map(|n| match n {
                RamNumber::Finite(v) => Some(v - 1),
                RamNumber::Infinite => None,
            })
            .collect();
        lower_jumps.sort_unstable();
        lower_jumps.dedup();
        if lower_jumps.is_empty() {
            lower_jumps.push(0);
        }
        let mut filt = RamificationFiltration {
            group,
            members,
            numbers,
            lower_jumps,
            chain: Vec::new(),
            phi: PiecewiseLinearFn::identity(),
            psi: PiecewiseLinearFn::identity(),
            upper_jumps: Vec::new(),
        };
        filt.chain = filt
            .lower_jumps
            .iter()
            .map(|&j| filt.lower_subgroup(j))
            .collect();
        let g0 = filt.members.len() as i64;
        let mut breakpoints = vec![int(-1)];
        let mut slopes = vec![Rational::one()];
        for &j in &filt.lower_jumps {
            breakpoints.push(int(j));
            slopes.push(Rational::new(
                (filt.lower_subgroup(j + 1).len() as i64).into(),
                g0.into(),
            ));
        }
        // Jumps are nonnegative, so breakpoints increase strictly from -1.
        filt.phi = PiecewiseLinearFn::new(breakpoints, slopes, int(-1))
            .expect("lower jumps give a valid Herbrand function");
        filt.psi = filt.phi.invert().expect("Herbrand functions are invertible");
        filt.upper_jumps = filt
            .lower_jumps
            .iter()
            .map(|&j| filt.phi.eval(&int(j)).unwrap())
            .collect();
        filt
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    /// The subgroup whose filtration this is.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// `i(σ)` for the element with the given global index.
    pub fn ramification_number(&self, index: usize) -> Option<RamNumber> {
        self.members
            .binary_search(&index)
            .ok()
            .map(|k| self.numbers[k])
    }

    pub fn lower_jumps(&self) -> &[i64] {
        &self.lower_jumps
    }

    /// `G_j` for each lower jump `j`.
    pub fn chain(&self) -> &[Subgroup] {
        &self.chain
    }

    pub fn phi(&self) -> &PiecewiseLinearFn {
        &self.phi
    }

    pub fn psi(&self) -> &PiecewiseLinearFn {
        &self.psi
    }

    pub fn upper_jumps(&self) -> &[Rational] {
        &self.upper_jumps
    }

    pub fn highest_upper_jump(&self) -> &Rational {
        self.upper_jumps.last().unwrap()
    }

    /// `G_i = {σ : i(σ) ≥ i + 1}`.
    pub fn lower_subgroup(&self, i: i64) -> Subgroup {
        self.members
            .iter()
            .zip(&self.numbers)
            .filter(|(_, n)| n.in_lower(i))
            .map(|(&g, _)| g)
            .collect()
    }

    /// `G^r = G_{⌈ψ(r)⌉}` for `r ≥ -1`.
    pub fn upper_subgroup(&self, r: &Rational) -> Result<Subgroup> {
        let t = self.psi.eval(r)?;
        Ok(self.lower_subgroup(to_i64(&t.ceil())))
    }

    /// `G^{r+}`, the union of `G^{r'}` over `r' > r`.
    pub fn upper_subgroup_plus(&self, r: &Rational) -> Result<Subgroup> {
        let t = self.psi.eval(r)?;
        Ok(self.lower_subgroup(to_i64(&t.floor()) + 1))
    }

    /// Every `G_i` and every `G^r`, `G^{r+}` at the jumps is normal in the
    /// filtered group.
    pub fn is_normal_filtration(&self) -> Result<bool> {
        let g = &self.group;
        for j in &self.lower_jumps {
            for i in [*j, j + 1] {
                if !g.is_normal_in(&self.lower_subgroup(i), &self.members) {
                    return Ok(false);
                }
            }
        }
        for r in &self.upper_jumps {
            if !g.is_normal_in(&self.upper_subgroup(r)?, &self.members)
                || !g.is_normal_in(&self.upper_subgroup_plus(r)?, &self.members)
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn to_i64(r: &Rational) -> i64 {
    r.to_integer().to_i64().expect("filtration index fits in i64")
}

pub fn herbrand_phi(filt: &RamificationFiltration) -> PiecewiseLinearFn {
    filt.phi.clone()
}

pub fn upper_jumps(filt: &RamificationFiltration) -> Vec<Rational> {
    filt.upper_jumps.clone()
}

/// Filtration `q(G^r)` on the coset set `G/H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetFiltration {
    pub subgroup: Subgroup,
    /// Jumps with the number of cosets in `q(G^r)` at each.
    pub jumps: Vec<(Rational, usize)>,
    pub coset_count: usize,
}

impl CosetFiltration {
    pub fn jump_values(&self) -> Vec<Rational> {
        self.jumps.iter().map(|(r, _)| r.clone()).collect()
    }

    pub fn highest_jump(&self) -> Rational {
        self.jumps.last().map(|(r, _)| r.clone()).unwrap_or_else(Rational::zero)
    }
}

/// Jumps `r` where `q(G^{r+}) ⊊ q(G^r)` on `G/H`; `{0}` when no coset
/// moves, in line with the trivial-extension convention.
pub fn coset_filtration(filt: &RamificationFiltration, h: &[usize]) -> Result<CosetFiltration> {
    let g = filt.group();
    let h = g.subgroup(h)?;
    if h.iter().any(|x| filt.members.binary_search(x).is_err()) {
        return Err(Error::NotSubgroup(format!(
            "{h:?} is not contained in the filtered group"
        )));
    }
    let image = |s: &[usize]| g.product_set(s, &h).len() / h.len();
    let mut jumps = Vec::new();
    for r in filt.upper_jumps() {
        let at = image(&filt.upper_subgroup(r)?);
        let after = image(&filt.upper_subgroup_plus(r)?);
        if after < at {
            jumps.push((r.clone(), at));
        }
    }
    if jumps.is_empty() {
        jumps.push((Rational::zero(), 1));
    }
    Ok(CosetFiltration {
        subgroup: h.clone(),
        jumps,
        coset_count: filt.members.len() / h.len(),
    })
}

/// Hasse-Arf: for abelian groups the upper jumps are integers.
pub fn hasse_arf_check(filt: &RamificationFiltration) -> Result<bool> {
    let g = filt.group();
    let m = filt.members();
    let abelian = m
        .iter()
        .all(|&a| m.iter().all(|&b| g.compose(a, b) == g.compose(b, a)));
    if !abelian {
        return Err(Error::NotAbelian);
    }
    Ok(filt.upper_jumps().iter().all(|r| r.is_integer()))
}

/// Renders a jump list as `{a, b, ...}`.
pub fn fmt_jumps(jumps: &[Rational]) -> String {
    let parts: Vec<String> = jumps.iter().map(fmt_rational).collect();
    format!("{{{}}}", parts.join(", "))
}

/// `φ_{L/K}(x) ≤ x` for `x ≥ 0`, the concavity consequence used to compare
/// the bound with `C_M`.
pub fn phi_below_identity(phi: &PiecewiseLinearFn, x: &Rational) -> Result<bool> {
    if x.is_negative() {
        return Err(Error::Domain("expected a nonnegative argument".into()));
    }
    Ok(phi.eval(x)? <= *x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::{artin_schreier, compositum, kummer, trivial, CoverSpec, FieldConst};
    use crate::field::FiniteField;
    use crate::numerics::rat;

    fn as_cover(p: u32, q: u64, m: u64) -> Arc<Cover> {
        artin_schreier(&FiniteField::with_order(p, q).unwrap(), m, FieldConst::Int(1), 64).unwrap()
    }

    #[test]
    fn ramification_number_examples() {
        let k = kummer(&FiniteField::with_order(3, 9).unwrap(), 4).unwrap();
        for i in 1..4 {
            assert_eq!(ramification_number(k.group(), i).unwrap(), RamNumber::Finite(1));
        }
        assert_eq!(ramification_number(k.group(), 0).unwrap(), RamNumber::Infinite);
        let a = as_cover(3, 3, 2);
        for i in 1..3 {
            assert_eq!(ramification_number(a.group(), i).unwrap(), RamNumber::Finite(3));
        }
    }

    #[test]
    fn artin_schreier_filtration() {
        let f = RamificationFiltration::of_cover(&as_cover(3, 3, 2)).unwrap();
        assert_eq!(f.lower_jumps(), &[2]);
        for i in 0..=2 {
            assert_eq!(f.lower_subgroup(i).len(), 3);
        }
        assert_eq!(f.lower_subgroup(3).len(), 1);
        assert_eq!(f.upper_jumps(), &[int(2)]);
        let expected =
            PiecewiseLinearFn::new(vec![int(-1), int(2)], vec![int(1), rat(1, 3)], int(-1)).unwrap();
        assert_eq!(f.phi(), &expected);
        assert!(hasse_arf_check(&f).unwrap());
        assert!(f.is_normal_filtration().unwrap());
    }

    #[test]
    fn tame_and_trivial_filtrations() {
        let field = FiniteField::with_order(3, 9).unwrap();
        let f = RamificationFiltration::of_cover(&kummer(&field, 4).unwrap()).unwrap();
        assert_eq!(f.lower_jumps(), &[0]);
        assert_eq!(f.lower_subgroup(1).len(), 1);
        let expected =
            PiecewiseLinearFn::new(vec![int(-1), int(0)], vec![int(1), rat(1, 4)], int(-1)).unwrap();
        assert_eq!(f.phi(), &expected);
        assert_eq!(f.upper_jumps(), &[int(0)]);

        let t = RamificationFiltration::of_cover(&trivial(&field).unwrap()).unwrap();
        assert_eq!(t.lower_jumps(), &[0]);
        assert_eq!(t.upper_jumps(), &[int(0)]);
        assert_eq!(t.phi(), &PiecewiseLinearFn::identity());
    }

    #[test]
    fn two_break_compositum() {
        let field = FiniteField::with_order(2, 2).unwrap();
        let as1 = CoverSpec::ArtinSchreier { m: 1, a: FieldConst::Int(1) };
        let as3 = CoverSpec::ArtinSchreier { m: 3, a: FieldConst::Int(1) };
        let c = compositum(&field, &as1, &as3, 64).unwrap();
        let f = RamificationFiltration::of_cover(&c).unwrap();
        assert_eq!(f.lower_jumps(), &[1, 5]);
        assert_eq!(f.upper_jumps(), &[int(1), int(3)]);
        assert!(hasse_arf_check(&f).unwrap());

        let trivial_h = coset_filtration(&f, &[0]).unwrap();
        assert_eq!(trivial_h.jump_values(), f.upper_jumps());
        let whole = coset_filtration(&f, &c.group().whole()).unwrap();
        assert_eq!(whole.jump_values(), vec![int(0)]);
        // G / Gal(L/E) is Gal(E/K), whose only jump is the break of E.
        let k1 = c.factors[0].kernel();
        let k3 = c.factors[1].kernel();
        assert_eq!(coset_filtration(&f, &k1).unwrap().highest_jump(), int(1));
        assert_eq!(coset_filtration(&f, &k3).unwrap().highest_jump(), int(3));
    }

    #[test]
    fn subgroup_compatibility_on_compositum() {
        let field = FiniteField::with_order(3, 9).unwrap();
        let c = compositum(
            &field,
            &CoverSpec::Kummer { n: 2 },
            &CoverSpec::ArtinSchreier { m: 2, a: FieldConst::Int(1) },
            64,
        )
        .unwrap();
        let full = RamificationFiltration::of_cover(&c).unwrap();
        for h in c.group().all_subgroups() {
            let sub = RamificationFiltration::of_subgroup(c.group(), &h).unwrap();
            for i in 0..8 {
                assert_eq!(
                    sub.lower_subgroup(i),
                    c.group().intersection(&h, &full.lower_subgroup(i))
                );
            }
        }
    }

    #[test]
    fn hasse_arf_tame() {
        let field = FiniteField::with_order(7, 7).unwrap();
        let f = RamificationFiltration::of_cover(&kummer(&field, 6).unwrap()).unwrap();
        assert!(hasse_arf_check(&f).unwrap());
    }
}
