//! Truncated Laurent series over a finite field.
//!
//! A series stores its nonzero window of coefficients together with an
//! absolute precision `P`: the value is known modulo `t^P`. Exact series
//! (finite sums) carry [`EXACT`]. All arithmetic propagates precision with the
//! usual `O(t^k)` rules, so a result never claims more than its inputs allow.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fe, FiniteField};

/// Precision marker for exactly known series.
pub const EXACT: i64 = i64::MAX / 8;

/// A valuation is accepted only this far below the precision horizon.
pub const VALUATION_MARGIN: i64 = 4;

/// Default relative precision used when an exact non-monomial series has to
/// be inverted.
pub const DEFAULT_RELATIVE_PRECISION: i64 = 64;

fn padd(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        (a + b).min(EXACT)
    }
}

fn pmul(a: i64, k: i64) -> i64 {
    if a >= EXACT {
        EXACT
    } else {
        a.saturating_mul(k).min(EXACT)
    }
}

#[derive(Clone)]
pub struct LaurentSeries {
    field: Arc<FiniteField>,
    /// Exponent of `coeffs[0]`; equals `prec` for the zero series.
    val: i64,
    coeffs: Vec<Fe>,
    prec: i64,
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.val + i as i64;
            let c = self.field.display(c);
            terms.push(match e {
                0 => c,
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{e}"),
            });
        }
        if self.prec < EXACT {
            terms.push(format!("O(t^{})", self.prec));
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{}", terms.join(" + "))
    }
}

fn same_field(a: &Arc<FiniteField>, b: &Arc<FiniteField>) {
    assert!(
        Arc::ptr_eq(a, b) || **a == **b,
        "series over different fields"
    );
}

impl LaurentSeries {
    /// Builds a series from coefficients starting at exponent `val`, known
    /// modulo `t^prec`.
    pub fn from_coeffs(field: &Arc<FiniteField>, val: i64, coeffs: Vec<Fe>, prec: i64) -> Self {
        let mut s = LaurentSeries {
            field: field.clone(),
            val,
            coeffs,
            prec: prec.min(EXACT),
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.prec < EXACT {
            let keep = (self.prec - self.val).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.prec;
            }
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
            }
        }
    }

    /// `O(t^prec)`.
    pub fn zero(field: &Arc<FiniteField>, prec: i64) -> Self {
        Self::from_coeffs(field, prec, Vec::new(), prec)
    }

    pub fn exact_zero(field: &Arc<FiniteField>) -> Self {
        Self::zero(field, EXACT)
    }

    pub fn monomial(field: &Arc<FiniteField>, c: Fe, e: i64) -> Self {
        Self::from_coeffs(field, e, vec![c], EXACT)
    }

    pub fn constant(field: &Arc<FiniteField>, c: Fe) -> Self {
        Self::monomial(field, c, 0)
    }

    pub fn one(field: &Arc<FiniteField>) -> Self {
        Self::constant(field, Fe::ONE)
    }

    /// The variable `t`.
    pub fn variable(field: &Arc<FiniteField>) -> Self {
        Self::monomial(field, Fe::ONE, 1)
    }

    /// Exact sum of `c·t^e` terms.
    pub fn from_terms(field: &Arc<FiniteField>, terms: &[(i64, Fe)]) -> Self {
        let mut acc = Self::exact_zero(field);
        for &(e, c) in terms {
            acc = acc.add(&Self::monomial(field, c, e));
        }
        acc
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    /// Exponent of the first stored coefficient (the valuation offset).
    pub fn offset(&self) -> i64 {
        self.val
    }

    pub fn coefficients(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn abs_precision(&self) -> i64 {
        self.prec
    }

    /// Number of known terms past the offset.
    pub fn relative_precision(&self) -> i64 {
        if self.prec >= EXACT {
            EXACT
        } else {
            self.prec - self.val
        }
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    /// Coefficient of `t^e`, `None` if beyond the precision.
    pub fn coeff(&self, e: i64) -> Option<Fe> {
        if e >= self.prec {
            return None;
        }
        if e < self.val {
            return Some(Fe::ZERO);
        }
        Some(self.coeffs.get((e - self.val) as usize).copied().unwrap_or(Fe::ZERO))
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.is_exact()
    }

    /// Exact monomial `c·t^e`, if this is one.
    pub fn as_monomial(&self) -> Option<(Fe, i64)> {
        if self.is_exact() && self.coeffs.len() == 1 {
            Some((self.coeffs[0], self.val))
        } else {
            None
        }
    }

    pub fn leading_coefficient(&self) -> Option<Fe> {
        self.coeffs.first().copied()
    }

    /// The `t`-adic valuation, resolved only when it sits at least
    /// [`VALUATION_MARGIN`] below the precision horizon.
    pub fn valuation(&self) -> Result<i64> {
        if self.coeffs.is_empty() {
            if self.is_exact() {
                return Err(Error::Domain("the zero series has no valuation".into()));
            }
            return Err(Error::PrecisionExhausted(format!(
                "all coefficients vanish below t^{}",
                self.prec
            )));
        }
        if !self.is_exact() && self.val >= self.prec - VALUATION_MARGIN {
            return Err(Error::PrecisionExhausted(format!(
                "leading term t^{} too close to precision horizon t^{}",
                self.val, self.prec
            )));
        }
        Ok(self.val)
    }

    pub fn truncate(&self, abs_prec: i64) -> Self {
        if abs_prec >= self.prec {
            return self.clone();
        }
        Self::from_coeffs(&self.field, self.val, self.coeffs.clone(), abs_prec)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            field: self.field.clone(),
            val: padd(self.val, k),
            coeffs: self.coeffs.clone(),
            prec: padd(self.prec, k),
        }
    }

    pub fn scale(&self, c: Fe) -> Self {
        if c.is_zero() {
            return Self::exact_zero(&self.field);
        }
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Self::from_coeffs(&self.field, self.val, coeffs, self.prec)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| self.field.neg(a)).collect();
        Self::from_coeffs(&self.field, self.val, coeffs, self.prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        same_field(&self.field, &other.field);
        let prec = self.prec.min(other.prec);
        if self.coeffs.is_empty() {
            return other.truncate(prec).with_prec_floor(prec);
        }
        if other.coeffs.is_empty() {
            return self.truncate(prec).with_prec_floor(prec);
        }
        let lo = self.val.min(other.val);
        let hi_self = self.val + self.coeffs.len() as i64;
        let hi_other = other.val + other.coeffs.len() as i64;
        let hi = hi_self.max(hi_other).min(prec);
        if hi <= lo {
            return Self::zero(&self.field, prec);
        }
        let mut out = vec![Fe::ZERO; (hi - lo) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let e = self.val + i as i64;
            if e < hi {
                out[(e - lo) as usize] = c;
            }
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            let e = other.val + i as i64;
            if e < hi {
                let slot = &mut out[(e - lo) as usize];
                *slot = self.field.add(*slot, c);
            }
        }
        Self::from_coeffs(&self.field, lo, out, prec)
    }

    // A zero series normalizes with val = prec; re-anchor after truncation.
    fn with_prec_floor(mut self, prec: i64) -> Self {
        self.prec = self.prec.min(prec);
        if self.coeffs.is_empty() {
            self.val = self.prec;
        }
        self
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        same_field(&self.field, &other.field);
        let prec = padd(self.val, other.prec).min(padd(other.val, self.prec));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(&self.field, prec);
        }
        let val = self.val + other.val;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let n = if prec >= EXACT {
            full
        } else {
            (prec - val).clamp(0, full as i64) as usize
        };
        let coeffs = convolve(&self.field, &self.coeffs, &other.coeffs, n);
        Self::from_coeffs(&self.field, val, coeffs, prec)
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn powi(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow(n as u64))
        } else {
            Ok(self.inverse()?.pow(n.unsigned_abs()))
        }
    }

    /// Multiplicative inverse, keeping the relative precision. Exact
    /// non-monomial input is inverted to [`DEFAULT_RELATIVE_PRECISION`] terms.
    pub fn inverse(&self) -> Result<Self> {
        self.inverse_with(DEFAULT_RELATIVE_PRECISION)
    }

    /// Inverse with at most `rel_cap` known terms when the input is exact.
    pub fn inverse_with(&self, rel_cap: i64) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Err(if self.is_exact() {
                Error::Domain("cannot invert zero".into())
            } else {
                Error::PrecisionExhausted(format!(
                    "cannot invert O(t^{}): no known nonzero coefficient",
                    self.prec
                ))
            });
        }
        let f = &self.field;
        if let Some((c, e)) = self.as_monomial() {
            return Ok(Self::monomial(f, f.inv(c).unwrap(), -e));
        }
        let rel = if self.is_exact() {
            rel_cap
        } else {
            self.relative_precision()
        };
        let n = rel.max(0) as usize;
        let a0_inv = f.inv(self.coeffs[0]).unwrap();
        let mut b = Vec::with_capacity(n);
        if n > 0 {
            b.push(a0_inv);
        }
        for k in 1..n {
            let mut acc = Fe::ZERO;
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc = f.add(acc, f.mul(self.coeffs[j], b[k - j]));
            }
            b.push(f.neg(f.mul(acc, a0_inv)));
        }
        Ok(Self::from_coeffs(f, -self.val, b, -self.val + rel))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Formal derivative `d/dt`.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| f.mul(c, f.from_int(self.val + i as i64)))
            .collect();
        Self::from_coeffs(f, self.val - 1, coeffs, padd(self.prec, -1))
    }

    /// Applies the inverse of the `n`-fold Frobenius to every coefficient.
    ///
    /// If `s(t)` expresses `x` in terms of `t`, the result expresses
    /// `x^{1/p^n}` in terms of `t^{1/p^n}`.
    pub fn frobenius_twist(&self, n: u32) -> Self {
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|&c| f.frobenius_inv(c, n)).collect();
        Self::from_coeffs(f, self.val, coeffs, self.prec)
    }

    /// `s(t^k)` for `k ≥ 1`.
    pub fn inflate(&self, k: u32) -> Self {
        let k = k as i64;
        let mut coeffs = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                coeffs.extend(std::iter::repeat_n(Fe::ZERO, k as usize - 1));
            }
            coeffs.push(c);
        }
        Self::from_coeffs(&self.field, self.val * k, coeffs, pmul(self.prec, k))
    }

    /// True when both series agree on their common window of knowledge.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero_to_precision()
    }

    /// Substitutes `t_image` for the variable.
    pub fn substitute(&self, t_image: &Self) -> Result<Self> {
        Substituter::new(t_image)?.apply(self)
    }
}

impl PartialEq for LaurentSeries {
    /// Structural equality: same coefficients and same precision.
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field
            && self.val == other.val
            && self.prec == other.prec
            && self.coeffs == other.coeffs
    }
}

fn convolve(field: &FiniteField, a: &[Fe], b: &[Fe], n: usize) -> Vec<Fe> {
    if n == 0 {
        return Vec::new();
    }
    if field.degree() == 1 {
        return convolve_prime(field, a, b, n);
    }
    let mut out = vec![Fe::ZERO; n];
    for (i, &x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            if y.is_zero() {
                continue;
            }
            let slot = &mut out[i + j];
            *slot = field.add(*slot, field.mul(x, y));
        }
    }
    out
}

// Prime fields: integer multiply-accumulate, one reduction per coefficient.
fn convolve_prime(field: &FiniteField, a: &[Fe], b: &[Fe], n: usize) -> Vec<Fe> {
    let p = field.characteristic() as u64;
    let to_int = |x: &Fe| field.coordinates(*x)[0] as u64;
    let ai: Vec<u64> = a.iter().take(n).map(to_int).collect();
    let bi: Vec<u64> = b.iter().take(n).map(to_int).collect();
    let mut acc = vec![0u64; n];
    for (i, &x) in ai.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in bi.iter().enumerate().take(n - i) {
            acc[i + j] += x * y;
        }
        if i % 1024 == 1023 {
            for v in acc.iter_mut() {
                *v %= p;
            }
        }
    }
    acc.into_iter().map(|v| field.from_int((v % p) as i64)).collect()
}

/// Substitution `s ↦ s(T)` for a fixed image `T` of positive valuation,
/// caching the powers of `T` across calls.
pub struct Substituter {
    image: LaurentSeries,
    image_val: i64,
    monomial: Option<(Fe, i64)>,
    pos: Vec<LaurentSeries>,
    neg: Vec<LaurentSeries>,
    cache_cap: i64,
}

impl Substituter {
    pub fn new(image: &LaurentSeries) -> Result<Self> {
        if image.is_zero_to_precision() {
            return Err(if image.is_exact() {
                Error::Domain("substitution image is zero".into())
            } else {
                Error::PrecisionExhausted("substitution image vanishes to precision".into())
            });
        }
        if image.offset() <= 0 {
            return Err(Error::Domain(format!(
                "substitution image has valuation {} <= 0",
                image.offset()
            )));
        }
        Ok(Substituter {
            image: image.clone(),
            image_val: image.offset(),
            monomial: image.as_monomial(),
            pos: Vec::new(),
            neg: Vec::new(),
            cache_cap: 0,
        })
    }

    pub fn image(&self) -> &LaurentSeries {
        &self.image
    }

    fn ensure_cap(&mut self, cap: i64) {
        if cap > self.cache_cap {
            self.pos.clear();
            self.neg.clear();
            self.cache_cap = cap;
        }
    }

    fn power(&mut self, i: i64) -> Result<LaurentSeries> {
        let field = self.image.field().clone();
        let cap = self.cache_cap;
        if i >= 0 {
            if self.pos.is_empty() {
                self.pos.push(LaurentSeries::one(&field));
            }
            while (self.pos.len() as i64) <= i {
                let next = self.pos.last().unwrap().mul(&self.image).truncate(cap);
                self.pos.push(next);
            }
            Ok(self.pos[i as usize].clone())
        } else {
            let k = i.unsigned_abs() as usize;
            if self.neg.is_empty() {
                self.neg.push(LaurentSeries::one(&field));
                let rel = padd(cap, self.image_val);
                let inv = self.image.inverse_with(rel)?.truncate(cap);
                self.neg.push(inv);
            }
            while self.neg.len() <= k {
                let next = self.neg.last().unwrap().mul(&self.neg[1]).truncate(cap);
                self.neg.push(next);
            }
            Ok(self.neg[k].clone())
        }
    }

    pub fn apply(&mut self, s: &LaurentSeries) -> Result<LaurentSeries> {
        same_field(s.field(), self.image.field());
        let field = s.field().clone();
        let v = self.image_val;
        let mut target = pmul(s.abs_precision(), v);
        if let Some((c, k)) = self.monomial {
            let mut terms = Vec::with_capacity(s.coeffs.len());
            for (i, &a) in s.coeffs.iter().enumerate() {
                let e = s.val + i as i64;
                terms.push((e * k, field.mul(a, field.pow(c, e))));
            }
            let val = s.val * k;
            let mut coeffs = vec![Fe::ZERO; ((s.coeffs.len().max(1) - 1) as i64 * k + 1) as usize];
            for (e, a) in terms {
                coeffs[(e - val) as usize] = a;
            }
            return Ok(LaurentSeries::from_coeffs(&field, val, coeffs, target));
        }
        if !self.image.is_exact() {
            for (i, &a) in s.coeffs.iter().enumerate() {
                let e = s.val + i as i64;
                if e != 0 && !a.is_zero() {
                    target = target.min((e - 1) * v + self.image.abs_precision());
                }
            }
        }
        if target >= EXACT {
            // Exact composition of finite sums; cap growth of inverse powers.
            let span = s.coeffs.len() as i64 * v + self.image.coeffs.len() as i64 * (s.coeffs.len() as i64 + 1);
            self.ensure_cap(padd(s.val * v, span.max(DEFAULT_RELATIVE_PRECISION)));
            if s.val >= 0 {
                self.cache_cap = EXACT;
            }
        } else {
            self.ensure_cap(target);
        }
        let mut acc = LaurentSeries::zero(&field, target);
        for (i, &a) in s.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = s.val + i as i64;
            if target < EXACT && e * v >= target {
                break;
            }
            let term = self.power(e)?.scale(a);
            acc = acc.add(&term);
        }
        Ok(acc.truncate(target))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Arc<FiniteField> {
        FiniteField::new(3, 1).unwrap()
    }

    fn series(f: &Arc<FiniteField>, val: i64, coeffs: &[i64], prec: i64) -> LaurentSeries {
        LaurentSeries::from_coeffs(f, val, coeffs.iter().map(|&c| f.from_int(c)).collect(), prec)
    }

    #[test]
    fn valuation_examples() {
        let f = FiniteField::new(3, 2).unwrap();
        let s = series(&f, 3, &[1, 0, 1], 67);
        assert_eq!(s.valuation().unwrap(), 3);
        let zeta = f.root_of_unity(4).unwrap();
        let unit = f.sub(zeta, Fe::ONE);
        assert_eq!(LaurentSeries::monomial(&f, unit, 1).valuation().unwrap(), 1);
    }

    #[test]
    fn valuation_needs_margin() {
        let f = f3();
        let s = series(&f, 10, &[1], 12);
        assert!(matches!(s.valuation(), Err(Error::PrecisionExhausted(_))));
        let z = LaurentSeries::zero(&f, 20);
        assert!(matches!(z.valuation(), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn substitute_examples() {
        let f = FiniteField::new(3, 2).unwrap();
        let zeta = f.root_of_unity(4).unwrap();
        let t2 = LaurentSeries::monomial(&f, Fe::ONE, 2);
        let img = LaurentSeries::monomial(&f, zeta, 1);
        let r = t2.substitute(&img).unwrap();
        assert_eq!(r, LaurentSeries::monomial(&f, f.mul(zeta, zeta), 2));

        let f = f3();
        let t = LaurentSeries::variable(&f);
        let img = series(&f, 1, &[1, 1], EXACT);
        assert_eq!(t.substitute(&img).unwrap(), img);

        // t^{-1} at t + t^2 is t^{-1}(1 + t)^{-1} = t^{-1} - 1 + t - t^2 + ...
        let tinv = LaurentSeries::monomial(&f, Fe::ONE, -1);
        let img = series(&f, 1, &[1, 1], 40);
        let r = tinv.substitute(&img).unwrap();
        for e in -1..20 {
            let expected = if (e + 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(r.coeff(e), Some(f.from_int(expected)), "exponent {e}");
        }
    }

    #[test]
    fn substitute_rejects_nonpositive_valuation() {
        let f = f3();
        let s = LaurentSeries::variable(&f);
        let img = series(&f, 0, &[1, 1], 10);
        assert!(matches!(s.substitute(&img), Err(Error::Domain(_))));
    }

    #[test]
    fn invert_examples() {
        let f = f3();
        let t = LaurentSeries::variable(&f);
        assert_eq!(t.inverse().unwrap(), LaurentSeries::monomial(&f, Fe::ONE, -1));
        let one_plus_t = series(&f, 0, &[1, 1], 30);
        let inv = one_plus_t.inverse().unwrap();
        for e in 0..30 {
            let expected = if e % 2 == 0 { 1 } else { -1 };
            assert_eq!(inv.coeff(e), Some(f.from_int(expected)));
        }
        let prod = one_plus_t.mul(&inv);
        assert!(prod.agrees_with(&LaurentSeries::one(&f)));
        assert_eq!(prod.abs_precision(), 30);
    }

    #[test]
    fn precision_propagation() {
        let f = f3();
        let a = series(&f, 2, &[1, 2], 10);
        let b = series(&f, -1, &[1], 5);
        assert_eq!(a.mul(&b).abs_precision(), (2 + 5));
        assert_eq!(a.add(&b).abs_precision(), 5);
        assert_eq!(a.inverse().unwrap().abs_precision(), -2 + 8);
    }

    #[test]
    fn derivative_detects_frobenius() {
        let f = f3();
        let cube = LaurentSeries::monomial(&f, Fe::ONE, 3);
        assert!(cube.derivative().is_zero_to_precision());
        let t = LaurentSeries::variable(&f);
        assert!(!t.derivative().is_zero_to_precision());
    }

    #[test]
    fn frobenius_twist_is_pth_root_of_coefficients() {
        let f = FiniteField::new(3, 2).unwrap();
        let g = f.generator_power(1);
        let s = LaurentSeries::from_terms(&f, &[(1, g), (4, f.mul(g, g))]);
        let tw = s.frobenius_twist(1);
        assert_eq!(f.frobenius(tw.coeff(1).unwrap()), g);
    }
}
