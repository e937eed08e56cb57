//! Exact character values in `Z[x]/(x^e - 1)`.
//!
//! An element stands for a sum of `e`-th roots of unity with `x` read as
//! `exp(2πi/e)`. Equality of actual complex values is decided by reducing
//! modulo the cyclotomic polynomial `Φ_e`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    coeffs: Vec<i64>,
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match k {
                0 => c.to_string(),
                _ => format!("{c}*x^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Cyclo {
    pub fn zero(e: u64) -> Self {
        Cyclo {
            coeffs: vec![0; e.max(1) as usize],
        }
    }

    pub fn integer(e: u64, n: i64) -> Self {
        let mut c = Self::zero(e);
        c.coeffs[0] = n;
        c
    }

    /// `x^k`.
    pub fn root(e: u64, k: i64) -> Self {
        let mut c = Self::zero(e);
        let len = c.coeffs.len() as i64;
        c.coeffs[k.rem_euclid(len) as usize] = 1;
        c
    }

    pub fn modulus(&self) -> u64 {
        self.coeffs.len() as u64
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        Cyclo {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        let e = self.coeffs.len();
        let mut out = vec![0i64; e];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[(i + j) % e] += a * b;
            }
        }
        Cyclo { coeffs: out }
    }

    pub fn scale(&self, k: i64) -> Self {
        Cyclo {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    /// Complex conjugation `x ↦ x^{-1}`.
    pub fn conj(&self) -> Self {
        let e = self.coeffs.len();
        let mut out = vec![0; e];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[(e - k) % e] += c;
        }
        Cyclo { coeffs: out }
    }

    /// Re-embeds into `Z[x]/(x^{e'} - 1)` for a multiple `e'` of `e`.
    pub fn lift(&self, e_new: u64) -> Self {
        let e = self.coeffs.len() as u64;
        assert!(e_new.is_multiple_of(e), "cannot lift modulus {e} to {e_new}");
        let step = (e_new / e) as usize;
        let mut out = vec![0; e_new as usize];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[k * step] = c;
        }
        Cyclo { coeffs: out }
    }

    /// Exact division of every coefficient, if possible.
    pub fn div_exact(&self, d: i64) -> Option<Self> {
        if self.coeffs.iter().all(|c| c % d == 0) {
            Some(Cyclo {
                coeffs: self.coeffs.iter().map(|c| c / d).collect(),
            })
        } else {
            None
        }
    }

    /// Remainder modulo `Φ_e`: the canonical form of the complex value.
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.coeffs.len() as u64);
        let mut r = self.coeffs.clone();
        let deg = phi.len() - 1;
        // Φ_e is monic, so long division stays in the integers.
        for top in (deg..r.len()).rev() {
            let c = r[top];
            if c != 0 {
                for (k, &a) in phi.iter().enumerate() {
                    r[top - deg + k] -= c * a;
                }
            }
        }
        r.truncate(deg);
        while r.last() == Some(&0) {
            r.pop();
        }
        r
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        match self.reduced().as_slice() {
            [] => Some(0),
            [c] => Some(*c),
            _ => None,
        }
    }

    /// Equality of the represented complex numbers.
    pub fn value_eq(&self, other: &Self) -> bool {
        self.add(&other.scale(-1)).reduced().is_empty()
    }
}

/// `Φ_n` with integer coefficients, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let n = n.max(1) as usize;
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = poly_div(&poly, &cyclotomic_polynomial(d as u64));
        }
    }
    poly
}

fn poly_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd];
        q[k] = c;
        for (j, &a) in den.iter().enumerate() {
            r[k + j] -= c * a;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        let mut s = Cyclo::zero(6);
        for k in 0..6 {
            s = s.add(&Cyclo::root(6, k));
        }
        assert_eq!(s.as_integer(), Some(0));
        // 1 + ζ_3 + ζ_3^2 inside modulus 6
        let t = Cyclo::root(6, 0).add(&Cyclo::root(6, 2)).add(&Cyclo::root(6, 4));
        assert_eq!(t.as_integer(), Some(0));
        assert_eq!(Cyclo::root(6, 3).as_integer(), Some(-1));
        assert_eq!(Cyclo::root(6, 1).as_integer(), None);
    }

    #[test]
    fn conjugate_and_lift() {
        let z = Cyclo::root(4, 1);
        assert_eq!(z.mul(&z.conj()), Cyclo::integer(4, 1));
        assert_eq!(z.lift(8), Cyclo::root(8, 2));
        assert!(Cyclo::root(4, 2).value_eq(&Cyclo::integer(4, -1)));
    }
}
