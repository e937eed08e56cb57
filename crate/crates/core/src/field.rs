//! Finite fields `F_q`, `q = p^d`, in logarithmic representation.
//!
//! Every field is generated by a root `g` of a primitive polynomial found by
//! search, so nonzero elements are stored as exponents of `g` and addition
//! goes through a Zech logarithm table. Frobenius is a multiplication of the
//! exponent by `p`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order; tables are sized `q`.
pub const MAX_ORDER: u64 = 1 << 20;

/// Element of a [`FiniteField`]: `0` is zero, `k + 1` encodes `g^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete logarithm to base `g`, `None` for zero.
    pub fn log(self) -> Option<u32> {
        self.0.checked_sub(1)
    }
}

pub struct FiniteField {
    p: u32,
    degree: u32,
    order: u32,
    /// Monic modulus, constant term first.
    modulus: Vec<u32>,
    /// `g^k` in base-`p` packed polynomial form.
    exp: Vec<u32>,
    /// Inverse of `exp`, indexed by packed polynomial (entry 0 unused).
    log: Vec<u32>,
    /// `zech[k]` encodes `1 + g^k` as an [`Fe`].
    zech: Vec<Fe>,
    prime_elems: Vec<Fe>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative order of `p` modulo `n` (`n ≥ 1`, `gcd(p, n) = 1`).
pub fn multiplicative_order(p: u64, n: u64) -> Option<u32> {
    if n == 1 {
        return Some(1);
    }
    if num_integer::gcd(p, n) != 1 {
        return None;
    }
    let mut x = p % n;
    let mut k = 1;
    while x != 1 {
        x = x * p % n;
        k += 1;
    }
    Some(k)
}

impl FiniteField {
    /// `F_{p^degree}` with a primitive modulus found by lexicographic search.
    pub fn new(p: u32, degree: u32) -> Result<Arc<FiniteField>> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if degree == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        let order = (p as u64)
            .checked_pow(degree)
            .filter(|q| *q <= MAX_ORDER)
            .ok_or_else(|| {
                Error::InvalidField(format!("{p}^{degree} exceeds the supported order {MAX_ORDER}"))
            })? as u32;
        let d = degree as usize;
        // Lower coefficients run over all p^d tuples; modulus is monic.
        for code in 0..order {
            let mut lower = Vec::with_capacity(d);
            let mut c = code;
            for _ in 0..d {
                lower.push(c % p);
                c /= p;
            }
            if lower[0] == 0 {
                continue;
            }
            if let Some(exp) = primitive_powers(p, &lower, order) {
                let mut modulus = lower.clone();
                modulus.push(1);
                return Ok(Arc::new(Self::from_tables(p, degree, order, modulus, exp)));
            }
        }
        Err(Error::InvalidField(format!(
            "no primitive polynomial of degree {degree} over F_{p}"
        )))
    }

    /// Field of order `q`; `q` must be a power of `p`.
    pub fn with_order(p: u32, q: u64) -> Result<Arc<FiniteField>> {
        let mut d = 0u32;
        let mut x = 1u64;
        while x < q {
            x = x.saturating_mul(p as u64);
            d += 1;
        }
        if x != q || d == 0 {
            return Err(Error::InvalidField(format!("{q} is not a power of {p}")));
        }
        Self::new(p, d)
    }

    fn from_tables(p: u32, degree: u32, order: u32, modulus: Vec<u32>, exp: Vec<u32>) -> Self {
        let n = (order - 1) as usize;
        let mut log = vec![0u32; order as usize];
        for (k, &e) in exp.iter().enumerate() {
            log[e as usize] = k as u32;
        }
        let mut field = FiniteField {
            p,
            degree,
            order,
            modulus,
            exp,
            log,
            zech: Vec::new(),
            prime_elems: Vec::new(),
        };
        // 1 is packed as 1; adding 1 only touches the constant digit.
        field.zech = (0..n)
            .map(|k| {
                let packed = field.exp[k];
                let c0 = packed % p;
                let sum = packed - c0 + (c0 + 1) % p;
                field.unpack(sum)
            })
            .collect();
        field.prime_elems = (0..p).map(|c| field.unpack(c)).collect();
        field
    }

    fn unpack(&self, packed: u32) -> Fe {
        if packed == 0 {
            Fe::ZERO
        } else {
            Fe(self.log[packed as usize] + 1)
        }
    }

    fn to_packed(&self, a: Fe) -> u32 {
        match a.log() {
            None => 0,
            Some(k) => self.exp[k as usize],
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order as u64
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Checks irreducibility of the modulus by trial division over all monic
    /// polynomials of degree at most `d / 2`.
    pub fn modulus_is_irreducible(&self) -> bool {
        let p = self.p;
        let d = self.degree as usize;
        for k in 1..=d / 2 {
            let count = (p as u64).pow(k as u32);
            for code in 0..count {
                let mut div = Vec::with_capacity(k + 1);
                let mut c = code;
                for _ in 0..k {
                    div.push((c % p as u64) as u32);
                    c /= p as u64;
                }
                div.push(1);
                if poly_rem(&self.modulus, &div, p).iter().all(|&x| x == 0) {
                    return false;
                }
            }
        }
        true
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.order - 1;
        let (la, lb) = (a.0 - 1, b.0 - 1);
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[d as usize];
        if z.0 == 0 {
            return Fe::ZERO;
        }
        let s = la + z.0 - 1;
        Fe(if s >= n { s - n } else { s } + 1)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let n = self.order - 1;
        let s = a.0 - 1 + b.0 - 1;
        Fe(if s >= n { s - n } else { s } + 1)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 || self.p == 2 {
            return a;
        }
        let n = self.order - 1;
        let s = a.0 - 1 + n / 2;
        Fe(if s >= n { s - n } else { s } + 1)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        let k = a.log()?;
        let n = self.order - 1;
        Some(Fe((n - k) % n + 1))
    }

    pub fn pow(&self, a: Fe, e: i64) -> Fe {
        match a.log() {
            None => {
                if e == 0 {
                    Fe::ONE
                } else {
                    Fe::ZERO
                }
            }
            Some(k) => {
                let n = (self.order - 1) as i64;
                Fe(((k as i64 * e.rem_euclid(n)) % n) as u32 + 1)
            }
        }
    }

    /// `g^k`.
    pub fn generator_power(&self, k: i64) -> Fe {
        let n = (self.order - 1) as i64;
        Fe(k.rem_euclid(n) as u32 + 1)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        self.prime_elems[n.rem_euclid(self.p as i64) as usize]
    }

    /// The integer `c ∈ [0, p)` with `a = c · 1`, if `a` lies in `F_p`.
    pub fn to_prime_int(&self, a: Fe) -> Option<u32> {
        self.prime_elems.iter().position(|&x| x == a).map(|c| c as u32)
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as i64)
    }

    /// Inverse of the `n`-fold Frobenius, i.e. the unique `p^n`-th root.
    pub fn frobenius_inv(&self, a: Fe, n: u32) -> Fe {
        let d = self.degree;
        let k = (d - n % d) % d;
        let mut x = a;
        for _ in 0..k {
            x = self.frobenius(x);
        }
        x
    }

    /// The canonical primitive `n`-th root of unity `g^{(q-1)/n}`.
    pub fn root_of_unity(&self, n: u64) -> Result<Fe> {
        let qm1 = (self.order - 1) as u64;
        if n == 0 || !qm1.is_multiple_of(n) {
            return Err(Error::FieldTooSmall(format!(
                "F_{} has no primitive {n}-th root of unity",
                self.order
            )));
        }
        Ok(self.generator_power((qm1 / n) as i64))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order).map(Fe)
    }

    pub fn display(&self, a: Fe) -> String {
        if let Some(c) = self.to_prime_int(a) {
            c.to_string()
        } else {
            format!("g^{}", a.0 - 1)
        }
    }

    /// Packed polynomial coordinates (constant term first).
    pub fn coordinates(&self, a: Fe) -> Vec<u32> {
        let mut packed = self.to_packed(a);
        (0..self.degree)
            .map(|_| {
                let c = packed % self.p;
                packed /= self.p;
                c
            })
            .collect()
    }
}

// Powers of x modulo the monic polynomial x^d + lower; None unless x
// generates a cyclic group of order q - 1.
fn primitive_powers(p: u32, lower: &[u32], order: u32) -> Option<Vec<u32>> {
    let d = lower.len();
    let n = (order - 1) as usize;
    let mut exp = Vec::with_capacity(n);
    let mut cur = vec![0u32; d];
    cur[0] = 1;
    let pack = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c);
    for k in 0..n {
        let packed = pack(&cur);
        if packed == 0 || (k > 0 && packed == 1) {
            return None;
        }
        exp.push(packed);
        // multiply by x
        let top = cur[d - 1];
        for i in (1..d).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..d {
                cur[i] = (cur[i] + p - (top * lower[i]) % p) % p;
            }
        }
    }
    if pack(&cur) != 1 {
        return None;
    }
    Some(exp)
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let top = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if top != 0 {
            let f = top * lead_inv % p;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - f * bc % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|x| a * x % p == 1).unwrap_or(0)
}
