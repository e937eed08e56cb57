//! A standard family of covers, towers and sheaves used for cross-checks.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::extensions::{CoverSpec, FieldConst};
use crate::field::{FiniteField, MAX_ORDER};
use crate::nearby::SheafSpec;

pub const PRIMES: [u32; 3] = [2, 3, 5];
pub const KUMMER_DEGREES: [u64; 5] = [1, 2, 3, 4, 6];
pub const AS_BREAKS: [u64; 5] = [1, 2, 4, 5, 7];

/// Smallest `q = p^d` with every tame degree dividing `q - 1`, within the
/// supported field sizes.
pub fn smallest_order(p: u32, tame_degrees: &[u64]) -> Result<u64> {
    let p = p as u64;
    let mut q = p;
    while !tame_degrees.iter().all(|&n| n > 0 && (q - 1).is_multiple_of(n)) {
        q = q.saturating_mul(p);
        if q > MAX_ORDER {
            return Err(Error::FieldTooSmall(format!(
                "no field of characteristic {p} and order at most {MAX_ORDER} holds roots of unity of orders {tame_degrees:?}"
            )));
        }
    }
    Ok(q)
}

pub fn field_for(p: u32, specs: &[&CoverSpec]) -> Result<Arc<FiniteField>> {
    let degrees: Vec<u64> = specs.iter().flat_map(|s| s.tame_degrees()).collect();
    FiniteField::with_order(p, smallest_order(p, &degrees)?)
}

pub fn artin_schreier(m: u64) -> CoverSpec {
    CoverSpec::ArtinSchreier {
        m,
        a: FieldConst::Int(1),
    }
}

fn compositum(a: CoverSpec, b: CoverSpec) -> CoverSpec {
    CoverSpec::Compositum(Box::new(a), Box::new(b))
}

pub fn kummer_covers(p: u32) -> Vec<CoverSpec> {
    KUMMER_DEGREES
        .iter()
        .filter(|&&n| n % p as u64 != 0)
        .map(|&n| CoverSpec::Kummer { n })
        .collect()
}

pub fn artin_schreier_covers(p: u32) -> Vec<CoverSpec> {
    AS_BREAKS
        .iter()
        .filter(|&&m| m % p as u64 != 0)
        .map(|&m| artin_schreier(m))
        .collect()
}

/// Two-step composita of every supported shape, kept to small degree.
pub fn composita(p: u32) -> Vec<CoverSpec> {
    let breaks: Vec<u64> = AS_BREAKS.iter().copied().filter(|m| m % p as u64 != 0).collect();
    let tame: Vec<u64> = [2, 3, 4]
        .into_iter()
        .filter(|n| n % p as u64 != 0)
        .collect();
    let mut out = Vec::new();
    if p <= 3 {
        out.push(compositum(artin_schreier(breaks[0]), artin_schreier(breaks[1])));
        out.push(compositum(artin_schreier(breaks[2]), artin_schreier(breaks[0])));
    } else {
        out.push(compositum(artin_schreier(breaks[0]), artin_schreier(breaks[1])));
    }
    for &n in tame.iter().take(2) {
        out.push(compositum(CoverSpec::Kummer { n }, artin_schreier(breaks[0])));
    }
    out.push(compositum(artin_schreier(breaks[1]), CoverSpec::Kummer { n: tame[0] }));
    if tame.len() >= 2 && num_integer::gcd(tame[0], tame[1]) == 1 {
        out.push(compositum(
            CoverSpec::Kummer { n: tame[0] },
            CoverSpec::Kummer { n: tame[1] },
        ));
    }
    out
}

/// Every corpus cover over `p`.
pub fn covers(p: u32) -> Vec<CoverSpec> {
    let mut v = vec![CoverSpec::Trivial];
    v.extend(kummer_covers(p));
    v.extend(artin_schreier_covers(p));
    v.extend(composita(p));
    v
}

/// Pairs `(f, C)` of a cover `f: K_0 → K` and a monodromy cover of `K_0`
/// that form a supported tower.
pub fn towers(p: u32) -> Vec<(CoverSpec, CoverSpec)> {
    let pp = p as u64;
    let tame: Vec<u64> = [2, 3].into_iter().filter(|n| n % pp != 0).collect();
    let breaks: Vec<u64> = [1, 2, 4].into_iter().filter(|m| m % pp != 0).collect();
    let mut out = Vec::new();
    for &m in &breaks {
        out.push((CoverSpec::Trivial, artin_schreier(m)));
        out.push((artin_schreier(m), CoverSpec::Trivial));
    }
    for &n in &tame {
        out.push((CoverSpec::Kummer { n }, CoverSpec::Trivial));
        out.push((CoverSpec::Trivial, CoverSpec::Kummer { n }));
        out.push((CoverSpec::Kummer { n }, CoverSpec::Kummer { n: 2 }));
        let m = (1..).map(|k| k * n).find(|m| m % pp != 0).unwrap();
        out.push((CoverSpec::Kummer { n }, artin_schreier(m)));
        out.push((artin_schreier(breaks[0]), CoverSpec::Kummer { n }));
    }
    out.retain(|(f, c)| {
        !matches!((f, c), (CoverSpec::Kummer { .. }, CoverSpec::Kummer { n: 2 }) if pp == 2)
    });
    out
}

/// Tame degrees whose roots of unity a tower needs.
pub fn tower_tame_degrees(f: &CoverSpec, monodromy: &CoverSpec) -> Vec<u64> {
    let mut v = f.tame_degrees();
    v.extend(monodromy.tame_degrees());
    if let (CoverSpec::Kummer { n }, CoverSpec::Kummer { n: n2 }) = (f, monodromy) {
        v.push(n * n2);
    }
    v
}

pub fn tower_field(p: u32, f: &CoverSpec, monodromy: &CoverSpec) -> Result<Arc<FiniteField>> {
    FiniteField::with_order(p, smallest_order(p, &tower_tame_degrees(f, monodromy))?)
}

/// Sheaves on a monodromy cover: trivial, regular, and characters.
pub fn sheaves(monodromy: &CoverSpec) -> Vec<SheafSpec> {
    let mut v = vec![SheafSpec::Trivial { rank: 1 }, SheafSpec::Regular];
    match monodromy {
        CoverSpec::Kummer { n } if *n > 1 => {
            v.push(SheafSpec::Character { tame: 1, wild: vec![] });
        }
        CoverSpec::ArtinSchreier { .. } => {
            v.push(SheafSpec::Character { tame: 0, wild: vec![1] });
            v.push(SheafSpec::Sum(vec![
                SheafSpec::Trivial { rank: 2 },
                SheafSpec::Character { tame: 0, wild: vec![2] },
            ]));
        }
        _ => {}
    }
    v
}
