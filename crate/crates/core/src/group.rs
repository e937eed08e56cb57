//! Finite groups of automorphisms of `k((u))`, given by substitution series,
//! with a verified composition table.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::series::{LaurentSeries, Substituter};

/// A cyclic layer of the label coordinates: tame (`Z/n` acting through roots
/// of unity) or wild (`Z/p` acting by Artin-Schreier translation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Layer {
    Tame(u64),
    Wild(u64),
}

impl Layer {
    pub fn modulus(self) -> u64 {
        match self {
            Layer::Tame(n) | Layer::Wild(n) => n,
        }
    }
}

/// An automorphism `u ↦ s(u)` of the cover, together with its coordinates
/// in the label group `∏ Z/n_i` (one entry per [`Layer`]).
#[derive(Clone, Debug)]
pub struct Automorphism {
    pub substitution: LaurentSeries,
    pub label: Vec<u64>,
}

impl Automorphism {
    pub fn new(substitution: LaurentSeries, label: Vec<u64>) -> Self {
        Automorphism { substitution, label }
    }
}

/// A subgroup, as the sorted list of element indices.
pub type Subgroup = Vec<usize>;

#[derive(Clone, Debug)]
pub struct GaloisGroup {
    elements: Vec<Automorphism>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    orders: Vec<u64>,
    layers: Vec<Layer>,
}

impl GaloisGroup {
    /// Verifies the candidates as the automorphism group of the cover with
    /// the given embedding and separable degree.
    ///
    /// The composition table is built by composing substitution series and
    /// matching each composite against the candidates. The identity is moved
    /// to the front.
    pub fn from_candidates(
        embedding: &LaurentSeries,
        separable_degree: u64,
        candidates: Vec<Automorphism>,
        layers: Vec<Layer>,
    ) -> Result<GaloisGroup> {
        if candidates.is_empty() {
            return Err(Error::NotGalois("no candidate automorphisms".into()));
        }
        let field = embedding.field().clone();
        let u = LaurentSeries::variable(&field);
        for (i, c) in candidates.iter().enumerate() {
            let s = &c.substitution;
            if s.offset() != 1 || s.is_zero_to_precision() {
                return Err(Error::NotAnAutomorphism(format!(
                    "candidate {i} does not map the uniformizer to a uniformizer"
                )));
            }
            if c.label.len() != layers.len() {
                return Err(Error::NotAnAutomorphism(format!(
                    "candidate {i} has {} label coordinates, expected {}",
                    c.label.len(),
                    layers.len()
                )));
            }
            let moved = embedding.substitute(s)?;
            if !moved.agrees_with(embedding) {
                return Err(Error::NotAnAutomorphism(format!(
                    "candidate {i} moves the base uniformizer"
                )));
            }
        }
        let mut candidates = candidates;
        let id_pos = candidates
            .iter()
            .position(|c| c.substitution.agrees_with(&u))
            .ok_or_else(|| Error::NotClosed("identity is not among the candidates".into()))?;
        candidates.swap(0, id_pos);

        let n = candidates.len();
        let rows: Vec<Result<Vec<usize>>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut sub = Substituter::new(&candidates[i].substitution)?;
                (0..n)
                    .map(|j| {
                        let composite = sub.apply(&candidates[j].substitution)?;
                        match_candidate(&composite, &candidates, i, j)
                    })
                    .collect()
            })
            .collect();
        let table = rows.into_iter().collect::<Result<Vec<_>>>()?;

        if (n as u64) < separable_degree {
            return Err(Error::NotGalois(format!(
                "{n} automorphisms for separable degree {separable_degree}"
            )));
        }
        if (n as u64) > separable_degree {
            return Err(Error::NotAnAutomorphism(format!(
                "{n} distinct automorphisms exceed the separable degree {separable_degree}"
            )));
        }
        GaloisGroup::from_table(candidates, table, layers)
    }

    /// Checks group axioms on a ready-made table.
    fn from_table(
        elements: Vec<Automorphism>,
        table: Vec<Vec<usize>>,
        layers: Vec<Layer>,
    ) -> Result<GaloisGroup> {
        let n = elements.len();
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::NotClosed("element 0 is not a two-sided identity".into()));
            }
            let row: BTreeSet<_> = table[i].iter().collect();
            let col: BTreeSet<_> = (0..n).map(|j| table[j][i]).collect();
            if row.len() != n || col.len() != n {
                return Err(Error::NotClosed(format!(
                    "row or column {i} of the table is not a permutation"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotClosed(format!(
                            "composition is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverses: Vec<usize> = (0..n)
            .map(|i| (0..n).find(|&j| table[i][j] == 0).unwrap())
            .collect();
        let orders = (0..n)
            .map(|i| {
                let mut k = 1;
                let mut x = i;
                while x != 0 {
                    x = table[x][i];
                    k += 1;
                }
                k
            })
            .collect();
        let group = GaloisGroup {
            elements,
            table,
            inverses,
            orders,
            layers,
        };
        group.check_labels()?;
        Ok(group)
    }

    // Labels must form an injective homomorphism into the label group.
    fn check_labels(&self) -> Result<()> {
        let n = self.order();
        let distinct: BTreeSet<_> = self.elements.iter().map(|e| &e.label).collect();
        if distinct.len() != n {
            return Err(Error::NotAHomomorphism("labels are not distinct".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let expected = self.label_sum(&self.elements[i].label, &self.elements[j].label);
                if self.elements[self.table[i][j]].label != expected {
                    return Err(Error::NotAHomomorphism(format!(
                        "label of composite ({i}, {j}) is not the sum of labels"
                    )));
                }
            }
        }
        Ok(())
    }

    fn label_sum(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.layers)
            .map(|((x, y), l)| (x + y) % l.modulus())
            .collect()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Automorphism {
        &self.elements[i]
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Index of `σ_i ∘ σ_j`.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    pub fn find_label(&self, label: &[u64]) -> Option<usize> {
        self.elements.iter().position(|e| e.label == label)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn whole(&self) -> Subgroup {
        (0..self.order()).collect()
    }

    pub fn trivial(&self) -> Subgroup {
        vec![0]
    }

    /// `g h g^{-1}`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.table[self.table[g][h]][self.inverses[g]]
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        !set.is_empty()
            && set.iter().all(|&x| x < self.order())
            && set.contains(&0)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.table[a][b])))
    }

    /// Normalizes the list and checks it is a subgroup.
    pub fn subgroup(&self, h: &[usize]) -> Result<Subgroup> {
        let mut v: Vec<usize> = h.to_vec();
        v.sort_unstable();
        v.dedup();
        if self.is_subgroup(&v) {
            Ok(v)
        } else {
            Err(Error::NotSubgroup(format!("{v:?}")))
        }
    }

    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.table[x][g];
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Every subgroup, each once, ordered by size then lexicographically.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Subgroup> = BTreeSet::new();
        let mut frontier = vec![self.trivial()];
        found.insert(self.trivial());
        while let Some(h) = frontier.pop() {
            for g in 0..self.order() {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.generated(&gens);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// Whether `h` is normal in the subgroup `ambient`.
    pub fn is_normal_in(&self, h: &[usize], ambient: &[usize]) -> bool {
        ambient.iter().all(|&g| {
            h.iter()
                .all(|&x| h.binary_search(&self.conjugate(g, x)).is_ok())
        })
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        self.is_normal_in(h, &self.whole())
    }

    /// Largest normal subgroup of `self` contained in `h`.
    pub fn core(&self, h: &[usize]) -> Subgroup {
        h.iter()
            .copied()
            .filter(|&x| (0..self.order()).all(|g| h.binary_search(&self.conjugate(g, x)).is_ok()))
            .collect()
    }

    pub fn intersection(&self, a: &[usize], b: &[usize]) -> Subgroup {
        a.iter()
            .copied()
            .filter(|x| b.binary_search(x).is_ok())
            .collect()
    }

    /// The set `AB` of products.
    pub fn product_set(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.table[x][y])
            .collect();
        set.into_iter().collect()
    }

    /// Left cosets `gH` of `h` inside `ambient`, each sorted.
    pub fn left_cosets(&self, ambient: &[usize], h: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &g in ambient {
            if seen.contains(&g) {
                continue;
            }
            let mut coset: Vec<usize> = h.iter().map(|&x| self.table[g][x]).collect();
            coset.sort_unstable();
            seen.extend(coset.iter().copied());
            out.push(coset);
        }
        out
    }
}

fn match_candidate(
    composite: &LaurentSeries,
    candidates: &[Automorphism],
    i: usize,
    j: usize,
) -> Result<usize> {
    let matches: Vec<usize> = candidates
        .iter()
        .enumerate()
        .filter(|(_, c)| composite.agrees_with(&c.substitution))
        .map(|(k, _)| k)
        .collect();
    match matches.as_slice() {
        [k] => Ok(*k),
        [] => Err(Error::NotClosed(format!(
            "composite of candidates {i} and {j} matches no candidate"
        ))),
        _ => Err(Error::PrecisionExhausted(format!(
            "composite of candidates {i} and {j} matches {} candidates",
            matches.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    fn kummer_candidates(n: u64, q: u64) -> (LaurentSeries, Vec<Automorphism>) {
        let f = FiniteField::with_order(3, q).unwrap();
        let zeta = f.root_of_unity(n).unwrap();
        let emb = LaurentSeries::monomial(&f, crate::field::Fe::ONE, n as i64);
        let cands = (0..n)
            .map(|k| {
                Automorphism::new(
                    LaurentSeries::monomial(&f, f.pow(zeta, k as i64), 1),
                    vec![k],
                )
            })
            .collect();
        (emb, cands)
    }

    #[test]
    fn cyclic_table_of_order_four() {
        let (emb, cands) = kummer_candidates(4, 9);
        let g = GaloisGroup::from_candidates(&emb, 4, cands, vec![Layer::Tame(4)]).unwrap();
        assert_eq!(g.order(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.compose(i, j), (i + j) % 4);
            }
        }
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.element_order(2), 2);
        assert_eq!(g.all_subgroups().len(), 3);
    }

    #[test]
    fn missing_element_is_not_closed() {
        let (emb, mut cands) = kummer_candidates(4, 9);
        cands.remove(3);
        let r = GaloisGroup::from_candidates(&emb, 4, cands, vec![Layer::Tame(4)]);
        assert!(matches!(r, Err(Error::NotClosed(_))));
    }

    #[test]
    fn proper_subgroup_is_not_galois() {
        let (emb, cands) = kummer_candidates(4, 9);
        let sub = vec![cands[0].clone(), cands[2].clone()];
        let r = GaloisGroup::from_candidates(&emb, 4, sub, vec![Layer::Tame(4)]);
        assert!(matches!(r, Err(Error::NotGalois(_))));
    }

    #[test]
    fn identity_only() {
        let f = FiniteField::new(3, 1).unwrap();
        let u = LaurentSeries::variable(&f);
        let g = GaloisGroup::from_candidates(&u, 1, vec![Automorphism::new(u.clone(), vec![])], vec![])
            .unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn rejects_map_moving_the_base() {
        let (emb, mut cands) = kummer_candidates(4, 9);
        let f = emb.field().clone();
        cands[1].substitution = LaurentSeries::from_terms(&f, &[(1, crate::field::Fe::ONE), (2, crate::field::Fe::ONE)]);
        let r = GaloisGroup::from_candidates(&emb, 4, cands, vec![Layer::Tame(4)]);
        assert!(matches!(r, Err(Error::NotAnAutomorphism(_))));
    }
}
