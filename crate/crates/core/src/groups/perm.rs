use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{0, .., m-1}` stored as its image array.
///
/// Composition follows function notation: `p.compose(q)` applies `q` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::NotAPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Perm::new(images.clone()).is_ok());
        Perm { images }
    }

    pub fn identity(m: usize) -> Self {
        Perm {
            images: (0..m).collect(),
        }
    }

    /// Build from disjoint cycles, each cycle `[a, b, c]` meaning `a -> b -> c -> a`.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut touched = vec![false; m];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= m || touched[a] {
                    return Err(Error::Precondition(format!(
                        "cycles are not disjoint or out of range at {a}"
                    )));
                }
                touched[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    pub fn transposition(m: usize, a: usize, b: usize) -> Result<Self> {
        if a >= m || b >= m {
            return Err(Error::IndexOutOfRange {
                index: a.max(b),
                len: m,
            });
        }
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(a, b);
        Ok(Perm { images })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.len() != other.len() {
            return Err(Error::ShapeMismatch(format!(
                "composing permutations of {} and {} symbols",
                self.len(),
                other.len()
            )));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.len() == other.len()
            && (0..self.len()).all(|x| self.images[other.images[x]] == other.images[self.images[x]])
    }

    /// Disjoint cycles including fixed points, each starting at its least symbol.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut counts = BTreeMap::new();
        for c in self.cycles() {
            *counts.entry(c.len()).or_insert(0) += 1;
        }
        CycleType { counts }
    }

    /// Order of the permutation (lcm of its cycle lengths).
    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, |acc, l| acc / crate::ring::gcd(acc as u64, l as u64) as usize * l)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Perm::new(images).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Cycle structure: cycle length `j` -> number of cycles `N_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CycleType {
    counts: BTreeMap<usize, usize>,
}

impl CycleType {
    pub fn new(counts: BTreeMap<usize, usize>) -> Self {
        let counts = counts.into_iter().filter(|&(_, n)| n > 0).collect();
        CycleType { counts }
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    /// Number of symbols, `Σ j N_j`.
    pub fn degree(&self) -> usize {
        self.counts.iter().map(|(j, n)| j * n).sum()
    }
}

/// Order of the centralizer in `S_m` of any permutation with cycle type `t`,
/// `Π_j j^{N_j} · N_j!` (the order of `Π_j Z_j ≀ S_{N_j}`).
pub fn centralizer_order_formula(t: &CycleType) -> Result<u128> {
    let mut acc: u128 = 1;
    for (&j, &n) in &t.counts {
        for _ in 0..n {
            acc = acc.checked_mul(j as u128).ok_or(Error::Overflow)?;
        }
        for f in 2..=n {
            acc = acc.checked_mul(f as u128).ok_or(Error::Overflow)?;
        }
    }
    Ok(acc)
}

/// A finitely generated permutation group, optionally with its elements
/// enumerated.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Option<Vec<Perm>>,
}

pub const DEFAULT_GROUP_BUDGET: usize = 100_000;

impl PermGroup {
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != degree) {
            return Err(Error::ShapeMismatch(format!(
                "generator on {} symbols in a group of degree {degree}",
                g.len()
            )));
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: None,
        })
    }

    /// A group whose full element list is already known. A small generating
    /// set is extracted greedily.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<Self> {
        let generators = greedy_generators(degree, &elements);
        let mut g = PermGroup::from_generators(degree, generators)?;
        g.elements = Some(elements);
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&[Perm]> {
        self.elements.as_deref()
    }

    /// Enumerate by breadth-first closure over the generators, refusing once
    /// more than `budget` elements are found.
    pub fn enumerate(&mut self, budget: usize) -> Result<&[Perm]> {
        if self.elements.is_none() {
            self.elements = Some(closure(self.degree, &self.generators, budget)?);
        }
        Ok(self.elements.as_deref().unwrap())
    }

    pub fn order(&mut self, budget: usize) -> Result<usize> {
        self.enumerate(budget).map(<[Perm]>::len)
    }

    /// Orbits of `{0..degree}` under the generators, each sorted, listed by
    /// least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Elements commuting with every generator, hence with the whole group.
    pub fn center(&mut self, budget: usize) -> Result<Vec<Perm>> {
        let gens = self.generators.clone();
        let elems = self.enumerate(budget)?;
        Ok(elems
            .iter()
            .filter(|e| gens.iter().all(|g| e.commutes_with(g)))
            .cloned()
            .collect())
    }
}

pub fn orbits(degree: usize, generators: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Breadth-first closure; the identity comes first and the order is
/// deterministic for a fixed generator list.
pub fn closure(degree: usize, generators: &[Perm], budget: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose_unchecked(&x);
            if seen.insert(y.clone()) {
                if out.len() >= budget {
                    return Err(Error::BudgetExceeded {
                        requested: out.len() as u128 + 1,
                        budget: budget as u128,
                    });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

fn greedy_generators(degree: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut span: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
    for e in elements {
        if span.contains(e) {
            continue;
        }
        gens.push(e.clone());
        // the group is finite so the budget is never the binding limit here
        span = closure(degree, &gens, usize::MAX)
            .expect("unbounded closure")
            .into_iter()
            .collect();
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let p = Perm::new(vec![2, 0, 3, 1]).unwrap();
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert!(p.inverse().compose(&p).unwrap().is_identity());
        let q = Perm::transposition(4, 0, 3).unwrap();
        let r = Perm::from_cycles(4, &[&[1, 2]]).unwrap();
        assert_eq!(
            p.compose(&q).unwrap().compose(&r).unwrap(),
            p.compose(&q.compose(&r).unwrap()).unwrap()
        );
    }

    #[test]
    fn compose_applies_right_first() {
        let p = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // q sends 1 to 2, then p fixes 2
        assert_eq!(p.compose(&q).unwrap().apply(1), 2);
        assert_eq!(q.compose(&p).unwrap().apply(1), 0);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3]).is_err());
        assert!(Perm::identity(3).compose(&Perm::identity(4)).is_err());
        assert!(serde_json::from_str::<Perm>("[1,1]").is_err());
    }

    #[test]
    fn cycle_types() {
        let id = Perm::identity(4);
        assert_eq!(id.cycle_type().counts(), &BTreeMap::from([(1, 4)]));
        let p = Perm::from_cycles(8, &[&[0, 1, 3, 7, 6, 4], &[2, 5]]).unwrap();
        assert_eq!(p.cycle_type().counts(), &BTreeMap::from([(2, 1), (6, 1)]));
        assert_eq!(p.cycle_type().degree(), 8);
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn centralizer_formula_examples() {
        let t = CycleType::new(BTreeMap::from([(6, 1), (2, 1)]));
        assert_eq!(centralizer_order_formula(&t).unwrap(), 12);
        let t = CycleType::new(BTreeMap::from([(1, 5)]));
        assert_eq!(centralizer_order_formula(&t).unwrap(), 120);
        let t = CycleType::new(BTreeMap::from([(4, 1)]));
        assert_eq!(centralizer_order_formula(&t).unwrap(), 4);
    }

    #[test]
    fn closure_and_orbits() {
        let c = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let mut g = PermGroup::from_generators(4, vec![c]).unwrap();
        assert_eq!(g.order(100).unwrap(), 4);
        assert!(g.is_transitive());
        assert!(g.is_abelian());
        assert_eq!(g.center(100).unwrap().len(), 4);

        let trivial = PermGroup::from_generators(3, vec![Perm::identity(3)]).unwrap();
        assert!(!trivial.is_transitive());
        assert_eq!(trivial.orbits(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn closure_budget() {
        let a = Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let b = Perm::transposition(5, 0, 1).unwrap();
        assert_eq!(closure(5, &[a.clone(), b.clone()], 120).unwrap().len(), 120);
        assert!(matches!(
            closure(5, &[a, b], 119),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn greedy_generators_regenerate() {
        let elems = closure(
            4,
            &[
                Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
                Perm::transposition(4, 0, 1).unwrap(),
            ],
            1000,
        )
        .unwrap();
        let mut g = PermGroup::from_elements(4, elems).unwrap();
        assert!(g.generators().len() <= 4);
        let regenerated = closure(4, g.generators(), 1000).unwrap();
        assert_eq!(regenerated.len(), 24);
        assert_eq!(g.order(10).unwrap(), 24);
    }

    #[test]
    fn debug_shows_cycles() {
        let p = Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap();
        assert_eq!(format!("{p:?}"), "(0 2)(1 3)");
        assert_eq!(format!("{:?}", Perm::identity(2)), "()");
    }
}
