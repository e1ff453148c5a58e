//! The critical multi-cubic lattice over `Z_{2k+1}` on a finite index set.
//!
//! An element is a vector of entries, each either the indeterminate `X` or a
//! nonzero residue in `1..=2k`, together with an adjoined bottom. The top is
//! the all-`X` vector, atoms are the fully specified vectors and coatoms have
//! exactly one specified entry. Residues `k+1..=2k` play the role of the
//! negative labels `-k..=-1`.
//!
//! `m <= n` holds when every index fixed by `n` is fixed to the same value by
//! `m`. Meets refine, joins forget disagreeing coordinates:
//!
//! ```
//! use mcl::lattice::{Mcl, MclElement};
//! use mcl::ring::Modulus;
//!
//! let z5 = Modulus::new(5).unwrap();
//! let a: MclElement = MclElement::parse(z5, "(1,X)").unwrap();
//! let b = MclElement::parse(z5, "(X,2)").unwrap();
//! assert_eq!(a.meet(&b).unwrap().to_string(), "(1,2)");
//! assert_eq!(a.join(&b).unwrap(), Mcl::new(z5, 2).unwrap().top());
//! ```

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Modulus, Residue};

/// Default refusal threshold for atom enumerations.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// One coordinate of a lattice element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    X,
    Val(u64),
}

impl Entry {
    #[inline]
    pub fn is_x(self) -> bool {
        matches!(self, Entry::X)
    }

    #[inline]
    pub fn value(self) -> Option<u64> {
        match self {
            Entry::X => None,
            Entry::Val(v) => Some(v),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::X => write!(f, "X"),
            Entry::Val(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Entry::X => s.serialize_str("X"),
            Entry::Val(v) => s.serialize_u64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Num(u64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) if s == "X" => Ok(Entry::X),
            Raw::Str(s) => Err(de::Error::custom(format!("expected \"X\", got {s:?}"))),
            Raw::Num(v) => Ok(Entry::Val(v)),
        }
    }
}

/// A point of the critical multi-cubic lattice, or its adjoined bottom.
///
/// The bottom is stored with all entries `X` so that structural equality is
/// lattice equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MclElement {
    modulus: Modulus,
    entries: Vec<Entry>,
    bottom: bool,
}

impl MclElement {
    pub fn new(modulus: Modulus, entries: Vec<Entry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let max = modulus.two_k() as u64;
        for e in &entries {
            if let Entry::Val(v) = *e {
                if v == 0 || v > max {
                    return Err(Error::EntryOutOfRange { value: v, max });
                }
            }
        }
        Ok(MclElement {
            modulus,
            entries,
            bottom: false,
        })
    }

    /// From optional values, `None` meaning `X`.
    pub fn from_values(modulus: Modulus, values: &[Option<u64>]) -> Result<Self> {
        let entries = values
            .iter()
            .map(|v| v.map_or(Entry::X, Entry::Val))
            .collect();
        MclElement::new(modulus, entries)
    }

    pub fn bottom(modulus: Modulus, indices: usize) -> Self {
        MclElement {
            modulus,
            entries: vec![Entry::X; indices],
            bottom: true,
        }
    }

    pub fn top(modulus: Modulus, indices: usize) -> Self {
        MclElement {
            modulus,
            entries: vec![Entry::X; indices],
            bottom: false,
        }
    }

    /// Parse `"(1,X,3)"` (parentheses optional) or `"⊥"` / `"bottom"`.
    ///
    /// The bottom needs an index count, so a bare bottom parses to a single
    /// index; use [`MclElement::bottom`] otherwise.
    pub fn parse(modulus: Modulus, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "⊥" || s.eq_ignore_ascii_case("bottom") {
            return Ok(MclElement::bottom(modulus, 1));
        }
        let inner = s.trim_start_matches('(').trim_end_matches(')');
        let entries = inner
            .split(',')
            .map(|tok| match tok.trim() {
                "X" | "x" => Ok(Entry::X),
                t => t
                    .parse::<u64>()
                    .map(Entry::Val)
                    .map_err(|_| Error::Precondition(format!("bad entry {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        MclElement::new(modulus, entries)
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn is_bottom(&self) -> bool {
        self.bottom
    }

    pub fn is_top(&self) -> bool {
        !self.bottom && self.entries.iter().all(|e| e.is_x())
    }

    pub fn is_atom(&self) -> bool {
        !self.bottom && self.entries.iter().all(|e| !e.is_x())
    }

    pub fn is_coatom(&self) -> bool {
        !self.bottom && self.entries.iter().filter(|e| !e.is_x()).count() == 1
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> Entry {
        self.entries[i]
    }

    /// `σ(m)`: the indices carrying `X`.
    pub fn sigma(&self) -> BTreeSet<usize> {
        self.indices_where(Entry::is_x)
    }

    /// Complement of `σ(m)`: the specified indices.
    pub fn specified(&self) -> BTreeSet<usize> {
        self.indices_where(|e| !e.is_x())
    }

    /// `Γ(m)`: the specified values with `0` in place of `X`.
    pub fn gamma(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.value().unwrap_or(0)).collect()
    }

    fn indices_where(&self, f: impl Fn(Entry) -> bool) -> BTreeSet<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| f(**e))
            .map(|(i, _)| i)
            .collect()
    }

    fn check_shape(&self, other: &MclElement) -> Result<()> {
        if self.modulus != other.modulus || self.len() != other.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} with {} indices vs {} with {} indices",
                self.modulus,
                self.len(),
                other.modulus,
                other.len()
            )));
        }
        Ok(())
    }

    fn require_not_bottom(&self, op: &str) -> Result<()> {
        if self.bottom {
            return Err(Error::Precondition(format!("{op} of the bottom element")));
        }
        Ok(())
    }

    pub fn leq(&self, other: &MclElement) -> Result<bool> {
        self.check_shape(other)?;
        Ok(self.leq_unchecked(other))
    }

    fn leq_unchecked(&self, other: &MclElement) -> bool {
        if self.bottom {
            return true;
        }
        if other.bottom {
            return false;
        }
        // σ(self) ⊆ σ(other) and agreement wherever other is specified
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| match (a, b) {
                (_, Entry::X) => true,
                (Entry::X, Entry::Val(_)) => false,
                (Entry::Val(x), Entry::Val(y)) => x == y,
            })
    }

    pub fn meet(&self, other: &MclElement) -> Result<MclElement> {
        self.check_shape(other)?;
        if self.bottom || other.bottom {
            return Ok(MclElement::bottom(self.modulus, self.len()));
        }
        let mut entries = Vec::with_capacity(self.len());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            entries.push(match (*a, *b) {
                (Entry::X, e) | (e, Entry::X) => e,
                (Entry::Val(x), Entry::Val(y)) if x == y => Entry::Val(x),
                _ => return Ok(MclElement::bottom(self.modulus, self.len())),
            });
        }
        Ok(MclElement {
            modulus: self.modulus,
            entries,
            bottom: false,
        })
    }

    /// True when the meet is not the bottom.
    pub fn meet_compatible(&self, other: &MclElement) -> Result<bool> {
        Ok(!self.meet(other)?.is_bottom())
    }

    pub fn join(&self, other: &MclElement) -> Result<MclElement> {
        self.check_shape(other)?;
        if self.bottom {
            return Ok(other.clone());
        }
        if other.bottom {
            return Ok(self.clone());
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| match (a, b) {
                (Entry::Val(x), Entry::Val(y)) if x == y => Entry::Val(*x),
                _ => Entry::X,
            })
            .collect();
        Ok(MclElement {
            modulus: self.modulus,
            entries,
            bottom: false,
        })
    }

    /// Multiply every specified coordinate by the unit `u`. Fixes the bottom.
    pub fn scalar_mul(&self, u: Residue) -> Result<MclElement> {
        if u.modulus() != self.modulus {
            return Err(Error::ShapeMismatch(format!(
                "scalar over {} acting on {}",
                u.modulus(),
                self.modulus
            )));
        }
        if !u.is_unit() {
            return Err(Error::NotAUnit {
                value: u.value(),
                modulus: self.modulus.get(),
            });
        }
        let mut out = self.clone();
        for e in &mut out.entries {
            if let Entry::Val(v) = e {
                *v = self.modulus.mul(u.value(), *v);
            }
        }
        Ok(out)
    }

    /// `Δ(self, a)` for `a <= self`: negate the coordinates fixed by `a` but
    /// free in `self`.
    pub fn delta(&self, a: &MclElement) -> Result<MclElement> {
        self.check_shape(a)?;
        self.require_not_bottom("delta")?;
        a.require_not_bottom("delta")?;
        if !a.leq_unchecked(self) {
            return Err(Error::Precondition(format!("delta requires {a} <= {self}")));
        }
        let n = self.modulus.get();
        let entries = a
            .entries
            .iter()
            .zip(&self.entries)
            .map(|(ai, bi)| match (*ai, *bi) {
                (Entry::Val(v), Entry::X) => Entry::Val(n - v),
                (e, _) => e,
            })
            .collect();
        Ok(MclElement {
            modulus: self.modulus,
            entries,
            bottom: false,
        })
    }

    /// `self -> a = Γ(a) + X_{σ(a) ∪ σ(self)^c}`.
    pub fn implies(&self, a: &MclElement) -> Result<MclElement> {
        self.check_shape(a)?;
        self.require_not_bottom("implication")?;
        a.require_not_bottom("implication")?;
        let entries = a
            .entries
            .iter()
            .zip(&self.entries)
            .map(|(ai, bi)| match (*ai, *bi) {
                (Entry::Val(v), Entry::X) => Entry::Val(v),
                _ => Entry::X,
            })
            .collect();
        Ok(MclElement {
            modulus: self.modulus,
            entries,
            bottom: false,
        })
    }

    /// `Π_J`: free the coordinates in `J`.
    pub fn proj(&self, j: &BTreeSet<usize>) -> Result<MclElement> {
        self.require_not_bottom("projection")?;
        if let Some(&bad) = j.iter().find(|&&i| i >= self.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: self.len(),
            });
        }
        let mut out = self.clone();
        for &i in j {
            out.entries[i] = Entry::X;
        }
        Ok(out)
    }

    /// All atoms below `self`, lexicographic.
    pub fn atoms_below(&self, budget: u128) -> Result<Vec<MclElement>> {
        self.require_not_bottom("atoms_below")?;
        let two_k = self.modulus.two_k() as u128;
        let free = self.sigma().len() as u32;
        let count = two_k.checked_pow(free).ok_or(Error::Overflow)?;
        if count > budget {
            return Err(Error::BudgetExceeded {
                requested: count,
                budget,
            });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut current = self.entries.clone();
        fill_free(self, 0, &mut current, &mut out);
        Ok(out)
    }

    /// All coatoms above `self`: one per specified index. Empty for the top.
    pub fn coatoms_above(&self) -> Result<Vec<MclElement>> {
        self.require_not_bottom("coatoms_above")?;
        Ok(self
            .specified()
            .into_iter()
            .map(|i| {
                let mut entries = vec![Entry::X; self.len()];
                entries[i] = self.entries[i];
                MclElement {
                    modulus: self.modulus,
                    entries,
                    bottom: false,
                }
            })
            .collect())
    }

    /// Signed-set image at modulus 3: `(A+, A-)` with `A+` the indices at `1`
    /// and `A-` the indices at `2 ≡ -1`.
    pub fn to_signed_set(&self) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
        if self.modulus.get() != 3 {
            return Err(Error::Precondition(format!(
                "signed sets need modulus 3, got {}",
                self.modulus.get()
            )));
        }
        self.require_not_bottom("to_signed_set")?;
        Ok((
            self.indices_where(|e| e == Entry::Val(1)),
            self.indices_where(|e| e == Entry::Val(2)),
        ))
    }
}

fn fill_free(
    template: &MclElement,
    i: usize,
    current: &mut Vec<Entry>,
    out: &mut Vec<MclElement>,
) {
    if i == current.len() {
        out.push(MclElement {
            modulus: template.modulus,
            entries: current.clone(),
            bottom: false,
        });
        return;
    }
    if template.entries[i].is_x() {
        for v in 1..=template.modulus.two_k() as u64 {
            current[i] = Entry::Val(v);
            fill_free(template, i + 1, current, out);
        }
        current[i] = Entry::X;
    } else {
        fill_free(template, i + 1, current, out);
    }
}

impl PartialOrd for MclElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.modulus != other.modulus || self.len() != other.len() {
            return None;
        }
        match (self.leq_unchecked(other), other.leq_unchecked(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for MclElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bottom {
            return write!(f, "⊥");
        }
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    modulus: Modulus,
    entries: Vec<Entry>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    bottom: bool,
}

impl Serialize for MclElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            modulus: self.modulus,
            entries: self.entries.clone(),
            bottom: self.bottom,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MclElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementRepr::deserialize(d)?;
        if raw.bottom {
            if raw.entries.is_empty() {
                return Err(de::Error::custom("bottom needs its index count as entries"));
            }
            return Ok(MclElement::bottom(raw.modulus, raw.entries.len()));
        }
        MclElement::new(raw.modulus, raw.entries).map_err(de::Error::custom)
    }
}

/// A critical multi-cubic lattice: a modulus and a finite index set
/// `{0, .., indices-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mcl {
    modulus: Modulus,
    indices: usize,
    budget: u128,
}

impl Mcl {
    pub fn new(modulus: Modulus, indices: usize) -> Result<Self> {
        if indices == 0 {
            return Err(Error::EmptyIndexSet);
        }
        Ok(Mcl {
            modulus,
            indices,
            budget: DEFAULT_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn indices(&self) -> usize {
        self.indices
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    pub fn top(&self) -> MclElement {
        MclElement::top(self.modulus, self.indices)
    }

    pub fn bottom(&self) -> MclElement {
        MclElement::bottom(self.modulus, self.indices)
    }

    pub fn element(&self, values: &[Option<u64>]) -> Result<MclElement> {
        if values.len() != self.indices {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for {} indices",
                values.len(),
                self.indices
            )));
        }
        MclElement::from_values(self.modulus, values)
    }

    /// `(2k)^{|I|}`.
    pub fn atom_count(&self) -> Result<u128> {
        (self.modulus.two_k() as u128)
            .checked_pow(self.indices as u32)
            .ok_or(Error::Overflow)
    }

    fn check_budget(&self, count: u128) -> Result<()> {
        if count > self.budget {
            return Err(Error::BudgetExceeded {
                requested: count,
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// All `(2k)^{|I|}` atoms, lexicographic.
    pub fn atoms(&self) -> Result<Vec<MclElement>> {
        self.check_budget(self.atom_count()?)?;
        self.top().atoms_below(self.budget)
    }

    /// All `2k·|I|` coatoms, by index then value.
    pub fn coatoms(&self) -> Result<Vec<MclElement>> {
        let count = (self.modulus.two_k() * self.indices) as u128;
        self.check_budget(count)?;
        Ok((0..self.indices)
            .flat_map(|i| (1..=self.modulus.two_k() as u64).map(move |v| (i, v)))
            .map(|(i, v)| self.coatom(i, v).expect("in range"))
            .collect())
    }

    /// The coatom fixing index `i` to value `v`.
    pub fn coatom(&self, i: usize, v: u64) -> Result<MclElement> {
        if i >= self.indices {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.indices,
            });
        }
        let mut entries = vec![Entry::X; self.indices];
        entries[i] = Entry::Val(v);
        MclElement::new(self.modulus, entries)
    }

    /// Every non-bottom element, `(2k+1)^{|I|}` of them, lexicographic with
    /// `X` first at each index.
    pub fn elements(&self) -> Result<Vec<MclElement>> {
        let count = (self.modulus.get() as u128)
            .checked_pow(self.indices as u32)
            .ok_or(Error::Overflow)?;
        self.check_budget(count)?;
        let alphabet: Vec<Entry> = std::iter::once(Entry::X)
            .chain((1..=self.modulus.two_k() as u64).map(Entry::Val))
            .collect();
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0usize; self.indices];
        loop {
            out.push(MclElement {
                modulus: self.modulus,
                entries: digits.iter().map(|&d| alphabet[d]).collect(),
                bottom: false,
            });
            let mut pos = self.indices;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < alphabet.len() {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    /// Big-endian position of an atom among all atoms:
    /// `Σ_i (a_i - 1)·(2k)^{|I|-1-i}`. Agrees with the order of [`Mcl::atoms`].
    pub fn atom_index(&self, a: &MclElement) -> Result<usize> {
        if a.modulus != self.modulus || a.len() != self.indices {
            return Err(Error::ShapeMismatch(format!("{a} is not in this lattice")));
        }
        if !a.is_atom() {
            return Err(Error::Precondition(format!("{a} is not an atom")));
        }
        let d = self.modulus.two_k();
        Ok(a.entries
            .iter()
            .fold(0, |acc, e| acc * d + (e.value().unwrap() as usize - 1)))
    }

    /// Inverse of [`Mcl::atom_index`].
    pub fn atom_at(&self, mut index: usize) -> Result<MclElement> {
        let d = self.modulus.two_k();
        let count = self.atom_count()?;
        if index as u128 >= count {
            return Err(Error::IndexOutOfRange {
                index,
                len: count as usize,
            });
        }
        let mut entries = vec![Entry::X; self.indices];
        for slot in entries.iter_mut().rev() {
            *slot = Entry::Val((index % d) as u64 + 1);
            index /= d;
        }
        MclElement::new(self.modulus, entries)
    }

    /// [`Mcl::elements`] followed by the bottom.
    pub fn elements_with_bottom(&self) -> Result<Vec<MclElement>> {
        let mut all = self.elements()?;
        all.push(self.bottom());
        Ok(all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn el(n: u64, s: &str) -> MclElement {
        MclElement::parse(z(n), s).unwrap()
    }

    #[test]
    fn order_examples() {
        assert!(el(5, "(1,2)").leq(&el(5, "(1,X)")).unwrap());
        assert!(!el(5, "(1,X)").leq(&el(5, "(1,2)")).unwrap());
        assert!(!el(5, "(2,2)").leq(&el(5, "(1,X)")).unwrap());
        let bot = MclElement::bottom(z(5), 2);
        assert!(bot.leq(&el(5, "(1,2)")).unwrap());
        assert!(!el(5, "(1,2)").leq(&bot).unwrap());
    }

    #[test]
    fn order_matches_exhaustive_table() {
        // Independent check: m <= n iff every atom below m is below n.
        let l = Mcl::new(z(5), 2).unwrap();
        let atoms = l.atoms().unwrap();
        let elems = l.elements().unwrap();
        for m in &elems {
            for n in &elems {
                let by_atoms = atoms
                    .iter()
                    .filter(|a| a.leq(m).unwrap())
                    .all(|a| a.leq(n).unwrap());
                assert_eq!(m.leq(n).unwrap(), by_atoms, "{m} <= {n}");
            }
        }
    }

    #[test]
    fn mismatched_shapes_rejected() {
        assert!(el(5, "(1,2)").leq(&el(5, "(1)")).is_err());
        assert!(el(5, "(1,2)").meet(&el(7, "(1,2)")).is_err());
        assert!(el(5, "(1,2)").join(&el(5, "(1,2,3)")).is_err());
    }

    #[test]
    fn entry_range_checked() {
        assert!(MclElement::parse(z(5), "(5,X)").is_err());
        assert!(MclElement::parse(z(5), "(0,X)").is_err());
        assert!(MclElement::parse(z(5), "(Y,X)").is_err());
        assert!(MclElement::new(z(5), vec![]).is_err());
    }

    #[test]
    fn meet_examples() {
        assert_eq!(el(5, "(1,X)").meet(&el(5, "(X,2)")).unwrap(), el(5, "(1,2)"));
        assert!(el(5, "(1,X)").meet(&el(5, "(2,X)")).unwrap().is_bottom());
        assert_eq!(el(5, "(1,2)").meet(&el(5, "(1,2)")).unwrap(), el(5, "(1,2)"));
        let bot = MclElement::bottom(z(5), 2);
        assert!(bot.meet(&el(5, "(X,X)")).unwrap().is_bottom());
    }

    #[test]
    fn join_examples() {
        assert_eq!(el(5, "(1,2)").join(&el(5, "(1,3)")).unwrap(), el(5, "(1,X)"));
        assert!(el(5, "(1,X)").join(&el(5, "(X,2)")).unwrap().is_top());
        assert_eq!(el(5, "(3,1)").join(&el(5, "(3,1)")).unwrap(), el(5, "(3,1)"));
        let bot = MclElement::bottom(z(5), 2);
        assert_eq!(bot.join(&el(5, "(4,X)")).unwrap(), el(5, "(4,X)"));
    }

    #[test]
    fn distinct_coatoms_join_to_top() {
        let l = Mcl::new(z(5), 2).unwrap();
        let c = l.coatoms().unwrap();
        for a in &c {
            for b in &c {
                if a != b {
                    assert!(a.join(b).unwrap().is_top());
                }
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(Mcl::new(z(5), 2).unwrap().atoms().unwrap().len(), 16);
        assert_eq!(Mcl::new(z(3), 3).unwrap().atoms().unwrap().len(), 8);
        assert_eq!(Mcl::new(z(7), 1).unwrap().atoms().unwrap().len(), 6);
        assert_eq!(Mcl::new(z(5), 2).unwrap().coatoms().unwrap().len(), 8);
        assert_eq!(Mcl::new(z(3), 2).unwrap().coatoms().unwrap().len(), 4);
        let l = Mcl::new(z(5), 1).unwrap();
        assert_eq!(l.coatoms().unwrap(), l.atoms().unwrap());
        assert_eq!(Mcl::new(z(5), 2).unwrap().elements().unwrap().len(), 25);
    }

    #[test]
    fn atoms_are_lexicographic() {
        let atoms = Mcl::new(z(3), 2).unwrap().atoms().unwrap();
        let shown: Vec<String> = atoms.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["(1,1)", "(1,2)", "(2,1)", "(2,2)"]);
    }

    #[test]
    fn budget_refusal() {
        let l = Mcl::new(z(5), 11).unwrap();
        assert!(matches!(l.atoms(), Err(Error::BudgetExceeded { .. })));
        let l = Mcl::new(z(5), 2).unwrap().with_budget(15);
        assert!(l.atoms().is_err());
        assert!(Mcl::new(z(5), 0).is_err());
    }

    #[test]
    fn scalar_mul_examples() {
        assert_eq!(el(5, "(1,2)").scalar_mul(z(5).residue(2)).unwrap(), el(5, "(2,4)"));
        assert_eq!(el(5, "(3,X)").scalar_mul(z(5).residue(1)).unwrap(), el(5, "(3,X)"));
        assert_eq!(el(5, "(1,X)").scalar_mul(z(5).residue(-1)).unwrap(), el(5, "(4,X)"));
        assert!(el(9, "(1,X)").scalar_mul(z(9).residue(3)).is_err());
    }

    #[test]
    fn delta_examples() {
        let a = el(5, "(1,2)");
        assert_eq!(a.delta(&a).unwrap(), a);
        assert_eq!(el(5, "(X,3)").delta(&el(5, "(2,3)")).unwrap(), el(5, "(3,3)"));
        assert_eq!(el(5, "(X,X)").delta(&el(5, "(1,2)")).unwrap(), el(5, "(4,3)"));
        assert!(el(5, "(1,X)").delta(&el(5, "(2,2)")).is_err());
        assert!(el(5, "(1,X)").delta(&MclElement::bottom(z(5), 2)).is_err());
    }

    #[test]
    fn implies_examples() {
        let a = el(5, "(1,2)");
        assert!(a.implies(&a).unwrap().is_top());
        assert_eq!(el(5, "(X,2)").implies(&el(5, "(1,2)")).unwrap(), el(5, "(1,X)"));
        assert_eq!(el(5, "(1,X)").implies(&el(5, "(X,2)")).unwrap(), el(5, "(X,2)"));
        assert!(a.implies(&MclElement::bottom(z(5), 2)).is_err());
    }

    #[test]
    fn atoms_below_examples() {
        let below = el(5, "(1,X)").atoms_below(DEFAULT_BUDGET).unwrap();
        let shown: Vec<String> = below.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["(1,1)", "(1,2)", "(1,3)", "(1,4)"]);
        let a = el(5, "(2,3)");
        assert_eq!(a.atoms_below(DEFAULT_BUDGET).unwrap(), vec![a]);
        assert_eq!(el(3, "(X)").atoms_below(DEFAULT_BUDGET).unwrap().len(), 2);
    }

    #[test]
    fn coatoms_above_examples() {
        let c = el(5, "(1,2)").coatoms_above().unwrap();
        assert_eq!(c, vec![el(5, "(1,X)"), el(5, "(X,2)")]);
        assert_eq!(c[0].meet(&c[1]).unwrap(), el(5, "(1,2)"));
        assert_eq!(el(5, "(X,4)").coatoms_above().unwrap(), vec![el(5, "(X,4)")]);
        assert!(el(5, "(X,X)").coatoms_above().unwrap().is_empty());
    }

    #[test]
    fn proj_examples() {
        let j = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(el(5, "(1,2)").proj(&j(&[0])).unwrap(), el(5, "(X,2)"));
        assert_eq!(el(5, "(1,2)").proj(&j(&[])).unwrap(), el(5, "(1,2)"));
        assert!(el(5, "(1,2)").proj(&j(&[2])).is_err());
    }

    #[test]
    fn signed_sets() {
        let (p, m) = el(3, "(1,2,X)").to_signed_set().unwrap();
        assert_eq!(p, BTreeSet::from([0]));
        assert_eq!(m, BTreeSet::from([1]));
        let (p, m) = el(3, "(X,X,X)").to_signed_set().unwrap();
        assert!(p.is_empty() && m.is_empty());
        assert!(el(5, "(1,X)").to_signed_set().is_err());
    }

    #[test]
    fn json_encoding() {
        let a = el(5, "(1,X)");
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"modulus":5,"entries":[1,"X"]}"#);
        assert_eq!(serde_json::from_str::<MclElement>(&s).unwrap(), a);
        let b = MclElement::bottom(z(5), 2);
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"modulus":5,"entries":["X","X"],"bottom":true}"#);
        assert_eq!(serde_json::from_str::<MclElement>(&s).unwrap(), b);
        assert!(serde_json::from_str::<MclElement>(r#"{"modulus":4,"entries":[1]}"#).is_err());
        assert!(serde_json::from_str::<MclElement>(r#"{"modulus":5,"entries":[7]}"#).is_err());
        assert!(serde_json::from_str::<MclElement>(r#"{"modulus":5,"entries":["Y"]}"#).is_err());
    }

    #[test]
    fn atom_indexing() {
        let l = Mcl::new(z(5), 2).unwrap();
        assert_eq!(l.atom_index(&el(5, "(1,1)")).unwrap(), 0);
        assert_eq!(l.atom_index(&el(5, "(1,2)")).unwrap(), 1);
        assert_eq!(l.atom_index(&el(5, "(4,4)")).unwrap(), 15);
        assert!(l.atom_index(&el(5, "(4,X)")).is_err());
        for (i, a) in l.atoms().unwrap().iter().enumerate() {
            assert_eq!(l.atom_index(a).unwrap(), i);
            assert_eq!(&l.atom_at(i).unwrap(), a);
        }
        assert!(l.atom_at(16).is_err());
    }

    #[test]
    fn partial_order_trait() {
        assert!(el(5, "(1,2)") < el(5, "(1,X)"));
        assert_eq!(el(5, "(1,X)").partial_cmp(&el(5, "(2,X)")), None);
    }
}
