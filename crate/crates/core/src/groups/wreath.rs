use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::Perm;
use crate::lattice::{Entry, MclElement};

/// An element `(base, top)` of `C ≀ S_I`: per-index permutations of the `2k`
/// nonzero residues and a permutation of the indices.
///
/// Acting on a lattice element, the entry at index `i` moves to index
/// `top(i)` and its value is relabeled by `base[i]`. Products are taken so
/// that acting by `w1 * w2` is acting by `w2` and then by `w1`:
/// `(b, t) * (b', t') = (i ↦ b[t'(i)] ∘ b'[i], t ∘ t')`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WreathRepr")]
pub struct WreathElement {
    base: Vec<Perm>,
    top: Perm,
}

#[derive(Deserialize)]
struct WreathRepr {
    base: Vec<Perm>,
    top: Perm,
}

impl TryFrom<WreathRepr> for WreathElement {
    type Error = Error;

    fn try_from(r: WreathRepr) -> Result<Self> {
        WreathElement::new(r.base, r.top)
    }
}

impl WreathElement {
    pub fn new(base: Vec<Perm>, top: Perm) -> Result<Self> {
        if base.len() != top.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} base permutations for a top permutation on {} indices",
                base.len(),
                top.len()
            )));
        }
        if base.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let d = base[0].len();
        if base.iter().any(|b| b.len() != d) {
            return Err(Error::ShapeMismatch(
                "base permutations act on different symbol counts".into(),
            ));
        }
        Ok(WreathElement { base, top })
    }

    pub fn identity(symbols: usize, indices: usize) -> Self {
        WreathElement {
            base: vec![Perm::identity(symbols); indices],
            top: Perm::identity(indices),
        }
    }

    /// `p` at index `i`, identity elsewhere.
    pub fn at_index(p: Perm, i: usize, indices: usize) -> Result<Self> {
        if i >= indices {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: indices,
            });
        }
        let mut w = WreathElement::identity(p.len(), indices);
        w.base[i] = p;
        Ok(w)
    }

    /// Pure index permutation with identity base.
    pub fn index_perm(top: Perm, symbols: usize) -> Self {
        WreathElement {
            base: vec![Perm::identity(symbols); top.len()],
            top,
        }
    }

    pub fn base(&self) -> &[Perm] {
        &self.base
    }

    pub fn top(&self) -> &Perm {
        &self.top
    }

    pub fn indices(&self) -> usize {
        self.top.len()
    }

    pub fn symbols(&self) -> usize {
        self.base[0].len()
    }

    pub fn is_identity(&self) -> bool {
        self.top.is_identity() && self.base.iter().all(Perm::is_identity)
    }

    pub fn compose(&self, other: &WreathElement) -> Result<WreathElement> {
        if self.indices() != other.indices() || self.symbols() != other.symbols() {
            return Err(Error::ShapeMismatch("wreath elements of different shape".into()));
        }
        let base = (0..self.indices())
            .map(|i| self.base[other.top.apply(i)].compose_unchecked(&other.base[i]))
            .collect();
        Ok(WreathElement {
            base,
            top: self.top.compose_unchecked(&other.top),
        })
    }

    pub fn inverse(&self) -> WreathElement {
        let top = self.top.inverse();
        let base = (0..self.indices())
            .map(|i| self.base[top.apply(i)].inverse())
            .collect();
        WreathElement { base, top }
    }

    /// Apply to a lattice element. `X` stays `X`; the bottom is fixed.
    pub fn act(&self, m: &MclElement) -> Result<MclElement> {
        if m.len() != self.indices() || m.modulus().two_k() != self.symbols() {
            return Err(Error::ShapeMismatch(format!(
                "wreath element on {} indices x {} symbols acting on {} over {}",
                self.indices(),
                self.symbols(),
                m.len(),
                m.modulus()
            )));
        }
        if m.is_bottom() {
            return Ok(m.clone());
        }
        let mut entries = vec![Entry::X; m.len()];
        for (i, e) in m.entries().iter().enumerate() {
            entries[self.top.apply(i)] = match *e {
                Entry::X => Entry::X,
                Entry::Val(v) => Entry::Val(self.base[i].apply(v as usize - 1) as u64 + 1),
            };
        }
        MclElement::new(m.modulus(), entries)
    }
}

/// `|C ≀ S_I| = |C|^{|I|} · |I|!`.
pub fn wreath_order(base_order: u128, indices: usize) -> Result<u128> {
    let mut acc = base_order
        .checked_pow(indices as u32)
        .ok_or(Error::Overflow)?;
    for f in 2..=indices as u128 {
        acc = acc.checked_mul(f).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}
