//! Arithmetic in the odd cyclic ring `Z_n`, `n = 2k + 1`.
//!
//! The nonzero residues `1..=2k` are the labels used everywhere else in the
//! crate. Residue `a` corresponds to the 0-based symbol `a - 1`, so the unit
//! group of the ring acts on the symbols `0..2k` by multiplication.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::Perm;

/// The size `n = 2k + 1` of the base ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Modulus(n))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `2k`, the number of nonzero residues and the local qudit dimension.
    #[inline]
    pub fn two_k(self) -> usize {
        (self.0 - 1) as usize
    }

    /// `k` itself.
    #[inline]
    pub fn k(self) -> u64 {
        (self.0 - 1) / 2
    }

    pub fn is_prime(self) -> bool {
        is_prime(self.0)
    }

    /// Reduce an arbitrary integer to its least nonnegative representative.
    pub fn residue(self, value: i64) -> Residue {
        let n = self.0 as i64;
        Residue {
            value: value.rem_euclid(n) as u64,
            modulus: self,
        }
    }

    /// Euler's totient of the modulus.
    pub fn totient(self) -> usize {
        (1..self.0).filter(|&a| gcd(a, self.0) == 1).count()
    }

    /// Product `a * b mod n` on raw representatives.
    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.0
    }
}

impl<'de> Deserialize<'de> for Modulus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = u64::deserialize(d)?;
        Modulus::new(n).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.0)
    }
}

/// A canonical residue `0 <= value < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value, self.modulus.0) == 1
    }

    pub fn mul(self, other: Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue {
            value: self.modulus.mul(self.value, other.value),
            modulus: self.modulus,
        }
    }

    pub fn neg(self) -> Residue {
        self.modulus.residue(-(self.value as i64))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Trial division; `n < 2` is not prime.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Residues coprime to `n`, ascending.
pub fn units(n: Modulus) -> Vec<Residue> {
    (1..n.0)
        .filter(|&a| gcd(a, n.0) == 1)
        .map(|a| Residue {
            value: a,
            modulus: n,
        })
        .collect()
}

/// Multiplication by the unit `u`, as a permutation of the symbols `0..2k`
/// (symbol `a - 1` stands for residue `a`).
pub fn mult_perm(u: Residue, n: Modulus) -> Result<Perm> {
    if u.modulus != n {
        return Err(Error::ShapeMismatch(format!(
            "residue over {} used with {}",
            u.modulus, n
        )));
    }
    if !u.is_unit() {
        return Err(Error::NotAUnit {
            value: u.value,
            modulus: n.0,
        });
    }
    let images = (1..n.0)
        .map(|a| (n.mul(u.value, a) - 1) as usize)
        .collect();
    Ok(Perm::from_images_unchecked(images))
}

/// `Aut(Z_n)` realized as permutations of the nonzero residues, in the order
/// of [`units`].
pub fn aut_group_perms(n: Modulus) -> Vec<Perm> {
    units(n)
        .into_iter()
        .map(|u| mult_perm(u, n).expect("units are units"))
        .collect()
}

/// A generator of the cyclic unit group for prime `n`.
pub fn primitive_root(n: Modulus) -> Option<u64> {
    let phi = n.totient() as u64;
    units(n).into_iter().map(Residue::value).find(|&g| {
        let mut x = 1;
        for e in 1..=phi {
            x = n.mul(x, g);
            if x == 1 {
                return e == phi;
            }
        }
        false
    })
}
