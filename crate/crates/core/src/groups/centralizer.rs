//! Centralizers of permutation groups inside the full symmetric group.
//!
//! Two independent routes: [`centralizer_in_sym`] scans all of `S_m`, and
//! [`centralizer_by_orbits`] searches only maps that are equivariant on each
//! generator orbit. The first is the oracle for the second at small degree.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::groups::{Perm, PermGroup};

/// Largest degree accepted by the brute-force scan (`9! = 362880`).
pub const MAX_BRUTE_FORCE_DEGREE: usize = 9;

/// `{σ ∈ S_m : σg = gσ for all g in gens}` by enumerating `S_m`.
pub fn centralizer_in_sym(gens: &[Perm], m: usize) -> Result<PermGroup> {
    if m > MAX_BRUTE_FORCE_DEGREE {
        return Err(Error::BudgetExceeded {
            requested: factorial(m),
            budget: factorial(MAX_BRUTE_FORCE_DEGREE),
        });
    }
    check_degree(gens, m)?;
    let mut found = Vec::new();
    for_each_permutation(m, |images| {
        let candidate = Perm::from_images_unchecked(images.to_vec());
        if gens.iter().all(|g| candidate.commutes_with(g)) {
            found.push(candidate);
        }
    });
    found.sort();
    PermGroup::from_elements(m, found)
}

/// Same group as [`centralizer_in_sym`], found by backtracking over images of
/// orbit representatives. Once `σ(x)` is chosen, `σ(g·x) = g·σ(x)` fixes `σ`
/// on the whole orbit of `x`, so the search tree has one level per orbit.
pub fn centralizer_by_orbits(gens: &[Perm], m: usize, budget: usize) -> Result<PermGroup> {
    check_degree(gens, m)?;
    let mut partial: Vec<Option<usize>> = vec![None; m];
    let mut used = vec![false; m];
    let mut found = Vec::new();
    search(gens, m, &mut partial, &mut used, &mut found, budget)?;
    found.sort();
    PermGroup::from_elements(m, found)
}

fn search(
    gens: &[Perm],
    m: usize,
    partial: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    found: &mut Vec<Perm>,
    budget: usize,
) -> Result<()> {
    let Some(x) = partial.iter().position(Option::is_none) else {
        if found.len() >= budget {
            return Err(Error::BudgetExceeded {
                requested: found.len() as u128 + 1,
                budget: budget as u128,
            });
        }
        found.push(Perm::from_images_unchecked(
            partial.iter().map(|v| v.unwrap()).collect(),
        ));
        return Ok(());
    };
    for y in 0..m {
        if used[y] {
            continue;
        }
        let mut assigned = Vec::new();
        if propagate(gens, x, y, partial, used, &mut assigned) {
            search(gens, m, partial, used, found, budget)?;
        }
        for a in assigned {
            used[partial[a].unwrap()] = false;
            partial[a] = None;
        }
    }
    Ok(())
}

/// Set `σ(x) = y` and extend along the orbit of `x`. Returns false on a
/// conflict; every assignment made is recorded in `assigned` for undo.
fn propagate(
    gens: &[Perm],
    x: usize,
    y: usize,
    partial: &mut [Option<usize>],
    used: &mut [bool],
    assigned: &mut Vec<usize>,
) -> bool {
    partial[x] = Some(y);
    used[y] = true;
    assigned.push(x);
    let mut queue = VecDeque::from([x]);
    while let Some(p) = queue.pop_front() {
        let sp = partial[p].unwrap();
        for g in gens {
            let (q, sq) = (g.apply(p), g.apply(sp));
            match partial[q] {
                Some(existing) if existing == sq => {}
                Some(_) => return false,
                None => {
                    if used[sq] {
                        return false;
                    }
                    partial[q] = Some(sq);
                    used[sq] = true;
                    assigned.push(q);
                    queue.push_back(q);
                }
            }
        }
    }
    true
}

fn check_degree(gens: &[Perm], m: usize) -> Result<()> {
    match gens.iter().find(|g| g.len() != m) {
        Some(g) => Err(Error::ShapeMismatch(format!(
            "generator on {} symbols, expected {m}",
            g.len()
        ))),
        None => Ok(()),
    }
}

fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

/// Visit every permutation of `0..m` (Heap's algorithm).
pub fn for_each_permutation(m: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..m).collect();
    let mut c = vec![0usize; m];
    f(&a);
    let mut i = 1;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::perm::centralizer_order_formula;
    use crate::ring::{aut_group_perms, Modulus};

    fn z(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn heap_visits_everything_once() {
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(5, |p| {
            assert!(seen.insert(p.to_vec()));
        });
        assert_eq!(seen.len(), 120);
        let mut count = 0;
        for_each_permutation(0, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn z5_centralizer_is_cyclic_of_order_four() {
        let mut c = centralizer_in_sym(&aut_group_perms(z(5)), 4).unwrap();
        assert_eq!(c.order(100).unwrap(), 4);
        assert!(c.is_transitive());
        assert!(c.elements().unwrap().iter().any(|p| p.order() == 4));
    }

    #[test]
    fn identity_centralizer_is_everything() {
        let mut c = centralizer_in_sym(&[Perm::identity(4)], 4).unwrap();
        assert_eq!(c.order(100).unwrap(), 24);
        let mut c = centralizer_in_sym(&[], 3).unwrap();
        assert_eq!(c.order(100).unwrap(), 6);
    }

    #[test]
    fn z9_centralizer() {
        let mut c = centralizer_in_sym(&aut_group_perms(z(9)), 8).unwrap();
        assert_eq!(c.order(1000).unwrap(), 12);
        // symbols are residue - 1: {1,2,4,5,7,8} and {3,6}
        assert_eq!(c.orbits(), vec![vec![0, 1, 3, 4, 6, 7], vec![2, 5]]);
        assert!(!c.is_transitive());
    }

    #[test]
    fn too_large_for_brute_force() {
        assert!(matches!(
            centralizer_in_sym(&[Perm::identity(10)], 10),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(centralizer_in_sym(&[Perm::identity(3)], 4).is_err());
    }

    #[test]
    fn orbit_route_matches_brute_force_on_unit_groups() {
        for n in [3, 5, 7, 9] {
            let gens = aut_group_perms(z(n));
            let m = z(n).two_k();
            let brute = centralizer_in_sym(&gens, m).unwrap();
            let fast = centralizer_by_orbits(&gens, m, 1_000_000).unwrap();
            assert_eq!(brute.elements(), fast.elements(), "Z_{n}");
        }
    }

    #[test]
    fn orbit_route_matches_brute_force_on_all_of_s5() {
        for_each_permutation(5, |images| {
            let s = Perm::new(images.to_vec()).unwrap();
            let brute = centralizer_in_sym(std::slice::from_ref(&s), 5).unwrap();
            let fast = centralizer_by_orbits(std::slice::from_ref(&s), 5, 1000).unwrap();
            assert_eq!(brute.elements(), fast.elements());
            assert_eq!(
                brute.elements().unwrap().len() as u128,
                centralizer_order_formula(&s.cycle_type()).unwrap()
            );
        });
    }

    #[test]
    fn z15_centralizer_beyond_brute_force() {
        // orbits of the units on nonzero residues: units (8), multiples of 3
        // (4) and of 5 (2); distinct sizes so the centralizer is the product
        // of the three regular quotients.
        let mut c = centralizer_by_orbits(&aut_group_perms(z(15)), 14, 1_000_000).unwrap();
        assert_eq!(c.order(1_000_000).unwrap(), 64);
        let sizes: Vec<usize> = c.orbits().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![8, 4, 2]);
        assert!(c.is_abelian());
    }

    #[test]
    fn centralizer_elements_commute() {
        let gens = aut_group_perms(z(9));
        let c = centralizer_by_orbits(&gens, 8, 1000).unwrap();
        for e in c.elements().unwrap() {
            assert!(gens.iter().all(|g| e.commutes_with(g)));
        }
    }
}
