//! The automorphism group of a critical multi-cubic lattice,
//! `Aut(M) ≅ C_{S_2k}(Aut(Z_{2k+1})) ≀ S_I`, and its action on atoms.

use crate::error::Result;
use crate::groups::centralizer::centralizer_by_orbits;
use crate::groups::{Perm, PermGroup, WreathElement};
use crate::lattice::Mcl;
use crate::ring::{aut_group_perms, units, Modulus};

/// Budget for the orbit-backtracking centralizer search.
const CENTRALIZER_BUDGET: usize = 1_000_000;

/// `C_{S_2k}(Aut(Z_n))`, the permutations of the nonzero residues commuting
/// with every unit multiplication.
pub fn base_centralizer(modulus: Modulus) -> Result<PermGroup> {
    centralizer_by_orbits(&aut_group_perms(modulus), modulus.two_k(), CENTRALIZER_BUDGET)
}

/// Generators of `Aut(M)`: each centralizer generator placed at each index,
/// plus the adjacent index transpositions.
pub fn aut_group_of_m(mcl: &Mcl) -> Result<Vec<WreathElement>> {
    let c = base_centralizer(mcl.modulus())?;
    let n = mcl.indices();
    let d = mcl.modulus().two_k();
    let mut gens = Vec::new();
    for i in 0..n {
        for g in c.generators() {
            gens.push(WreathElement::at_index(g.clone(), i, n)?);
        }
    }
    for i in 1..n {
        gens.push(WreathElement::index_perm(Perm::transposition(n, i - 1, i)?, d));
    }
    if gens.is_empty() {
        gens.push(WreathElement::identity(d, n));
    }
    Ok(gens)
}

/// The permutation of atom indices (see [`Mcl::atom_index`]) induced by `w`.
pub fn atom_action(w: &WreathElement, mcl: &Mcl) -> Result<Perm> {
    let atoms = mcl.atoms()?;
    let mut images = vec![0; atoms.len()];
    for (i, a) in atoms.iter().enumerate() {
        images[i] = mcl.atom_index(&w.act(a)?)?;
    }
    Perm::new(images)
}

/// The group generated by `gens`, as permutations of the atoms.
pub fn action_group(gens: &[WreathElement], mcl: &Mcl) -> Result<PermGroup> {
    let perms = gens
        .iter()
        .map(|w| atom_action(w, mcl))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::from_generators(mcl.atom_count()? as usize, perms)
}

/// Center of the atom action of the group generated by `gens`, found by
/// enumerating at most `budget` elements.
pub fn center_of_action(gens: &[WreathElement], mcl: &Mcl, budget: usize) -> Result<PermGroup> {
    let mut g = action_group(gens, mcl)?;
    let center = g.center(budget)?;
    PermGroup::from_elements(g.degree(), center)
}

/// The global scalar multiplications `m ↦ u·m`, one per unit, on atoms.
pub fn unit_action(mcl: &Mcl) -> Result<Vec<Perm>> {
    let atoms = mcl.atoms()?;
    units(mcl.modulus())
        .into_iter()
        .map(|u| {
            let images = atoms
                .iter()
                .map(|a| mcl.atom_index(&a.scalar_mul(u)?))
                .collect::<Result<Vec<_>>>()?;
            Perm::new(images)
        })
        .collect()
}

pub fn is_transitive_on_atoms(gens: &[WreathElement], mcl: &Mcl) -> Result<bool> {
    Ok(action_group(gens, mcl)?.is_transitive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::perm::DEFAULT_GROUP_BUDGET;
    use crate::groups::wreath_order;

    fn mcl(n: u64, i: usize) -> Mcl {
        Mcl::new(Modulus::new(n).unwrap(), i).unwrap()
    }

    fn generated_order(n: u64, i: usize) -> usize {
        let l = mcl(n, i);
        let gens = aut_group_of_m(&l).unwrap();
        action_group(&gens, &l)
            .unwrap()
            .order(DEFAULT_GROUP_BUDGET)
            .unwrap()
    }

    #[test]
    fn generated_orders() {
        assert_eq!(generated_order(5, 2), 32);
        assert_eq!(generated_order(3, 2), 8);
        assert_eq!(generated_order(9, 1), 12);
        assert_eq!(generated_order(3, 3), 48);
        assert_eq!(generated_order(7, 1), 6);
    }

    #[test]
    fn order_matches_wreath_formula() {
        for (n, i) in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 2), (9, 1), (9, 2)] {
            let c = base_centralizer(Modulus::new(n).unwrap())
                .unwrap()
                .elements()
                .unwrap()
                .len();
            let expected = wreath_order(c as u128, i).unwrap();
            assert_eq!(generated_order(n, i) as u128, expected, "Z_{n}, |I|={i}");
        }
    }

    #[test]
    fn generators_preserve_atoms_coatoms_and_commute_with_units() {
        for (n, i) in [(5, 2), (9, 1), (3, 2), (15, 1)] {
            let l = mcl(n, i);
            for w in aut_group_of_m(&l).unwrap() {
                for c in l.coatoms().unwrap() {
                    let img = w.act(&c).unwrap();
                    assert!(img.is_coatom());
                    for u in units(l.modulus()) {
                        assert_eq!(
                            w.act(&c.scalar_mul(u).unwrap()).unwrap(),
                            img.scalar_mul(u).unwrap()
                        );
                    }
                }
                for a in l.atoms().unwrap() {
                    assert!(w.act(&a).unwrap().is_atom());
                }
            }
        }
    }

    #[test]
    fn transitivity_iff_prime() {
        for n in [3, 5, 7, 9, 15] {
            for i in [1, 2] {
                let l = mcl(n, i);
                let gens = aut_group_of_m(&l).unwrap();
                assert_eq!(
                    is_transitive_on_atoms(&gens, &l).unwrap(),
                    Modulus::new(n).unwrap().is_prime(),
                    "Z_{n}, |I|={i}"
                );
            }
        }
    }

    #[test]
    fn centers() {
        let l = mcl(5, 2);
        let c = center_of_action(&aut_group_of_m(&l).unwrap(), &l, DEFAULT_GROUP_BUDGET).unwrap();
        let mut got = c.elements().unwrap().to_vec();
        let mut units = unit_action(&l).unwrap();
        got.sort();
        units.sort();
        assert_eq!(got, units);

        let l = mcl(3, 1);
        let c = center_of_action(&aut_group_of_m(&l).unwrap(), &l, 100).unwrap();
        assert_eq!(c.elements().unwrap().len(), 2);
        assert!(c.elements().unwrap().contains(&Perm::new(vec![1, 0]).unwrap()));

        // cyclic case: the whole group is central
        let l = mcl(7, 1);
        let gens = aut_group_of_m(&l).unwrap();
        let c = center_of_action(&gens, &l, 100).unwrap();
        assert_eq!(c.elements().unwrap().len(), 6);
    }
}
