//! Named property checks over one configuration `(modulus, |I|)`.
//!
//! Each suite returns a list of [`Check`]s. A report passes when every check
//! that ran passed; checks that do not apply to the configuration, or would
//! exceed its budget, are reported as skipped with a reason.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::centralizer::{centralizer_in_sym, for_each_permutation, MAX_BRUTE_FORCE_DEGREE};
use crate::groups::perm::DEFAULT_GROUP_BUDGET;
use crate::groups::{
    action_group, aut_group_of_m, base_centralizer, centralizer_order_formula, unit_action,
    wreath_order, Perm, WreathElement,
};
use crate::lattice::{Mcl, MclElement};
use crate::representation::{
    algebra_contains, at_factor, clock_matrix, coatom_projections, commutant_dimension,
    fourier_h, matrix_units, primitive_root_conjugator, proj_element, projection_meet,
    qft_matrix, rho_at_index, rho_wreath, shift_matrix, span_closure, CMatrix, Tolerance,
};
use crate::ring::{aut_group_perms, units, Modulus};

/// Element counts up to which pairwise / triple-wise scans run.
const PAIR_LIMIT: usize = 2_000;
const TRIPLE_LIMIT: usize = 130;
/// Largest Hilbert-space dimension for the matrix suites.
const REP_DIM_LIMIT: usize = 32;
const GENERATION_DIM_LIMIT: usize = 16;
/// Random pairs per randomized representation check.
const RANDOM_PAIRS: usize = 100;

#[derive(Debug, Clone)]
pub struct Config {
    pub modulus: Modulus,
    pub indices: usize,
    pub tolerance: Tolerance,
    pub budget: u128,
    pub seed: u64,
}

impl Config {
    pub fn new(modulus: Modulus, indices: usize) -> Result<Self> {
        Mcl::new(modulus, indices)?;
        Ok(Config {
            modulus,
            indices,
            tolerance: Tolerance::SPAN,
            budget: crate::lattice::DEFAULT_BUDGET,
            seed: 0,
        })
    }

    pub fn mcl(&self) -> Mcl {
        Mcl::new(self.modulus, self.indices)
            .expect("validated in Config::new")
            .with_budget(self.budget)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub check: String,
    pub status: Status,
    pub measured: Value,
    pub expected: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn new(suite: &'static str, name: impl Into<String>, ok: bool, measured: Value, expected: Value) -> Self {
        Check {
            suite,
            check: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured,
            expected,
            tolerance: None,
            note: None,
        }
    }

    fn skipped(suite: &'static str, name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            suite,
            check: name.into(),
            status: Status::Skipped,
            measured: Value::Null,
            expected: Value::Null,
            tolerance: None,
            note: Some(reason.into()),
        }
    }

    fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = Some(tol);
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// A universally quantified law: passes with zero counterexamples, and
    /// otherwise records the first one.
    fn law(
        suite: &'static str,
        name: impl Into<String>,
        cases: usize,
        first_failure: Option<String>,
        failures: usize,
    ) -> Self {
        let c = Check::new(
            suite,
            name,
            failures == 0,
            json!({ "cases": cases, "failures": failures }),
            json!({ "failures": 0 }),
        );
        match first_failure {
            Some(f) => c.with_note(format!("counterexample: {f}")),
            None => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Lattice,
    Delta,
    Implication,
    Groups,
    Representation,
    Generation,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Lattice,
        Suite::Delta,
        Suite::Implication,
        Suite::Groups,
        Suite::Representation,
        Suite::Generation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Lattice => "lattice",
            Suite::Delta => "delta",
            Suite::Implication => "implication",
            Suite::Groups => "groups",
            Suite::Representation => "representation",
            Suite::Generation => "generation",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|suite| suite.name() == s)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check == name)
    }

    /// One JSON object per check, then a summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&serde_json::to_string(c).expect("serializable"));
            out.push('\n');
        }
        let summary = json!({
            "suite": self.suite,
            "summary": {
                "status": if self.passed() { "pass" } else { "fail" },
                "passed": self.count(Status::Pass),
                "failed": self.count(Status::Fail),
                "skipped": self.count(Status::Skipped),
            }
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

pub fn run(cfg: &Config, suite: Suite) -> Result<VerificationReport> {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in suites {
        checks.extend(match s {
            Suite::Lattice => lattice_checks(cfg)?,
            Suite::Delta => delta_checks(cfg)?,
            Suite::Implication => implication_checks(cfg)?,
            Suite::Groups => group_checks(cfg)?,
            Suite::Representation => representation_checks(cfg)?,
            Suite::Generation => generation_checks(cfg)?,
            Suite::All => unreachable!(),
        });
    }
    Ok(VerificationReport {
        suite: suite.name().to_string(),
        checks,
    })
}

/// Count cases and failures of a predicate, keeping the first failure.
struct Tally {
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    fn into_check(self, suite: &'static str, name: &str) -> Check {
        Check::law(suite, name, self.cases, self.first, self.failures)
    }
}

fn elements_within(mcl: &Mcl, limit: usize) -> Option<Vec<MclElement>> {
    let count = (mcl.modulus().get() as u128).checked_pow(mcl.indices() as u32)?;
    if count + 1 > limit as u128 || count > mcl.budget() {
        return None;
    }
    mcl.elements_with_bottom().ok()
}

// ---------------------------------------------------------------- lattice

fn lattice_checks(cfg: &Config) -> Result<Vec<Check>> {
    const S: &str = "lattice";
    let mcl = cfg.mcl();
    let mut out = Vec::new();

    let two_k = cfg.modulus.two_k() as u128;
    let expected_atoms = two_k.checked_pow(cfg.indices as u32).ok_or(Error::Overflow)?;
    match mcl.atoms() {
        Ok(atoms) => out.push(Check::new(
            S,
            "atom_count",
            atoms.len() as u128 == expected_atoms,
            json!(atoms.len()),
            json!(expected_atoms),
        )),
        Err(e) => out.push(Check::skipped(S, "atom_count", e.to_string())),
    }
    let coatoms = mcl.coatoms()?;
    out.push(Check::new(
        S,
        "coatom_count",
        coatoms.len() == cfg.modulus.two_k() * cfg.indices,
        json!(coatoms.len()),
        json!(cfg.modulus.two_k() * cfg.indices),
    ));

    let Some(elems) = elements_within(&mcl, PAIR_LIMIT) else {
        for name in ["order_laws", "meet_join_laws", "absorption", "atomistic", "coatomistic"] {
            out.push(Check::skipped(S, name, "too many elements for exhaustive scan"));
        }
        return Ok(out);
    };

    let mut reflexive = Tally::new();
    let mut antisym = Tally::new();
    let mut commut = Tally::new();
    let mut idem = Tally::new();
    let mut absorb = Tally::new();
    let mut bounds = Tally::new();
    let mut by_proj = Tally::new();
    for a in &elems {
        reflexive.record(a.leq(a)?, || a.to_string());
        idem.record(a.meet(a)? == *a && a.join(a)? == *a, || a.to_string());
        for b in &elems {
            let (ab, ba) = (a.leq(b)?, b.leq(a)?);
            antisym.record(!(ab && ba) || a == b, || format!("{a}, {b}"));
            let (m, j) = (a.meet(b)?, a.join(b)?);
            commut.record(m == b.meet(a)? && j == b.join(a)?, || format!("{a}, {b}"));
            absorb.record(a.join(&m)? == *a && a.meet(&j)? == *a, || format!("{a}, {b}"));
            bounds.record(
                m.leq(a)? && m.leq(b)? && a.leq(&j)? && b.leq(&j)?,
                || format!("{a}, {b}"),
            );
            if ab && !a.is_bottom() {
                let free: BTreeSet<usize> = b.sigma().difference(&a.sigma()).copied().collect();
                by_proj.record(a.proj(&free)? == *b, || format!("{a} <= {b}"));
            }
        }
    }
    out.push(reflexive.into_check(S, "order_reflexive"));
    out.push(antisym.into_check(S, "order_antisymmetric"));
    out.push(idem.into_check(S, "meet_join_idempotent"));
    out.push(commut.into_check(S, "meet_join_commutative"));
    out.push(absorb.into_check(S, "absorption"));
    out.push(bounds.into_check(S, "meet_below_join_above"));
    out.push(by_proj.into_check(S, "order_by_projections"));

    if elems.len() <= TRIPLE_LIMIT {
        let mut trans = Tally::new();
        let mut assoc = Tally::new();
        let mut glb = Tally::new();
        for a in &elems {
            for b in &elems {
                let m = a.meet(b)?;
                let j = a.join(b)?;
                for c in &elems {
                    if a.leq(b)? && b.leq(c)? {
                        trans.record(a.leq(c)?, || format!("{a}, {b}, {c}"));
                    }
                    assoc.record(
                        m.meet(c)? == a.meet(&b.meet(c)?)? && j.join(c)? == a.join(&b.join(c)?)?,
                        || format!("{a}, {b}, {c}"),
                    );
                    // greatest lower / least upper bound
                    let lower = c.leq(a)? && c.leq(b)?;
                    let upper = a.leq(c)? && b.leq(c)?;
                    glb.record(
                        (!lower || c.leq(&m)?) && (!upper || j.leq(c)?),
                        || format!("{a}, {b}, {c}"),
                    );
                }
            }
        }
        out.push(trans.into_check(S, "order_transitive"));
        out.push(assoc.into_check(S, "meet_join_associative"));
        out.push(glb.into_check(S, "meet_glb_join_lub"));
    } else {
        for name in ["order_transitive", "meet_join_associative", "meet_glb_join_lub"] {
            out.push(Check::skipped(S, name, "too many elements for triple scan"));
        }
    }

    let mut atomistic = Tally::new();
    let mut coatomistic = Tally::new();
    for m in elems.iter().filter(|m| !m.is_bottom()) {
        let below = m.atoms_below(mcl.budget())?;
        let j = below
            .iter()
            .try_fold(mcl.bottom(), |acc, a| acc.join(a))?;
        atomistic.record(j == *m, || m.to_string());
        let above = m.coatoms_above()?;
        let meet = above.iter().try_fold(mcl.top(), |acc, c| acc.meet(c))?;
        coatomistic.record(
            meet == *m && above.len() == m.specified().len(),
            || m.to_string(),
        );
    }
    out.push(atomistic.into_check(S, "atomistic"));
    out.push(coatomistic.into_check(S, "coatomistic"));

    let mut scalar = Tally::new();
    for u in units(cfg.modulus) {
        for a in &elems {
            for b in &elems {
                let lhs = a.meet(b)?.scalar_mul(u)?;
                let rhs = a.scalar_mul(u)?.meet(&b.scalar_mul(u)?)?;
                let lj = a.join(b)?.scalar_mul(u)?;
                let rj = a.scalar_mul(u)?.join(&b.scalar_mul(u)?)?;
                scalar.record(lhs == rhs && lj == rj, || format!("u={u}, {a}, {b}"));
            }
        }
    }
    out.push(scalar.into_check(S, "scalar_mul_is_lattice_automorphism"));

    out.push(signed_set_check(&elems)?);
    Ok(out)
}

fn signed_set_check(elems: &[MclElement]) -> Result<Check> {
    const S: &str = "lattice";
    let name = "cubic_signed_set_anti_isomorphism";
    let Some(first) = elems.first() else {
        return Ok(Check::skipped(S, name, "no elements"));
    };
    if first.modulus().get() != 3 {
        return Ok(Check::skipped(S, name, "signed sets apply at modulus 3 only"));
    }
    let faces: Vec<&MclElement> = elems.iter().filter(|m| !m.is_bottom()).collect();
    let mut t = Tally::new();
    let mut images = BTreeSet::new();
    for m in &faces {
        let (p, n) = m.to_signed_set()?;
        t.record(p.is_disjoint(&n), || format!("{m} not disjoint"));
        images.insert((p, n));
    }
    // bijective onto disjoint signed pairs: there are 3^|I| of them
    let expected = 3usize.pow(first.len() as u32);
    t.record(images.len() == faces.len() && faces.len() == expected, || {
        format!("{} distinct images of {} faces", images.len(), faces.len())
    });
    for a in &faces {
        let (ap, an) = a.to_signed_set()?;
        for b in &faces {
            let (bp, bn) = b.to_signed_set()?;
            let reversed = bp.is_subset(&ap) && bn.is_subset(&an);
            t.record(a.leq(b)? == reversed, || format!("{a}, {b}"));
        }
    }
    Ok(t.into_check(S, name))
}

// ---------------------------------------------------------------- delta

/// `2Γ(b) - Γ(a)` on the specified coordinates of `a`, `X` elsewhere,
/// computed from the representatives without going through `delta`.
fn delta_by_formula(b: &MclElement, a: &MclElement) -> Result<MclElement> {
    let n = a.modulus().get() as i64;
    let (gb, ga) = (b.gamma(), a.gamma());
    let values: Vec<Option<u64>> = a
        .entries()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            e.value()
                .map(|_| (2 * gb[i] as i64 - ga[i] as i64).rem_euclid(n) as u64)
        })
        .collect();
    MclElement::from_values(a.modulus(), &values)
}

fn delta_checks(cfg: &Config) -> Result<Vec<Check>> {
    const S: &str = "delta";
    let mcl = cfg.mcl();
    let Some(all) = elements_within(&mcl, TRIPLE_LIMIT) else {
        return Ok(vec![Check::skipped(S, "delta_laws", "too many elements for triple scan")]);
    };
    let elems: Vec<MclElement> = all.into_iter().filter(|m| !m.is_bottom()).collect();
    let mut items: Vec<Tally> = (0..7).map(|_| Tally::new()).collect();
    let mut complement = Tally::new();
    let mut scalar = Tally::new();
    let unit_list = units(cfg.modulus);
    for b in &elems {
        for a in elems.iter().filter(|a| a.leq(b).unwrap()) {
            let d = b.delta(a)?;
            items[1].record(d.leq(b)?, || format!("b={b}, a={a}"));
            items[2].record(d == delta_by_formula(b, a)?, || format!("b={b}, a={a}"));
            items[3].record(b.delta(&d)? == *a, || format!("b={b}, a={a}"));
            items[5].record((d == *b) == (a == b), || format!("b={b}, a={a}"));
            if a != b {
                // Δ(b,a) = b, or Δ(b,a) and b have no common lower bound
                let incompatible = !d.meet_compatible(b)?;
                items[6].record(d == *b || incompatible, || format!("b={b}, a={a}, Δ={d}"));
                complement.record(
                    d.meet(a)?.is_bottom() && d.join(a)? == *b,
                    || format!("b={b}, a={a}, Δ={d}"),
                );
            }
            for &u in &unit_list {
                scalar.record(
                    b.scalar_mul(u)?.delta(&a.scalar_mul(u)?)? == d.scalar_mul(u)?,
                    || format!("u={u}, b={b}, a={a}"),
                );
            }
            for c in elems.iter().filter(|c| b.leq(c).unwrap()) {
                items[4].record(c.delta(a)?.leq(&c.delta(b)?)?, || {
                    format!("a={a}, b={b}, c={c}")
                });
            }
        }
        items[0].record(b.delta(b)? == *b, || b.to_string());
    }
    let names = [
        "delta_item1_identity_on_diagonal",
        "delta_item2_below_b",
        "delta_item3_two_b_minus_a",
        "delta_item4_involution",
        "delta_item5_order_preserving",
        "delta_item6_fixed_iff_equal",
        "delta_item7_equal_or_meet_incompatible_with_b",
    ];
    let mut out: Vec<Check> = items
        .into_iter()
        .zip(names)
        .map(|(t, name)| t.into_check(S, name))
        .collect();
    out.push(
        complement
            .into_check(S, "delta_relative_complement")
            .with_note_if_pass("for a < b: Δ(b,a) ∧ a = ⊥ and Δ(b,a) ∨ a = b"),
    );
    out.push(scalar.into_check(S, "delta_commutes_with_units"));
    Ok(out)
}

impl Check {
    fn with_note_if_pass(self, note: &str) -> Self {
        if self.status == Status::Pass {
            self.with_note(note)
        } else {
            self
        }
    }
}

// ---------------------------------------------------------------- implication

fn implication_checks(cfg: &Config) -> Result<Vec<Check>> {
    const S: &str = "implication";
    let mcl = cfg.mcl();
    let Some(all) = elements_within(&mcl, TRIPLE_LIMIT) else {
        return Ok(vec![Check::skipped(S, "implication_axioms", "too many elements for triple scan")]);
    };
    let elems: Vec<MclElement> = all.into_iter().filter(|m| !m.is_bottom()).collect();
    let mut ax1 = Tally::new();
    let mut ax2 = Tally::new();
    let mut ax3 = Tally::new();
    let mut well_defined = Tally::new();
    for a in &elems {
        for b in &elems {
            let ab = a.implies(b)?;
            ax1.record(ab.implies(a)? == *a, || format!("a={a}, b={b}"));
            ax2.record(ab.implies(b)? == b.implies(a)?.implies(a)?, || {
                format!(
                    "a={a}, b={b}: (a→b)→b = {}, (b→a)→a = {}",
                    ab.implies(b).unwrap(),
                    b.implies(a).unwrap().implies(a).unwrap()
                )
            });
            // b → a depends on a only through Γ(a) and σ(a), and on b only
            // through σ(b): any b' with the same X-set gives the same result
            let relabeled_b = b.scalar_mul(cfg.modulus.residue(-1))?;
            well_defined.record(relabeled_b.implies(a)? == b.implies(a)?, || {
                format!("a={a}, b={b}")
            });
            for c in &elems {
                ax3.record(
                    a.implies(&b.implies(c)?)? == b.implies(&a.implies(c)?)?,
                    || format!("a={a}, b={b}, c={c}"),
                );
            }
        }
    }
    Ok(vec![
        ax1.into_check(S, "abbott_axiom1_contraction"),
        ax2.into_check(S, "abbott_axiom2_quasi_commutative"),
        ax3.into_check(S, "abbott_axiom3_exchange"),
        well_defined.into_check(S, "implication_well_defined"),
    ])
}

// ---------------------------------------------------------------- groups

fn random_aut_element(
    rng: &mut ChaCha8Rng,
    centralizer: &[Perm],
    indices: usize,
) -> WreathElement {
    let base = (0..indices)
        .map(|_| centralizer[rng.gen_range(0..centralizer.len())].clone())
        .collect();
    let mut top: Vec<usize> = (0..indices).collect();
    top.shuffle(rng);
    WreathElement::new(base, Perm::new(top).expect("shuffled identity")).expect("shapes agree")
}

fn group_checks(cfg: &Config) -> Result<Vec<Check>> {
    const S: &str = "groups";
    let mcl = cfg.mcl();
    let mut out = Vec::new();
    let m = cfg.modulus.two_k();
    let centralizer = base_centralizer(cfg.modulus)?;
    let c_elems = centralizer.elements().expect("enumerated").to_vec();

    if m <= MAX_BRUTE_FORCE_DEGREE {
        let brute = centralizer_in_sym(&aut_group_perms(cfg.modulus), m)?;
        out.push(Check::new(
            S,
            "centralizer_routes_agree",
            brute.elements() == centralizer.elements(),
            json!(c_elems.len()),
            json!(brute.elements().map_or(0, <[Perm]>::len)),
        ));
    } else {
        out.push(Check::skipped(
            S,
            "centralizer_routes_agree",
            format!("S_{m} too large for brute force"),
        ));
    }

    // Centralizer order is the product over the cycle types of the units
    // only when one unit generates Aut(Z_n); the check is therefore run on
    // every permutation of a small symmetric group instead.
    let degree = m.min(6);
    let mut formula = Tally::new();
    for_each_permutation(degree, |images| {
        let s = Perm::new(images.to_vec()).expect("permutation");
        let brute = centralizer_in_sym(std::slice::from_ref(&s), degree)
            .map(|g| g.elements().map_or(0, <[Perm]>::len) as u128);
        let f = centralizer_order_formula(&s.cycle_type());
        formula.record(matches!((&brute, &f), (Ok(x), Ok(y)) if x == y), || {
            format!("{s:?}: brute {brute:?}, formula {f:?}")
        });
    });
    out.push(formula.into_check(S, &format!("centralizer_order_formula_s{degree}")));

    let orbit_sizes: Vec<usize> = centralizer.orbits().iter().map(Vec::len).collect();
    out.push(Check::new(
        S,
        "centralizer_transitive_iff_prime",
        centralizer.is_transitive() == cfg.modulus.is_prime(),
        json!({ "order": c_elems.len(), "orbit_sizes": orbit_sizes, "transitive": centralizer.is_transitive() }),
        json!({ "transitive": cfg.modulus.is_prime() }),
    ));

    let gens = aut_group_of_m(&mcl)?;
    let atoms = match mcl.atoms() {
        Ok(a) => a,
        Err(e) => {
            out.push(Check::skipped(S, "aut_action", e.to_string()));
            return Ok(out);
        }
    };
    let coatoms = mcl.coatoms()?;
    let mut preserve = Tally::new();
    for w in &gens {
        for a in &atoms {
            preserve.record(w.act(a)?.is_atom(), || format!("{w:?} on {a}"));
        }
        for c in &coatoms {
            preserve.record(w.act(c)?.is_coatom(), || format!("{w:?} on {c}"));
            for u in units(cfg.modulus) {
                preserve.record(
                    w.act(&c.scalar_mul(u)?)? == w.act(c)?.scalar_mul(u)?,
                    || format!("{w:?}, u={u}, {c}"),
                );
            }
        }
    }
    out.push(preserve.into_check(S, "aut_preserves_atoms_coatoms_and_units"));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut hom = Tally::new();
    for _ in 0..RANDOM_PAIRS {
        let w1 = random_aut_element(&mut rng, &c_elems, cfg.indices);
        let w2 = random_aut_element(&mut rng, &c_elems, cfg.indices);
        let w12 = w1.compose(&w2)?;
        let probe = &atoms[rng.gen_range(0..atoms.len())];
        let coatom = &coatoms[rng.gen_range(0..coatoms.len())];
        for m in [probe, coatom] {
            hom.record(w12.act(m)? == w1.act(&w2.act(m)?)?, || {
                format!("{w1:?} * {w2:?} on {m}")
            });
        }
    }
    out.push(hom.into_check(S, "wreath_action_is_homomorphism"));

    let mut action = action_group(&gens, &mcl)?;
    let transitive = action.is_transitive();
    out.push(Check::new(
        S,
        "aut_transitive_on_atoms_iff_prime",
        transitive == cfg.modulus.is_prime(),
        json!(transitive),
        json!(cfg.modulus.is_prime()),
    ));

    let expected_order = wreath_order(c_elems.len() as u128, cfg.indices)?;
    if expected_order > DEFAULT_GROUP_BUDGET as u128 {
        out.push(Check::skipped(
            S,
            "aut_order",
            format!("order {expected_order} exceeds enumeration budget"),
        ));
        out.push(Check::skipped(S, "aut_center", "group not enumerable"));
        return Ok(out);
    }
    let order = action.order(DEFAULT_GROUP_BUDGET)?;
    out.push(Check::new(
        S,
        "aut_order",
        order as u128 == expected_order,
        json!(order),
        json!(expected_order),
    ));

    let mut center = action.center(DEFAULT_GROUP_BUDGET)?;
    let mut unit_maps = unit_action(&mcl)?;
    center.sort();
    unit_maps.sort();
    unit_maps.dedup();
    let contained = unit_maps.iter().all(|u| center.binary_search(u).is_ok());
    out.push(Check::new(
        S,
        "aut_center_contains_unit_group",
        contained,
        json!({ "center_order": center.len(), "unit_maps": unit_maps.len() }),
        json!({ "contained": true }),
    ));
    if cfg.modulus.is_prime() {
        out.push(Check::new(
            S,
            "aut_center_is_unit_group",
            center == unit_maps,
            json!(center.len()),
            json!(unit_maps.len()),
        ));
    } else {
        // the centralizer at a composite modulus is abelian and larger than
        // the unit group, so its diagonal is central too
        out.push(Check::skipped(
            S,
            "aut_center_is_unit_group",
            format!(
                "equality holds at prime moduli only; here |Z| = {} and {} unit maps",
                center.len(),
                unit_maps.len()
            ),
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------- representation

fn representation_checks(cfg: &Config) -> Result<Vec<Check>> {
    const S: &str = "representation";
    let mcl = cfg.mcl();
    let mut out = Vec::new();
    let d = cfg.modulus.two_k();

    let mut unitary = Vec::new();
    let mut diag_err = Vec::new();
    for dd in [2, 4, 6, 8, 10] {
        let (x, c, u) = (shift_matrix(dd)?, clock_matrix(dd)?, qft_matrix(dd)?);
        unitary.push(x.unitarity_defect().max(c.unitarity_defect()).max(u.unitarity_defect()));
        diag_err.push((&(&u.adjoint() * &x) * &u).distance(&c));
    }
    let worst = unitary.iter().copied().fold(0.0, f64::max);
    out.push(
        Check::new(S, "pauli_unitarity", worst < 1e-10, json!(worst), json!(0.0))
            .with_tolerance(1e-10),
    );
    let worst = diag_err.iter().copied().fold(0.0, f64::max);
    out.push(
        Check::new(S, "qft_diagonalizes_shift", worst < 1e-9, json!(diag_err), json!(0.0))
            .with_tolerance(1e-9),
    );

    let n = mcl.atom_count()? as usize;
    if n > REP_DIM_LIMIT {
        out.push(Check::skipped(
            S,
            "representation_matrices",
            format!("dimension {n} above {REP_DIM_LIMIT}"),
        ));
        return Ok(out);
    }

    // ρ homomorphism and coatom equivariance on random pairs
    let c_elems = base_centralizer(cfg.modulus)?.elements().expect("enumerated").to_vec();
    let coatoms = mcl.coatoms()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut hom_err = 0.0f64;
    let mut equiv_err = 0.0f64;
    let mut unit_err = 0.0f64;
    for _ in 0..RANDOM_PAIRS {
        let w1 = random_aut_element(&mut rng, &c_elems, cfg.indices);
        let w2 = random_aut_element(&mut rng, &c_elems, cfg.indices);
        let (r1, r2) = (rho_wreath(&w1, &mcl)?, rho_wreath(&w2, &mcl)?);
        hom_err = hom_err.max(rho_wreath(&w1.compose(&w2)?, &mcl)?.distance(&(&r1 * &r2)));
        unit_err = unit_err.max(r1.unitarity_defect());
        let c = &coatoms[rng.gen_range(0..coatoms.len())];
        let lhs = &(&r1 * &proj_element(&mcl, c)?) * &r1.adjoint();
        equiv_err = equiv_err.max(lhs.distance(&proj_element(&mcl, &w1.act(c)?)?));
    }
    out.push(
        Check::new(S, "rho_unitary", unit_err < 1e-10, json!(unit_err), json!(0.0))
            .with_tolerance(1e-10),
    );
    out.push(
        Check::new(S, "rho_homomorphism", hom_err < 1e-12, json!(hom_err), json!(0.0))
            .with_tolerance(1e-12),
    );
    out.push(
        Check::new(S, "rho_coatom_equivariance", equiv_err < 1e-12, json!(equiv_err), json!(0.0))
            .with_tolerance(1e-12),
    );

    // the embedding M → projections preserves order and meets
    if let Some(elems) = elements_within(&mcl, TRIPLE_LIMIT) {
        let projs: Vec<CMatrix> = elems
            .iter()
            .map(|m| proj_element(&mcl, m))
            .collect::<Result<_>>()?;
        let mut t = Tally::new();
        for (a, pa) in elems.iter().zip(&projs) {
            for (b, pb) in elems.iter().zip(&projs) {
                let below = (pa * pb).approx_eq(pa, 1e-12);
                let meet = proj_element(&mcl, &a.meet(b)?)?;
                t.record(below == a.leq(b)? && (pa * pb).approx_eq(&meet, 1e-12), || {
                    format!("{a}, {b}")
                });
            }
        }
        out.push(t.into_check(S, "projection_embedding"));
    }

    let mut mu_err = 0.0f64;
    for alpha in 0..cfg.indices {
        mu_err = mu_err.max(matrix_unit_defect(&matrix_units(alpha, &mcl)?, n));
    }
    out.push(
        Check::new(S, "matrix_unit_relations", mu_err < 1e-12, json!(mu_err), json!(0.0))
            .with_tolerance(1e-12),
    );

    let tol = cfg.tolerance;
    let coatom_projs = coatom_projections(&mcl)?;
    let diag = span_closure(&coatom_projs, tol)?;
    let comm = commutant_dimension(&coatom_projs, tol)?;
    out.push(Check::new(
        S,
        "coatom_algebra_maximal_abelian",
        comm == diag.len() && diag.len() == n,
        json!({ "commutant": comm, "algebra": diag.len() }),
        json!({ "commutant": n, "algebra": n }),
    ));

    let u_h = fourier_h(&mcl)?;
    let conj: Vec<CMatrix> = coatom_projs
        .iter()
        .map(|p| &(&u_h * p) * &u_h.adjoint())
        .collect();
    let conj_span = span_closure(&conj, tol)?;
    let rho_c: Vec<CMatrix> = (0..cfg.indices)
        .flat_map(|i| c_elems.iter().map(move |g| (i, g)))
        .map(|(i, g)| rho_at_index(g, i, &mcl))
        .collect::<Result<_>>()?;
    let rho_span = span_closure(&rho_c, tol)?;
    let rho_in_conj = conj_span.contains_span(&rho_span, tol)?;
    let conj_in_rho = rho_span.contains_span(&conj_span, tol)?;
    out.push(Check::new(
        S,
        "centralizer_algebra_equals_conjugated_coatoms_iff_prime",
        (rho_in_conj && conj_in_rho) == cfg.modulus.is_prime(),
        json!({ "rho_dim": rho_span.len(), "conjugated_dim": conj_span.len(),
                "rho_in_conjugated": rho_in_conj, "conjugated_in_rho": conj_in_rho }),
        json!({ "equal": cfg.modulus.is_prime() }),
    ));

    if cfg.modulus.is_prime() {
        // ρ(C) ⊆ W*(X_i) in the primitive-root labeling, and
        // W*(X_i) ⊆ W*(U p_c U*) with the plain Fourier transform
        let p = primitive_root_conjugator(&mcl)?;
        let x = shift_matrix(d)?;
        let shifts: Vec<CMatrix> = (0..cfg.indices)
            .map(|i| at_factor(&x, i, cfg.indices))
            .collect::<Result<_>>()?;
        let shift_span = span_closure(&shifts, tol)?;
        let mut first = true;
        for r in &rho_c {
            let relabeled = &(&p.adjoint() * r) * &p;
            first &= algebra_contains(&shift_span, &relabeled, tol)?;
        }
        let qft = crate::representation::kron(&vec![qft_matrix(d)?; cfg.indices])?;
        let plain_conj: Vec<CMatrix> = coatom_projs
            .iter()
            .map(|p| &(&qft * p) * &qft.adjoint())
            .collect();
        let plain_span = span_closure(&plain_conj, tol)?;
        let mut second = true;
        for s in &shifts {
            second &= algebra_contains(&plain_span, s, tol)?;
        }
        let clock = clock_matrix(d)?;
        let mut clocks = true;
        for i in 0..cfg.indices {
            clocks &= algebra_contains(&diag, &at_factor(&clock, i, cfg.indices)?, tol)?;
        }
        out.push(Check::new(
            S,
            "containment_chain",
            first && second && clocks,
            json!({ "centralizer_in_shifts": first, "shifts_in_conjugated": second, "clock_in_coatoms": clocks }),
            json!({ "centralizer_in_shifts": true, "shifts_in_conjugated": true, "clock_in_coatoms": true }),
        ));
    } else {
        out.push(Check::skipped(S, "containment_chain", "stated for prime moduli"));
    }

    // same-index meets of coatom projections with their conjugates
    let mut ratio_err = 0.0f64;
    let mut meet_norm = 0.0f64;
    for alpha in 0..cfg.indices {
        for v in 1..=d as u64 {
            let p = proj_element(&mcl, &mcl.coatom(alpha, v)?)?;
            for w in 1..=d as u64 {
                let q0 = proj_element(&mcl, &mcl.coatom(alpha, w)?)?;
                let q = &(&u_h * &q0) * &u_h.adjoint();
                let pqp = &(&p * &q) * &p;
                if cfg.modulus.is_prime() {
                    let scaled = p.scale((1.0 / d as f64).into());
                    ratio_err = ratio_err.max(pqp.distance(&scaled));
                }
                meet_norm = meet_norm.max(projection_meet(&p, &q)?.frobenius_norm());
            }
        }
    }
    if cfg.modulus.is_prime() {
        out.push(
            Check::new(S, "pqp_is_p_over_2k", ratio_err < 1e-9, json!(ratio_err), json!(0.0))
                .with_tolerance(1e-9),
        );
    } else {
        out.push(Check::skipped(S, "pqp_is_p_over_2k", "uniform overlap needs a prime modulus"));
    }
    out.push(
        Check::new(S, "coatom_meets_conjugate_in_zero", meet_norm < 1e-9, json!(meet_norm), json!(0.0))
            .with_tolerance(1e-9),
    );
    Ok(out)
}

/// Worst violation of `Σ e_ii = I`, `e_ij* = e_ji`, `e_ij e_kl = δ_jk e_il`.
pub fn matrix_unit_defect(e: &[Vec<CMatrix>], n: usize) -> f64 {
    let d = e.len();
    let mut sum = CMatrix::zeros(n, n);
    for (i, row) in e.iter().enumerate() {
        sum = sum.add(&row[i]).expect("square");
    }
    let mut worst = sum.distance(&CMatrix::identity(n));
    let zero = CMatrix::zeros(n, n);
    for i in 0..d {
        for j in 0..d {
            worst = worst.max(e[i][j].adjoint().distance(&e[j][i]));
            for k in 0..d {
                for l in 0..d {
                    let prod = &e[i][j] * &e[k][l];
                    let expected = if j == k { &e[i][l] } else { &zero };
                    worst = worst.max(prod.distance(expected));
                }
            }
        }
    }
    worst
}

// ---------------------------------------------------------------- generation

/// Dimension of the `*`-algebra generated by the coatom projections and
/// their `U_H`-conjugates.
pub fn generation_dimension(mcl: &Mcl, tol: Tolerance) -> Result<usize> {
    let projs = coatom_projections(mcl)?;
    let u_h = fourier_h(mcl)?;
    let mut gens: Vec<CMatrix> = projs
        .iter()
        .map(|p| &(&u_h * p) * &u_h.adjoint())
        .collect();
    gens.extend(projs);
    Ok(span_closure(&gens, tol)?.len())
}

/// Same, with the centralizer permutation matrices in place of the
/// conjugated projections.
pub fn centralizer_generation_dimension(mcl: &Mcl, tol: Tolerance) -> Result<usize> {
    let c = base_centralizer(mcl.modulus())?;
    let mut gens = coatom_projections(mcl)?;
    for i in 0..mcl.indices() {
        for g in c.generators() {
            gens.push(rho_at_index(g, i, mcl)?);
        }
    }
    Ok(span_closure(&gens, tol)?.len())
}

/// `(Σ_O |O|²)^{|I|}` over centralizer orbits `O`: the dimension of the
/// block algebra `⊕_O M_{|O|}` on each factor, tensored.
pub fn block_algebra_dimension(modulus: Modulus, indices: usize) -> Result<usize> {
    let per_factor: usize = base_centralizer(modulus)?
        .orbits()
        .iter()
        .map(|o| o.len() * o.len())
        .sum();
    per_factor
        .checked_pow(indices as u32)
        .ok_or(Error::Overflow)
}

fn generation_checks(cfg: &Config) -> Result<Vec<Check>> {
    const S: &str = "generation";
    let mcl = cfg.mcl();
    let n = mcl.atom_count()? as usize;
    if n > GENERATION_DIM_LIMIT {
        return Ok(vec![Check::skipped(
            S,
            "generates_full_matrix_algebra_iff_prime",
            format!("dimension {n} above {GENERATION_DIM_LIMIT}"),
        )]);
    }
    let full = n * n;
    let dim = generation_dimension(&mcl, cfg.tolerance)?;
    let cdim = centralizer_generation_dimension(&mcl, cfg.tolerance)?;
    let block = block_algebra_dimension(cfg.modulus, cfg.indices)?;
    let prime = cfg.modulus.is_prime();
    let ok = if prime { dim == full } else { dim < full };
    let mut out = vec![Check::new(
        S,
        "generates_full_matrix_algebra_iff_prime",
        ok,
        json!({ "span_dimension": dim, "full": full }),
        if prime { json!({ "span_dimension": full }) } else { json!({ "span_dimension_below": full }) },
    )];
    out.push(Check::new(
        S,
        "span_dimension_matches_orbit_blocks",
        dim == block && cdim == block,
        json!({ "conjugated_coatoms": dim, "centralizer": cdim }),
        json!(block),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: u64, i: usize) -> Config {
        Config::new(Modulus::new(n).unwrap(), i).unwrap()
    }

    #[test]
    fn suite_names_round_trip() {
        for s in std::iter::once(Suite::All).chain(Suite::EACH) {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("nope"), None);
    }

    #[test]
    fn report_json_lines() {
        let r = run(&cfg(3, 1), Suite::Lattice).unwrap();
        let text = r.to_json_lines();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), r.checks.len() + 1);
        for l in &lines {
            serde_json::from_str::<Value>(l).unwrap();
        }
        assert!(lines.last().unwrap().contains("\"summary\""));
    }

    #[test]
    fn lattice_suite_passes_small() {
        let r = run(&cfg(5, 2), Suite::Lattice).unwrap();
        assert!(r.passed(), "{}", r.to_json_lines());
        assert_eq!(r.find("cubic_signed_set_anti_isomorphism").unwrap().status, Status::Skipped);
        let r = run(&cfg(3, 3), Suite::Lattice).unwrap();
        assert_eq!(r.find("cubic_signed_set_anti_isomorphism").unwrap().status, Status::Pass);
    }

    #[test]
    fn deterministic_given_seed() {
        let a = run(&cfg(5, 2), Suite::Groups).unwrap().to_json_lines();
        let b = run(&cfg(5, 2), Suite::Groups).unwrap().to_json_lines();
        assert_eq!(a, b);
    }

    #[test]
    fn block_dimensions() {
        assert_eq!(block_algebra_dimension(Modulus::new(9).unwrap(), 1).unwrap(), 40);
        assert_eq!(block_algebra_dimension(Modulus::new(5).unwrap(), 2).unwrap(), 256);
    }
}
