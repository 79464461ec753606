//! Seeded property checkers with re-runnable witnesses.
//!
//! Universally quantified conditions are checked by sampling: a Pass verdict
//! means "no counterexample in N trials" and every report carries N, the
//! master seed, and — on failure — the serialized inputs that broke it.

use serde::{Deserialize, Serialize};

use crate::algebra::{
    atom_state, restrict, spectral_decompose, Algebra, AlgebraSpec, Element,
};
use crate::kernel::{derive_seed, rng_for};
use crate::lattice::{
    center, certify_projection, dim, info_capacity, join, leq, peel_atoms, Projection,
};
use crate::sample::{random_atom, random_element, random_nonzero_projection, random_projection};
use crate::tol::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// Serialized inputs that reproduce a failure bit-exactly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub trial: u32,
    pub trial_seed: u64,
    pub elements: Vec<Element>,
    pub description: String,
}

impl Witness {
    pub fn new(trial: u32, trial_seed: u64, elements: Vec<Element>, description: &str) -> Witness {
        Witness { trial, trial_seed, elements, description: description.to_string() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub property: String,
    pub verdict: Verdict,
    pub trials: u32,
    pub worst_residual: f64,
    pub seed: u64,
    pub algebra: AlgebraSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn pass(property: &str, algebra: &Algebra, trials: u32, seed: u64, worst: f64) -> Self {
        CheckReport {
            property: property.to_string(),
            verdict: Verdict::Pass,
            trials,
            worst_residual: worst,
            seed,
            algebra: algebra.spec().clone(),
            witness: None,
            note: None,
        }
    }

    pub fn fail(
        property: &str,
        algebra: &Algebra,
        trials: u32,
        seed: u64,
        worst: f64,
        witness: Witness,
    ) -> Self {
        CheckReport {
            property: property.to_string(),
            verdict: Verdict::Fail,
            trials,
            worst_residual: worst,
            seed,
            algebra: algebra.spec().clone(),
            witness: Some(witness),
            note: None,
        }
    }

    pub fn inconclusive(
        property: &str,
        algebra: &Algebra,
        trials: u32,
        seed: u64,
        worst: f64,
        note: &str,
    ) -> Self {
        CheckReport {
            property: property.to_string(),
            verdict: Verdict::Inconclusive,
            trials,
            worst_residual: worst,
            seed,
            algebra: algebra.spec().clone(),
            witness: None,
            note: Some(note.to_string()),
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn no_trials(property: &str, algebra: &Algebra, seed: u64) -> CheckReport {
    CheckReport::inconclusive(property, algebra, 0, seed, 0.0, "trial budget is zero")
}

/// Spectrality: random elements decompose into ≤ m certified atoms that sum
/// to 𝕀 and reconstruct the element.
pub fn check_spectrality(algebra: &Algebra, trials: u32, seed: u64, tol: &Tolerances) -> CheckReport {
    let property = "spectrality";
    if trials == 0 {
        return no_trials(property, algebra, seed);
    }
    let mut worst = 0.0f64;
    for trial in 0..trials {
        let trial_seed = derive_seed(seed, trial as u64);
        let mut rng = rng_for(trial_seed);
        let a = random_element(algebra, &mut rng);
        let dec = spectral_decompose(&a, tol);
        let norm = dec.max_eigenvalue().abs().max(dec.min_eigenvalue().abs());
        let fail = |desc: &str, residual: f64| {
            CheckReport::fail(
                property,
                algebra,
                trial + 1,
                seed,
                residual,
                Witness::new(trial, trial_seed, vec![a.clone()], desc),
            )
        };
        if dec.atom_count() > algebra.capacity() {
            return fail("atom count exceeds the information capacity", dec.atom_count() as f64);
        }
        let recon_residual = dec.reconstruct(algebra).sub(&a).coord_inf_norm();
        worst = worst.max(recon_residual / 1.0f64.max(norm));
        if recon_residual > tol.spectrality_residual * 1.0f64.max(norm) {
            return fail("spectral reconstruction residual too large", recon_residual);
        }
        let unit_residual = dec.atom_sum(algebra).sub(&algebra.unit()).coord_inf_norm();
        worst = worst.max(unit_residual);
        if unit_residual > tol.spectrality_residual {
            return fail("atoms do not sum to the unit", unit_residual);
        }
        for (_, atom) in dec.expanded() {
            match certify_projection(atom, tol) {
                Ok(p) if p.rank() == 1 => {}
                _ => return fail("decomposition produced a non-atom", 0.0),
            }
        }
    }
    CheckReport::pass(property, algebra, trials, seed, worst)
}

/// Strongly order determining state space, checked contrapositively: for
/// sampled p ≰ q there must be a state with μ(p) = 1 and μ(q) < 1.
///
/// Witness search: atom states over peel_atoms(p), then the minimal spectral
/// atom of q compressed to the face of p.
pub fn check_strong_state_space(
    algebra: &Algebra,
    trials: u32,
    seed: u64,
    tol: &Tolerances,
) -> CheckReport {
    let property = "strong-states";
    if trials == 0 {
        return no_trials(property, algebra, seed);
    }
    let mut worst = 0.0f64;
    for trial in 0..trials {
        let trial_seed = derive_seed(seed, trial as u64);
        let mut rng = rng_for(trial_seed);
        let p = random_projection(algebra, &mut rng, tol);
        let q = random_projection(algebra, &mut rng, tol);
        if p.is_zero() || leq(&p, &q, tol) {
            continue; // implication is vacuous
        }
        let mut found = false;
        for atom in peel_atoms(&p, tol) {
            let mu = atom_state(&atom, tol).expect("peeled atoms have rank 1");
            let at_p = mu.eval(p.element());
            worst = worst.max((at_p - 1.0).abs());
            if mu.eval(q.element()) < 1.0 - tol.witness_margin {
                found = true;
                break;
            }
        }
        if !found {
            // compress q onto the face of p and take its minimal atom
            let face = restrict(algebra, &p, tol).expect("p is nonzero");
            let compressed = face.compress(q.element());
            let dec = spectral_decompose(&compressed, tol);
            if let Some(atom) = dec.groups.first().and_then(|g| g.atoms.first()) {
                let embedded = Projection::from_atom(face.embed(atom));
                let mu = atom_state(&embedded, tol).expect("face atom has rank 1");
                worst = worst.max((mu.eval(p.element()) - 1.0).abs());
                if mu.eval(q.element()) < 1.0 - tol.witness_margin {
                    found = true;
                }
            }
        }
        if !found {
            return CheckReport::inconclusive(
                property,
                algebra,
                trial + 1,
                seed,
                worst,
                "no separating state found within the witness budget",
            );
        }
    }
    CheckReport::pass(property, algebra, trials, seed, worst)
}

const FACE_SAMPLES: usize = 4;

/// Joins resolve two projections only when the spectrum of their sum stays
/// clear of the eigenvalue-2 window; sampled inputs keep at least this much
/// transition-probability gap so results sit on one side of that boundary.
const ATOM_RESOLUTION: f64 = 1e-3;
/// Transverse mass below which a sampled atom counts as lying under p.
const BELOW_RESOLUTION: f64 = 1e-10;

/// μ_e(q) for an atom e: the transition probability onto q.
fn transition(e: &Projection, q: &Projection, tol: &Tolerances) -> f64 {
    let mu = atom_state(e, tol).expect("rank-1 input");
    mu.eval(q.element())
}

/// Projection equality at the lattice-law tolerance: meets and joins of
/// resolved inputs are accurate to eigenvector conditioning, which sits
/// below `lattice_law` but above raw element equality.
fn projections_equal(a: &Projection, b: &Projection, tol: &Tolerances) -> bool {
    a.rank() == b.rank()
        && a.element().sub(b.element()).coord_inf_norm() <= tol.lattice_law
}

/// gbit property: the face of the join of two distinct atoms has information
/// capacity 2, and its nonzero projections are atoms or the join itself.
pub fn check_gbit(algebra: &Algebra, trials: u32, seed: u64, tol: &Tolerances) -> CheckReport {
    let property = "gbit";
    if trials == 0 {
        return no_trials(property, algebra, seed);
    }
    for trial in 0..trials {
        let trial_seed = derive_seed(seed, trial as u64);
        let mut rng = rng_for(trial_seed);
        let e1 = random_atom(algebra, &mut rng, tol);
        let mut e2 = random_atom(algebra, &mut rng, tol);
        let mut attempts = 0;
        while transition(&e1, &e2, tol) > 1.0 - ATOM_RESOLUTION && attempts < 32 {
            e2 = random_atom(algebra, &mut rng, tol);
            attempts += 1;
        }
        if transition(&e1, &e2, tol) > 1.0 - ATOM_RESOLUTION {
            continue;
        }
        let f = join(&e1, &e2, tol);
        let fail = |desc: &str, extra: Vec<Element>| {
            let mut elements = vec![e1.element().clone(), e2.element().clone()];
            elements.extend(extra);
            CheckReport::fail(
                property,
                algebra,
                trial + 1,
                seed,
                0.0,
                Witness::new(trial, trial_seed, elements, desc),
            )
        };
        let face = match restrict(algebra, &f, tol) {
            Ok(face) => face,
            Err(_) => return fail("face restriction failed", vec![f.element().clone()]),
        };
        if info_capacity(face.algebra(), tol) != 2 {
            return fail("face of a two-atom join has capacity ≠ 2", vec![f.element().clone()]);
        }
        for k in 0..FACE_SAMPLES {
            let mut srng = rng_for(derive_seed(trial_seed, 101 + k as u64));
            let r = random_nonzero_projection(face.algebra(), &mut srng, tol);
            let embedded = face.embed_projection(&r);
            let is_join = projections_equal(&embedded, &f, tol);
            let is_atom = embedded.rank() == 1 && certify_projection(embedded.element(), tol).is_ok();
            if !(is_join || is_atom) {
                return fail(
                    "projection below a two-atom join is neither an atom nor the join",
                    vec![embedded.element().clone()],
                );
            }
        }
    }
    CheckReport::pass(property, algebra, trials, seed, 0.0)
}

/// Covering property: joins with atoms grow rank by at most one, and sampled
/// projections sandwiched between p and p ∨ e hit an endpoint.
pub fn check_covering(algebra: &Algebra, trials: u32, seed: u64, tol: &Tolerances) -> CheckReport {
    let property = "covering";
    if trials == 0 {
        return no_trials(property, algebra, seed);
    }
    for trial in 0..trials {
        let trial_seed = derive_seed(seed, trial as u64);
        let mut rng = rng_for(trial_seed);
        let p = random_projection(algebra, &mut rng, tol);
        let e = random_atom(algebra, &mut rng, tol);
        let f = join(&p, &e, tol);
        let fail = |desc: &str, extra: Vec<Element>| {
            let mut elements = vec![p.element().clone(), e.element().clone()];
            elements.extend(extra);
            CheckReport::fail(
                property,
                algebra,
                trial + 1,
                seed,
                0.0,
                Witness::new(trial, trial_seed, elements, desc),
            )
        };
        let growth = dim(&f) as i64 - dim(&p) as i64;
        if growth != 0 && growth != 1 {
            return fail("rank law violated: dim(p ∨ e) − dim(p) ∉ {0, 1}", vec![f.element().clone()]);
        }
        // sandwich: q = p ∨ a for a random atom a ≤ p ∨ e must be an endpoint
        let face = restrict(algebra, &f, tol).expect("f ≥ e is nonzero");
        for k in 0..FACE_SAMPLES {
            let mut srng = rng_for(derive_seed(trial_seed, 211 + k as u64));
            let mut picked = None;
            for _ in 0..32 {
                let a = face.embed_projection(&random_atom(face.algebra(), &mut srng, tol));
                // the transverse mass of a against p must be resolved: either
                // a lies under p or it is clearly outside
                let below = transition(&a, &p, tol);
                if below >= 1.0 - BELOW_RESOLUTION || below <= 1.0 - ATOM_RESOLUTION {
                    picked = Some((a, below >= 1.0 - BELOW_RESOLUTION));
                    break;
                }
            }
            let Some((a_emb, lies_below)) = picked else { continue };
            let q = join(&p, &a_emb, tol);
            let is_p = projections_equal(&q, &p, tol);
            let is_f = projections_equal(&q, &f, tol);
            if lies_below && !is_p {
                return fail("join with an atom below p moved away from p", vec![
                    a_emb.element().clone(),
                    q.element().clone(),
                ]);
            }
            if !(is_p || is_f) {
                return fail("sandwiched projection missed both endpoints", vec![
                    a_emb.element().clone(),
                    q.element().clone(),
                ]);
            }
        }
    }
    CheckReport::pass(property, algebra, trials, seed, 0.0)
}

/// The gbit and covering verdicts must agree (they are equivalent conditions).
pub fn check_gbit_covering_equivalence(
    algebra: &Algebra,
    trials: u32,
    seed: u64,
    tol: &Tolerances,
) -> CheckReport {
    let property = "equivalence";
    if trials == 0 {
        return no_trials(property, algebra, seed);
    }
    let gbit = check_gbit(algebra, trials, seed, tol);
    let covering = check_covering(algebra, trials, seed, tol);
    if gbit.verdict == Verdict::Inconclusive || covering.verdict == Verdict::Inconclusive {
        return CheckReport::inconclusive(
            property,
            algebra,
            trials,
            seed,
            0.0,
            "a sub-check was inconclusive",
        );
    }
    if gbit.verdict == covering.verdict {
        let note = format!("both checks returned {:?}", gbit.verdict);
        CheckReport::pass(property, algebra, trials, seed, 0.0).with_note(&note)
    } else {
        let desc = format!(
            "gbit verdict {:?} disagrees with covering verdict {:?}",
            gbit.verdict, covering.verdict
        );
        CheckReport::fail(
            property,
            algebra,
            trials,
            seed,
            0.0,
            Witness::new(0, seed, vec![], &desc),
        )
    }
}

/// Irreducibility: the center has 𝕀 as its only minimal projection.
pub fn check_irreducible(
    algebra: &Algebra,
    sample_budget: u32,
    seed: u64,
    tol: &Tolerances,
) -> CheckReport {
    let property = "irreducible";
    match center(algebra, sample_budget, seed, tol) {
        Ok(c) if c.is_trivial() => CheckReport::pass(property, algebra, sample_budget, seed, 0.0),
        Ok(c) => {
            let witness = Witness::new(
                0,
                seed,
                vec![c.minimal_central[0].element().clone()],
                &format!("center has {} minimal projections", c.minimal_central.len()),
            );
            CheckReport::fail(property, algebra, sample_budget, seed, 0.0, witness)
        }
        Err(crate::lattice::LatticeError::CentralityFailure { candidate, witness }) => {
            let w = Witness::new(
                0,
                seed,
                vec![*witness],
                &format!("central candidate {candidate} failed compatibility"),
            );
            CheckReport::fail(property, algebra, sample_budget, seed, 0.0, w)
        }
        Err(e) => CheckReport::inconclusive(
            property,
            algebra,
            sample_budget,
            seed,
            0.0,
            &format!("center computation failed: {e}"),
        ),
    }
}

const VERIFY_AUTOMORPHISM_TRIALS: u32 = 8;

/// Weak symmetry: random atom pairs admit a verified transporting automorphism.
pub fn check_weak_symmetry(
    algebra: &Algebra,
    trials: u32,
    seed: u64,
    tol: &Tolerances,
) -> CheckReport {
    let property = "weak-symmetry";
    if trials == 0 {
        return no_trials(property, algebra, seed);
    }
    let mut worst = 0.0f64;
    for trial in 0..trials {
        let trial_seed = derive_seed(seed, trial as u64);
        let mut rng = rng_for(trial_seed);
        let e1 = random_atom(algebra, &mut rng, tol);
        let e2 = random_atom(algebra, &mut rng, tol);
        let t = match crate::symmetry::transport_automorphism(algebra, &e1, &e2, tol) {
            Ok(t) => t,
            Err(e) => {
                return CheckReport::fail(
                    property,
                    algebra,
                    trial + 1,
                    seed,
                    0.0,
                    Witness::new(
                        trial,
                        trial_seed,
                        vec![e1.element().clone(), e2.element().clone()],
                        &format!("no transporting automorphism: {e}"),
                    ),
                )
            }
        };
        let defect = t.apply(e1.element()).sub(e2.element()).coord_inf_norm();
        worst = worst.max(defect);
        if defect > tol.transport {
            return CheckReport::fail(
                property,
                algebra,
                trial + 1,
                seed,
                defect,
                Witness::new(
                    trial,
                    trial_seed,
                    vec![e1.element().clone(), e2.element().clone()],
                    "transport landed away from the target atom",
                ),
            );
        }
        let verify = crate::symmetry::verify_automorphism(
            algebra,
            &t,
            VERIFY_AUTOMORPHISM_TRIALS,
            derive_seed(trial_seed, 7),
            tol,
        );
        if !verify.passed() {
            return CheckReport::fail(
                property,
                algebra,
                trial + 1,
                seed,
                verify.worst_residual,
                Witness::new(
                    trial,
                    trial_seed,
                    vec![e1.element().clone(), e2.element().clone()],
                    "transport map failed automorphism verification",
                ),
            );
        }
    }
    CheckReport::pass(property, algebra, trials, seed, worst)
}

pub const SUITE_NAMES: [&str; 7] = [
    "spectrality",
    "strong-states",
    "gbit",
    "covering",
    "equivalence",
    "irreducible",
    "weak-symmetry",
];

/// Run a checker by name.
pub fn run_named(
    name: &str,
    algebra: &Algebra,
    trials: u32,
    seed: u64,
    tol: &Tolerances,
) -> Result<CheckReport, String> {
    Ok(match name {
        "spectrality" => check_spectrality(algebra, trials, seed, tol),
        "strong-states" => check_strong_state_space(algebra, trials, seed, tol),
        "gbit" => check_gbit(algebra, trials, seed, tol),
        "covering" => check_covering(algebra, trials, seed, tol),
        "equivalence" => check_gbit_covering_equivalence(algebra, trials, seed, tol),
        "irreducible" => check_irreducible(algebra, trials, seed, tol),
        "weak-symmetry" => check_weak_symmetry(algebra, trials, seed, tol),
        other => return Err(format!("unknown check `{other}`")),
    })
}

/// Run the full hypothesis suite.
pub fn run_suite(algebra: &Algebra, trials: u32, seed: u64, tol: &Tolerances) -> Vec<CheckReport> {
    SUITE_NAMES
        .iter()
        .map(|name| run_named(name, algebra, trials, seed, tol).expect("suite names are valid"))
        .collect()
}
