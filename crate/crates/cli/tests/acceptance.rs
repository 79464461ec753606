//! Acceptance suite: one test per criterion (the large oracle sweep is
//! sharded by ring family). Each test prints its own pass line; tolerances
//! are pinned in code.
//!
//! Criteria:
//!  1. full hypothesis suite on the oracle algebras, ≥500 trials per check
//!  2. lattice laws on 1000 random projection pairs per oracle algebra
//!  3. Lemma-1 meet vs an independent subspace-intersection oracle
//!  4. gbit/covering equivalence on all algebras including reducible sums
//!  5. center/capacity/round-trip on H_2(ℂ) ⊕ H_3(ℝ)
//!  6. Monte-Carlo invariant product on H_2(ℂ): residual and atom norms
//!  7. end-to-end spin reconstruction matching the native product
//!  8. negative controls (reducibility, perturbed table, cross-block atoms)
//!  9. byte-identical CLI reports per seed

use std::process::Command;

use jordankit::checks::{
    check_gbit, check_gbit_covering_equivalence, check_covering, check_irreducible,
    check_weak_symmetry,
};
use jordankit::kernel::{
    derive_seed, rng_for, symmetric_nullspace, DenseMatrix, QuatMatrix, Ring,
};
use jordankit::sample::{random_atom_frame, random_nonzero_projection, random_pd_form, random_projection};
use jordankit::{
    certify_projection, compare_to_native, complement, info_capacity, invariant_inner_product,
    join, meet, native_product_table, peel_atoms, reconstruct_spin, run_suite, verify_jordan,
    Algebra, AlgebraSpec, Element, Projection, Tolerances, Verdict,
};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn matrix_oracles(ring: Ring) -> Vec<Algebra> {
    (2..=5).map(|m| Algebra::matrix(ring, m)).collect()
}

fn spin_oracles() -> Vec<Algebra> {
    [2, 3, 7].into_iter().map(Algebra::spin).collect()
}

const SUITE_TRIALS: u32 = 500;
const LATTICE_PAIRS: u64 = 1000;
const MEET_PAIRS: u64 = 500;

fn criterion_1_on(algebras: &[Algebra], label: &str) {
    let tol = tol();
    for algebra in algebras {
        for report in run_suite(algebra, SUITE_TRIALS, 7, &tol) {
            assert_eq!(
                report.verdict,
                Verdict::Pass,
                "{algebra} failed {} ({:?}, witness {:?})",
                report.property,
                report.note,
                report.witness.map(|w| w.description)
            );
            assert!(report.trials >= SUITE_TRIALS);
        }
    }
    println!("[acceptance] criterion 1 ({label}): PASS");
}

#[test]
fn criterion_1_oracle_instances_real() {
    criterion_1_on(&matrix_oracles(Ring::Real), "H_m(R), m=2..5");
}

#[test]
fn criterion_1_oracle_instances_complex() {
    criterion_1_on(&matrix_oracles(Ring::Complex), "H_m(C), m=2..5");
}

#[test]
fn criterion_1_oracle_instances_quaternion() {
    criterion_1_on(&matrix_oracles(Ring::Quaternion), "H_m(H), m=2..5");
}

#[test]
fn criterion_1_oracle_instances_spin() {
    criterion_1_on(&spin_oracles(), "spin(n), n=2,3,7");
}

fn subset(atoms: &[Projection], mask: impl Fn(usize) -> bool, algebra: &Algebra) -> Projection {
    let mut element = algebra.zero();
    let mut rank = 0;
    for (k, atom) in atoms.iter().enumerate() {
        if mask(k) {
            element = element.add(atom.element());
            rank += 1;
        }
    }
    Projection::from_parts(element, rank)
}

fn criterion_2_on(algebras: &[Algebra], label: &str) {
    let tol = tol();
    for algebra in algebras {
        for trial in 0..LATTICE_PAIRS {
            let mut rng = rng_for(derive_seed(1002, trial));
            let p = random_projection(algebra, &mut rng, &tol);
            let q = random_projection(algebra, &mut rng, &tol);
            // De Morgan: p ∧ q = (p' ∨ q')'
            let lhs = meet(&p, &q, &tol);
            let rhs = complement(&join(&complement(&p, &tol), &complement(&q, &tol), &tol), &tol);
            let dm = lhs.element().sub(rhs.element()).coord_inf_norm();
            assert!(dm <= 1e-8, "{algebra}: De Morgan defect {dm} at trial {trial}");
            // orthomodularity and the difference property on r ≤ p
            if p.rank() > 0 {
                let atoms = peel_atoms(&p, &tol);
                let r = subset(&atoms, |k| k % 2 == 0, algebra);
                let om = join(&r, &meet(&p, &complement(&r, &tol), &tol), &tol);
                let om_defect = om.element().sub(p.element()).coord_inf_norm();
                assert!(om_defect <= 1e-8, "{algebra}: orthomodular defect {om_defect}");
                let diff = p.element().sub(r.element());
                let certified = certify_projection(&diff, &tol)
                    .unwrap_or_else(|e| panic!("{algebra}: p − r outside the logic: {e}"));
                assert_eq!(certified.rank(), p.rank() - r.rank());
            }
        }
    }
    println!("[acceptance] criterion 2 ({label}): PASS");
}

#[test]
fn criterion_2_lattice_laws_real() {
    criterion_2_on(&matrix_oracles(Ring::Real), "H_m(R)");
}

#[test]
fn criterion_2_lattice_laws_complex() {
    criterion_2_on(&matrix_oracles(Ring::Complex), "H_m(C)");
}

#[test]
fn criterion_2_lattice_laws_quaternion() {
    criterion_2_on(&matrix_oracles(Ring::Quaternion), "H_m(H)");
}

#[test]
fn criterion_2_lattice_laws_spin() {
    criterion_2_on(&spin_oracles(), "spin(n)");
}

/// Independent subspace-intersection oracle: the meet of two projections is
/// the projection onto ker((I−P) + (I−Q)), computed on the real embedding by
/// Gram-Schmidt rank detection — no eigensolver involved.
fn intersection_oracle(
    algebra: &Algebra,
    p: &Projection,
    q: &Projection,
    tol: &Tolerances,
) -> (usize, Element) {
    let (ring, m) = match algebra.spec() {
        AlgebraSpec::Matrix { ring, m } => (*ring, *m),
        _ => panic!("oracle needs a matrix algebra"),
    };
    let pm = algebra.to_matrix(p.element().coords()).embed(ring);
    let qm = algebra.to_matrix(q.element().coords()).embed(ring);
    let n = pm.rows;
    let id = DenseMatrix::identity(n);
    let gap = id.sub(&pm).add(&id.sub(&qm));
    let null = symmetric_nullspace(&gap, tol);
    assert_eq!(null.len() % ring.factor(), 0);
    let mut proj = DenseMatrix::zeros(n, n);
    for v in &null {
        for i in 0..n {
            for j in 0..n {
                proj.add_at(i, j, v[i] * v[j]);
            }
        }
    }
    let quat = QuatMatrix::unembed(&proj.symmetrize(), ring, m, m);
    (null.len() / ring.factor(), algebra.matrix_element(&quat))
}

#[test]
fn criterion_3_meet_against_subspace_oracle() {
    let tol = tol();
    let mut agreements = 0u64;
    let mut total = 0u64;
    for m in 2..=5usize {
        let algebra = Algebra::matrix(Ring::Complex, m);
        for trial in 0..MEET_PAIRS {
            let mut rng = rng_for(derive_seed(3003, trial));
            // half shared-frame pairs (exact nontrivial intersections), half
            // independent pairs
            let (p, q) = if trial % 2 == 0 {
                let frame = random_atom_frame(&algebra, &mut rng, &tol);
                let p = subset(&frame, |k| k % 2 == 0 || k == 1, &algebra);
                let q = subset(&frame, |k| k != 0, &algebra);
                (p, q)
            } else {
                (
                    random_nonzero_projection(&algebra, &mut rng, &tol),
                    random_nonzero_projection(&algebra, &mut rng, &tol),
                )
            };
            let x = meet(&p, &q, &tol);
            let (oracle_rank, oracle_element) = intersection_oracle(&algebra, &p, &q, &tol);
            total += 1;
            let element_defect = x.element().sub(&oracle_element).coord_inf_norm();
            if x.rank() == oracle_rank && element_defect <= 1e-8 {
                agreements += 1;
            } else {
                panic!(
                    "H_{m}(C) trial {trial}: meet rank {} vs oracle {oracle_rank}, defect {element_defect}",
                    x.rank()
                );
            }
        }
    }
    assert_eq!(agreements, total, "meet/oracle agreement must be 100%");
    println!("[acceptance] criterion 3 (meet vs subspace oracle, {total} pairs): PASS");
}

#[test]
fn criterion_4_gbit_covering_equivalence() {
    let tol = tol();
    let mut algebras: Vec<Algebra> = Vec::new();
    for ring in [Ring::Real, Ring::Complex, Ring::Quaternion] {
        algebras.extend(matrix_oracles(ring));
    }
    algebras.extend(spin_oracles());
    algebras.push(Algebra::direct_sum(vec![
        Algebra::matrix(Ring::Real, 2),
        Algebra::matrix(Ring::Real, 2),
    ]));
    algebras.push(Algebra::direct_sum(vec![
        Algebra::matrix(Ring::Complex, 2),
        Algebra::matrix(Ring::Real, 3),
    ]));
    // the reducible sums must also pass both sides, not merely agree
    for algebra in &algebras {
        let eq = check_gbit_covering_equivalence(algebra, SUITE_TRIALS, 11, &tol);
        assert_eq!(eq.verdict, Verdict::Pass, "{algebra}: {:?}", eq.note);
        assert!(check_gbit(algebra, SUITE_TRIALS, 11, &tol).passed(), "{algebra} gbit");
        assert!(check_covering(algebra, SUITE_TRIALS, 11, &tol).passed(), "{algebra} covering");
    }
    println!("[acceptance] criterion 4 (Lemma 4 equivalence on {} algebras): PASS", algebras.len());
}

#[test]
fn criterion_5_center_decomposition() {
    let tol = tol();
    let algebra = Algebra::direct_sum(vec![
        Algebra::matrix(Ring::Complex, 2),
        Algebra::matrix(Ring::Real, 3),
    ]);
    let c = jordankit::center(&algebra, 200, 5, &tol).unwrap();
    assert_eq!(c.minimal_central.len(), 2, "exactly two minimal central projections");
    assert_eq!(info_capacity(&algebra, &tol), 5);
    assert_eq!(algebra.capacity(), 5);
    // blockwise round-trip within 1e-10
    for trial in 0..100u64 {
        let mut rng = rng_for(derive_seed(5005, trial));
        let a = jordankit::sample::random_element(&algebra, &mut rng);
        let mut recon = algebra.zero();
        for face in &c.blocks {
            recon = recon.add(&face.embed(&face.compress(&a)));
        }
        let defect = recon.sub(&a).coord_inf_norm();
        assert!(defect <= 1e-10, "round-trip defect {defect}");
    }
    println!("[acceptance] criterion 5 (Lemma 3 decomposition of H_2(C) ⊕ H_3(R)): PASS");
}

const MC_SAMPLES: u32 = 10_000;

#[test]
fn criterion_6_invariant_inner_product() {
    let tol = tol();
    let algebra = Algebra::matrix(Ring::Complex, 2);
    let base = random_pd_form(&algebra, 601, &tol);
    let inv = invariant_inner_product(&algebra, &base, MC_SAMPLES, 31, &tol).unwrap();
    assert!(inv.residual <= 5e-3, "invariance residual {}", inv.residual);
    assert!(inv.atom_norm_spread <= 5e-3, "atom norm spread {}", inv.atom_norm_spread);
    // fresh atoms also have norm 1 ± 5e-3
    for trial in 0..50u64 {
        let mut rng = rng_for(derive_seed(606, trial));
        let atom = jordankit::sample::random_atom(&algebra, &mut rng, &tol);
        let norm = inv.form.eval(atom.element(), atom.element());
        assert!((norm - 1.0).abs() <= 5e-3, "fresh atom norm {norm}");
    }
    // bit-exact repeatability per seed
    let again = invariant_inner_product(&algebra, &base, MC_SAMPLES, 31, &tol).unwrap();
    assert_eq!(inv.form.gram(), again.form.gram());
    assert_eq!(inv.residual.to_bits(), again.residual.to_bits());
    println!(
        "[acceptance] criterion 6 (invariant product, residual {:.2e}, spread {:.2e}): PASS",
        inv.residual, inv.atom_norm_spread
    );
}

#[test]
fn criterion_7_reconstruction_end_to_end() {
    let tol = tol();
    let algebra = Algebra::matrix(Ring::Complex, 2);
    let base = random_pd_form(&algebra, 701, &tol);
    let rec = reconstruct_spin(&algebra, Some(&base), MC_SAMPLES, 71, &tol).unwrap();
    // the product table passes the Jordan verification at 1e-7
    let jordan = verify_jordan(&algebra, &rec.construction.table, 200, 72, &tol);
    assert_eq!(jordan.verdict, Verdict::Pass, "{:?}", jordan.witness.map(|w| w.description));
    assert!(jordan.worst_residual <= 1e-7);
    // constructed atoms are idempotent at 1e-7
    let unit = algebra.unit();
    for w in &rec.construction.v_basis {
        let atom = unit.scale(0.5).add(&w.scale(0.5f64.sqrt()));
        let sq = rec.construction.table.mul(atom.coords(), atom.coords());
        let idem = sq
            .iter()
            .zip(atom.coords())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(idem <= 1e-7, "constructed atom idempotency {idem}");
    }
    // Procrustes match against the native Jordan product within 10× the
    // invariance residual
    let cmp = compare_to_native(&algebra, &rec.construction, &tol);
    let limit = (10.0 * rec.invariant.residual).max(1e-7);
    assert!(cmp.aligned_residual <= limit, "aligned {} vs {limit}", cmp.aligned_residual);
    assert!(cmp.direct_residual <= limit, "direct {} vs {limit}", cmp.direct_residual);
    println!(
        "[acceptance] criterion 7 (reconstruction: aligned {:.2e} ≤ {:.2e}): PASS",
        cmp.aligned_residual, limit
    );
}

#[test]
fn criterion_8_negative_controls() {
    let tol = tol();
    // (a) H_2 ⊕ H_2 fails irreducibility with a serialized witness
    let sum = Algebra::direct_sum(vec![
        Algebra::matrix(Ring::Real, 2),
        Algebra::matrix(Ring::Real, 2),
    ]);
    let report = check_irreducible(&sum, 50, 8, &tol);
    assert_eq!(report.verdict, Verdict::Fail);
    let witness = report.witness.expect("irreducibility failure must carry a witness");
    let serialized = serde_json::to_string(&witness).unwrap();
    assert!(serialized.contains("coords"));
    // (b) a perturbed product table fails verify_jordan
    let spin = Algebra::spin(3);
    let bad = native_product_table(&spin).perturbed(0, 1, 2, 0.1);
    let report = verify_jordan(&spin, &bad, 100, 9, &tol);
    assert_eq!(report.verdict, Verdict::Fail);
    assert!(report.witness.is_some());
    // (c) cross-block atom pairs fail weak symmetry with a dimension
    // obstruction
    let mixed = Algebra::direct_sum(vec![
        Algebra::matrix(Ring::Complex, 2),
        Algebra::matrix(Ring::Real, 3),
    ]);
    let report = check_weak_symmetry(&mixed, 100, 10, &tol);
    assert_eq!(report.verdict, Verdict::Fail);
    let w = report.witness.expect("weak-symmetry failure must carry a witness");
    assert!(w.description.contains("dim"), "witness lacks the dimension obstruction: {}", w.description);
    println!("[acceptance] criterion 8 (negative controls): PASS");
}

#[test]
fn criterion_9_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_jordankit");
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "check", "--algebra", r#"{"kind":"matrix","ring":"C","m":2}"#,
            "--suite", "all", "--seed", "42", "--trials", "60", "--no-timestamp",
        ],
        vec![
            "spectral", "--algebra", r#"{"kind":"spin","n":3}"#,
            "--element", r#"{"algebra":{"kind":"spin","n":3},"coords":[2.0,1.0,0.0,0.0]}"#,
            "--no-timestamp",
        ],
        vec![
            "reconstruct", "--algebra", r#"{"kind":"matrix","ring":"R","m":2}"#,
            "--samples", "500", "--seed", "3", "--no-timestamp",
        ],
    ];
    for args in &cases {
        let run = |out: &str| {
            let output = Command::new(bin)
                .args(args)
                .args(["--out", out])
                .output()
                .expect("binary runs");
            assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
            output.stdout
        };
        let dir = std::env::temp_dir();
        let f1 = dir.join(format!("jk_det_{}_1.json", args[0]));
        let f2 = dir.join(format!("jk_det_{}_2.json", args[0]));
        let s1 = run(f1.to_str().unwrap());
        let s2 = run(f2.to_str().unwrap());
        assert_eq!(s1, s2, "{}: stdout not byte-identical", args[0]);
        let b1 = std::fs::read(&f1).unwrap();
        let b2 = std::fs::read(&f2).unwrap();
        assert_eq!(b1, b2, "{}: report files not byte-identical", args[0]);
        assert!(!b1.is_empty());
    }
    println!("[acceptance] criterion 9 (CLI determinism): PASS");
}
