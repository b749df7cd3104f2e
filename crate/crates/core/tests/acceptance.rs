//! Exit criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p clifford-duality --test acceptance -- --nocapture` to see
//! them. Criteria run one at a time so the timed ones are not measured
//! under contention.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use clifford_duality::random;
use clifford_duality::tol::{EPS_CSTAR_REL, EPS_EQ, EPS_RANK};
use clifford_duality::verify::{run_suite, Suite, VerificationReport};
use clifford_duality::{
    expect_subspace, expect_unit, min_eigenvalue, norm, span_equal, span_residual, supercommutant,
    Multivector, RealVector, SubalgebraBasis, Subspace,
};

static SERIAL: Mutex<()> = Mutex::new(());

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "[{}] {criterion}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{criterion} failed: {detail}");
}

/// Checks that every listed property passed on exactly `trials` trials at
/// its pinned tolerance. Returns the worst residual.
fn require(r: &VerificationReport, names: &[(&str, f64)], trials: usize) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for &(name, tol) in names {
        let p = r
            .property(name)
            .ok_or_else(|| format!("missing property {name}"))?;
        if p.tolerance != tol {
            return Err(format!("{name}: tolerance {} != {tol}", p.tolerance));
        }
        if p.passes != trials || p.failures != 0 {
            return Err(format!(
                "{name}: {}/{} passed, max residual {:e}",
                p.passes, trials, p.max_residual
            ));
        }
        worst = worst.max(p.max_residual);
    }
    Ok(worst)
}

#[test]
fn twisted_duality() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut outcome: Result<(), String> = Ok(());
    for n in 1..=8 {
        // trial t uses dim Z = t mod (n + 1), so this is 25 subspaces per dimension
        let trials = 25 * (n + 1);
        let r = run_suite(Suite::Duality, n, trials, 1000 + n as u64).unwrap();
        match require(
            &r,
            &[
                ("twisted_duality", EPS_RANK),
                ("supercommutant_dimension", 0.0),
                ("easy_inclusion", EPS_EQ),
            ],
            trials,
        ) {
            Ok(w) => worst = worst.max(w),
            Err(e) => {
                outcome = Err(format!("n={n}: {e}"));
                break;
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = outcome.is_ok() && elapsed < Duration::from_secs(60);
    let detail = match outcome {
        Ok(()) => format!(
            "n=1..8, 25 subspaces per dim Z, span residual <= {worst:.2e} (<= 1e-9), dim C(Z)' = 2^(n-dim Z), {:.1}s (< 60s)",
            elapsed.as_secs_f64()
        ),
        Err(e) => e,
    };
    report("twisted duality C(Z)' = C(Z⊥)", ok, &detail);
}

#[test]
fn conditional_expectation() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let triples = run_suite(Suite::Expectation, 6, 200, 2001).unwrap();
    let cond = require(&triples, &[("conditional_expectation", EPS_EQ)], 200);
    let mut contract: Result<f64, String> = Ok(0.0);
    for n in [3, 6] {
        let r = run_suite(Suite::Expectation, n, 100, 2002 + n as u64).unwrap();
        contract =
            contract.and_then(|w| Ok(w.max(require(&r, &[("contractivity", EPS_EQ)], 100)?)));
    }
    let ok = cond.is_ok() && contract.is_ok();
    report(
        "conditional expectation E_Z(l c r) = l E_Z(c) r and contractivity",
        ok,
        &format!("200 triples at n=6: {cond:?}; 100 contractivity draws at n=3,6: {contract:?}"),
    );
}

#[test]
fn net_stabilization() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut results = Vec::new();
    for n in [4, 8] {
        let r = run_suite(Suite::Stabilization, n, 50, 3000 + n as u64).unwrap();
        results.push((
            n,
            require(
                &r,
                &[
                    ("net_stabilization", EPS_EQ),
                    ("chain_reaches_projection", 0.0),
                    ("limit_matches_full_expectation", EPS_EQ),
                ],
                50,
            ),
        ));
    }
    let ok = results.iter().all(|(_, r)| r.is_ok());
    report(
        "net stabilization E_N(c) = E_X(c) once N ⊇ X",
        ok,
        &format!("50 instances each: {results:?}"),
    );
}

#[test]
fn intersection_theorem() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut results = Vec::new();
    for n in [3, 6] {
        let r = run_suite(Suite::Intersection, n, 50, 4000 + n as u64).unwrap();
        results.push((
            n,
            require(
                &r,
                &[
                    ("intersection_theorem", EPS_RANK),
                    ("hilbert_identity", EPS_EQ),
                ],
                50,
            ),
        ));
    }
    let ok = results.iter().all(|(_, r)| r.is_ok());
    report(
        "intersection theorem ∩ C(Z_λ) = C(∩ Z_λ)",
        ok,
        &format!("50 families of 2-3 subspaces each: {results:?}"),
    );
}

#[test]
fn cstar_and_positivity() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let r = run_suite(Suite::Cstar, 6, 100, 5006).unwrap();
    let cstar = require(
        &r,
        &[
            ("cstar_identity", EPS_CSTAR_REL),
            ("square_positivity", EPS_EQ),
        ],
        100,
    );
    let n = 6;
    let mut lowest = f64::INFINITY;
    for t in 0..100u32 {
        let mut rng = random::trial_rng(5007, 0, t);
        let k = t as usize % (n + 1);
        let z = random::subspace(&mut rng, n, k);
        let c = random::multivector(&mut rng, n);
        let e = expect_subspace(&z, &c.star().mul(&c).unwrap()).unwrap();
        lowest = lowest.min(min_eigenvalue(&e).unwrap());
    }
    let ok = cstar.is_ok() && lowest >= -1e-8;
    report(
        "C* identity and positivity of E_Z(c*c)",
        ok,
        &format!("norm(c*c)=norm(c)^2 on 100 draws: {cstar:?}; min eigenvalue of E_Z(c*c) over 100 draws {lowest:.3e} (>= -1e-8)"),
    );
}

#[test]
fn algebra_laws() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let a = run_suite(Suite::Algebra, 6, 100, 6006).unwrap();
    let laws = require(
        &a,
        &[
            ("associativity", EPS_EQ),
            ("gamma_automorphism", EPS_EQ),
            ("gamma_involution", EPS_EQ),
            ("star_antiautomorphism", EPS_EQ),
            ("star_involution", EPS_EQ),
            ("star_gamma_commute", EPS_EQ),
            ("vector_square", EPS_EQ),
        ],
        100,
    );
    let e = run_suite(Suite::Expectation, 6, 100, 6007).unwrap();
    let projectors = require(
        &e,
        &[
            ("projector_commutation", EPS_EQ),
            ("basis_independence", EPS_EQ),
        ],
        100,
    );
    report(
        "algebra laws",
        laws.is_ok() && projectors.is_ok(),
        &format!("100 draws at n=6: laws {laws:?}, projector commutation and basis independence {projectors:?}"),
    );
}

#[test]
fn fixed_worked_values() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let tol = 1e-10;
    let one = |n| Multivector::one(n).unwrap();
    let e = |n, i| Multivector::generator(n, i).unwrap();

    let norm_e1 = norm(&e(2, 1)).unwrap();
    let norm_1_e1 = norm(&(&one(2) + &e(2, 1))).unwrap();

    let s = supercommutant(&Subspace::coordinate(2, &[1]).unwrap()).unwrap();
    let want = SubalgebraBasis::new(2, vec![one(2), e(2, 2)]).unwrap();
    let commutant_ok = span_equal(&s, &want).unwrap()
        && span_residual(&s, &want).unwrap() <= tol
        && span_residual(&want, &s).unwrap() <= tol;

    let c = &one(2) + &Multivector::blade(2, 0b11).unwrap();
    let expectation = expect_unit(&RealVector::unit(2, 0), &c).unwrap();
    let expectation_gap = expectation.max_abs_diff(&one(2)).unwrap();

    let ok = (norm_e1 - 1.0).abs() <= tol
        && (norm_1_e1 - 2.0).abs() <= tol
        && commutant_ok
        && expectation_gap <= tol;
    report(
        "fixed worked values",
        ok,
        &format!(
            "norm(e1)={norm_e1}, norm(1+e1)={norm_1_e1}, supercommutant(span e1)=span(1,e2): {commutant_ok}, |E_e1(1+e1e2) - 1| = {expectation_gap:e}"
        ),
    );
}

#[test]
fn full_verify_run() {
    let _g = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = clifford_duality::cli::run(
        [
            "clifford", "verify", "--suite", "all", "--dim", "6", "--trials", "100",
        ],
        &mut std::io::empty(),
        &mut out,
        &mut err,
    );
    let elapsed = start.elapsed();
    let ok = code == 0 && elapsed < Duration::from_secs(300);
    report(
        "verify --suite all --dim 6 --trials 100",
        ok,
        &format!("exit {code} in {:.1}s (< 300s)", elapsed.as_secs_f64()),
    );
}
