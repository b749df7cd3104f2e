//! Seeded randomized verification suites.
//!
//! Each suite draws one random instance per trial, evaluates a fixed list
//! of properties on it and records a nonnegative residual per property. A
//! property passes on a trial when its residual is at most its tolerance.
//! Trials run in parallel; trial `t` of suite `s` always uses the generator
//! [`random::trial_rng`]`(seed, s, t)`, so reports depend only on
//! `(suite, seed, dim, trials)`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expectation::{
    expect_subspace, expect_unit, generated_subalgebra, left_regular, net_stabilization, norm,
    span_intersection, span_residual, supercommutant, SubalgebraBasis,
};
use crate::multivector::{Multivector, RealVector};
use crate::random;
use crate::subspace::Subspace;
use crate::tol::{DEFAULT_REP_CAP, EPS_CSTAR_REL, EPS_EQ, EPS_ORTH, EPS_RANK, MAX_ALGEBRA_DIM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Algebra,
    Duality,
    Expectation,
    Intersection,
    Stabilization,
    Cstar,
    All,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Algebra,
        Suite::Duality,
        Suite::Expectation,
        Suite::Intersection,
        Suite::Stabilization,
        Suite::Cstar,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Duality => "duality",
            Suite::Expectation => "expectation",
            Suite::Intersection => "intersection",
            Suite::Stabilization => "stabilization",
            Suite::Cstar => "cstar",
            Suite::All => "all",
        }
    }

    fn stream(self) -> u32 {
        self as u32
    }

    fn max_dim(self) -> usize {
        match self {
            Suite::Algebra => MAX_ALGEBRA_DIM,
            _ => DEFAULT_REP_CAP,
        }
    }

    fn properties(self) -> &'static [(&'static str, f64)] {
        match self {
            Suite::Algebra => ALGEBRA,
            Suite::Duality => DUALITY,
            Suite::Expectation => EXPECTATION,
            Suite::Intersection => INTERSECTION,
            Suite::Stabilization => STABILIZATION,
            Suite::Cstar => CSTAR,
            Suite::All => &[],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub passes: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub dim: usize,
    pub trials: usize,
    pub properties: Vec<PropertyOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyOutcome::passed)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyOutcome> {
        self.properties.iter().find(|p| p.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} (dim {}, {} trials, seed {})",
            self.suite, self.dim, self.trials, self.seed
        )?;
        for p in &self.properties {
            writeln!(
                f,
                "  {:<4} {:<46} {:>5}/{:<5} max residual {:.3e} (tolerance {:.0e})",
                if p.passed() { "ok" } else { "FAIL" },
                p.name,
                p.passes,
                p.passes + p.failures,
                p.max_residual,
                p.tolerance
            )?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Runs `trials` trials of `suite` in ambient dimension `dim`.
pub fn run_suite(suite: Suite, dim: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    let properties = if suite == Suite::All {
        let mut all = Vec::new();
        for s in &Suite::ALL[..6] {
            let report = run_suite(*s, dim, trials, seed)?;
            all.extend(report.properties.into_iter().map(|mut p| {
                p.name = format!("{}.{}", s.name(), p.name);
                p
            }));
        }
        all
    } else {
        run_single(suite, dim, trials, seed)?
    };
    Ok(VerificationReport {
        suite: suite.name().to_owned(),
        seed,
        dim,
        trials,
        properties,
    })
}

fn run_single(suite: Suite, dim: usize, trials: usize, seed: u64) -> Result<Vec<PropertyOutcome>> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if dim > suite.max_dim() {
        return Err(Error::DimensionTooLarge {
            dim,
            cap: suite.max_dim(),
        });
    }
    let props = suite.properties();
    let rows: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = random::trial_rng(seed, suite.stream(), t as u32);
            let residuals = match suite {
                Suite::Algebra => algebra_trial(&mut rng, dim),
                Suite::Duality => duality_trial(&mut rng, dim, t % (dim + 1)),
                Suite::Expectation => expectation_trial(&mut rng, dim, t % (dim + 1)),
                Suite::Intersection => intersection_trial(&mut rng, dim, 2 + t % 2),
                Suite::Stabilization => stabilization_trial(&mut rng, dim),
                Suite::Cstar => cstar_trial(&mut rng, dim),
                Suite::All => unreachable!("expanded by run_suite"),
            }?;
            debug_assert_eq!(residuals.len(), props.len());
            Ok(residuals)
        })
        .collect::<Result<_>>()?;
    Ok(props
        .iter()
        .enumerate()
        .map(|(i, &(name, tolerance))| {
            let mut outcome = PropertyOutcome {
                name: name.to_owned(),
                passes: 0,
                failures: 0,
                max_residual: 0.0,
                tolerance,
            };
            for row in &rows {
                let r = if row[i].is_nan() {
                    f64::INFINITY
                } else {
                    row[i]
                };
                if r <= tolerance {
                    outcome.passes += 1;
                } else {
                    outcome.failures += 1;
                }
                outcome.max_residual = outcome.max_residual.max(r);
            }
            outcome
        })
        .collect())
}

fn two_way_span_residual(a: &SubalgebraBasis, b: &SubalgebraBasis) -> Result<f64> {
    let r = span_residual(a, b)?.max(span_residual(b, a)?);
    Ok(if a.len() == b.len() { r } else { r.max(1.0) })
}

fn vector_mv(v: &RealVector) -> Result<Multivector> {
    Multivector::from_vector(v)
}

const ALGEBRA: &[(&str, f64)] = &[
    ("associativity", EPS_EQ),
    ("gamma_automorphism", EPS_EQ),
    ("gamma_involution", EPS_EQ),
    ("star_antiautomorphism", EPS_EQ),
    ("star_involution", EPS_EQ),
    ("star_gamma_commute", EPS_EQ),
    ("vector_square", EPS_EQ),
    ("even_odd_split", EPS_EQ),
];

fn algebra_trial(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<f64>> {
    let x = random::multivector(rng, n);
    let y = random::multivector(rng, n);
    let z = random::multivector(rng, n);
    let xy = x.mul(&y)?;
    let associativity = xy.mul(&z)?.max_abs_diff(&x.mul(&y.mul(&z)?)?)?;
    let gamma_auto = xy.gamma().max_abs_diff(&x.gamma().mul(&y.gamma())?)?;
    let gamma_inv = x.gamma().gamma().max_abs_diff(&x)?;
    let star_anti = xy.star().max_abs_diff(&y.star().mul(&x.star())?)?;
    let star_inv = x.star().star().max_abs_diff(&x)?;
    let star_gamma = x.star().gamma().max_abs_diff(&x.gamma().star())?;
    let v = random::unit_vector(rng, n);
    let vm = vector_mv(&v)?;
    let vector_square = vm
        .mul(&vm)?
        .max_abs_diff(&Multivector::one(n)?.scale_real(v.dot(&v)))?;
    let (even, odd) = x.even_odd_split();
    let split = even
        .add(&odd)?
        .max_abs_diff(&x)?
        .max(even.gamma().max_abs_diff(&even)?)
        .max(odd.gamma().max_abs_diff(&-&odd)?);
    Ok(vec![
        associativity,
        gamma_auto,
        gamma_inv,
        star_anti,
        star_inv,
        star_gamma,
        vector_square,
        split,
    ])
}

const DUALITY: &[(&str, f64)] = &[
    ("twisted_duality", EPS_RANK),
    ("supercommutant_dimension", 0.0),
    ("easy_inclusion", EPS_EQ),
];

fn duality_trial(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Result<Vec<f64>> {
    let z = random::subspace(rng, n, k);
    let commutant = supercommutant(&z)?;
    let complement_algebra = generated_subalgebra(&z.orthocomplement())?;
    let duality = two_way_span_residual(&commutant, &complement_algebra)?;
    let expected_dim = 1usize << (n - z.dim());
    let dim_gap = (commutant.len() as f64 - expected_dim as f64).abs();
    let mut inclusion: f64 = 0.0;
    for u in z.basis() {
        let um = vector_mv(u)?;
        for a in complement_algebra.elements() {
            inclusion = inclusion.max(um.mul(a)?.max_abs_diff(&a.gamma().mul(&um)?)?);
        }
    }
    Ok(vec![duality, dim_gap, inclusion])
}

const EXPECTATION: &[(&str, f64)] = &[
    ("conditional_expectation", EPS_EQ),
    ("contractivity", EPS_EQ),
    ("idempotence", EPS_EQ),
    ("fixed_points", EPS_EQ),
    ("basis_independence", EPS_EQ),
    ("projector_commutation", EPS_EQ),
    ("star_preservation", EPS_EQ),
    ("positivity", EPS_EQ),
    ("image_in_complement_algebra", EPS_RANK),
];

fn expectation_trial(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Result<Vec<f64>> {
    let z = random::subspace(rng, n, k);
    let target = generated_subalgebra(&z.orthocomplement())?;
    let c = random::multivector(rng, n);
    let left = random::element_of(rng, &target);
    let right = random::element_of(rng, &target);

    let ec = expect_subspace(&z, &c)?;
    let sandwich = expect_subspace(&z, &left.mul(&c)?.mul(&right)?)?;
    let cond = sandwich.max_abs_diff(&left.mul(&ec)?.mul(&right)?)?;

    let contractivity = (norm(&ec)? - norm(&c)?).max(0.0);
    let idempotence = expect_subspace(&z, &ec)?.max_abs_diff(&ec)?;

    let commutant = supercommutant(&z)?;
    let a = random::element_of(rng, &commutant);
    let fixed = expect_subspace(&z, &a)?.max_abs_diff(&a)?;

    let rotated = random::rotate_basis(rng, &z);
    let basis_independence = expect_subspace(&rotated, &c)?.max_abs_diff(&ec)?;

    let commutation = if n >= 2 {
        let plane = random::subspace(rng, n, 2);
        let (u, w) = (&plane.basis()[0], &plane.basis()[1]);
        let uw = expect_unit(u, &expect_unit(w, &c)?)?;
        let wu = expect_unit(w, &expect_unit(u, &c)?)?;
        uw.max_abs_diff(&wu)?
    } else {
        0.0
    };

    let star = expect_subspace(&z, &c.star())?.max_abs_diff(&ec.star())?;

    let rep = left_regular(&expect_subspace(&z, &c.star().mul(&c)?)?)?;
    let positivity = rep
        .hermitian_defect()
        .max(-rep.min_hermitian_eigenvalue())
        .max(0.0);

    let image = if ec.is_zero() {
        0.0
    } else {
        span_residual(&target, &SubalgebraBasis::new(n, vec![ec])?)?
    };

    Ok(vec![
        cond,
        contractivity,
        idempotence,
        fixed,
        basis_independence,
        commutation,
        star,
        positivity,
        image,
    ])
}

const INTERSECTION: &[(&str, f64)] = &[
    ("intersection_theorem", EPS_RANK),
    ("hilbert_identity", EPS_EQ),
    ("intersection_dimension_formula", 0.0),
    ("double_orthocomplement", EPS_EQ),
    ("complement_dimension", 0.0),
    ("spanning_orthonormality", EPS_ORTH),
    ("spanning_containment", EPS_RANK),
];

/// Random family of `members` subspaces sharing a random common core, so
/// that intersections are not generically trivial.
pub fn random_family(rng: &mut ChaCha8Rng, n: usize, members: usize) -> Vec<Subspace> {
    let core_dim = rng.random_range(0..n);
    let core = random::subspace(rng, n, core_dim);
    (0..members)
        .map(|_| {
            let extra = rng.random_range(0..=n - core_dim);
            let more = random::subspace(rng, n, extra);
            Subspace::sum(n, &[core.clone(), more]).expect("matching dimensions")
        })
        .collect()
}

fn intersection_trial(rng: &mut ChaCha8Rng, n: usize, members: usize) -> Result<Vec<f64>> {
    let family = random_family(rng, n, members);

    let algebras = family
        .iter()
        .map(generated_subalgebra)
        .collect::<Result<Vec<_>>>()?;
    let meet = Subspace::intersect(n, &family)?;
    let theorem = two_way_span_residual(
        &span_intersection(n, &algebras)?,
        &generated_subalgebra(&meet)?,
    )?;

    let complements: Vec<_> = family.iter().map(Subspace::orthocomplement).collect();
    let hilbert = Subspace::sum(n, &complements)?.projector_distance(&meet.orthocomplement())?;

    let (a, b) = (&family[0], &family[1]);
    let pair_meet = Subspace::intersect(n, &[a.clone(), b.clone()])?;
    let pair_sum = Subspace::sum(n, &[a.clone(), b.clone()])?;
    let formula = (a.dim() + b.dim()) as f64 - (pair_sum.dim() + pair_meet.dim()) as f64;

    let double = a
        .orthocomplement()
        .orthocomplement()
        .projector_distance(a)?;
    let complement_dim = (a.dim() + a.orthocomplement().dim()) as f64 - n as f64;

    // spanning sets with deliberate dependencies
    let count = rng.random_range(1..=n + 2);
    let mut vectors: Vec<RealVector> = (0..count).map(|_| random::unit_vector(rng, n)).collect();
    if count >= 2 {
        let mut dependent = vectors[0].scaled(0.5);
        dependent.axpy(-2.0, &vectors[1]);
        vectors.push(dependent.scaled(1.0 / dependent.norm()));
    }
    let spanned = Subspace::from_spanning(n, &vectors, EPS_RANK)?;
    let orthonormality = spanned.orthonormality_defect();
    let mut containment: f64 = 0.0;
    for v in &vectors {
        let p = spanned.project(v)?;
        containment = containment.max(p.max_abs_diff(v));
    }

    Ok(vec![
        theorem,
        hilbert,
        formula.abs(),
        double,
        complement_dim.abs(),
        orthonormality,
        containment,
    ])
}

const STABILIZATION: &[(&str, f64)] = &[
    ("net_stabilization", EPS_EQ),
    ("chain_reaches_projection", 0.0),
    ("limit_matches_full_expectation", EPS_EQ),
    ("limit_in_projected_complement", EPS_RANK),
];

/// An ascending chain inside `z` whose early members generally miss `x`
/// and whose later members contain it; the last member is `z` itself.
pub fn random_chain(rng: &mut ChaCha8Rng, z: &Subspace, x: &Subspace) -> Result<Vec<Subspace>> {
    let n = z.ambient_dim();
    let rest = Subspace::intersect(n, &[z.clone(), x.orthocomplement()])?;
    let lead = if rest.dim() > 0 {
        rng.random_range(0..=rest.dim().min(2))
    } else {
        0
    };
    let leading = random::subspace_within(rng, &rest, lead);
    let tail_space = Subspace::intersect(n, &[rest.clone(), leading.orthocomplement()])?;
    let tail = random::rotate_basis(rng, &tail_space);
    let mut ordered: Vec<RealVector> = leading.basis().to_vec();
    ordered.extend(random::rotate_basis(rng, x).basis().iter().cloned());
    ordered.extend(tail.basis().iter().cloned());
    Ok((0..=ordered.len())
        .map(|j| Subspace::from_orthonormal_unchecked(n, ordered[..j].to_vec()))
        .collect())
}

fn stabilization_trial(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<f64>> {
    let m_dim = rng.random_range(1..=n.min(3));
    let support = random::subspace(rng, n, m_dim);
    let c = random::element_of(rng, &generated_subalgebra(&support)?);
    let z_dim = rng.random_range(0..=n);
    let z = random::subspace(rng, n, z_dim);
    let x = z.project_subspace(&support)?;
    let chain = random_chain(rng, &z, &x)?;
    let report = net_stabilization(&c, &z, &chain, Some(&support))?;

    let reached = if report.first_containing.is_some() {
        0.0
    } else {
        1.0
    };
    let full = expect_subspace(&z, &c)?.max_abs_diff(&report.limit)?;
    let y = z.orthocomplement().project_subspace(&support)?;
    let limit_in_y = if report.limit.is_zero() {
        0.0
    } else {
        span_residual(
            &generated_subalgebra(&y)?,
            &SubalgebraBasis::new(n, vec![report.limit.clone()])?,
        )?
    };
    Ok(vec![report.max_residual, reached, full, limit_in_y])
}

const CSTAR: &[(&str, f64)] = &[
    ("cstar_identity", EPS_CSTAR_REL),
    ("star_isometry", EPS_EQ),
    ("submultiplicativity", EPS_EQ),
    ("representation_homomorphism", EPS_EQ),
    ("representation_adjoint", EPS_EQ),
    ("faithfulness", EPS_EQ),
    ("square_positivity", EPS_EQ),
];

fn cstar_trial(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<f64>> {
    let c = random::multivector(rng, n);
    let d = random::multivector(rng, n);
    let nc = norm(&c)?;
    let cc = c.star().mul(&c)?;
    let cstar = (norm(&cc)? - nc * nc).abs() / (nc * nc);
    let isometry = (norm(&c.star())? - nc).abs();
    let submult = (norm(&c.mul(&d)?)? - nc * norm(&d)?).max(0.0);
    let lc = left_regular(&c)?;
    let ld = left_regular(&d)?;
    let homomorphism = left_regular(&c.mul(&d)?)?.max_abs_diff(&lc.product(&ld));
    let adjoint = left_regular(&c.star())?.max_abs_diff(&lc.adjoint());
    let first_column = lc.matrix().column(0);
    let faithful = c
        .to_dense()
        .iter()
        .zip(first_column.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let lcc = left_regular(&cc)?;
    let positivity = lcc
        .hermitian_defect()
        .max(-lcc.min_hermitian_eigenvalue())
        .max(0.0);
    Ok(vec![
        cstar,
        isometry,
        submult,
        homomorphism,
        adjoint,
        faithful,
        positivity,
    ])
}
