//! Randomized exact identity suites.
//!
//! Each suite draws parameters from a seeded [`RationalSampler`], evaluates
//! both sides of one identity exactly, and records a failure on any
//! mismatch. Draws that hit a pole or degeneracy are discarded and redrawn;
//! they never count as trials. Trials run in parallel but every trial has its
//! own random stream and reports are assembled in trial order, so a report is
//! a pure function of `(suite, trials, seed, max_n)` apart from its timing.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{
    gdw_determinant, gdw_specialized, gdw_subset_sum, trapezoid_factorized, triangular_factorized,
    triangular_pair_specialized, z11_explicit,
};
use crate::contraction::{
    degree_profile, gdw_contract, trapezoid_value, trapezoid_value_with_aux_east, triangular_contract, ModelParams,
};
use crate::efp::{beta_at_frozen_east, efp_components, efp_determinant, gamma, is_probability, EfpParams};
use crate::error::{Error, Result};
use crate::sampler::RationalSampler;
use crate::scalar::Rational;
use crate::vertex::{check_unitarity, check_yang_baxter, pairing, Side};

/// Redraws allowed per trial before the trial is recorded as a failure.
pub const MAX_REDRAWS: usize = 1000;

/// Largest total column count used by the trapezoid-based suites.
pub const MAX_TRAPEZOID_COLUMNS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    YangBaxter,
    Unitarity,
    TriangularFactorization,
    TriangularVanishing,
    TriangularDegree,
    TriangularPairSpecialization,
    GdwTripleEquality,
    GdwSpecialization,
    TrapezoidFactorization,
    TrapezoidEIndependence,
    TwoRegimeFactorization,
    EfpEquality,
    EfpRegime,
}

/// Lattice dimensions of one trial. The meaning of each field depends on
/// the suite: `n` is the line count (triangle), the column count (rectangle)
/// or the bottom width (trapezoid, emptiness); `m` is the row count or the
/// emptiness length; `j` selects a rapidity index where one is needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub n: usize,
    pub m: usize,
    pub j: usize,
}

impl Shape {
    pub fn new(n: usize, m: usize, j: usize) -> Self {
        Shape { n, m, j }
    }
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::YangBaxter,
        Suite::Unitarity,
        Suite::TriangularFactorization,
        Suite::TriangularVanishing,
        Suite::TriangularDegree,
        Suite::TriangularPairSpecialization,
        Suite::GdwTripleEquality,
        Suite::GdwSpecialization,
        Suite::TrapezoidFactorization,
        Suite::TrapezoidEIndependence,
        Suite::TwoRegimeFactorization,
        Suite::EfpEquality,
        Suite::EfpRegime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::YangBaxter => "yang-baxter",
            Suite::Unitarity => "unitarity",
            Suite::TriangularFactorization => "triangular-factorization",
            Suite::TriangularVanishing => "triangular-vanishing",
            Suite::TriangularDegree => "triangular-degree",
            Suite::TriangularPairSpecialization => "triangular-pair-specialization",
            Suite::GdwTripleEquality => "gdw-triple-equality",
            Suite::GdwSpecialization => "gdw-specialization",
            Suite::TrapezoidFactorization => "trapezoid-factorization",
            Suite::TrapezoidEIndependence => "trapezoid-e-independence",
            Suite::TwoRegimeFactorization => "two-regime-factorization",
            Suite::EfpEquality => "efp-equality",
            Suite::EfpRegime => "efp-regime",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    fn index(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).expect("suite is listed") as u64
    }

    /// Shapes cycled through by the trials, derived from `max_n`.
    ///
    /// Triangle and rectangle suites use sizes up to `max_n`. Trapezoid-based
    /// suites bound the total column count `n + m` by `2 * max_n` (at most
    /// [`MAX_TRAPEZOID_COLUMNS`]). Emptiness suites use `n <= max_n` and
    /// `m <= min(max_n, 4)`.
    pub fn shapes(self, max_n: usize) -> Vec<Shape> {
        let k = max_n.max(1);
        let columns = (2 * k).min(MAX_TRAPEZOID_COLUMNS);
        let rectangles = |limit: usize| {
            (1..=limit)
                .flat_map(|n| (1..=n).map(move |m| Shape::new(n, m, 0)))
                .collect::<Vec<_>>()
        };
        match self {
            Suite::YangBaxter | Suite::Unitarity => vec![Shape::new(3, 0, 0)],
            Suite::TriangularFactorization => (1..=k).map(|n| Shape::new(n, 0, 0)).collect(),
            Suite::TriangularVanishing => (2..=k.max(2))
                .flat_map(|n| (1..n).map(move |j| Shape::new(n, 0, j)))
                .collect(),
            Suite::TriangularDegree => (2..=k.max(2))
                .flat_map(|n| (1..=n).map(move |j| Shape::new(n, 0, j)))
                .collect(),
            Suite::TriangularPairSpecialization => (2..=k.max(2)).map(|n| Shape::new(n, 0, 0)).collect(),
            Suite::GdwTripleEquality | Suite::GdwSpecialization => rectangles(k),
            Suite::TrapezoidFactorization | Suite::TrapezoidEIndependence => (1..=columns)
                .flat_map(|total| (1..=total).map(move |m| Shape::new(total - m, m, 0)))
                .collect(),
            Suite::TwoRegimeFactorization => rectangles(columns),
            Suite::EfpEquality => (0..=k)
                .flat_map(|n| (0..=k.min(4)).map(move |m| Shape::new(n, m, 0)))
                .collect(),
            Suite::EfpRegime => (0..=k)
                .flat_map(|n| (1..=k.min(4)).map(move |m| Shape::new(n, m, 0)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: usize,
    pub identity: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub max_n: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    pub elapsed_seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CombinedReport {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub max_n: usize,
    pub passes: usize,
    pub failure_count: usize,
    pub suites: Vec<SuiteReport>,
    pub elapsed_seconds: f64,
}

impl CombinedReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_n: usize,
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> SuiteReport {
    let shapes = suite.shapes(config.max_n);
    run_suite_with_shapes(suite, &shapes, config)
}

/// Runs `config.trials` trials; trial `t` uses `shapes[t % shapes.len()]`.
pub fn run_suite_with_shapes(suite: Suite, shapes: &[Shape], config: &VerifyConfig) -> SuiteReport {
    assert!(!shapes.is_empty(), "suite needs at least one shape");
    let start = Instant::now();
    let failures: Vec<Failure> = (0..config.trials)
        .into_par_iter()
        .filter_map(|trial| {
            let shape = shapes[trial % shapes.len()];
            let stream = (suite.index() << 40) | trial as u64;
            let mut sampler = RationalSampler::for_stream(config.seed, stream);
            run_trial(suite, shape, &mut sampler).map(|m| Failure {
                trial,
                identity: m.identity,
                inputs: m.inputs,
                expected: m.expected,
                actual: m.actual,
            })
        })
        .collect();
    SuiteReport {
        suite: suite.name().to_string(),
        trials: config.trials,
        seed: config.seed,
        max_n: config.max_n,
        passes: config.trials - failures.len(),
        failures,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_all(config: &VerifyConfig) -> CombinedReport {
    let start = Instant::now();
    let suites: Vec<SuiteReport> = Suite::ALL.iter().map(|&s| run_suite(s, config)).collect();
    CombinedReport {
        suite: "all".to_string(),
        trials: suites.iter().map(|r| r.trials).sum(),
        seed: config.seed,
        max_n: config.max_n,
        passes: suites.iter().map(|r| r.passes).sum(),
        failure_count: suites.iter().map(|r| r.failures.len()).sum(),
        suites,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}

struct Mismatch {
    identity: String,
    inputs: String,
    expected: String,
    actual: String,
}

/// Outcome of one draw: `Ok(None)` passes, `Ok(Some(_))` fails,
/// a singular `Err` asks for a redraw.
type Draw = Result<Option<Mismatch>>;

fn run_trial(suite: Suite, shape: Shape, rng: &mut RationalSampler) -> Option<Mismatch> {
    let mut last_error = None;
    for _ in 0..MAX_REDRAWS {
        match draw(suite, shape, rng) {
            Ok(outcome) => return outcome,
            Err(e) if e.is_singular() => last_error = Some(e),
            Err(e) => {
                return Some(Mismatch {
                    identity: suite.name().to_string(),
                    inputs: format!("{shape:?}"),
                    expected: "a value".into(),
                    actual: format!("error: {e}"),
                })
            }
        }
    }
    Some(Mismatch {
        identity: suite.name().to_string(),
        inputs: format!("{shape:?}"),
        expected: "a pole-free draw".into(),
        actual: format!(
            "no pole-free draw in {MAX_REDRAWS} attempts; last: {}",
            last_error.map(|e| e.to_string()).unwrap_or_default()
        ),
    })
}

fn list(xs: &[Rational]) -> String {
    let mut out = String::from("[");
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{x}");
    }
    out.push(']');
    out
}

fn compare(identity: &str, inputs: &str, expected: &Rational, actual: &Rational) -> Option<Mismatch> {
    (expected != actual).then(|| Mismatch {
        identity: identity.to_string(),
        inputs: inputs.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    })
}

fn holds(identity: &str, inputs: &str, ok: bool) -> Option<Mismatch> {
    (!ok).then(|| Mismatch {
        identity: identity.to_string(),
        inputs: inputs.to_string(),
        expected: "true".into(),
        actual: "false".into(),
    })
}

fn draw(suite: Suite, shape: Shape, rng: &mut RationalSampler) -> Draw {
    match suite {
        Suite::YangBaxter => {
            let (ui, uj, uk, c) = (rng.rational(), rng.rational(), rng.rational(), rng.nonzero());
            let inputs = format!("u=({ui}, {uj}, {uk}) c={c}");
            Ok(holds(
                "R12 R13 R23 = R23 R13 R12",
                &inputs,
                check_yang_baxter(&ui, &uj, &uk, &c)?,
            ))
        }
        Suite::Unitarity => {
            let (uj, uk, c) = (rng.rational(), rng.rational(), rng.nonzero());
            let inputs = format!("u=({uj}, {uk}) c={c}");
            Ok(holds(
                "R_jk R_kj = scalar identity",
                &inputs,
                check_unitarity(&uj, &uk, &c)?,
            ))
        }
        Suite::TriangularFactorization => {
            let (u, c) = (rng.rationals(shape.n), rng.nonzero());
            let (e, s) = (rng.vector(Side::East), rng.vector(Side::South));
            let inputs = format!("u={} c={c} {e} {s}", list(&u));
            let actual = triangular_contract(&u, &c, &e, &s)?;
            let expected = triangular_factorized(&u, &c, &e, &s)?;
            Ok(compare(
                "triangular contraction = factorized form",
                &inputs,
                &expected,
                &actual,
            ))
        }
        Suite::TriangularVanishing => {
            let (n, j) = (shape.n, shape.j);
            let (mut u, c) = (rng.rationals(n), rng.nonzero());
            u[n - 1] = &u[j - 1] + &c;
            let (e, s) = (rng.vector(Side::East), rng.vector(Side::South));
            let inputs = format!("j={j} u={} c={c} {e} {s}", list(&u));
            let actual = triangular_contract(&u, &c, &e, &s)?;
            Ok(compare("Z_n = 0 at u_n = u_j + c", &inputs, &Rational::zero(), &actual))
        }
        Suite::TriangularDegree => {
            let (n, j) = (shape.n, shape.j);
            let (u, c) = (rng.rationals(n), rng.nonzero());
            let (e, s) = (rng.vector(Side::East), rng.vector(Side::South));
            let nodes = rng.distinct(n + 2);
            let inputs = format!("j={j} u={} c={c} {e} {s} nodes={}", list(&u), list(&nodes));
            let coeffs = degree_profile(&u, j, &nodes, &c, &e, &s)?;
            let high = &coeffs[n..];
            Ok((!high.iter().all(Rational::is_zero)).then(|| Mismatch {
                identity: "deg_{u_j} Z_n <= n - 1".into(),
                inputs,
                expected: "zero coefficients at degree >= n".into(),
                actual: list(high),
            }))
        }
        Suite::TriangularPairSpecialization => {
            let n = shape.n;
            let (mut u, c) = (rng.rationals(n), rng.nonzero());
            for j in 0..n / 2 {
                u[n - 1 - j] = u[j].clone();
            }
            let (e, s) = (rng.vector(Side::East), rng.vector(Side::South));
            let inputs = format!("u={} c={c} {e} {s}", list(&u));
            let actual = triangular_contract(&u, &c, &e, &s)?;
            let expected = triangular_pair_specialized(&u, &c, &e, &s)?;
            Ok(compare(
                "Z_n at u_j = u_(n+1-j) = unitarity product",
                &inputs,
                &expected,
                &actual,
            ))
        }
        Suite::GdwTripleEquality => {
            let params = ModelParams::new(
                rng.nonzero(),
                rng.distinct(shape.m),
                rng.rationals(shape.n),
                rng.vectors(),
            )?;
            let inputs = model_inputs(&params);
            let subset = gdw_subset_sum(&params)?;
            let det = gdw_determinant(&params)?;
            let contracted = gdw_contract(&params)?;
            if let Some(m) = compare("contraction = subset sum", &inputs, &subset, &contracted) {
                return Ok(Some(m));
            }
            if let Some(m) = compare("subset sum = determinant", &inputs, &subset, &det) {
                return Ok(Some(m));
            }
            if shape.m == 1 && shape.n == 1 {
                let z11 = z11_explicit(&params.u[0], &params.v[0], &params.c, &params.vectors)?;
                return Ok(compare("Z_11 expansion = determinant", &inputs, &z11, &det));
            }
            Ok(None)
        }
        Suite::GdwSpecialization => {
            let (m, n) = (shape.m, shape.n);
            let mut v = rng.rationals(n - m);
            v.extend(rng.distinct(m));
            let u = v[n - m..].to_vec();
            let params = ModelParams::new(rng.nonzero(), u, v, rng.vectors())?;
            let inputs = model_inputs(&params);
            let expected = gdw_specialized(&params.v, m, &params.c, &params.vectors)?;
            let contracted = gdw_contract(&params)?;
            if let Some(mm) = compare(
                "contraction at u_i = v_(n-m+i) = specialized product",
                &inputs,
                &expected,
                &contracted,
            ) {
                return Ok(Some(mm));
            }
            let subset = gdw_subset_sum(&params)?;
            Ok(compare(
                "subset sum at u_i = v_(n-m+i) = specialized product",
                &inputs,
                &expected,
                &subset,
            ))
        }
        Suite::TrapezoidFactorization => {
            let (n, m) = (shape.n, shape.m);
            let (v, c, vecs) = (rng.rationals(n + m), rng.nonzero(), rng.vectors());
            let inputs = format!("n={n} m={m} v={} c={c} {vecs}", list(&v));
            let actual = trapezoid_value(&v, n, m, &c, &vecs)?;
            let expected = trapezoid_factorized(&v, n, m, &c, &vecs)?;
            Ok(compare(
                "trapezoid quotient = factorized form",
                &inputs,
                &expected,
                &actual,
            ))
        }
        Suite::TrapezoidEIndependence => {
            let (n, m) = (shape.n, shape.m);
            let (v, c, vecs) = (rng.rationals(n + m), rng.nonzero(), rng.vectors());
            let (e1, e2) = (rng.vector(Side::East), rng.vector(Side::East));
            let inputs = format!("n={n} m={m} v={} c={c} {vecs} aux1={e1} aux2={e2}", list(&v));
            let first = trapezoid_value_with_aux_east(&v, n, m, &c, &vecs, &e1)?;
            let second = trapezoid_value_with_aux_east(&v, n, m, &c, &vecs, &e2)?;
            Ok(compare(
                "trapezoid independent of auxiliary e",
                &inputs,
                &first,
                &second,
            ))
        }
        Suite::TwoRegimeFactorization => {
            let (m, n) = (shape.m, shape.n);
            let (v, c, vecs) = (rng.rationals(n), rng.nonzero(), rng.vectors());
            let aux = rng.vector(Side::East);
            let top = &v[n - m..];
            let params = ModelParams::new(c.clone(), top.to_vec(), v.clone(), vecs.clone())?;
            let inputs = format!("{} aux={aux}", model_inputs(&params));
            if pairing(&vecs.east, &vecs.south).is_zero() {
                return Err(Error::degenerate("e_1 s_1 + e_2 s_2", "two-regime triangle"));
            }
            let whole = gdw_contract(&params)?;
            let trapezoid = trapezoid_value_with_aux_east(&v, n - m, m, &c, &vecs, &aux)?;
            let triangle = triangular_contract(top, &c, &vecs.east, &vecs.south)?;
            if let Some(mm) = compare(
                "Z_mn at u_i = v_(n-m+i) = T x Z_m",
                &inputs,
                &whole,
                &(&trapezoid * &triangle),
            ) {
                return Ok(Some(mm));
            }
            let closed = trapezoid_factorized(&v, n - m, m, &c, &vecs)?
                * triangular_factorized(top, &c, &vecs.east, &vecs.south)?;
            Ok(compare("T x Z_m closed forms = contraction", &inputs, &closed, &whole))
        }
        Suite::EfpEquality => {
            let (n, m) = (shape.n, shape.m);
            let p = EfpParams::new(n, m, rng.distinct(n + m), rng.nonzero(), rng.vectors())?;
            let inputs = efp_inputs(&p);
            let det = efp_determinant(&p)?;
            let components = efp_components(&p)?;
            if let Some(mm) = compare(
                "emptiness determinant = contraction components",
                &inputs,
                &components,
                &det,
            ) {
                return Ok(Some(mm));
            }
            if m == 0 {
                if let Some(mm) = compare("P(0) = 1", &inputs, &Rational::one(), &components) {
                    return Ok(Some(mm));
                }
            }
            let g = gamma(&p.vectors)?;
            Ok(compare(
                "gamma = beta at e = (1, 0)",
                &inputs,
                &beta_at_frozen_east(&p.vectors)?,
                &g,
            ))
        }
        Suite::EfpRegime => {
            let (n, m) = (shape.n, shape.m);
            let p = EfpParams::new(n, m, rng.increasing(n + m), rng.positive(), rng.nonnegative_vectors())?;
            let inputs = efp_inputs(&p);
            let det = efp_determinant(&p)?;
            let components = efp_components(&p)?;
            if let Some(mm) = compare(
                "emptiness determinant = contraction components",
                &inputs,
                &components,
                &det,
            ) {
                return Ok(Some(mm));
            }
            Ok((!is_probability(&det)).then(|| Mismatch {
                identity: "0 <= P(m) <= 1 in the ordered nonnegative regime".into(),
                inputs,
                expected: "value in [0, 1]".into(),
                actual: det.to_string(),
            }))
        }
    }
}

fn model_inputs(p: &ModelParams) -> String {
    format!("u={} v={} c={} {}", list(&p.u), list(&p.v), p.c, p.vectors)
}

fn efp_inputs(p: &EfpParams) -> String {
    format!("n={} m={} v={} c={} {}", p.n, p.m, list(&p.v_all), p.c, p.vectors)
}
