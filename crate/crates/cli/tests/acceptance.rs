//! Acceptance criteria, one line per criterion. Every comparison is exact.
//!
//! Identity criteria run the library's seeded suites over explicit shape
//! lists with a fixed number of draws per shape; the golden values and the
//! command-line determinism check are run directly.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use svf_core::closed_forms::{gdw_determinant, gdw_subset_sum, triangular_factorized, z11_explicit};
use svf_core::contraction::{gdw_contract, triangular_contract};
use svf_core::efp::{beta_at_frozen_east, efp_components, efp_determinant, gamma};
use svf_core::sampler::RationalSampler;
use svf_core::verify::{run_suite_with_shapes, Shape, Suite, SuiteReport, VerifyConfig, MAX_REDRAWS};
use svf_core::{BoundaryVector, BoundaryVectors, EfpParams, ModelParams, Rational, Side};

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn qs(items: &[&str]) -> Vec<Rational> {
    items.iter().map(|s| q(s)).collect()
}

fn expect_eq(what: &str, expected: &Rational, actual: &Rational) -> Result<(), String> {
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{what}: expected {expected}, got {actual}"))
    }
}

/// Runs `suite` with exactly `trials` draws cycled over `shapes`.
fn suite(suite: Suite, shapes: &[Shape], trials: usize) -> Result<SuiteReport, String> {
    let config = VerifyConfig {
        trials,
        seed: SEED,
        max_n: shapes.iter().map(|s| s.n).max().unwrap_or(0),
    };
    let report = run_suite_with_shapes(suite, shapes, &config);
    match report.failures.first() {
        None if report.passes == trials => Ok(report),
        None => Err(format!("{}: {} of {trials} passed", suite.name(), report.passes)),
        Some(f) => Err(format!(
            "{}: {} failures; first: {} at {} (expected {}, got {})",
            suite.name(),
            report.failures.len(),
            f.identity,
            f.inputs,
            f.expected,
            f.actual
        )),
    }
}

fn per_shape(s: Suite, shapes: &[Shape], draws: usize) -> Result<usize, String> {
    let trials = shapes.len() * draws;
    suite(s, shapes, trials)?;
    Ok(trials)
}

fn triangles(sizes: std::ops::RangeInclusive<usize>) -> Vec<Shape> {
    sizes.map(|n| Shape::new(n, 0, 0)).collect()
}

fn rectangles(max_n: usize) -> Vec<Shape> {
    (1..=max_n)
        .flat_map(|n| (1..=n).map(move |m| Shape::new(n, m, 0)))
        .collect()
}

fn ones() -> BoundaryVectors {
    BoundaryVectors::uniform(q("1"))
}

fn criterion_1() -> Outcome {
    let one = BoundaryVector::new(Side::East, q("1"), q("1"));
    let u = qs(&["1", "0"]);
    expect_eq(
        "Z_2 contraction",
        &q("8"),
        &triangular_contract(&u, &q("1"), &one, &one).map_err(|e| e.to_string())?,
    )?;
    expect_eq(
        "Z_2 factorized",
        &q("8"),
        &triangular_factorized(&u, &q("1"), &one, &one).map_err(|e| e.to_string())?,
    )?;
    let trials = per_shape(Suite::TriangularFactorization, &triangles(1..=8), 25)?;
    Ok(format!("n = 1..8, {trials} draws, golden Z_2 = 8"))
}

fn criterion_2() -> Outcome {
    let shapes: Vec<Shape> = (2..=5)
        .flat_map(|n| (1..=n).map(move |j| Shape::new(n, 0, j)))
        .collect();
    let trials = per_shape(Suite::TriangularDegree, &shapes, 5)?;
    Ok(format!(
        "n = 2..5, every u_j, {trials} interpolations through n + 2 nodes"
    ))
}

fn criterion_3() -> Outcome {
    let shapes: Vec<Shape> = (2..=6).flat_map(|n| (1..n).map(move |j| Shape::new(n, 0, j))).collect();
    suite(Suite::TriangularVanishing, &shapes, 50)?;
    Ok("50 draws, n <= 6, all exactly 0".into())
}

fn criterion_4() -> Outcome {
    let trials = per_shape(Suite::TriangularPairSpecialization, &triangles(2..=6), 10)?;
    Ok(format!("n = 2..6, {trials} draws"))
}

fn criterion_5() -> Outcome {
    let three = [Shape::new(3, 0, 0)];
    suite(Suite::YangBaxter, &three, 100)?;
    suite(Suite::Unitarity, &three, 100)?;
    Ok("100 Yang-Baxter draws, 100 unitarity draws".into())
}

fn criterion_6() -> Outcome {
    let p = ModelParams::new(q("1"), qs(&["1"]), qs(&["0"]), ones()).unwrap();
    let z11 = z11_explicit(&q("1"), &q("0"), &q("1"), &ones()).map_err(|e| e.to_string())?;
    expect_eq("Z_11 expansion", &q("8"), &z11)?;
    expect_eq("Z_11 contraction", &z11, &gdw_contract(&p).map_err(|e| e.to_string())?)?;
    expect_eq("Z_11 subset sum", &z11, &gdw_subset_sum(&p).map_err(|e| e.to_string())?)?;
    expect_eq(
        "Z_11 determinant",
        &z11,
        &gdw_determinant(&p).map_err(|e| e.to_string())?,
    )?;
    // the suite also compares against the explicit expansion on every 1 x 1 draw
    let trials = per_shape(Suite::GdwTripleEquality, &rectangles(5), 25)?;
    Ok(format!("1 <= m <= n <= 5, {trials} pole-free draws"))
}

fn criterion_7() -> Outcome {
    let trials = per_shape(Suite::GdwSpecialization, &rectangles(5), 25)?;
    Ok(format!("1 <= m <= n <= 5, {trials} draws"))
}

fn criterion_8() -> Outcome {
    let trapezoids: Vec<Shape> = (1..=10)
        .flat_map(|total| (1..=total).map(move |m| Shape::new(total - m, m, 0)))
        .collect();
    let t1 = per_shape(Suite::TrapezoidFactorization, &trapezoids, 25)?;
    let t2 = per_shape(Suite::TwoRegimeFactorization, &rectangles(10), 25)?;
    let t3 = per_shape(Suite::TrapezoidEIndependence, &trapezoids, 25)?;
    Ok(format!(
        "n + m <= 10: {t1} trapezoid, {t2} two-regime, {t3} auxiliary-e draws"
    ))
}

fn criterion_9() -> Outcome {
    let golden = EfpParams::new(
        1,
        1,
        qs(&["0", "1"]),
        q("1"),
        BoundaryVectors::new((q("1"), q("1")), (q("1"), q("1")), (q("1"), q("0")), (q("0"), q("1"))),
    )
    .unwrap();
    expect_eq(
        "golden P(1) determinant",
        &q("1/2"),
        &efp_determinant(&golden).map_err(|e| e.to_string())?,
    )?;
    expect_eq(
        "golden P(1) components",
        &q("1/2"),
        &efp_components(&golden).map_err(|e| e.to_string())?,
    )?;

    let equality: Vec<Shape> = (0..=6)
        .flat_map(|n| (0..=4).map(move |m| Shape::new(n, m, 0)))
        .collect();
    // P(0) = 1 is asserted by the suite on every m = 0 draw
    let t1 = per_shape(Suite::EfpEquality, &equality, 25)?;
    let regime: Vec<Shape> = equality.iter().copied().filter(|s| s.m >= 1).collect();
    let t2 = per_shape(Suite::EfpRegime, &regime, 25)?;

    let mut drawn = 0;
    for stream in 0..50u64 {
        let mut rng = RationalSampler::for_stream(SEED, 1 << 50 | stream);
        let mut attempt = 0;
        loop {
            attempt += 1;
            if attempt > MAX_REDRAWS {
                return Err(format!("gamma draw {stream}: no nonsingular draw"));
            }
            let vecs = rng.vectors();
            match (gamma(&vecs), beta_at_frozen_east(&vecs)) {
                (Ok(g), Ok(b)) => {
                    expect_eq(&format!("gamma vs beta at e = (1, 0), {vecs}"), &b, &g)?;
                    break;
                }
                (Err(e), _) | (_, Err(e)) if e.is_singular() => continue,
                (Err(e), _) | (_, Err(e)) => return Err(e.to_string()),
            }
        }
        drawn += 1;
    }
    let p0 = EfpParams::new(3, 0, qs(&["0", "1/2", "4"]), q("2"), ones()).unwrap();
    expect_eq("P(0)", &q("1"), &efp_components(&p0).map_err(|e| e.to_string())?)?;
    expect_eq("P(0)", &q("1"), &efp_determinant(&p0).map_err(|e| e.to_string())?)?;
    Ok(format!(
        "{t1} equality draws, {t2} regime draws in [0, 1], {drawn} gamma draws, golden P = 1/2"
    ))
}

fn strip_timing(report: &str) -> String {
    report
        .lines()
        .filter(|line| !line.contains("\"elapsed_seconds\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn criterion_10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_svf"))
            .args([
                "verify", "--suite", "all", "--trials", "25", "--seed", "0", "--max-n", "5",
            ])
            .output()
            .map_err(|e| format!("cannot run svf: {e}"))
    };
    let (first, second) = (run()?, run()?);
    for out in [&first, &second] {
        if !out.status.success() {
            return Err(format!(
                "svf exited with {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
    }
    let a = strip_timing(&String::from_utf8_lossy(&first.stdout));
    let b = strip_timing(&String::from_utf8_lossy(&second.stdout));
    if a != b {
        return Err("reports differ between runs".into());
    }
    if !a.contains("\"failure_count\": 0") {
        return Err("combined report lists failures".into());
    }
    Ok(format!(
        "exit 0 twice, {} identical report bytes without timing",
        a.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("triangular factorization", criterion_1),
        ("degree bound in each u_j", criterion_2),
        ("vanishing at u_n = u_j + c", criterion_3),
        ("pairwise specialization", criterion_4),
        ("Yang-Baxter and unitarity", criterion_5),
        ("rectangle triple equality", criterion_6),
        ("rectangle specialization", criterion_7),
        ("trapezoid and two-regime factorization", criterion_8),
        ("emptiness formation probability", criterion_9),
        ("verify determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {:>2}: {title} ({detail}; {secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {:>2}: {title}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
