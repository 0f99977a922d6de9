//! `svf bench`: wall time and peak bit size, contraction against closed forms.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use svf_core::closed_forms::{gdw_determinant, gdw_subset_sum, triangular_factorized};
use svf_core::contraction::{gdw_contract_traced, triangular_contract_traced, Traced};
use svf_core::sampler::RationalSampler;
use svf_core::verify::MAX_REDRAWS;
use svf_core::{ModelParams, Side};

use crate::eval::{Method, Quantity};
use crate::CliError;

pub const BENCH_SEED: u64 = 0x5356_4642;
pub const MAX_TRIANGULAR_SIZE: usize = 12;
pub const MAX_GDW_COLUMNS: usize = 12;
pub const MAX_GDW_ROWS: usize = 8;

/// Inclusive `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeRange {
    pub first: usize,
    pub last: usize,
}

impl FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("expected A..B with nonnegative integers, got {s:?}"))
        };
        let (first, last) = (parse(a)?, parse(b)?);
        if first == 0 || first > last {
            return Err(format!("need 1 <= A <= B, got {s:?}"));
        }
        Ok(SizeRange { first, last })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub size: usize,
    pub method: Method,
    pub seconds: f64,
    pub max_bits: u64,
}

pub fn supported_methods(quantity: Quantity) -> Result<&'static [Method], CliError> {
    match quantity {
        Quantity::Triangular => Ok(&[Method::Contraction, Method::Factorized]),
        Quantity::Gdw => Ok(&[Method::Contraction, Method::SubsetSum, Method::Determinant]),
        other => Err(CliError::Input(format!(
            "bench supports triangular and gdw, not {}",
            other.name()
        ))),
    }
}

fn check_limits(quantity: Quantity, sizes: SizeRange) -> Result<(), CliError> {
    let limit = match quantity {
        Quantity::Triangular => MAX_TRIANGULAR_SIZE,
        _ => MAX_GDW_COLUMNS,
    };
    if sizes.last > limit {
        return Err(CliError::Input(format!(
            "size {} exceeds the {} contraction limit of {limit}",
            sizes.last,
            quantity.name()
        )));
    }
    Ok(())
}

/// Rows per gdw size: `n = size` columns and `min(size, 8)` rows.
pub fn gdw_rows(size: usize) -> usize {
    size.min(MAX_GDW_ROWS)
}

pub fn run_bench(quantity: Quantity, sizes: SizeRange, method: Method) -> Result<Vec<BenchRow>, CliError> {
    let supported = supported_methods(quantity)?;
    if !supported.contains(&method) {
        return Err(CliError::Input(format!(
            "bench {} does not support method {}",
            quantity.name(),
            method.name()
        )));
    }
    check_limits(quantity, sizes)?;
    (sizes.first..=sizes.last)
        .map(|size| bench_size(quantity, size, method))
        .collect()
}

fn bench_size(quantity: Quantity, size: usize, method: Method) -> Result<BenchRow, CliError> {
    let mut sampler = RationalSampler::for_stream(BENCH_SEED, size as u64);
    for _ in 0..MAX_REDRAWS {
        let c = sampler.nonzero();
        let start = Instant::now();
        let outcome = match quantity {
            Quantity::Triangular => {
                let u = sampler.distinct(size);
                let (e, s) = (sampler.vector(Side::East), sampler.vector(Side::South));
                match method {
                    Method::Factorized => traced(triangular_factorized(&u, &c, &e, &s)),
                    _ => triangular_contract_traced(&u, &c, &e, &s),
                }
            }
            _ => {
                let u = sampler.distinct(gdw_rows(size));
                let v = sampler.rationals(size);
                let params = ModelParams::new(c, u, v, sampler.vectors())?;
                match method {
                    Method::SubsetSum => traced(gdw_subset_sum(&params)),
                    Method::Determinant => traced(gdw_determinant(&params)),
                    _ => gdw_contract_traced(&params),
                }
            }
        };
        let seconds = start.elapsed().as_secs_f64();
        match outcome {
            Ok(t) => {
                return Ok(BenchRow {
                    size,
                    method,
                    seconds,
                    max_bits: t.max_bits,
                })
            }
            Err(e) if e.is_singular() => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(CliError::Input(format!(
        "no pole-free draw for size {size} after {MAX_REDRAWS} attempts"
    )))
}

/// Closed forms keep no intermediate state; report the bit size of the result.
fn traced(value: svf_core::Result<svf_core::Rational>) -> svf_core::Result<Traced> {
    value.map(|value| Traced {
        max_bits: value.bits(),
        value,
    })
}

pub fn write_csv(rows: &[BenchRow], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "size,method,seconds,max_bits")?;
    for r in rows {
        writeln!(out, "{},{},{:.6},{}", r.size, r.method.name(), r.seconds, r.max_bits)?;
    }
    Ok(())
}
