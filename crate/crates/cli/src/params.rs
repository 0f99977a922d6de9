//! Parameter files: JSON documents whose numbers are rational strings.

use std::path::Path;

use serde::{Deserialize, Serialize};
use svf_core::{BoundaryVector, BoundaryVectors, Rational, Side};

use crate::CliError;

/// A boundary vector as written in a parameter file: `["1", "-1/2"]`.
pub type Pair = [Rational; 2];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    pub c: Rational,
    #[serde(default)]
    pub u: Vec<Rational>,
    #[serde(default)]
    pub v: Vec<Rational>,
    #[serde(default)]
    pub vectors: VectorSpec,
    /// `[n, m]` for trapezoid and emptiness quantities.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<[usize; 2]>,
}

impl ParamFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let params: ParamFile = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
        if params.c.is_zero() {
            return Err(CliError::Input("c must be nonzero".into()));
        }
        Ok(params)
    }

    pub fn vector(&self, side: Side) -> Result<BoundaryVector, CliError> {
        let (slot, key) = match side {
            Side::North => (&self.vectors.n, "n"),
            Side::East => (&self.vectors.e, "e"),
            Side::South => (&self.vectors.s, "s"),
            Side::West => (&self.vectors.w, "w"),
        };
        let [c1, c2] = slot
            .clone()
            .ok_or_else(|| CliError::Input(format!("vectors.{key} is required here")))?;
        Ok(BoundaryVector::new(side, c1, c2))
    }

    /// All four vectors, each required.
    pub fn all_vectors(&self) -> Result<BoundaryVectors, CliError> {
        Ok(BoundaryVectors {
            north: self.vector(Side::North)?,
            east: self.vector(Side::East)?,
            south: self.vector(Side::South)?,
            west: self.vector(Side::West)?,
        })
    }

    /// `n`, `s`, `w` required; a missing `e` is filled by `fallback`.
    pub fn vectors_with_east(&self, fallback: BoundaryVector) -> Result<BoundaryVectors, CliError> {
        let east = match self.vectors.e {
            Some(_) => self.vector(Side::East)?,
            None => fallback.with_side(Side::East),
        };
        Ok(BoundaryVectors {
            north: self.vector(Side::North)?,
            east,
            south: self.vector(Side::South)?,
            west: self.vector(Side::West)?,
        })
    }

    /// `(n, m)`, checked against the length of `v`.
    pub fn split(&self) -> Result<(usize, usize), CliError> {
        let [n, m] = self
            .split
            .ok_or_else(|| CliError::Input("split [n, m] is required here".into()))?;
        if n + m != self.v.len() {
            return Err(CliError::Input(format!(
                "split [{n}, {m}] needs {} entries in v, found {}",
                n + m,
                self.v.len()
            )));
        }
        Ok((n, m))
    }
}
