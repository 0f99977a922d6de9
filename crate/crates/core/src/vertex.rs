//! Rational R-matrix, boundary vectors, and exact checks of the Yang–Baxter
//! and unitarity relations.
//!
//! Basis convention: `|1⟩` is bit 0 and `|2⟩` is bit 1. On a pair of sites
//! the local index is `2 * first + second`, giving the ordered basis
//! `|11⟩, |12⟩, |21⟩, |22⟩`. On `L` sites, site `k` (1-based) occupies bit
//! position `L - k`, so site 1 is the most significant bit.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    North,
    East,
    South,
    West,
}

impl Side {
    pub fn symbol(self) -> char {
        match self {
            Side::North => 'n',
            Side::East => 'e',
            Side::South => 's',
            Side::West => 'w',
        }
    }
}

/// `c1|1⟩ + c2|2⟩`. The dual uses the same components, without conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryVector {
    pub c1: Rational,
    pub c2: Rational,
    pub side: Side,
}

impl BoundaryVector {
    pub fn new(side: Side, c1: Rational, c2: Rational) -> Self {
        BoundaryVector { c1, c2, side }
    }

    /// `|1⟩` or `⟨1|` on the given side.
    pub fn up(side: Side) -> Self {
        BoundaryVector::new(side, Rational::one(), Rational::zero())
    }

    /// `|2⟩` or `⟨2|` on the given side.
    pub fn down(side: Side) -> Self {
        BoundaryVector::new(side, Rational::zero(), Rational::one())
    }

    pub fn component(&self, bit: usize) -> &Rational {
        if bit == 0 {
            &self.c1
        } else {
            &self.c2
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        BoundaryVector::new(self.side, &self.c1 * factor, &self.c2 * factor)
    }

    pub fn with_side(&self, side: Side) -> Self {
        BoundaryVector::new(side, self.c1.clone(), self.c2.clone())
    }
}

impl fmt::Display for BoundaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=({}, {})", self.side.symbol(), self.c1, self.c2)
    }
}

/// `⟨bra|ket⟩ = bra.c1 * ket.c1 + bra.c2 * ket.c2`.
pub fn pairing(bra: &BoundaryVector, ket: &BoundaryVector) -> Rational {
    &bra.c1 * &ket.c1 + &bra.c2 * &ket.c2
}

/// The four boundary vectors of a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryVectors {
    pub north: BoundaryVector,
    pub east: BoundaryVector,
    pub south: BoundaryVector,
    pub west: BoundaryVector,
}

impl BoundaryVectors {
    pub fn new(
        north: (Rational, Rational),
        east: (Rational, Rational),
        south: (Rational, Rational),
        west: (Rational, Rational),
    ) -> Self {
        BoundaryVectors {
            north: BoundaryVector::new(Side::North, north.0, north.1),
            east: BoundaryVector::new(Side::East, east.0, east.1),
            south: BoundaryVector::new(Side::South, south.0, south.1),
            west: BoundaryVector::new(Side::West, west.0, west.1),
        }
    }

    /// Every component equal to `x`.
    pub fn uniform(x: Rational) -> Self {
        let p = || (x.clone(), x.clone());
        BoundaryVectors::new(p(), p(), p(), p())
    }

    /// Ordinary domain walls: `|s⟩ = |1⟩`, `|w⟩ = |2⟩`, `⟨n| = ⟨2|`, `⟨e| = ⟨1|`.
    pub fn ordinary_dwbc() -> Self {
        BoundaryVectors {
            north: BoundaryVector::down(Side::North),
            east: BoundaryVector::up(Side::East),
            south: BoundaryVector::up(Side::South),
            west: BoundaryVector::down(Side::West),
        }
    }

    pub fn with_east(&self, east: &BoundaryVector) -> Self {
        BoundaryVectors {
            east: east.with_side(Side::East),
            ..self.clone()
        }
    }

    /// `n1 s1 + n2 s2`
    pub fn north_south(&self) -> Rational {
        pairing(&self.north, &self.south)
    }

    /// `e1 s1 + e2 s2`
    pub fn east_south(&self) -> Rational {
        pairing(&self.east, &self.south)
    }

    /// `n1 w1 + n2 w2`
    pub fn north_west(&self) -> Rational {
        pairing(&self.north, &self.west)
    }
}

impl fmt::Display for BoundaryVectors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.north, self.east, self.south, self.west)
    }
}

/// Rational six-vertex R-matrix `R(u - v)`.
///
/// Nonzero entries: `a = (u - v + c)/c` on `|11⟩, |22⟩`, `b = (u - v)/c` on the
/// diagonal of `|12⟩, |21⟩`, and weight 1 on the two entries exchanging
/// `|12⟩ ↔ |21⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    a: Rational,
    b: Rational,
}

impl RMatrix {
    /// R-matrix for the rapidity difference `x = u - v`.
    pub fn from_difference(x: &Rational, c: &Rational) -> Result<Self> {
        let b = x.checked_div(c).map_err(|_| crossing_zero())?;
        let a = &b + Rational::one();
        Ok(RMatrix { a, b })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// The exchange weight, identically 1.
    pub fn swap_weight(&self) -> Rational {
        Rational::one()
    }

    pub fn is_permutation(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Entry `⟨row|R|col⟩` in the two-site basis `|11⟩, |12⟩, |21⟩, |22⟩`.
    pub fn entry(&self, row: usize, col: usize) -> Rational {
        match (row, col) {
            (0, 0) | (3, 3) => self.a.clone(),
            (1, 1) | (2, 2) => self.b.clone(),
            (1, 2) | (2, 1) => self.swap_weight(),
            (r, c) if r < 4 && c < 4 => Rational::zero(),
            _ => panic!("R-matrix index ({row}, {col}) out of range"),
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(4, |i, j| self.entry(i, j))
    }

    /// Dense `2^L × 2^L` operator acting as `self` on sites `(first, second)`
    /// (first = first tensor factor) and as the identity elsewhere.
    pub fn embed(&self, num_sites: usize, first: usize, second: usize) -> Result<Matrix> {
        check_site_pair(num_sites, first, second)?;
        let shift_first = num_sites - first;
        let shift_second = num_sites - second;
        let mask = (1usize << shift_first) | (1usize << shift_second);
        let dim = 1usize << num_sites;
        Ok(Matrix::from_fn(dim, |row, col| {
            if row & !mask != col & !mask {
                return Rational::zero();
            }
            let local = |idx: usize| 2 * ((idx >> shift_first) & 1) + ((idx >> shift_second) & 1);
            self.entry(local(row), local(col))
        }))
    }
}

pub(crate) fn check_site_pair(num_sites: usize, first: usize, second: usize) -> Result<()> {
    for site in [first, second] {
        if site == 0 || site > num_sites {
            return Err(Error::SiteIndex { site, num_sites });
        }
    }
    if first == second {
        return Err(Error::Parameter(format!(
            "gate sites must differ, got ({first}, {second})"
        )));
    }
    Ok(())
}

fn crossing_zero() -> Error {
    Error::Parameter("crossing constant c must be nonzero".into())
}

pub(crate) fn require_crossing(c: &Rational) -> Result<()> {
    if c.is_zero() {
        Err(crossing_zero())
    } else {
        Ok(())
    }
}

/// `R(u - v)` with crossing constant `c`.
pub fn r_matrix(u: &Rational, v: &Rational, c: &Rational) -> Result<RMatrix> {
    RMatrix::from_difference(&(u - v), c)
}

/// Exact check of `R_ij R_ik R_jk = R_jk R_ik R_ij` on three sites, with
/// arguments `u_i - u_j`, `u_i - u_k`, `u_j - u_k`.
pub fn check_yang_baxter(ui: &Rational, uj: &Rational, uk: &Rational, c: &Rational) -> Result<bool> {
    let r_ij = r_matrix(ui, uj, c)?.embed(3, 1, 2)?;
    let r_ik = r_matrix(ui, uk, c)?.embed(3, 1, 3)?;
    let r_jk = r_matrix(uj, uk, c)?.embed(3, 2, 3)?;
    let lhs = r_ij.mul(&r_ik).mul(&r_jk);
    let rhs = r_jk.mul(&r_ik).mul(&r_ij);
    Ok(lhs == rhs)
}

/// `((uj - uk + c)/c) * ((uk - uj + c)/c)`.
pub fn unitarity_factor(uj: &Rational, uk: &Rational, c: &Rational) -> Result<Rational> {
    let forward = r_matrix(uj, uk, c)?;
    let backward = r_matrix(uk, uj, c)?;
    Ok(forward.a * backward.a)
}

/// `R_jk(uj - uk) R_kj(uk - uj)` on two sites, with `R_kj` taking site `k`
/// as its first tensor factor.
pub fn unitarity_product(uj: &Rational, uk: &Rational, c: &Rational) -> Result<Matrix> {
    let r_jk = r_matrix(uj, uk, c)?.embed(2, 1, 2)?;
    let r_kj = r_matrix(uk, uj, c)?.embed(2, 2, 1)?;
    Ok(r_jk.mul(&r_kj))
}

pub fn check_unitarity(uj: &Rational, uk: &Rational, c: &Rational) -> Result<bool> {
    let product = unitarity_product(uj, uk, c)?;
    let factor = unitarity_factor(uj, uk, c)?;
    Ok(product == Matrix::identity(4).scaled(&factor))
}
