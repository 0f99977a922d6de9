//! Emptiness formation probability `P(m)` on the trapezoid: the
//! probability that the `m` rightmost top-boundary states are all `1`.
//!
//! Two independent evaluation paths are provided. [`efp_components`] builds
//! `P(m)` from lattice contractions (rectangle with `e = (1, 0)`, frozen
//! triangle weight, trapezoid normalization); [`efp_determinant`] evaluates
//! the `m × m` determinant formula.

use crate::closed_forms::beta;
use crate::contraction::{gdw_contract_fixed_east, trapezoid_value, ModelParams};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Rational;
use crate::vertex::{require_crossing, BoundaryVector, BoundaryVectors, Side};

const EFP_DETERMINANT: &str = "emptiness determinant";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EfpParams {
    /// Number of columns `n`.
    pub n: usize,
    /// Emptiness length `m`.
    pub m: usize,
    /// `v_1..v_{n+m}`.
    pub v_all: Vec<Rational>,
    pub c: Rational,
    /// `n`, `s` and `w` enter `P(m)`; `e` is ignored.
    pub vectors: BoundaryVectors,
}

impl EfpParams {
    pub fn new(n: usize, m: usize, v_all: Vec<Rational>, c: Rational, vectors: BoundaryVectors) -> Result<Self> {
        require_crossing(&c)?;
        if v_all.len() != n + m {
            return Err(Error::Parameter(format!(
                "emptiness split ({n}, {m}) needs {} rapidities, got {}",
                n + m,
                v_all.len()
            )));
        }
        Ok(EfpParams {
            n,
            m,
            v_all,
            c,
            vectors,
        })
    }

    /// Ordered rapidities, `c > 0`, and nonnegative `n`, `s`, `w` components:
    /// the regime where every weight is nonnegative and `P(m)` is a probability.
    pub fn in_probabilistic_regime(&self) -> bool {
        let zero = Rational::zero();
        let ordered = self.v_all.windows(2).all(|w| w[0] <= w[1]);
        let vecs = &self.vectors;
        let nonnegative = [&vecs.north, &vecs.south, &vecs.west]
            .iter()
            .all(|v| v.c1 >= zero && v.c2 >= zero);
        ordered && nonnegative && self.c > zero
    }

    fn bottom(&self) -> &[Rational] {
        &self.v_all[..self.n]
    }

    fn top(&self) -> &[Rational] {
        &self.v_all[self.n..]
    }
}

/// Exact `0 <= x <= 1`.
pub fn is_probability(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}

/// `γ = -n2 (s2 w1 - s1 w2) / (s1 (n1 w1 + n2 w2))`, which is `β` at `e = (1, 0)`.
pub fn gamma(vecs: &BoundaryVectors) -> Result<Rational> {
    let (n, s, w) = (&vecs.north, &vecs.south, &vecs.west);
    if s.c1.is_zero() {
        return Err(Error::degenerate("s_1", "denominator of gamma"));
    }
    let nw = vecs.north_west();
    if nw.is_zero() {
        return Err(Error::degenerate("n_1 w_1 + n_2 w_2", "denominator of gamma"));
    }
    let numer = -(&n.c2 * (&s.c2 * &w.c1 - &s.c1 * &w.c2));
    numer.checked_div(&(&s.c1 * nw))
}

fn pole(factor: String) -> Error {
    Error::pole(factor, EFP_DETERMINANT)
}

/// `P(m) = (n1 s1/(n1 s1 + n2 s2))^m det[δ_{jk} - γc/(v_{j+n} - v_{k+n} + c)
///   ∏_{i≤n} (v_{j+n} - v_i)/(v_{j+n} - v_i + c) ∏_{i≠j} (v_{j+n} - v_{i+n} + c)/(v_{j+n} - v_{i+n})]`.
pub fn efp_determinant(p: &EfpParams) -> Result<Rational> {
    let (n, m, c) = (p.n, p.m, &p.c);
    if m == 0 {
        return Ok(Rational::one());
    }
    let gamma = gamma(&p.vectors)?;
    let ns = p.vectors.north_south();
    if ns.is_zero() {
        return Err(Error::degenerate("n_1 s_1 + n_2 s_2", "emptiness prefactor"));
    }
    let ratio = (&p.vectors.north.c1 * &p.vectors.south.c1).checked_div(&ns)?;
    let (bottom, top) = (p.bottom(), p.top());

    let mut row_weight = Vec::with_capacity(m);
    for (j, vj) in top.iter().enumerate() {
        let mut w = Rational::one();
        for (i, vi) in bottom.iter().enumerate() {
            let x = vj - vi;
            let den = &x + c;
            if den.is_zero() {
                return Err(pole(format!("v_{} - v_{} + c", j + n + 1, i + 1)));
            }
            w *= x.checked_div(&den)?;
        }
        for (i, vi) in top.iter().enumerate() {
            if i == j {
                continue;
            }
            let x = vj - vi;
            if x.is_zero() {
                return Err(pole(format!("v_{} - v_{}", j + n + 1, i + n + 1)));
            }
            w *= (&x + c).checked_div(&x)?;
        }
        row_weight.push(w);
    }
    let gamma_c = gamma * c;
    let matrix = Matrix::try_from_fn(m, |j, k| {
        let den = &top[j] - &top[k] + c;
        if den.is_zero() {
            return Err(pole(format!("v_{} - v_{} + c", j + n + 1, k + n + 1)));
        }
        let off = gamma_c.checked_div(&den)? * &row_weight[j];
        Ok(if j == k { Rational::one() - off } else { -off })
    })?;
    Ok(ratio.pow(m as u32) * matrix.determinant())
}

/// `P(m) = Z_{m,n}(v_{n+1}..v_{n+m} | v_1..v_n)|_{e=(1,0)} · n1^m
///   · ∏_{n<i<j} (v_j - v_i + c)/c / T_{n,m}`, every partition function
/// obtained by contraction.
pub fn efp_components(p: &EfpParams) -> Result<Rational> {
    let (m, c) = (p.m, &p.c);
    let rectangle = ModelParams::new(c.clone(), p.top().to_vec(), p.bottom().to_vec(), p.vectors.clone())?;
    let frozen_east = BoundaryVector::up(Side::East);
    let mut numer = gdw_contract_fixed_east(&rectangle, &frozen_east)? * p.vectors.north.c1.pow(m as u32);
    let top = p.top();
    for (i, vi) in top.iter().enumerate() {
        for vj in &top[i + 1..] {
            numer *= (vj - vi + c).checked_div(c)?;
        }
    }
    let normalization = trapezoid_value(&p.v_all, p.n, m, c, &p.vectors)?;
    if normalization.is_zero() {
        return Err(Error::degenerate(
            format!("T_{{{},{}}}", p.n, m),
            "emptiness normalization",
        ));
    }
    numer.checked_div(&normalization)
}

/// `β` with the east vector replaced by `(1, 0)`; equal to [`gamma`].
pub fn beta_at_frozen_east(vecs: &BoundaryVectors) -> Result<Rational> {
    beta(&vecs.with_east(&BoundaryVector::up(Side::East)))
}
