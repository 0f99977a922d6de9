//! Small dense exact matrices and univariate interpolation.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Square matrix of rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let entries = (0..dim * dim).map(|idx| f(idx / dim, idx % dim)).collect();
        Matrix { dim, entries }
    }

    pub fn try_from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Result<Rational>) -> Result<Self> {
        let entries = (0..dim * dim)
            .map(|idx| f(idx / dim, idx % dim))
            .collect::<Result<_>>()?;
        Ok(Matrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scaled(&self, factor: &Rational) -> Matrix {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let lhs = &self[(i, k)];
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let r = &rhs[(k, j)];
                    if !r.is_zero() {
                        out[(i, j)] += lhs * r;
                    }
                }
            }
        }
        out
    }

    /// Exact determinant by Gaussian elimination over the rationals, swapping
    /// rows on zero pivots. The empty matrix has determinant 1.
    pub fn determinant(&self) -> Rational {
        let n = self.dim;
        let mut work = self.entries.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| !work[r * n + col].is_zero()) else {
                return Rational::zero();
            };
            if pivot_row != col {
                for j in 0..n {
                    work.swap(col * n + j, pivot_row * n + j);
                }
                det = -det;
            }
            let pivot = work[col * n + col].clone();
            let pivot_inv = pivot.inv().expect("pivot is nonzero");
            det *= &pivot;
            for r in col + 1..n {
                if work[r * n + col].is_zero() {
                    continue;
                }
                let factor = &work[r * n + col] * &pivot_inv;
                for j in col..n {
                    let delta = &factor * &work[col * n + j];
                    work[r * n + j] -= delta;
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.dim + j]
    }
}

/// Monomial coefficients (constant term first) of the unique polynomial of
/// degree < `nodes.len()` through `(nodes[i], values[i])`.
pub fn interpolate(nodes: &[Rational], values: &[Rational]) -> Result<Vec<Rational>> {
    if nodes.len() != values.len() {
        return Err(Error::Parameter(format!(
            "{} interpolation nodes but {} values",
            nodes.len(),
            values.len()
        )));
    }
    for (i, x) in nodes.iter().enumerate() {
        if nodes[..i].contains(x) {
            return Err(Error::Parameter(format!("repeated interpolation node {x}")));
        }
    }
    // Newton divided differences, then expand the Newton form.
    let n = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &nodes[i] - &nodes[i - level];
            dd[i] = num.checked_div(&den)?;
        }
    }
    let mut coeffs = vec![Rational::zero(); n];
    // Horner on the Newton basis: p = dd[n-1]; p = p*(x - x_i) + dd[i].
    for i in (0..n).rev() {
        // coeffs <- coeffs * (x - nodes[i]) + dd[i]
        let mut next = vec![Rational::zero(); n];
        for (k, ck) in coeffs.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += ck;
            }
            next[k] -= ck * &nodes[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    Ok(coeffs)
}

pub fn eval_polynomial(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn leibniz(m: &Matrix) -> Rational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.dim();
        perms(n)
            .into_iter()
            .map(|p| {
                let inversions = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let term: Rational = (0..n).map(|i| m[(i, p[i])].clone()).product();
                if inversions % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(Matrix::zeros(0).determinant(), Rational::one());
        let m = Matrix::from_fn(2, |i, j| Rational::from((1 + 2 * i + j) as i64));
        assert_eq!(m.determinant(), q("-2"));
        // zero leading pivot forces a row swap
        let m = Matrix::from_fn(2, |i, j| if i == j { Rational::zero() } else { q("3/2") });
        assert_eq!(m.determinant(), q("-9/4"));
        let singular = Matrix::from_fn(3, |i, j| Rational::from((i + j) as i64));
        assert_eq!(singular.determinant(), Rational::zero());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let poly = vec![q("1/2"), q("-3"), Rational::zero(), q("7/5")];
        let nodes: Vec<Rational> = ["0", "1", "-2", "1/3", "5"].iter().map(|s| q(s)).collect();
        let values: Vec<Rational> = nodes.iter().map(|x| eval_polynomial(&poly, x)).collect();
        let coeffs = interpolate(&nodes, &values).unwrap();
        assert_eq!(&coeffs[..4], &poly[..]);
        assert!(coeffs[4].is_zero());
    }

    #[test]
    fn interpolation_rejects_repeated_nodes() {
        let nodes = vec![q("1"), q("2"), q("2/1")];
        let values = vec![q("0"); 3];
        assert!(matches!(interpolate(&nodes, &values), Err(Error::Parameter(_))));
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = Matrix> {
        (0..=max).prop_flat_map(|n| {
            proptest::collection::vec((-9i64..=9, 1i64..=4), n * n).prop_map(move |v| {
                Matrix::from_fn(n, |i, j| {
                    let (a, b) = v[i * n + j];
                    Rational::new(a, b).unwrap()
                })
            })
        })
    }

    proptest! {
        #[test]
        fn elimination_matches_permutation_expansion(m in arb_matrix(5)) {
            prop_assert_eq!(m.determinant(), leibniz(&m));
        }

        #[test]
        fn determinant_is_multiplicative(a in arb_matrix(3), b in arb_matrix(3)) {
            prop_assume!(a.dim() == b.dim());
            prop_assert_eq!(a.mul(&b).determinant(), a.determinant() * b.determinant());
        }
    }
}
