//! Exact evaluators for the factorized, subset-sum and determinant
//! expressions of the partition functions.
//!
//! Every denominator is checked before dividing. A vanishing one is reported
//! as [`Error::Pole`] carrying its symbolic name with 1-based indices, e.g.
//! `u_1 - u_2`. Empty products are 1 and the empty determinant is 1.

use crate::contraction::ModelParams;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Rational;
use crate::vertex::{require_crossing, BoundaryVector, BoundaryVectors};

const SUBSET_SUM: &str = "subset-sum form";
const DETERMINANT: &str = "determinant form";

fn pow(x: &Rational, exp: usize) -> Rational {
    x.pow(exp as u32)
}

fn divide(num: &Rational, den: &Rational, factor: impl FnOnce() -> String, context: &'static str) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::pole(factor(), context));
    }
    num.checked_div(den)
}

/// `(x + c) / c`
fn shifted_weight(x: &Rational, c: &Rational) -> Result<Rational> {
    (x + c).checked_div(c)
}

/// `(e1 s1 + e2 s2)^n ∏_{i<j} (u_i - u_j + c)/c`
pub fn triangular_factorized(u: &[Rational], c: &Rational, e: &BoundaryVector, s: &BoundaryVector) -> Result<Rational> {
    require_crossing(c)?;
    let mut value = pow(&crate::vertex::pairing(e, s), u.len());
    for (i, ui) in u.iter().enumerate() {
        for uj in &u[i + 1..] {
            value *= shifted_weight(&(ui - uj), c)?;
        }
    }
    Ok(value)
}

/// Right-hand side of the pairwise-specialization identity:
/// `(e·s)^n ∏_{1≤j<k≤n-j} ((u_j - u_k + c)/c) ((u_k - u_j + c)/c)`,
/// evaluated at the given `u` (the caller imposes `u_j = u_{n+1-j}`).
pub fn triangular_pair_specialized(
    u: &[Rational],
    c: &Rational,
    e: &BoundaryVector,
    s: &BoundaryVector,
) -> Result<Rational> {
    require_crossing(c)?;
    let n = u.len();
    let mut value = pow(&crate::vertex::pairing(e, s), n);
    for j in 1..=n {
        for k in j + 1..=n.saturating_sub(j) {
            let d = &u[j - 1] - &u[k - 1];
            value *= shifted_weight(&d, c)? * shifted_weight(&-d, c)?;
        }
    }
    Ok(value)
}

/// `β = (e2 n1 - e1 n2)(s2 w1 - s1 w2) / ((e1 s1 + e2 s2)(n1 w1 + n2 w2))`
pub fn beta(vecs: &BoundaryVectors) -> Result<Rational> {
    let (n, e, s, w) = (&vecs.north, &vecs.east, &vecs.south, &vecs.west);
    let es = vecs.east_south();
    if es.is_zero() {
        return Err(Error::degenerate("e_1 s_1 + e_2 s_2", "denominator of beta"));
    }
    let nw = vecs.north_west();
    if nw.is_zero() {
        return Err(Error::degenerate("n_1 w_1 + n_2 w_2", "denominator of beta"));
    }
    let numer = (&e.c2 * &n.c1 - &e.c1 * &n.c2) * (&s.c2 * &w.c1 - &s.c1 * &w.c2);
    numer.checked_div(&(es * nw))
}

fn check_rectangle(params: &ModelParams) -> Result<(usize, usize)> {
    require_crossing(&params.c)?;
    let (m, n) = (params.rows(), params.columns());
    if m > n {
        return Err(Error::Unsupported(format!(
            "closed forms need m <= n, got m = {m}, n = {n}"
        )));
    }
    Ok((m, n))
}

/// `(n·s)^{n-m} (e·s)^m (n·w)^m / c^{mn}`
fn gdw_prefactor(vecs: &BoundaryVectors, c: &Rational, m: usize, n: usize) -> Result<Rational> {
    let numer = pow(&vecs.north_south(), n - m) * pow(&vecs.east_south(), m) * pow(&vecs.north_west(), m);
    numer.checked_div(&pow(c, m * n))
}

fn distinct_rows(u: &[Rational], context: &'static str) -> Result<()> {
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if u[i] == u[j] {
                return Err(Error::pole(format!("u_{} - u_{}", i + 1, j + 1), context));
            }
        }
    }
    Ok(())
}

/// Subset-sum form of `Z_{m,n}`:
/// prefactor times the sum over `K ⊆ {1..m}` of
/// `(-β)^{|K|} ∏_{i∈K,k}(u_i - v_k) ∏_{j∉K,k}(u_j - v_k + c) ∏_{i∈K,j∉K}(u_i - u_j + c)/(u_i - u_j)`.
pub fn gdw_subset_sum(params: &ModelParams) -> Result<Rational> {
    let (m, n) = check_rectangle(params)?;
    let (u, v, c) = (&params.u, &params.v, &params.c);
    let prefactor = gdw_prefactor(&params.vectors, c, m, n)?;
    if m == 0 {
        return Ok(prefactor);
    }
    let beta = beta(&params.vectors)?;
    distinct_rows(u, SUBSET_SUM)?;

    let minus_beta = -beta;
    let mut total = Rational::zero();
    for mask in 0u64..(1 << m) {
        let in_k = |i: usize| mask & (1 << i) != 0;
        let size = mask.count_ones();
        if size > 0 && minus_beta.is_zero() {
            continue;
        }
        let mut term = minus_beta.pow(size);
        for (i, ui) in u.iter().enumerate() {
            for vk in v {
                if in_k(i) {
                    term *= ui - vk;
                } else {
                    term *= ui - vk + c;
                }
            }
        }
        if term.is_zero() {
            continue;
        }
        for i in (0..m).filter(|&i| in_k(i)) {
            for j in (0..m).filter(|&j| !in_k(j)) {
                let d = &u[i] - &u[j];
                term *= divide(&(&d + c), &d, || format!("u_{} - u_{}", i + 1, j + 1), SUBSET_SUM)?;
            }
        }
        total += term;
    }
    Ok(prefactor * total)
}

/// Determinant form of `Z_{m,n}`:
/// prefactor `· ∏_{i,j}(u_i - v_j) · det[M]` with
/// `M_{jk} = δ_{jk} ∏_i (u_j - v_i + c)/(u_j - v_i) - βc/(u_j - u_k + c) ∏_{i≠j}(u_j - u_i + c)/(u_j - u_i)`.
pub fn gdw_determinant(params: &ModelParams) -> Result<Rational> {
    let (m, n) = check_rectangle(params)?;
    let (u, v, c) = (&params.u, &params.v, &params.c);
    let prefactor = gdw_prefactor(&params.vectors, c, m, n)?;
    if m == 0 {
        return Ok(prefactor);
    }
    let beta = beta(&params.vectors)?;
    distinct_rows(u, DETERMINANT)?;

    let mut diagonal = Vec::with_capacity(m);
    let mut row_weight = Vec::with_capacity(m);
    let mut vandermonde_like = Rational::one();
    for (j, uj) in u.iter().enumerate() {
        let mut d = Rational::one();
        for (i, vi) in v.iter().enumerate() {
            let x = uj - vi;
            d *= divide(&(&x + c), &x, || format!("u_{} - v_{}", j + 1, i + 1), DETERMINANT)?;
            vandermonde_like *= x;
        }
        diagonal.push(d);
        let mut w = Rational::one();
        for (i, ui) in u.iter().enumerate() {
            if i != j {
                let x = uj - ui;
                w *= divide(&(&x + c), &x, || format!("u_{} - u_{}", j + 1, i + 1), DETERMINANT)?;
            }
        }
        row_weight.push(w);
    }
    let beta_c = &beta * c;
    let matrix = Matrix::try_from_fn(m, |j, k| {
        let den = &u[j] - &u[k] + c;
        let off = divide(&beta_c, &den, || format!("u_{} - u_{} + c", j + 1, k + 1), DETERMINANT)? * &row_weight[j];
        if j == k {
            Ok(&diagonal[j] - off)
        } else {
            Ok(-off)
        }
    })?;
    Ok(prefactor * vandermonde_like * matrix.determinant())
}

/// Direct expansion of the single-vertex `Z_{1,1}(u | v)`.
pub fn z11_explicit(u: &Rational, v: &Rational, c: &Rational, vecs: &BoundaryVectors) -> Result<Rational> {
    require_crossing(c)?;
    let (n, e, s, w) = (&vecs.north, &vecs.east, &vecs.south, &vecs.west);
    let b = (u - v).checked_div(c)?;
    let a = &b + Rational::one();
    let a_term = &e.c1 * &w.c1 * &n.c1 * &s.c1 + &e.c2 * &w.c2 * &n.c2 * &s.c2;
    let swap_term = &e.c2 * &w.c1 * &n.c1 * &s.c2 + &e.c1 * &w.c2 * &n.c2 * &s.c1;
    let b_term = &e.c1 * &w.c1 * &n.c2 * &s.c2 + &e.c2 * &w.c2 * &n.c1 * &s.c1;
    Ok(a_term * a + swap_term + b_term * b)
}

/// `Z_{m,n}` at `u_i = v_{n-m+i}`:
/// `(n·s)^{n-m} (e·s)^m (n·w)^m ∏_{i=n-m+1}^{n} ∏_{j=1}^{n} (v_i - v_j + c)/c`.
pub fn gdw_specialized(v: &[Rational], m: usize, c: &Rational, vecs: &BoundaryVectors) -> Result<Rational> {
    require_crossing(c)?;
    let n = v.len();
    if m > n {
        return Err(Error::Unsupported(format!(
            "specialization needs m <= n, got m = {m}, n = {n}"
        )));
    }
    let mut value = pow(&vecs.north_south(), n - m) * pow(&vecs.east_south(), m) * pow(&vecs.north_west(), m);
    for vi in &v[n - m..] {
        for vj in v {
            value *= shifted_weight(&(vi - vj), c)?;
        }
    }
    Ok(value)
}

/// `T_{n,m} = (n·s)^n (n·w)^m ∏_{i>n, j≤n} (v_i - v_j + c)/c ∏_{n<i<j} (v_j - v_i + c)/c`.
pub fn trapezoid_factorized(
    v_all: &[Rational],
    n: usize,
    m: usize,
    c: &Rational,
    vecs: &BoundaryVectors,
) -> Result<Rational> {
    require_crossing(c)?;
    if v_all.len() != n + m {
        return Err(Error::Parameter(format!(
            "trapezoid split ({n}, {m}) needs {} rapidities, got {}",
            n + m,
            v_all.len()
        )));
    }
    let (bottom, top) = v_all.split_at(n);
    let mut value = pow(&vecs.north_south(), n) * pow(&vecs.north_west(), m);
    for vi in top {
        for vj in bottom {
            value *= shifted_weight(&(vi - vj), c)?;
        }
    }
    for (i, vi) in top.iter().enumerate() {
        for vj in &top[i + 1..] {
            value *= shifted_weight(&(vj - vi), c)?;
        }
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::Side;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn qs(items: &[&str]) -> Vec<Rational> {
        items.iter().map(|s| q(s)).collect()
    }

    fn vecs(n: (&str, &str), e: (&str, &str), s: (&str, &str), w: (&str, &str)) -> BoundaryVectors {
        BoundaryVectors::new((q(n.0), q(n.1)), (q(e.0), q(e.1)), (q(s.0), q(s.1)), (q(w.0), q(w.1)))
    }

    fn generic() -> BoundaryVectors {
        vecs(("2", "1/3"), ("-1", "3"), ("1/2", "1"), ("4", "-1"))
    }

    #[test]
    fn triangular_examples() {
        let e = BoundaryVector::new(Side::East, q("2"), q("-1"));
        let s = BoundaryVector::new(Side::South, q("3"), q("1/2"));
        assert_eq!(triangular_factorized(&qs(&["9"]), &q("1"), &e, &s).unwrap(), q("11/2"));
        let ones = BoundaryVector::new(Side::East, q("1"), q("1"));
        assert_eq!(
            triangular_factorized(&qs(&["1", "0"]), &q("1"), &ones, &ones).unwrap(),
            q("8")
        );
        // u_2 = u_1 + c
        assert_eq!(
            triangular_factorized(&qs(&["1/3", "10/3"]), &q("3"), &e, &s).unwrap(),
            q("0")
        );
        assert!(triangular_factorized(&qs(&["1"]), &q("0"), &e, &s).is_err());
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&BoundaryVectors::ordinary_dwbc()).unwrap(), q("1"));
        // e2 n1 = e1 n2
        assert_eq!(
            beta(&vecs(("2", "4"), ("1", "2"), ("1", "0"), ("3", "1"))).unwrap(),
            q("0")
        );
        // s2 w1 = s1 w2
        assert_eq!(
            beta(&vecs(("2", "5"), ("1", "7"), ("1", "2"), ("3", "6"))).unwrap(),
            q("0")
        );
        let err = beta(&vecs(("1", "1"), ("1", "-1"), ("1", "1"), ("1", "0"))).unwrap_err();
        assert!(matches!(err, Error::Degenerate { ref factor, .. } if factor == "e_1 s_1 + e_2 s_2"));
        let err = beta(&vecs(("1", "-1"), ("1", "0"), ("1", "1"), ("1", "1"))).unwrap_err();
        assert!(matches!(err, Error::Degenerate { ref factor, .. } if factor == "n_1 w_1 + n_2 w_2"));
    }

    #[test]
    fn z11_examples() {
        let ones = BoundaryVectors::uniform(q("1"));
        assert_eq!(z11_explicit(&q("1"), &q("0"), &q("1"), &ones).unwrap(), q("8"));
        let g = generic();
        let (n, e, s, w) = (&g.north, &g.east, &g.south, &g.west);
        let expected = &e.c1 * &w.c1 * &n.c1 * &s.c1
            + &e.c2 * &w.c2 * &n.c2 * &s.c2
            + &e.c2 * &w.c1 * &n.c1 * &s.c2
            + &e.c1 * &w.c2 * &n.c2 * &s.c1;
        assert_eq!(z11_explicit(&q("5/2"), &q("5/2"), &q("3"), &g).unwrap(), expected);
        for (u, v, c) in [("1", "0", "1"), ("-7/3", "4", "1/2")] {
            assert_eq!(
                z11_explicit(&q(u), &q(v), &q(c), &BoundaryVectors::ordinary_dwbc()).unwrap(),
                q("1")
            );
        }
    }

    #[test]
    fn subset_sum_single_vertex_matches_expansion() {
        let g = generic();
        let p = ModelParams::new(q("2/3"), qs(&["5"]), qs(&["-1/2"]), g.clone()).unwrap();
        let z11 = z11_explicit(&q("5"), &q("-1/2"), &q("2/3"), &g).unwrap();
        assert_eq!(gdw_subset_sum(&p).unwrap(), z11);
        assert_eq!(gdw_determinant(&p).unwrap(), z11);
    }

    #[test]
    fn subset_sum_with_vanishing_beta() {
        // s ∥ w makes β = 0: only K = ∅ contributes
        let g = vecs(("2", "5"), ("1", "7"), ("1", "2"), ("3", "6"));
        let (u, v, c) = (qs(&["1", "-2"]), qs(&["0", "1/2", "3"]), q("2"));
        let p = ModelParams::new(c.clone(), u.clone(), v.clone(), g.clone()).unwrap();
        let mut expected = gdw_prefactor(&g, &c, 2, 3).unwrap();
        for ui in &u {
            for vk in &v {
                expected *= ui - vk + &c;
            }
        }
        assert_eq!(gdw_subset_sum(&p).unwrap(), expected);
    }

    #[test]
    fn closed_form_errors() {
        let p = ModelParams::new(q("1"), qs(&["1", "1"]), qs(&["0", "2"]), generic()).unwrap();
        assert_eq!(
            gdw_subset_sum(&p).unwrap_err(),
            Error::Pole {
                factor: "u_1 - u_2".into(),
                context: SUBSET_SUM
            }
        );
        assert!(matches!(gdw_determinant(&p), Err(Error::Pole { .. })));

        let p = ModelParams::new(q("1"), qs(&["1", "2", "3"]), qs(&["0", "5"]), generic()).unwrap();
        assert!(matches!(gdw_subset_sum(&p), Err(Error::Unsupported(_))));
        assert!(matches!(gdw_determinant(&p), Err(Error::Unsupported(_))));

        let p = ModelParams::new(q("1"), qs(&["1", "2"]), qs(&["0", "2"]), generic()).unwrap();
        assert_eq!(
            gdw_determinant(&p).unwrap_err(),
            Error::Pole {
                factor: "u_2 - v_2".into(),
                context: DETERMINANT
            }
        );

        // u_1 - u_2 + c = 0 off the diagonal
        let p = ModelParams::new(q("1"), qs(&["1", "2"]), qs(&["1/2", "7"]), generic()).unwrap();
        assert_eq!(
            gdw_determinant(&p).unwrap_err(),
            Error::Pole {
                factor: "u_1 - u_2 + c".into(),
                context: DETERMINANT
            }
        );
    }

    #[test]
    fn empty_rectangle_conventions() {
        let g = generic();
        let p = ModelParams::new(q("1"), vec![], qs(&["1", "2", "3"]), g.clone()).unwrap();
        let ns3 = g.north_south().pow(3);
        assert_eq!(gdw_subset_sum(&p).unwrap(), ns3);
        assert_eq!(gdw_determinant(&p).unwrap(), ns3);
        assert_eq!(gdw_specialized(&qs(&["1", "2", "3"]), 0, &q("1"), &g).unwrap(), ns3);
    }

    #[test]
    fn specialized_examples() {
        let g = generic();
        assert_eq!(
            gdw_specialized(&qs(&["4/7"]), 1, &q("3"), &g).unwrap(),
            g.east_south() * g.north_west()
        );
        assert!(matches!(
            gdw_specialized(&qs(&["1"]), 2, &q("1"), &g),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn trapezoid_examples() {
        let ones = BoundaryVectors::uniform(q("1"));
        assert_eq!(
            trapezoid_factorized(&qs(&["0", "1"]), 1, 1, &q("1"), &ones).unwrap(),
            q("8")
        );
        let g = generic();
        assert_eq!(
            trapezoid_factorized(&qs(&["1", "2"]), 2, 0, &q("1"), &g).unwrap(),
            g.north_south().pow(2)
        );
        // second product uses v_j - v_i: with top = (0, 1), c = 1 the factor is 2, not 0
        let t = trapezoid_factorized(&qs(&["0", "1"]), 0, 2, &q("1"), &ones).unwrap();
        assert_eq!(t, q("8"));
    }

    #[test]
    fn pair_specialized_small() {
        let ones = BoundaryVector::new(Side::East, q("1"), q("1"));
        // n = 2: the product over j < k <= n - j is empty
        assert_eq!(
            triangular_pair_specialized(&qs(&["3", "3"]), &q("1"), &ones, &ones).unwrap(),
            q("4")
        );
        // n = 3: only (j, k) = (1, 2)
        let u = qs(&["1", "2", "1"]);
        assert_eq!(triangular_pair_specialized(&u, &q("2"), &ones, &ones).unwrap(), q("6"));
    }
}
