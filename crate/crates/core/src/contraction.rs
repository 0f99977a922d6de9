//! Brute-force evaluation of partition functions by exact state-vector
//! contraction of the R-matrix products that define them.
//!
//! Site `k` of an `L`-site [`StateVector`] occupies bit `L - k` of the
//! amplitude index (site 1 is the most significant bit); bit value 0 is
//! `|1⟩` and 1 is `|2⟩`.

use crate::error::{Error, Result};
use crate::fraction_free::IntState;
use crate::linalg::interpolate;
use crate::scalar::Rational;
use crate::vertex::{check_site_pair, pairing, require_crossing, BoundaryVector, BoundaryVectors, RMatrix, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector {
    num_sites: usize,
    amplitudes: Vec<Rational>,
}

impl StateVector {
    pub fn new(num_sites: usize, amplitudes: Vec<Rational>) -> Result<Self> {
        if amplitudes.len() != 1usize << num_sites {
            return Err(Error::Parameter(format!(
                "state on {num_sites} sites needs {} amplitudes, got {}",
                1usize << num_sites,
                amplitudes.len()
            )));
        }
        Ok(StateVector { num_sites, amplitudes })
    }

    pub fn zeros(num_sites: usize) -> Self {
        StateVector {
            num_sites,
            amplitudes: vec![Rational::zero(); 1 << num_sites],
        }
    }

    /// Basis state; `levels[k-1]` is 1 or 2, the state of site `k`.
    pub fn basis(levels: &[u8]) -> Result<Self> {
        let mut idx = 0usize;
        for &level in levels {
            let bit = match level {
                1 => 0,
                2 => 1,
                other => return Err(Error::Parameter(format!("basis level must be 1 or 2, got {other}"))),
            };
            idx = (idx << 1) | bit;
        }
        let mut state = StateVector::zeros(levels.len());
        state.amplitudes[idx] = Rational::one();
        Ok(state)
    }

    /// `|ket⟩^{⊗L}`.
    pub fn uniform(ket: &BoundaryVector, num_sites: usize) -> Self {
        let mut state = StateVector {
            num_sites: 0,
            amplitudes: vec![Rational::one()],
        };
        for _ in 0..num_sites {
            state = state.prepend_site(ket);
        }
        state
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn amplitudes(&self) -> &[Rational] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> &Rational {
        &self.amplitudes[index]
    }

    pub fn max_bits(&self) -> u64 {
        self.amplitudes.iter().map(Rational::bits).max().unwrap_or(0)
    }

    /// `|ket⟩ ⊗ self`: the new site becomes site 1 and existing sites shift by one.
    pub fn prepend_site(&self, ket: &BoundaryVector) -> StateVector {
        let mut amplitudes = Vec::with_capacity(self.amplitudes.len() * 2);
        for bit in 0..2 {
            let weight = ket.component(bit);
            amplitudes.extend(self.amplitudes.iter().map(|x| x * weight));
        }
        StateVector {
            num_sites: self.num_sites + 1,
            amplitudes,
        }
    }

    /// `(⟨bra| ⊗ id) self`: contracts site 1 away.
    pub fn contract_first_site(&self, bra: &BoundaryVector) -> Result<StateVector> {
        if self.num_sites == 0 {
            return Err(Error::SiteIndex { site: 1, num_sites: 0 });
        }
        let half = self.amplitudes.len() / 2;
        let (ones, twos) = self.amplitudes.split_at(half);
        let amplitudes = ones
            .iter()
            .zip(twos)
            .map(|(x1, x2)| &bra.c1 * x1 + &bra.c2 * x2)
            .collect();
        Ok(StateVector {
            num_sites: self.num_sites - 1,
            amplitudes,
        })
    }

    /// `⟨bra|^{⊗L} self`.
    pub fn overlap_uniform(&self, bra: &BoundaryVector) -> Rational {
        let mut state = self.clone();
        while state.num_sites > 0 {
            state = state.contract_first_site(bra).expect("state has at least one site");
        }
        state.amplitudes.pop().expect("scalar state has one amplitude")
    }

    /// Applies `r` to sites `(first, second)`, with `first` as the first
    /// tensor factor of `r`, and the identity elsewhere.
    pub fn apply_gate(&mut self, first: usize, second: usize, r: &RMatrix) -> Result<()> {
        check_site_pair(self.num_sites, first, second)?;
        let bit_first = 1usize << (self.num_sites - first);
        let bit_second = 1usize << (self.num_sites - second);
        let mask = bit_first | bit_second;
        let scale_diagonal = !r.a().is_one();
        let (a, b) = (r.a(), r.b());
        for base in 0..self.amplitudes.len() {
            if base & mask != 0 {
                continue;
            }
            let i12 = base | bit_second;
            let i21 = base | bit_first;
            let i22 = base | mask;
            if scale_diagonal {
                self.amplitudes[base] *= a;
                self.amplitudes[i22] *= a;
            }
            // |12⟩ ← b|12⟩ + |21⟩ and |21⟩ ← |12⟩ + b|21⟩
            if b.is_zero() {
                self.amplitudes.swap(i12, i21);
            } else {
                let x12 = std::mem::take(&mut self.amplitudes[i12]);
                let x21 = std::mem::take(&mut self.amplitudes[i21]);
                self.amplitudes[i12] = b * &x12 + &x21;
                self.amplitudes[i21] = x12 + b * x21;
            }
        }
        Ok(())
    }
}

/// Rapidities, crossing constant and boundary vectors of a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    pub c: Rational,
    /// Horizontal rapidities `u_1..u_m`.
    pub u: Vec<Rational>,
    /// Vertical rapidities `v_1..v_n`.
    pub v: Vec<Rational>,
    pub vectors: BoundaryVectors,
}

impl ModelParams {
    pub fn new(c: Rational, u: Vec<Rational>, v: Vec<Rational>, vectors: BoundaryVectors) -> Result<Self> {
        require_crossing(&c)?;
        Ok(ModelParams { c, u, v, vectors })
    }

    pub fn rows(&self) -> usize {
        self.u.len()
    }

    pub fn columns(&self) -> usize {
        self.v.len()
    }
}

/// A contraction result together with the bit length of the largest
/// fraction-free amplitude seen along the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Traced {
    pub value: Rational,
    pub max_bits: u64,
}

/// Triangular-boundary partition function `Z_n(u_1..u_n)`.
///
/// Starts from `|s⟩^{⊗n}`; for `i = 1..n-1` in turn applies
/// `R_{i,i+1}(u_i - u_{i+1})`, then `R_{i,i+2}`, ..., then `R_{i,n}`; closes
/// with `⟨e|^{⊗n}`.
pub fn triangular_contract(u: &[Rational], c: &Rational, e: &BoundaryVector, s: &BoundaryVector) -> Result<Rational> {
    Ok(triangular_contract_traced(u, c, e, s)?.value)
}

pub fn triangular_contract_traced(
    u: &[Rational],
    c: &Rational,
    e: &BoundaryVector,
    s: &BoundaryVector,
) -> Result<Traced> {
    require_crossing(c)?;
    let n = u.len();
    let mut state = IntState::uniform(s, n);
    let mut max_bits = state.max_bits();
    for i in 1..n {
        for k in i + 1..=n {
            let r = RMatrix::from_difference(&(&u[i - 1] - &u[k - 1]), c)?;
            state.apply_gate(i, k, &r)?;
        }
        max_bits = max_bits.max(state.max_bits());
    }
    Ok(Traced {
        value: state.overlap_uniform(e),
        max_bits,
    })
}

/// Generalized domain-wall partition function `Z_{m,n}(u | v)`.
///
/// Evaluated row by row on the `2^n` column space: each row adjoins an
/// auxiliary site in `|w⟩`, applies `R_{a,1}(u_i - v_1)` through
/// `R_{a,n}(u_i - v_n)`, and contracts the auxiliary site with `⟨e|`. Rows are
/// processed from `u_1` to `u_m`; the columns are finally closed with `⟨n|`.
pub fn gdw_contract(params: &ModelParams) -> Result<Rational> {
    Ok(gdw_contract_traced(params)?.value)
}

pub fn gdw_contract_traced(params: &ModelParams) -> Result<Traced> {
    row_peel(&params.u, &params.v, &params.c, &params.vectors)
}

/// [`gdw_contract`] with the east vector replaced by `east`.
pub fn gdw_contract_fixed_east(params: &ModelParams, east: &BoundaryVector) -> Result<Rational> {
    let vectors = params.vectors.with_east(east);
    Ok(row_peel(&params.u, &params.v, &params.c, &vectors)?.value)
}

fn row_peel(u: &[Rational], v: &[Rational], c: &Rational, vecs: &BoundaryVectors) -> Result<Traced> {
    require_crossing(c)?;
    let n = v.len();
    let mut state = IntState::uniform(&vecs.south, n);
    let mut max_bits = state.max_bits();
    for ui in u {
        state.prepend_site(&vecs.west);
        for (k, vk) in v.iter().enumerate() {
            let r = RMatrix::from_difference(&(ui - vk), c)?;
            state.apply_gate(1, k + 2, &r)?;
        }
        max_bits = max_bits.max(state.max_bits());
        state.contract_first_site(&vecs.east);
    }
    Ok(Traced {
        value: state.overlap_uniform(&vecs.north),
        max_bits,
    })
}

/// East vector used internally by [`trapezoid_value`]: the model's own `e`
/// when `⟨e|s⟩ ≠ 0`, otherwise `s` itself.
pub fn default_aux_east(vecs: &BoundaryVectors) -> Result<BoundaryVector> {
    if !vecs.east_south().is_zero() {
        Ok(vecs.east.clone())
    } else if !vecs.south.is_zero() {
        Ok(vecs.south.with_side(Side::East))
    } else {
        Err(Error::degenerate(
            "s",
            "trapezoid normalization needs a nonzero south vector",
        ))
    }
}

/// Trapezoid partition function `T_{n,m}(v_1..v_n | v_{n+1}..v_{n+m})`,
/// obtained as
/// `Z_{m,n+m}(v_{n+1}..v_{n+m} | v_1..v_{n+m}) / Z_m(v_{n+1}..v_{n+m})`
/// with both factors contracted directly.
pub fn trapezoid_value(
    v_all: &[Rational],
    n: usize,
    m: usize,
    c: &Rational,
    vecs: &BoundaryVectors,
) -> Result<Rational> {
    let aux = default_aux_east(vecs)?;
    trapezoid_value_with_aux_east(v_all, n, m, c, vecs, &aux)
}

/// [`trapezoid_value`] with an explicit auxiliary east vector. The result
/// does not depend on `aux_east` as long as `⟨aux_east|s⟩ ≠ 0`.
pub fn trapezoid_value_with_aux_east(
    v_all: &[Rational],
    n: usize,
    m: usize,
    c: &Rational,
    vecs: &BoundaryVectors,
    aux_east: &BoundaryVector,
) -> Result<Rational> {
    require_crossing(c)?;
    if v_all.len() != n + m {
        return Err(Error::Parameter(format!(
            "trapezoid split ({n}, {m}) needs {} rapidities, got {}",
            n + m,
            v_all.len()
        )));
    }
    if pairing(aux_east, &vecs.south).is_zero() {
        return Err(Error::degenerate(
            "e_1 s_1 + e_2 s_2",
            "auxiliary east vector of the trapezoid normalization",
        ));
    }
    let top = &v_all[n..];
    let aux_vecs = vecs.with_east(aux_east);
    let full = row_peel(top, v_all, c, &aux_vecs)?.value;
    let triangle = triangular_contract(top, c, aux_east, &vecs.south)?;
    if triangle.is_zero() {
        let factor = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .find(|&(i, j)| (&top[i] - &top[j] + c).is_zero())
            .map(|(i, j)| format!("v_{} - v_{} + c", n + i + 1, n + j + 1))
            .unwrap_or_else(|| format!("Z_{m}"));
        return Err(Error::degenerate(factor, "trapezoid normalization"));
    }
    full.checked_div(&triangle)
}

/// Coefficients (constant first) of `Z_n` as a polynomial in `u_j`
/// (1-based), interpolated through `nodes` with the other rapidities fixed.
pub fn degree_profile(
    u: &[Rational],
    var_index: usize,
    nodes: &[Rational],
    c: &Rational,
    e: &BoundaryVector,
    s: &BoundaryVector,
) -> Result<Vec<Rational>> {
    if var_index == 0 || var_index > u.len() {
        return Err(Error::Parameter(format!(
            "variable index {var_index} out of range 1..={}",
            u.len()
        )));
    }
    let mut point = u.to_vec();
    let values = nodes
        .iter()
        .map(|x| {
            point[var_index - 1] = x.clone();
            triangular_contract(&point, c, e, s)
        })
        .collect::<Result<Vec<_>>>()?;
    interpolate(nodes, &values)
}
