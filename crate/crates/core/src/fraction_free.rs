//! Fraction-free contraction kernel.
//!
//! Amplitudes are kept as integers over one shared denominator. A gate
//! `R = (P + Q, P, Q) / Q` with `b = P/Q` in lowest terms acts by its integer
//! numerators and multiplies the shared denominator by `Q`; boundary vectors
//! are split the same way. Only the final value is reduced, which avoids a
//! gcd per arithmetic operation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::scalar::Rational;
use crate::vertex::{check_site_pair, BoundaryVector, RMatrix};

/// `(c1, c2) / denom`.
struct IntVector {
    c1: BigInt,
    c2: BigInt,
    denom: BigInt,
}

impl IntVector {
    fn new(v: &BoundaryVector) -> Self {
        let denom = v.c1.denom().lcm(v.c2.denom());
        let lift = |x: &Rational| x.numer() * (&denom / x.denom());
        IntVector {
            c1: lift(&v.c1),
            c2: lift(&v.c2),
            denom,
        }
    }

    fn component(&self, bit: usize) -> &BigInt {
        if bit == 0 {
            &self.c1
        } else {
            &self.c2
        }
    }
}

/// `R` as `(diag, off, swap) / denom`.
pub(crate) struct IntGate {
    diag: BigInt,
    off: BigInt,
    swap: BigInt,
}

impl IntGate {
    fn new(r: &RMatrix) -> (Self, BigInt) {
        let (p, q) = (r.b().numer().clone(), r.b().denom().clone());
        let gate = IntGate {
            diag: &p + &q,
            off: p,
            swap: q.clone(),
        };
        (gate, q)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct IntState {
    num_sites: usize,
    amplitudes: Vec<BigInt>,
    denom: BigInt,
}

impl IntState {
    pub(crate) fn uniform(ket: &BoundaryVector, num_sites: usize) -> Self {
        let mut state = IntState {
            num_sites: 0,
            amplitudes: vec![BigInt::one()],
            denom: BigInt::one(),
        };
        let v = IntVector::new(ket);
        for _ in 0..num_sites {
            state.prepend(&v);
        }
        state
    }

    fn prepend(&mut self, v: &IntVector) {
        let mut amplitudes = Vec::with_capacity(self.amplitudes.len() * 2);
        for bit in 0..2 {
            let weight = v.component(bit);
            amplitudes.extend(self.amplitudes.iter().map(|x| x * weight));
        }
        self.amplitudes = amplitudes;
        self.num_sites += 1;
        self.denom *= &v.denom;
    }

    pub(crate) fn prepend_site(&mut self, ket: &BoundaryVector) {
        self.prepend(&IntVector::new(ket));
    }

    /// Contracts site 1 with `bra`. The state must have at least one site.
    pub(crate) fn contract_first_site(&mut self, bra: &BoundaryVector) {
        debug_assert!(self.num_sites > 0);
        let v = IntVector::new(bra);
        let half = self.amplitudes.len() / 2;
        let twos = self.amplitudes.split_off(half);
        for (x1, x2) in self.amplitudes.iter_mut().zip(twos) {
            *x1 = &v.c1 * &*x1 + &v.c2 * x2;
        }
        self.num_sites -= 1;
        self.denom *= &v.denom;
    }

    pub(crate) fn apply_gate(&mut self, first: usize, second: usize, r: &RMatrix) -> Result<()> {
        check_site_pair(self.num_sites, first, second)?;
        let (g, denom) = IntGate::new(r);
        let bit_first = 1usize << (self.num_sites - first);
        let bit_second = 1usize << (self.num_sites - second);
        let mask = bit_first | bit_second;
        let swap_is_one = g.swap.is_one();
        for base in 0..self.amplitudes.len() {
            if base & mask != 0 {
                continue;
            }
            let (i12, i21, i22) = (base | bit_second, base | bit_first, base | mask);
            self.amplitudes[base] *= &g.diag;
            self.amplitudes[i22] *= &g.diag;
            let x12 = std::mem::take(&mut self.amplitudes[i12]);
            let x21 = std::mem::take(&mut self.amplitudes[i21]);
            if g.off.is_zero() {
                // pure exchange, up to the scale `swap`
                self.amplitudes[i12] = if swap_is_one { x21 } else { x21 * &g.swap };
                self.amplitudes[i21] = if swap_is_one { x12 } else { x12 * &g.swap };
            } else if swap_is_one {
                self.amplitudes[i12] = &g.off * &x12 + &x21;
                self.amplitudes[i21] = x12 + &g.off * x21;
            } else {
                self.amplitudes[i12] = &g.off * &x12 + &g.swap * &x21;
                self.amplitudes[i21] = &g.swap * x12 + &g.off * x21;
            }
        }
        self.denom *= denom;
        Ok(())
    }

    /// `⟨bra|^{⊗L} self`, reduced to lowest terms.
    pub(crate) fn overlap_uniform(mut self, bra: &BoundaryVector) -> Rational {
        while self.num_sites > 0 {
            self.contract_first_site(bra);
        }
        let numer = self.amplitudes.pop().unwrap_or_else(BigInt::zero);
        Rational::new(numer, self.denom).expect("denominators are products of positive integers")
    }

    /// Largest integer amplitude, in bits.
    pub(crate) fn max_bits(&self) -> u64 {
        self.amplitudes.iter().map(|x| x.bits()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::StateVector;
    use crate::vertex::{r_matrix, Side};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn matches_rational_kernel() {
        let s = BoundaryVector::new(Side::South, q("2/3"), q("-5/4"));
        let w = BoundaryVector::new(Side::West, q("7"), q("1/6"));
        let e = BoundaryVector::new(Side::East, q("-3/2"), q("9/5"));
        let mut fast = IntState::uniform(&s, 3);
        let mut slow = StateVector::uniform(&s, 3);
        fast.prepend_site(&w);
        slow = slow.prepend_site(&w);
        for (first, second, u, v) in [
            (1, 2, "1/2", "3"),
            (1, 4, "-7/3", "2/9"),
            (3, 2, "5", "5"),
            (2, 4, "0", "-1/7"),
        ] {
            let r = r_matrix(&q(u), &q(v), &q("3/4")).unwrap();
            fast.apply_gate(first, second, &r).unwrap();
            slow.apply_gate(first, second, &r).unwrap();
        }
        fast.contract_first_site(&e);
        let slow = slow.contract_first_site(&e).unwrap();
        assert_eq!(fast.overlap_uniform(&w), slow.overlap_uniform(&w));
    }

    #[test]
    fn empty_state_overlaps_to_one() {
        let s = BoundaryVector::new(Side::South, q("2/3"), q("1"));
        assert_eq!(IntState::uniform(&s, 0).overlap_uniform(&s), Rational::one());
    }
}
