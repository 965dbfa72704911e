//! Berlekamp-Massey analysis and coset identification.
//!
//! `berlekamp_massey` finds the shortest LFSR generating a finite binary
//! sequence; its length is the linear complexity. The connection polynomial
//! C(x) = 1 + c_1 x + ... + c_L x^L is converted once, here, into the
//! characteristic convention used by `lfsr` (coefficients reversed across
//! degree L); the m-sequence round-trip test pins the conversion.
//!
//! For a sequence of period 2^L - 1 the characteristic polynomial of the
//! minimal LFSR is squarefree with roots among the powers of alpha, so it
//! factors into minimal polynomials of cyclotomic cosets; `coset_support`
//! recovers those cosets by trial division.

use std::collections::BTreeSet;

use crate::cosets::cyclotomic_cosets;
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::poly::BinaryPolynomial;

/// Output of `berlekamp_massey`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearComplexityResult {
    /// Length of the shortest LFSR generating the input.
    pub complexity: usize,
    /// Characteristic polynomial of that LFSR (degree = complexity; the
    /// constant term may be zero for sequences with a dying-out prefix).
    pub characteristic_polynomial: BinaryPolynomial,
}

/// Berlekamp-Massey over GF(2).
pub fn berlekamp_massey(bits: &[u8]) -> LinearComplexityResult {
    let mut c = BinaryPolynomial::one();
    let mut b = BinaryPolynomial::one();
    let mut l: usize = 0;
    let mut m: i64 = -1;
    for n in 0..bits.len() {
        let mut d = bits[n] & 1;
        for i in 1..=l {
            if c.coefficient(i) {
                d ^= bits[n - i] & 1;
            }
        }
        if d == 1 {
            let t = c.clone();
            c = &c + &b.shl((n as i64 - m) as usize);
            if 2 * l <= n {
                l = n + 1 - l;
                m = n as i64;
                b = t;
            }
        }
    }
    // characteristic polynomial = x^L * C(1/x)
    let mut characteristic = BinaryPolynomial::zero();
    for i in 0..=l {
        if c.coefficient(i) {
            characteristic.set_coefficient(l - i, true);
        }
    }
    LinearComplexityResult { complexity: l, characteristic_polynomial: characteristic }
}

/// The coset leaders E whose minimal polynomials divide `seq_min_poly`.
///
/// The coset labels only mean something relative to a chosen alpha, so the
/// context is explicit. If dividing out every matching minimal polynomial
/// leaves a nontrivial remainder, the input had roots outside the field's
/// period and an error is returned.
pub fn coset_support(seq_min_poly: &BinaryPolynomial, ctx: &FieldContext) -> Result<BTreeSet<u64>> {
    let mut support = BTreeSet::new();
    let mut remaining = seq_min_poly.clone();
    for coset in cyclotomic_cosets(ctx.degree())? {
        let mp = ctx.minimal_polynomial(coset.leader());
        if mp.divides(&remaining) {
            remaining = remaining.divmod(&mp)?.0;
            support.insert(coset.leader());
        }
    }
    if !remaining.is_one() {
        return Err(Error::UnfactorableRemainder(remaining));
    }
    Ok(support)
}
