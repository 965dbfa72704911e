//! LFSR state machines and the trace-phase correspondence.
//!
//! An LFSR of length L with characteristic polynomial
//! P(x) = x^L + c_1 x^(L-1) + ... + c_L runs the recurrence
//! a_(n+L) = c_1 a_(n+L-1) + ... + c_L a_n over GF(2). The state vector
//! holds (a_n, ..., a_(n+L-1)) and the emitted bit is a_n, so the initial
//! state is literally the first L output bits.
//!
//! When P is primitive with root alpha, every output sequence has the form
//! a_n = Tr(A * alpha^n) for a unique phase A in GF(2^L); `trace_phase` and
//! `state_from_phase` convert between the two descriptions.

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::poly::BinaryPolynomial;

/// A maximal-length LFSR. Construction rejects non-primitive characteristic
/// polynomials: the coset and spectrum machinery assumes full period.
#[derive(Debug, Clone)]
pub struct Lfsr {
    characteristic: BinaryPolynomial,
    degree: usize,
    taps: u32,
    state: u32,
}

impl Lfsr {
    pub fn new(characteristic: BinaryPolynomial, initial_state: &[u8]) -> Result<Self> {
        let degree = characteristic.degree().ok_or(Error::DegreeOutOfRange(0))?;
        crate::cosets::check_degree(degree)?;
        if !characteristic.is_primitive() {
            return Err(Error::NotPrimitive(characteristic));
        }
        let state = pack_bits(initial_state)?;
        if initial_state.len() != degree {
            return Err(Error::LengthMismatch { expected: degree, actual: initial_state.len() });
        }
        let taps = characteristic.mask().unwrap() as u32 & ((1 << degree) - 1);
        Ok(Lfsr { characteristic, degree, taps, state })
    }

    pub fn characteristic(&self) -> &BinaryPolynomial {
        &self.characteristic
    }

    /// Register length L.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Current state (a_n, ..., a_(n+L-1)).
    pub fn state(&self) -> Vec<u8> {
        unpack_bits(self.state, self.degree)
    }

    /// Current state packed as bits (bit i = a_(n+i)).
    pub fn state_bits(&self) -> u32 {
        self.state
    }

    /// Emits a_n and advances: the feedback bit is the tap parity of the
    /// window.
    pub fn step(&mut self) -> u8 {
        let out = (self.state & 1) as u8;
        let feedback = (self.state & self.taps).count_ones() & 1;
        self.state = (self.state >> 1) | (feedback << (self.degree - 1));
        out
    }

    /// The next n output bits.
    pub fn generate(&mut self, n: usize) -> Vec<u8> {
        (0..n).map(|_| self.step()).collect()
    }

    /// Pure variant: the first n bits of the sequence from an explicit
    /// state.
    pub fn output(characteristic: &BinaryPolynomial, state: &[u8], n: usize) -> Result<Vec<u8>> {
        Ok(Lfsr::new(characteristic.clone(), state)?.generate(n))
    }
}

/// The unique A with a_n = Tr(A * alpha^n) reproducing `state` at
/// n = 0..L-1. Solves the L linear conditions by Gaussian elimination; the
/// system is nonsingular because the trace pairing is nondegenerate.
pub fn trace_phase(ctx: &FieldContext, state: &[u8]) -> Result<FieldElement> {
    let l = ctx.degree();
    if state.len() != l {
        return Err(Error::LengthMismatch { expected: l, actual: state.len() });
    }
    pack_bits(state)?;
    // row n: bits j = Tr(alpha^(n+j)), plus the rhs bit above them
    let mut rows: Vec<u64> = (0..l)
        .map(|n| {
            let mut row = 0u64;
            for j in 0..l {
                let t = ctx.trace_bits(ctx.alpha_pow_bits((n + j) as u64));
                row |= u64::from(t) << j;
            }
            row | u64::from(state[n]) << l
        })
        .collect();
    let mut used = vec![false; l];
    let mut pivots = Vec::with_capacity(l);
    for col in 0..l {
        let pivot = (0..l).find(|&r| !used[r] && rows[r] >> col & 1 == 1);
        let pivot = pivot.expect("trace system is nonsingular for a primitive modulus");
        used[pivot] = true;
        pivots.push((col, pivot));
        for r in 0..l {
            if r != pivot && rows[r] >> col & 1 == 1 {
                rows[r] ^= rows[pivot];
            }
        }
    }
    // read the solved bits only after full elimination
    let mut phase = 0u32;
    for (col, pivot) in pivots {
        if rows[pivot] >> l & 1 == 1 {
            phase |= 1 << col;
        }
    }
    ctx.element(phase)
}

/// Inverse of `trace_phase`: the state (Tr(A), Tr(A alpha), ...,
/// Tr(A alpha^(L-1))).
pub fn state_from_phase(ctx: &FieldContext, phase: &FieldElement) -> Result<Vec<u8>> {
    if phase.context() != ctx {
        return Err(Error::ContextMismatch);
    }
    Ok((0..ctx.degree())
        .map(|n| (phase * &ctx.alpha_pow(n as i64)).trace())
        .collect())
}

/// Parses an ASCII '0'/'1' string, earliest bit first.
pub fn parse_bit_string(s: &str) -> Result<Vec<u8>> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::Parse(format!("invalid sequence character {other:?}"))),
        })
        .collect()
}

/// Formats a bit sequence as an ASCII '0'/'1' string.
pub fn bit_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

fn pack_bits(bits: &[u8]) -> Result<u32> {
    if bits.len() > 24 {
        return Err(Error::LengthMismatch { expected: 24, actual: bits.len() });
    }
    let mut out = 0u32;
    for (i, &b) in bits.iter().enumerate() {
        match b {
            0 => {}
            1 => out |= 1 << i,
            other => return Err(Error::Parse(format!("state bit must be 0 or 1, got {other}"))),
        }
    }
    Ok(out)
}

fn unpack_bits(bits: u32, len: usize) -> Vec<u8> {
    (0..len).map(|i| (bits >> i & 1) as u8).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> BinaryPolynomial {
        BinaryPolynomial::parse(s).unwrap()
    }

    #[test]
    fn period_three_recurrence() {
        let seq = Lfsr::output(&poly("x^2+x+1"), &[1, 0], 6).unwrap();
        assert_eq!(bit_string(&seq), "101101");
    }

    #[test]
    fn hand_recurrence_prefix() {
        // a_5 = a_3 + a_0 = 1, a_6 = a_4 + a_1 = 0, a_7 = a_5 + a_2 = 1
        let seq = Lfsr::output(&poly("x^5+x^3+1"), &[1, 0, 0, 0, 0], 8).unwrap();
        assert_eq!(bit_string(&seq), "10000101");
    }

    #[test]
    fn zero_state_stays_zero() {
        let seq = Lfsr::output(&poly("x^5+x^3+1"), &[0; 5], 40).unwrap();
        assert!(seq.iter().all(|&b| b == 0));
    }

    #[test]
    fn non_primitive_rejected() {
        let err = Lfsr::new(poly("x^4+x^3+x^2+x+1"), &[1, 0, 0, 0]).unwrap_err();
        assert!(matches!(err, Error::NotPrimitive(_)));
    }

    #[test]
    fn full_period_visits_every_nonzero_state() {
        let mut lfsr = Lfsr::new(poly("x^5+x^3+1"), &[1, 0, 0, 0, 0]).unwrap();
        let mut seen = std::collections::HashSet::new();
        for _ in 0..31 {
            assert!(seen.insert(lfsr.state));
            lfsr.step();
        }
        assert_eq!(seen.len(), 31);
        assert_eq!(lfsr.state(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn phase_of_unit_initial_states() {
        let f = FieldContext::from_text("x^5+x^3+1").unwrap();
        assert_eq!(trace_phase(&f, &[1, 0, 0, 0, 0]).unwrap(), f.one());
        assert_eq!(trace_phase(&f, &[0; 5]).unwrap(), f.zero());

        let g = FieldContext::from_text("x^5+x^2+1").unwrap();
        assert_eq!(state_from_phase(&g, &g.one()).unwrap(), vec![1, 0, 0, 1, 0]);
        assert_eq!(state_from_phase(&f, &f.one()).unwrap(), vec![1, 0, 0, 0, 0]);
        assert_eq!(state_from_phase(&f, &f.zero()).unwrap(), vec![0; 5]);
    }

    #[test]
    fn phase_one_reproduces_generated_sequence() {
        // a_n = Tr(alpha^n) for the whole period, cross-checking the solver
        let f = FieldContext::from_text("x^5+x^3+1").unwrap();
        let seq = Lfsr::output(&poly("x^5+x^3+1"), &[1, 0, 0, 0, 0], 31).unwrap();
        for (n, &bit) in seq.iter().enumerate() {
            assert_eq!(f.alpha_pow(n as i64).trace(), bit);
        }
    }

    #[test]
    fn advancing_multiplies_phase_by_alpha() {
        let f = FieldContext::from_text("x^5+x^3+1").unwrap();
        let mut lfsr = Lfsr::new(poly("x^5+x^3+1"), &[0, 1, 1, 0, 1]).unwrap();
        let phase0 = trace_phase(&f, &lfsr.state()).unwrap();
        for t in 0..35i64 {
            let expect = &phase0 * &f.alpha_pow(t);
            assert_eq!(trace_phase(&f, &lfsr.state()).unwrap(), expect);
            lfsr.step();
        }
    }

    #[test]
    fn phase_round_trips() {
        for m in ["x^5+x^3+1", "x^4+x+1", "x^6+x+1"] {
            let f = FieldContext::from_text(m).unwrap();
            for bits in 0..(1u32 << f.degree()) {
                let a = f.element(bits).unwrap();
                let state = state_from_phase(&f, &a).unwrap();
                assert_eq!(trace_phase(&f, &state).unwrap(), a);
            }
        }
    }

    #[test]
    fn bit_string_round_trip() {
        assert_eq!(parse_bit_string("10010").unwrap(), vec![1, 0, 0, 1, 0]);
        assert_eq!(bit_string(&[1, 0, 0, 1, 0]), "10010");
        assert!(parse_bit_string("10x01").is_err());
    }
}
