//! Boolean filter functions in algebraic normal form, and the filter
//! generator (LFSR + filter) built from them.
//!
//! An ANF is a XOR of AND-monomials plus a constant; each monomial is a
//! nonempty subset of the L input variables, stored as an L-bit mask.
//! Variable x_i binds to position i of the sliding LFSR window
//! (a_n, ..., a_(n+L-1)), matching the F_1(a_0, ..., a_4) indexing of the
//! worked example. The text form is '+'-separated terms, each '1' or a
//! '*'-joined list of variables "x<index>".

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lfsr::Lfsr;
use crate::poly::BinaryPolynomial;

/// A Boolean function of `arity` variables in algebraic normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnfFunction {
    arity: usize,
    monomials: BTreeSet<u32>,
    constant: bool,
}

impl AnfFunction {
    /// Builds a function from monomial masks. Duplicates cancel (set
    /// semantics over GF(2)); the empty mask folds into the constant.
    pub fn new(arity: usize, monomials: impl IntoIterator<Item = u32>, constant: bool) -> Result<Self> {
        let mut f = AnfFunction { arity, monomials: BTreeSet::new(), constant };
        for mask in monomials {
            f.toggle(mask)?;
        }
        Ok(f)
    }

    pub fn zero(arity: usize) -> Self {
        AnfFunction { arity, monomials: BTreeSet::new(), constant: false }
    }

    fn toggle(&mut self, mask: u32) -> Result<()> {
        if u64::from(mask) >> self.arity != 0 {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                actual: 32 - mask.leading_zeros() as usize,
            });
        }
        if mask == 0 {
            self.constant = !self.constant;
        } else if !self.monomials.remove(&mask) {
            self.monomials.insert(mask);
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn constant(&self) -> bool {
        self.constant
    }

    /// Monomial masks in ascending mask order.
    pub fn monomials(&self) -> impl Iterator<Item = u32> + '_ {
        self.monomials.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty() && !self.constant
    }

    /// Maximum monomial size; 0 for constant-only functions.
    pub fn degree(&self) -> usize {
        self.monomials.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    /// XOR over monomials of AND over their variables, plus the constant.
    pub fn evaluate(&self, point: &[u8]) -> Result<u8> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, actual: point.len() });
        }
        let mut window = 0u32;
        for (i, &b) in point.iter().enumerate() {
            if b > 1 {
                return Err(Error::Parse(format!("point bit must be 0 or 1, got {b}")));
            }
            window |= u32::from(b) << i;
        }
        Ok(self.evaluate_window(window))
    }

    /// Evaluation on a packed window (bit i = variable x_i).
    pub fn evaluate_window(&self, window: u32) -> u8 {
        let mut acc = u8::from(self.constant);
        for &m in &self.monomials {
            acc ^= u8::from(window & m == m);
        }
        acc
    }

    /// GF(2) sum of two functions: symmetric difference of monomial sets
    /// plus constant XOR.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        if other.arity != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, actual: other.arity });
        }
        let mut out = self.clone();
        out.constant ^= other.constant;
        for &m in &other.monomials {
            out.toggle(m)?;
        }
        Ok(out)
    }

    /// Parses the ANF grammar: '+'-separated terms, each '1', '0' or
    /// '*'-joined variables "x<index>"; whitespace is ignored, repeated
    /// terms cancel, repeated variables inside a term collapse (x*x = x).
    pub fn parse(text: &str, arity: usize) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty filter function".into()));
        }
        let mut f = AnfFunction::zero(arity);
        for term in s.split('+') {
            match term {
                "0" => {}
                "1" => f.constant = !f.constant,
                _ => {
                    let mut mask = 0u32;
                    for var in term.split('*') {
                        let idx: usize = var
                            .strip_prefix('x')
                            .and_then(|v| v.parse().ok())
                            .ok_or_else(|| Error::Parse(format!("bad ANF term {term:?}")))?;
                        if idx >= arity {
                            return Err(Error::Parse(format!(
                                "variable x{idx} out of range for arity {arity}"
                            )));
                        }
                        mask |= 1 << idx;
                    }
                    f.toggle(mask)?;
                }
            }
        }
        Ok(f)
    }
}

impl fmt::Display for AnfFunction {
    /// Canonical text: monomials by descending degree, then lexicographic
    /// variable order; the constant term last.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<Vec<usize>> = self
            .monomials
            .iter()
            .map(|&m| (0..self.arity).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        terms.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut first = true;
        for vars in &terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let names: Vec<String> = vars.iter().map(|i| format!("x{i}")).collect();
            write!(f, "{}", names.join("*"))?;
        }
        if self.constant {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A nonlinear filter generator: primitive LFSR plus an ANF filter applied
/// to the sliding L-bit window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterGenerator {
    polynomial: BinaryPolynomial,
    initial_state: Vec<u8>,
    filter: AnfFunction,
}

impl FilterGenerator {
    pub fn new(polynomial: BinaryPolynomial, initial_state: Vec<u8>, filter: AnfFunction) -> Result<Self> {
        // primitivity, degree range and state length are checked here
        let lfsr = Lfsr::new(polynomial.clone(), &initial_state)?;
        if filter.arity() != lfsr.degree() {
            return Err(Error::ArityMismatch { expected: lfsr.degree(), actual: filter.arity() });
        }
        if initial_state.iter().all(|&b| b == 0) {
            return Err(Error::ZeroInitialState);
        }
        Ok(FilterGenerator { polynomial, initial_state, filter })
    }

    pub fn polynomial(&self) -> &BinaryPolynomial {
        &self.polynomial
    }

    pub fn initial_state(&self) -> &[u8] {
        &self.initial_state
    }

    pub fn filter(&self) -> &AnfFunction {
        &self.filter
    }

    /// Register length L.
    pub fn degree(&self) -> usize {
        self.filter.arity()
    }

    /// Sequence period 2^L - 1.
    pub fn period(&self) -> u64 {
        (1 << self.degree()) - 1
    }

    /// z_t = F(a_t, ..., a_(t+L-1)) for t = 0..n-1.
    pub fn keystream(&self, n: usize) -> Vec<u8> {
        let mut lfsr = Lfsr::new(self.polynomial.clone(), &self.initial_state)
            .expect("validated at construction");
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(self.filter.evaluate_window(lfsr.state_bits()));
            lfsr.step();
        }
        out
    }

    /// One full period of the keystream.
    pub fn full_period_keystream(&self) -> Vec<u8> {
        self.keystream(self.period() as usize)
    }
}
