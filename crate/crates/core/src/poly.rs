//! Polynomials over GF(2).
//!
//! Coefficients are stored as a bit vector: bit `i` is the coefficient of
//! x^i. Addition is XOR, multiplication is shift-and-XOR. Degrees are
//! unbounded (Berlekamp-Massey can return characteristic polynomials of
//! degree in the thousands), so the bits live in a `Vec<u64>`.

use std::fmt;

use crate::cosets::distinct_prime_factors;
use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// A polynomial over GF(2), bit `i` = coefficient of x^i.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPolynomial {
    // Invariant: no trailing zero words; the zero polynomial is the empty vec.
    words: Vec<u64>,
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        BinaryPolynomial { words: Vec::new() }
    }

    pub fn one() -> Self {
        BinaryPolynomial { words: vec![1] }
    }

    /// x^degree
    pub fn monomial(degree: usize) -> Self {
        let mut p = BinaryPolynomial::zero();
        p.set_coefficient(degree, true);
        p
    }

    /// Builds a polynomial from the low 64 coefficient bits.
    pub fn from_mask(mask: u64) -> Self {
        let mut p = BinaryPolynomial { words: vec![mask] };
        p.normalize();
        p
    }

    /// The coefficient bits as a single word, if the degree fits.
    pub fn mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = self.words.last()?;
        Some((self.words.len() - 1) * WORD_BITS + (63 - last.leading_zeros() as usize))
    }

    pub fn coefficient(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| w >> (i % WORD_BITS) & 1 == 1)
    }

    pub fn set_coefficient(&mut self, i: usize, value: bool) {
        let (w, b) = (i / WORD_BITS, i % WORD_BITS);
        if value {
            if self.words.len() <= w {
                self.words.resize(w + 1, 0);
            }
            self.words[w] |= 1 << b;
        } else if let Some(word) = self.words.get_mut(w) {
            *word &= !(1 << b);
            self.normalize();
        }
    }

    pub fn constant_term(&self) -> bool {
        self.coefficient(0)
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// Multiplication by x^k.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let (skip, shift) = (k / WORD_BITS, k % WORD_BITS);
        let mut words = vec![0u64; self.words.len() + skip + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + skip] |= w << shift;
            if shift > 0 {
                words[i + skip + 1] |= w >> (WORD_BITS - shift);
            }
        }
        let mut p = BinaryPolynomial { words };
        p.normalize();
        p
    }

    fn xor_assign(&mut self, other: &Self) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= b;
        }
        self.normalize();
    }

    /// Quotient and remainder of division by `divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = BinaryPolynomial::zero();
        while let Some(r) = rem.degree() {
            if r < d {
                break;
            }
            quot.set_coefficient(r - d, true);
            rem.xor_assign(&divisor.shl(r - d));
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        match other.rem(self) {
            Ok(r) => r.is_zero(),
            Err(_) => false,
        }
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    /// x^deg(p) * p(1/x): the coefficient vector reversed.
    ///
    /// Requires a nonzero constant term so the degree is preserved and the
    /// map is an involution.
    pub fn reciprocal(&self) -> Result<Self> {
        let deg = self.degree().ok_or(Error::ZeroConstantTerm)?;
        if !self.constant_term() {
            return Err(Error::ZeroConstantTerm);
        }
        let mut out = BinaryPolynomial::zero();
        for i in 0..=deg {
            if self.coefficient(i) {
                out.set_coefficient(deg - i, true);
            }
        }
        Ok(out)
    }

    /// x^(2^k) mod m, by repeated squaring.
    fn x_pow_pow2_mod(k: usize, m: &Self) -> Self {
        let mut h = BinaryPolynomial::monomial(1).rem(m).expect("nonzero modulus");
        for _ in 0..k {
            h = (&h * &h).rem(m).expect("nonzero modulus");
        }
        h
    }

    /// x^e mod m.
    fn x_pow_mod(e: u64, m: &Self) -> Self {
        let mut result = BinaryPolynomial::one().rem(m).expect("nonzero modulus");
        let mut base = BinaryPolynomial::monomial(1).rem(m).expect("nonzero modulus");
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = (&result * &base).rem(m).expect("nonzero modulus");
            }
            base = (&base * &base).rem(m).expect("nonzero modulus");
            e >>= 1;
        }
        result
    }

    /// Rabin's irreducibility test over GF(2).
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return false,
        };
        if n == 1 {
            return true;
        }
        let x = BinaryPolynomial::monomial(1);
        // x^(2^n) == x (mod self)
        let mut h = Self::x_pow_pow2_mod(n, self);
        h.xor_assign(&x);
        if !h.is_zero() {
            return false;
        }
        for q in distinct_prime_factors(n as u64) {
            let mut h = Self::x_pow_pow2_mod(n / q as usize, self);
            h.xor_assign(&x);
            if !Self::gcd(&h, self).is_one() {
                return false;
            }
        }
        true
    }

    /// True iff the polynomial is irreducible and its root has
    /// multiplicative order 2^deg - 1.
    ///
    /// Supported for degrees up to 24 (2^deg - 1 is factored by trial
    /// division).
    pub fn is_primitive(&self) -> bool {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return false,
        };
        assert!(n <= 24, "primitivity test supports degrees up to 24");
        if !self.is_irreducible() {
            return false;
        }
        let period = (1u64 << n) - 1;
        for q in distinct_prime_factors(period) {
            if Self::x_pow_mod(period / q, self).is_one() {
                return false;
            }
        }
        true
    }

    /// The primitive polynomial of the given degree with the smallest
    /// coefficient mask.
    pub fn canonical_primitive(degree: usize) -> Self {
        assert!((1..=24).contains(&degree));
        let lo = 1u64 << degree;
        for mask in (lo + 1..2 * lo).step_by(2) {
            let p = BinaryPolynomial::from_mask(mask);
            if p.is_primitive() {
                return p;
            }
        }
        unreachable!("primitive polynomials exist for every degree")
    }

    /// Parses either a monomial list ("x^5+x^3+1") or a hex coefficient
    /// mask ("0x29"). Whitespace is ignored; repeated terms cancel.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            let mask = u64::from_str_radix(hex, 16)
                .map_err(|_| Error::Parse(format!("bad hex mask {s:?}")))?;
            return Ok(BinaryPolynomial::from_mask(mask));
        }
        if s == "0" {
            return Ok(BinaryPolynomial::zero());
        }
        let mut p = BinaryPolynomial::zero();
        for term in s.split('+') {
            let exp = match term {
                "1" => 0,
                "x" => 1,
                _ => {
                    let e = term
                        .strip_prefix("x^")
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad term {term:?}")))?;
                    if e > 4096 {
                        return Err(Error::Parse(format!("exponent {e} too large")));
                    }
                    e
                }
            };
            p.set_coefficient(exp, !p.coefficient(exp));
        }
        Ok(p)
    }
}

impl std::ops::Add for &BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn add(self, rhs: &BinaryPolynomial) -> BinaryPolynomial {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl std::ops::Mul for &BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn mul(self, rhs: &BinaryPolynomial) -> BinaryPolynomial {
        let mut out = BinaryPolynomial::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for i in 0..=rhs.degree().unwrap() {
            if rhs.coefficient(i) {
                out.xor_assign(&self.shl(i));
            }
        }
        out
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = match self.degree() {
            None => return write!(f, "0"),
            Some(d) => d,
        };
        let mut first = true;
        for i in (0..=deg).rev() {
            if !self.coefficient(i) {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

// Debug delegates to Display; polynomials read better as monomial lists.
impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
