//! GF(2^L) arithmetic in polynomial basis.
//!
//! A `FieldContext` fixes the field by a primitive modulus polynomial of
//! degree L (2 <= L <= 24). Elements are L-bit coefficient vectors; the
//! canonical generator alpha is the residue class of x, which has
//! multiplicative order 2^L - 1 because the modulus is primitive. Contexts
//! are immutable and cheap to clone (shared internally); the optional
//! discrete-log table is built lazily for L <= 20 and race-free via
//! `OnceLock`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::cosets::{check_degree, CyclotomicCoset};
use crate::error::{Error, Result};
use crate::poly::BinaryPolynomial;

const LOG_TABLE_MAX_DEGREE: usize = 20;

struct CtxInner {
    degree: usize,
    modulus: BinaryPolynomial,
    modulus_mask: u32,
    period: u64,
    // bit j set iff Tr(alpha^j) = 1; trace of an element is then a masked parity
    trace_mask: u32,
    tables: OnceLock<LogTables>,
}

struct LogTables {
    // exp[e] = bits of alpha^e for 0 <= e < period
    exp: Vec<u32>,
    // log[bits] = e for bits != 0; log[0] unused
    log: Vec<u32>,
}

/// The field GF(2^L) fixed by a primitive modulus polynomial.
#[derive(Clone)]
pub struct FieldContext {
    inner: Arc<CtxInner>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldContext {}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {}", self.inner.degree, self.inner.modulus)
    }
}

impl FieldContext {
    /// Builds the field for a primitive modulus of degree 2..=24.
    pub fn new(modulus: BinaryPolynomial) -> Result<Self> {
        let degree = modulus.degree().ok_or(Error::DegreeOutOfRange(0))?;
        check_degree(degree)?;
        if !modulus.is_primitive() {
            return Err(Error::NotPrimitive(modulus));
        }
        let modulus_mask = modulus.mask().expect("degree <= 24 fits in a word") as u32;
        let period = (1u64 << degree) - 1;
        let mut inner = CtxInner {
            degree,
            modulus,
            modulus_mask,
            period,
            trace_mask: 0,
            tables: OnceLock::new(),
        };
        let mut pow = 1u32; // alpha^j
        for j in 0..degree {
            let mut t = 0u32;
            let mut y = pow;
            for _ in 0..degree {
                t ^= y;
                y = mul_bits(&inner, y, y);
            }
            debug_assert!(t <= 1);
            inner.trace_mask |= t << j;
            pow = mul_bits(&inner, pow, 2);
        }
        Ok(FieldContext { inner: Arc::new(inner) })
    }

    /// Parses a modulus in monomial-list or hex-mask form.
    pub fn from_text(modulus: &str) -> Result<Self> {
        Self::new(BinaryPolynomial::parse(modulus)?)
    }

    /// Extension degree L.
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn modulus(&self) -> &BinaryPolynomial {
        &self.inner.modulus
    }

    /// Multiplicative group order 2^L - 1.
    pub fn period(&self) -> u64 {
        self.inner.period
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { ctx: self.clone(), bits: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { ctx: self.clone(), bits: 1 }
    }

    /// The canonical generator alpha = the residue class of x.
    pub fn generator(&self) -> FieldElement {
        FieldElement { ctx: self.clone(), bits: 2 }
    }

    /// Element from an L-bit coefficient vector.
    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        if u64::from(bits) >> self.inner.degree != 0 {
            return Err(Error::Parse(format!(
                "element bits 0x{bits:x} exceed field degree {}",
                self.inner.degree
            )));
        }
        Ok(FieldElement { ctx: self.clone(), bits })
    }

    /// alpha^e for any signed exponent, reduced mod 2^L - 1.
    pub fn alpha_pow(&self, e: i64) -> FieldElement {
        let e = e.rem_euclid(self.inner.period as i64) as u64;
        FieldElement { ctx: self.clone(), bits: self.alpha_pow_bits(e) }
    }

    fn tables(&self) -> Option<&LogTables> {
        if self.inner.degree > LOG_TABLE_MAX_DEGREE {
            return None;
        }
        Some(self.inner.tables.get_or_init(|| {
            let period = self.inner.period as usize;
            let mut exp = vec![0u32; period];
            let mut log = vec![0u32; period + 1];
            let mut x = 1u32;
            for (e, slot) in exp.iter_mut().enumerate() {
                *slot = x;
                log[x as usize] = e as u32;
                x = mul_bits(&self.inner, x, 2);
            }
            debug_assert_eq!(x, 1);
            LogTables { exp, log }
        }))
    }

    /// Raw exponent lookup used by the spectral transforms.
    pub(crate) fn alpha_pow_bits(&self, e: u64) -> u32 {
        let e = e % self.inner.period;
        match self.tables() {
            Some(t) => t.exp[e as usize],
            None => pow_bits(&self.inner, 2, e),
        }
    }

    pub(crate) fn log_bits(&self, bits: u32) -> Result<u64> {
        if bits == 0 {
            return Err(Error::ZeroElement);
        }
        if let Some(t) = self.tables() {
            return Ok(u64::from(t.log[bits as usize]));
        }
        // baby-step giant-step for L in 21..=24
        let period = self.inner.period;
        let m = (period as f64).sqrt().ceil() as u64;
        let mut baby = HashMap::with_capacity(m as usize);
        let mut x = 1u32;
        for j in 0..m {
            baby.entry(x).or_insert(j);
            x = mul_bits(&self.inner, x, 2);
        }
        // giant factor alpha^(-m)
        let giant = pow_bits(&self.inner, 2, period - m);
        let mut y = bits;
        for i in 0..=m {
            if let Some(&j) = baby.get(&y) {
                return Ok((i * m + j) % period);
            }
            y = mul_bits(&self.inner, y, giant);
        }
        unreachable!("alpha generates the whole multiplicative group")
    }

    /// Tr(x) for raw bits, as a masked parity.
    pub(crate) fn trace_bits(&self, bits: u32) -> u8 {
        ((bits & self.inner.trace_mask).count_ones() & 1) as u8
    }

    /// The minimal polynomial of alpha^e: the product of (x - alpha^(e*2^i))
    /// over the cyclotomic coset of e. Its coefficients land in GF(2); its
    /// degree is the coset size.
    pub fn minimal_polynomial(&self, e: u64) -> BinaryPolynomial {
        let coset = CyclotomicCoset::containing(e, self.inner.degree);
        // product with coefficients in the field, poly[i] = coeff of x^i
        let mut poly: Vec<u32> = vec![1];
        for &ex in coset.elements() {
            let root = self.alpha_pow_bits(ex);
            let mut next = vec![0u32; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] ^= c;
                next[i] ^= mul_bits(&self.inner, c, root);
            }
            poly = next;
        }
        let mut out = BinaryPolynomial::zero();
        for (i, &c) in poly.iter().enumerate() {
            debug_assert!(c <= 1, "minimal polynomial coefficient must be binary");
            if c == 1 {
                out.set_coefficient(i, true);
            }
        }
        out
    }

    /// Evaluates a GF(2) polynomial at a field element (Horner).
    pub fn evaluate(&self, poly: &BinaryPolynomial, x: &FieldElement) -> Result<FieldElement> {
        if x.ctx != *self {
            return Err(Error::ContextMismatch);
        }
        let mut acc = 0u32;
        if let Some(deg) = poly.degree() {
            for i in (0..=deg).rev() {
                acc = mul_bits(&self.inner, acc, x.bits);
                if poly.coefficient(i) {
                    acc ^= 1;
                }
            }
        }
        Ok(FieldElement { ctx: self.clone(), bits: acc })
    }
}

fn mul_bits(ctx: &CtxInner, a: u32, b: u32) -> u32 {
    let mut a = a;
    let mut b = b;
    let mut r = 0u32;
    while b != 0 {
        if b & 1 != 0 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> ctx.degree != 0 {
            a ^= ctx.modulus_mask;
        }
    }
    r
}

fn pow_bits(ctx: &CtxInner, base: u32, e: u64) -> u32 {
    let mut result = 1u32;
    let mut base = base;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_bits(ctx, result, base);
        }
        base = mul_bits(ctx, base, base);
        e >>= 1;
    }
    result
}

/// An element of GF(2^L): an L-bit coefficient vector over the context's
/// modulus.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    ctx: FieldContext,
    bits: u32,
}

impl FieldElement {
    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    fn check_ctx(&self, other: &Self) {
        assert!(self.ctx == other.ctx, "field context mismatch");
    }

    pub fn square(&self) -> Self {
        FieldElement {
            ctx: self.ctx.clone(),
            bits: mul_bits(&self.ctx.inner, self.bits, self.bits),
        }
    }

    /// x^(2^j), the j-th Frobenius power.
    pub fn frobenius(&self, j: usize) -> Self {
        let mut out = self.clone();
        for _ in 0..j {
            out = out.square();
        }
        out
    }

    /// Raises to any signed exponent; the exponent is reduced mod 2^L - 1
    /// for nonzero bases. 0^0 = 1; a negative exponent of zero panics.
    pub fn pow(&self, e: i64) -> Self {
        if self.bits == 0 {
            return match e {
                0 => FieldElement { ctx: self.ctx.clone(), bits: 1 },
                e if e > 0 => self.clone(),
                _ => panic!("negative power of the zero element"),
            };
        }
        let period = self.ctx.inner.period as i64;
        let e = e.rem_euclid(period) as u64;
        FieldElement {
            ctx: self.ctx.clone(),
            bits: pow_bits(&self.ctx.inner, self.bits, e),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.bits == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(-1))
    }

    /// Tr(x) = sum of x^(2^i) for i < L; the result lies in GF(2).
    pub fn trace(&self) -> u8 {
        self.ctx.trace_bits(self.bits)
    }

    /// e with generator^e = self, 0 <= e < 2^L - 1.
    pub fn discrete_log(&self) -> Result<u64> {
        self.ctx.log_bits(self.bits)
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    // addition in characteristic 2 is XOR
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_ctx(rhs);
        FieldElement { ctx: self.ctx.clone(), bits: self.bits ^ rhs.bits }
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_ctx(rhs);
        FieldElement {
            ctx: self.ctx.clone(),
            bits: mul_bits(&self.ctx.inner, self.bits, rhs.bits),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:x}/GF(2^{})", self.bits, self.ctx.inner.degree)
    }
}
