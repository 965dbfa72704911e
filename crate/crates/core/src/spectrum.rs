//! The trace/coset spectrum of period-(2^L - 1) binary sequences.
//!
//! Every such sequence has a unique expansion
//!
//!   z_n = const + sum over cosets E of sum_{i < size(E)} C_E^(2^i) * alpha^(E*2^i*n)
//!
//! with one coefficient C_E in GF(2^L) per cyclotomic coset; C_E lies in
//! the subfield GF(2^size(E)). The root presence test is realized here as
//! the direct finite-field transform C_E = sum_n z_n * alpha^(-E*n), which
//! computes every coset uniformly (one transform value per coset; the
//! value at E*2^j is C_E^(2^j) by conjugacy). The constant is the parity
//! of the sequence.

use std::collections::BTreeMap;
use std::fmt;

use crate::cosets::{cyclotomic_cosets, CyclotomicCoset};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

/// Coset-indexed trace coefficients of a sequence, relative to a named
/// field context. Zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceSpectrum {
    ctx: FieldContext,
    coefficients: BTreeMap<u64, FieldElement>,
    constant: bool,
}

impl TraceSpectrum {
    pub fn new(ctx: FieldContext) -> Self {
        TraceSpectrum { ctx, coefficients: BTreeMap::new(), constant: false }
    }

    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    /// Coefficient of the singleton coset {0}.
    pub fn constant(&self) -> bool {
        self.constant
    }

    pub fn set_constant(&mut self, constant: bool) {
        self.constant = constant;
    }

    /// Nonzero coefficients, sorted by coset leader.
    pub fn coefficients(&self) -> impl Iterator<Item = (u64, &FieldElement)> {
        self.coefficients.iter().map(|(&e, c)| (e, c))
    }

    /// Leaders of the cosets with a nonzero coefficient.
    pub fn support(&self) -> Vec<u64> {
        self.coefficients.keys().copied().collect()
    }

    /// C_E for a coset leader; zero when absent.
    pub fn coefficient(&self, leader: u64) -> FieldElement {
        self.coefficients.get(&leader).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// True when there is no nonzero coefficient and no constant.
    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty() && !self.constant
    }

    /// Largest coset weight in the support.
    pub fn max_weight(&self) -> Option<u32> {
        self.coefficients.keys().map(|e| e.count_ones()).max()
    }

    /// Stores a coefficient. The key must be a coset leader, the value must
    /// belong to this context and lie in the subfield GF(2^size(coset)).
    pub fn set_coefficient(&mut self, leader: u64, value: FieldElement) -> Result<()> {
        if value.context() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        let coset = CyclotomicCoset::containing(leader, self.ctx.degree());
        if coset.leader() != leader {
            return Err(Error::Parse(format!("{leader} is not a coset leader")));
        }
        if value.frobenius(coset.size()) != value {
            return Err(Error::SubfieldViolation { leader });
        }
        if value.is_zero() {
            self.coefficients.remove(&leader);
        } else {
            self.coefficients.insert(leader, value);
        }
        Ok(())
    }

    /// Coefficient-wise sum; spectra are linear in the sequence.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.ctx != self.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut out = self.clone();
        out.constant ^= other.constant;
        for (e, c) in other.coefficients() {
            let sum = &out.coefficient(e) + c;
            out.set_coefficient(e, sum)?;
        }
        Ok(out)
    }

    /// Reconstructs the sequence from the coefficients, evaluating the full
    /// expansion in GF(2^L); every per-position sum lands in GF(2).
    pub fn synthesize(&self) -> Result<Vec<u8>> {
        let period = self.ctx.period();
        // (log of conjugated coefficient, exponent step) per conjugate term
        let mut terms = Vec::new();
        for (e, c) in self.coefficients() {
            let coset = CyclotomicCoset::containing(e, self.ctx.degree());
            if c.frobenius(coset.size()) != *c {
                return Err(Error::SubfieldViolation { leader: e });
            }
            let log = c.discrete_log().expect("stored coefficients are nonzero");
            for i in 0..coset.size() {
                let pow2 = 1u64 << i;
                terms.push((log * pow2 % period, e * pow2 % period));
            }
        }
        let constant = u8::from(self.constant);
        let mut out = Vec::with_capacity(period as usize);
        for n in 0..period {
            let mut acc = 0u32;
            for &(log, step) in &terms {
                acc ^= self.ctx.alpha_pow_bits(log + step * n % period);
            }
            debug_assert!(acc <= 1, "coset term sums must land in GF(2)");
            out.push(constant ^ acc as u8);
        }
        Ok(out)
    }
}

impl fmt::Display for TraceSpectrum {
    /// One line per nonzero-leader coset, "E: alpha^e" or "E: 0", then
    /// "const: 0|1"; exponents are relative to the context generator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cosets = cyclotomic_cosets(self.ctx.degree()).map_err(|_| fmt::Error)?;
        for coset in cosets {
            let e = coset.leader();
            if e == 0 {
                continue;
            }
            match self.coefficients.get(&e) {
                Some(c) => {
                    let log = c.discrete_log().expect("stored coefficients are nonzero");
                    writeln!(f, "{e}: alpha^{log}")?;
                }
                None => writeln!(f, "{e}: 0")?,
            }
        }
        write!(f, "const: {}", u8::from(self.constant))
    }
}

/// The transform value at a single exponent: sum over n with z_n = 1 of
/// alpha^(-e*n), as raw bits.
pub(crate) fn transform_at(ctx: &FieldContext, z: &[u8], e: u64) -> u32 {
    let period = ctx.period();
    let mut acc = 0u32;
    for (n, &bit) in z.iter().enumerate() {
        if bit == 1 {
            let r = e * n as u64 % period;
            acc ^= ctx.alpha_pow_bits((period - r) % period);
        }
    }
    acc
}

/// Trace coefficients of a full-period sequence: C_E = sum_n z_n
/// alpha^(-E*n) per coset leader E, plus the parity as the constant.
pub fn compute_spectrum(z: &[u8], ctx: &FieldContext) -> Result<TraceSpectrum> {
    let period = ctx.period() as usize;
    if z.len() != period {
        return Err(Error::LengthMismatch { expected: period, actual: z.len() });
    }
    if let Some(&bad) = z.iter().find(|&&b| b > 1) {
        return Err(Error::Parse(format!("sequence bit must be 0 or 1, got {bad}")));
    }
    let mut spectrum = TraceSpectrum::new(ctx.clone());
    for coset in cyclotomic_cosets(ctx.degree())? {
        if coset.leader() == 0 {
            continue;
        }
        let bits = transform_at(ctx, z, coset.leader());
        if bits != 0 {
            spectrum.set_coefficient(coset.leader(), ctx.element(bits)?)?;
        }
    }
    spectrum.constant = z.iter().fold(0, |a, &b| a ^ b) == 1;
    Ok(spectrum)
}

/// The sequence n -> product over i in vars of Tr(alpha^(n+i)): the
/// monomial applied to the phase-normalized m-sequence.
pub(crate) fn monomial_sequence(mseq: &[u8], vars: u32) -> Vec<u8> {
    let period = mseq.len();
    (0..period)
        .map(|n| {
            let mut prod = 1u8;
            let mut m = vars;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                prod &= mseq[(n + i) % period];
                m &= m - 1;
            }
            prod
        })
        .collect()
}

/// The phase-normalized m-sequence b_n = Tr(alpha^n) over one period.
pub(crate) fn normalized_m_sequence(ctx: &FieldContext) -> Vec<u8> {
    (0..ctx.period()).map(|n| ctx.trace_bits(ctx.alpha_pow_bits(n))).collect()
}

/// Spectrum of the monomial prod_{i in vars} b_(n+i) over the context's
/// phase-normalized m-sequence; `vars` holds the variable indices as a
/// bit mask.
pub fn monomial_spectrum(vars: u32, ctx: &FieldContext) -> Result<TraceSpectrum> {
    if vars == 0 {
        return Err(Error::Parse("monomial must contain at least one variable".into()));
    }
    if u64::from(vars) >> ctx.degree() != 0 {
        return Err(Error::ArityMismatch {
            expected: ctx.degree(),
            actual: 32 - vars.leading_zeros() as usize,
        });
    }
    let mseq = normalized_m_sequence(ctx);
    compute_spectrum(&monomial_sequence(&mseq, vars), ctx)
}
