//! Equivalent filter generators: counting, the root relationship between
//! LFSRs of the same length, and construction of the (often weaker)
//! equivalent built on the reciprocal LFSR.
//!
//! Two generators (P_1, IS_1, F_1) and (P_2, IS_2, F_2) are equivalent when
//! they emit the same keystream. With alpha a root of P_1 and beta = alpha^k
//! a root of P_2 (gcd(k, 2^L - 1) = 1), the exponent map
//! log_beta(x) = k' * log_alpha(x), k' the inverse of k, is a field
//! isomorphism, and the trace spectrum of the keystream transports along
//! it coset by coset. The reciprocal case k = 2^(L-1) - 1 pairs each coset
//! with one of complementary weight, which is what makes the reciprocal
//! equivalent weaker whenever the original spectrum sits on heavy cosets.
//!
//! The equivalent filter itself is recovered from the mapped spectrum by a
//! discrete-knapsack step: per degree level, select the monomials whose
//! spectra sum to the residual target. Spectra are GF(2)-linear in the
//! monomial set, so each level is solved exactly as a GF(2) linear system.

use std::collections::BTreeMap;
use std::fmt;

use crate::anf::{AnfFunction, FilterGenerator};
use crate::cosets::{coset_leader, cyclotomic_cosets, euler_phi, exponent_inverse, CyclotomicCoset};
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::lfsr::{bit_string, state_from_phase};
use crate::poly::BinaryPolynomial;
use crate::spectrum::{compute_spectrum, monomial_sequence, normalized_m_sequence, transform_at, TraceSpectrum};

/// The root relationship beta = alpha^k between two fields of the same
/// degree, with the exponent isomorphism ready to transport spectra.
#[derive(Debug, Clone)]
pub struct EquivalenceTransform {
    source: FieldContext,
    target: FieldContext,
    k: u64,
    k_inverse: u64,
}

impl EquivalenceTransform {
    /// The reciprocal relationship: k = 2^(L-1) - 1, target modulus the
    /// reciprocal polynomial. gcd(2^(L-1) - 1, 2^L - 1) = 1 always, so
    /// this exists for every primitive source.
    pub fn reciprocal(p1: &BinaryPolynomial) -> Result<Self> {
        let source = FieldContext::new(p1.clone())?;
        let l = source.degree();
        let k = (1u64 << (l - 1)) - 1;
        let k_inverse = exponent_inverse(k, l)?;
        let target = FieldContext::new(p1.reciprocal()?)?;
        Ok(EquivalenceTransform { source, target, k, k_inverse })
    }

    /// The general relationship beta = alpha^k for any unit k; the target
    /// modulus is the minimal polynomial of alpha^k.
    pub fn general(p1: &BinaryPolynomial, k: u64) -> Result<Self> {
        let source = FieldContext::new(p1.clone())?;
        let l = source.degree();
        let k = k % source.period();
        let k_inverse = exponent_inverse(k, l)?;
        let target = FieldContext::new(source.minimal_polynomial(k))?;
        Ok(EquivalenceTransform { source, target, k, k_inverse })
    }

    pub fn source(&self) -> &FieldContext {
        &self.source
    }

    pub fn target(&self) -> &FieldContext {
        &self.target
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn k_inverse(&self) -> u64 {
        self.k_inverse
    }

    /// Transports a source-context element into the target context along
    /// the exponent isomorphism.
    fn transport_bits(&self, bits: u32) -> Result<u32> {
        if bits == 0 {
            return Ok(0);
        }
        let log = self.source.element(bits)?.discrete_log()?;
        let e = self.k_inverse * log % self.source.period();
        Ok(self.target.alpha_pow(e as i64).bits())
    }
}

/// Rewrites a spectrum over alpha as a spectrum over beta = alpha^k.
///
/// Each source coset E moves to the coset of k' * E; the coefficient picks
/// up the Frobenius power that re-aligns the coset leader and is then
/// re-expressed in the target context. The constant carries over.
pub fn map_spectrum(s: &TraceSpectrum, t: &EquivalenceTransform) -> Result<TraceSpectrum> {
    if s.context() != &t.source {
        return Err(Error::ContextMismatch);
    }
    let l = t.source.degree();
    let period = t.source.period();
    let mut out = TraceSpectrum::new(t.target.clone());
    out.set_constant(s.constant());
    for (e, c) in s.coefficients() {
        let moved = t.k_inverse * e % period;
        let leader = coset_leader(moved, l);
        // j with leader * 2^j = moved
        let mut j = 0;
        let mut x = leader;
        while x != moved {
            x = x * 2 % period;
            j += 1;
        }
        let coefficient = c.frobenius((l - j) % l);
        let mapped = t.target.element(t.transport_bits(coefficient.bits())?)?;
        out.set_coefficient(leader, mapped)?;
    }
    Ok(out)
}

/// The order of the reciprocal equivalent read off a source spectrum:
/// max over supported cosets of (L - coset weight).
pub fn predicted_order(s: &TraceSpectrum) -> Result<usize> {
    let l = s.context().degree();
    s.support()
        .iter()
        .map(|e| l - e.count_ones() as usize)
        .max()
        .ok_or(Error::EmptySpectrum)
}

/// Rebuilds the filter function whose output over the context's
/// phase-normalized m-sequence has the given spectrum.
///
/// Levels run from the maximum supported coset weight down to 1. At level
/// d the degree-d monomials are the only ones that can contribute to
/// weight-d cosets, so the selection there is forced: it is solved as a
/// GF(2) linear system (each GF(2^L) coefficient contributes L binary
/// equations). The full spectra of the selected monomials are subtracted
/// from the residual before descending; the constant term absorbs what is
/// left on the singleton coset.
pub fn reconstruct_anf(target: &TraceSpectrum) -> Result<AnfFunction> {
    let ctx = target.context().clone();
    let l = ctx.degree();
    let mut residual: BTreeMap<u64, u32> = target.coefficients().map(|(e, c)| (e, c.bits())).collect();
    let mut residual_constant = target.constant();
    let max_weight = residual.keys().map(|e| e.count_ones() as usize).max().unwrap_or(0);
    debug_assert!(max_weight < l, "nonzero exponents below 2^L - 1 have weight < L");

    let mseq = normalized_m_sequence(&ctx);
    let leaders: Vec<u64> = cyclotomic_cosets(l)?.iter().map(CyclotomicCoset::leader).collect();
    let mut selected: Vec<u32> = Vec::new();

    for d in (1..=max_weight).rev() {
        let level_leaders: Vec<u64> =
            leaders.iter().copied().filter(|e| *e != 0 && e.count_ones() as usize == d).collect();
        let monomials = masks_of_weight(l, d);

        // transform values of every degree-d monomial on every weight-d coset
        let mut columns: Vec<Vec<u32>> = Vec::with_capacity(monomials.len());
        for &m in &monomials {
            let seq = monomial_sequence(&mseq, m);
            columns.push(level_leaders.iter().map(|&e| transform_at(&ctx, &seq, e)).collect());
        }

        let mut system = Gf2System::new(monomials.len());
        for (ei, &e) in level_leaders.iter().enumerate() {
            let rhs = residual.get(&e).copied().unwrap_or(0);
            for bit in 0..l {
                let mut row = vec![0u64; system.words];
                for (ci, col) in columns.iter().enumerate() {
                    if col[ei] >> bit & 1 == 1 {
                        row[ci / 64] |= 1 << (ci % 64);
                    }
                }
                system.add_row(row, rhs >> bit & 1 == 1);
            }
        }
        let solution = system.solve().ok_or(Error::InfeasibleLevel { degree: d })?;

        for (ci, &m) in monomials.iter().enumerate() {
            if !solution[ci] {
                continue;
            }
            selected.push(m);
            let spec = compute_spectrum(&monomial_sequence(&mseq, m), &ctx)?;
            residual_constant ^= spec.constant();
            for (e, c) in spec.coefficients() {
                let entry = residual.entry(e).or_insert(0);
                *entry ^= c.bits();
                if *entry == 0 {
                    residual.remove(&e);
                }
            }
        }
    }

    assert!(
        residual.is_empty(),
        "per-level solves must clear every nonzero coset of the residual"
    );
    AnfFunction::new(l, selected, residual_constant)
}

/// All monomial masks of the given weight over `l` variables, ascending.
fn masks_of_weight(l: usize, d: usize) -> Vec<u32> {
    assert!(d >= 1 && d <= l);
    let limit = 1u32 << l;
    let mut out = Vec::new();
    let mut m = (1u32 << d) - 1;
    // Gosper's hack walks same-weight masks in increasing order
    while m < limit {
        out.push(m);
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = ((r ^ m) >> (2 + c.trailing_zeros())) | r;
    }
    out
}

/// A GF(2) linear system with the right-hand side stored past the columns.
struct Gf2System {
    rows: Vec<Vec<u64>>,
    ncols: usize,
    words: usize,
}

impl Gf2System {
    fn new(ncols: usize) -> Self {
        Gf2System { rows: Vec::new(), ncols, words: ncols / 64 + 1 }
    }

    fn add_row(&mut self, mut row: Vec<u64>, rhs: bool) {
        debug_assert_eq!(row.len(), self.words);
        if rhs {
            row[self.ncols / 64] |= 1 << (self.ncols % 64);
        }
        self.rows.push(row);
    }

    fn bit(row: &[u64], i: usize) -> bool {
        row[i / 64] >> (i % 64) & 1 == 1
    }

    /// Eliminates in ascending column order. Returns (pivot row per column,
    /// consistent).
    fn eliminate(rows: &mut [Vec<u64>], ncols: usize) -> (Vec<Option<usize>>, bool) {
        let mut pivot: Vec<Option<usize>> = vec![None; ncols];
        let mut used = vec![false; rows.len()];
        for (col, pivot_slot) in pivot.iter_mut().enumerate() {
            let Some(p) = (0..rows.len()).find(|&r| !used[r] && Self::bit(&rows[r], col)) else {
                continue;
            };
            used[p] = true;
            *pivot_slot = Some(p);
            let prow = rows[p].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != p && Self::bit(row, col) {
                    for (a, b) in row.iter_mut().zip(&prow) {
                        *a ^= b;
                    }
                }
            }
        }
        let consistent = rows.iter().all(|row| {
            (0..ncols).any(|c| Self::bit(row, c)) || !Self::bit(row, ncols)
        });
        (pivot, consistent)
    }

    /// The unique solution when one exists; with free columns, the
    /// lexicographically smallest assignment (variables in ascending
    /// monomial-mask order, 0 preferred). `None` when inconsistent.
    fn solve(mut self) -> Option<Vec<bool>> {
        let ncols = self.ncols;
        let (pivot, consistent) = Self::eliminate(&mut self.rows, ncols);
        if !consistent {
            return None;
        }
        if pivot.iter().all(Option::is_some) || ncols == 0 {
            return Some(
                pivot.iter().map(|p| p.is_some_and(|r| Self::bit(&self.rows[r], ncols))).collect(),
            );
        }
        // Degenerate targets can leave free columns: fix variables one at a
        // time, preferring 0, and keep the remainder consistent.
        let mut rows = self.rows;
        let mut solution = vec![false; ncols];
        for col in 0..ncols {
            let zeroed: Vec<Vec<u64>> = rows
                .iter()
                .map(|row| {
                    let mut r = row.clone();
                    r[col / 64] &= !(1 << (col % 64));
                    r
                })
                .collect();
            let mut probe = zeroed.clone();
            let (_, ok) = Self::eliminate(&mut probe, ncols);
            if ok {
                rows = zeroed;
            } else {
                // forced to 1: fold the column into the right-hand side
                solution[col] = true;
                for row in rows.iter_mut() {
                    if Self::bit(row, col) {
                        row[col / 64] &= !(1 << (col % 64));
                        let w = ncols / 64;
                        row[w] ^= 1 << (ncols % 64);
                    }
                }
            }
        }
        Some(solution)
    }
}

/// Everything the equivalent-generator pipeline produces.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub original: FilterGenerator,
    pub equivalent: FilterGenerator,
    pub original_order: usize,
    pub equivalent_order: usize,
    /// Keystream spectrum in the source context.
    pub source_spectrum: TraceSpectrum,
    /// The same spectrum transported to the target context.
    pub mapped_spectrum: TraceSpectrum,
    /// True when the equivalent has strictly smaller order.
    pub weaker: bool,
}

/// Builds the reciprocal equivalent of a filter generator.
pub fn equivalent_generator(g: &FilterGenerator) -> Result<EquivalenceReport> {
    let t = EquivalenceTransform::reciprocal(g.polynomial())?;
    equivalent_generator_with(g, &t)
}

/// Builds the equivalent along an arbitrary transform. The keystream
/// spectrum is computed from the generator's actual output, so the input
/// phase is absorbed; the equivalent is emitted phase-normalized
/// (IS = state of Tr(beta^n)).
pub fn equivalent_generator_with(g: &FilterGenerator, t: &EquivalenceTransform) -> Result<EquivalenceReport> {
    if t.source.modulus() != g.polynomial() {
        return Err(Error::ContextMismatch);
    }
    let keystream = g.full_period_keystream();
    let source_spectrum = compute_spectrum(&keystream, &t.source)?;
    let mapped_spectrum = map_spectrum(&source_spectrum, t)?;
    let filter = reconstruct_anf(&mapped_spectrum)?;
    let initial_state = state_from_phase(&t.target, &t.target.one())?;
    let equivalent = FilterGenerator::new(t.target.modulus().clone(), initial_state, filter)?;
    let original_order = g.filter().degree();
    let equivalent_order = equivalent.filter().degree();
    Ok(EquivalenceReport {
        original: g.clone(),
        equivalent,
        original_order,
        equivalent_order,
        source_spectrum,
        mapped_spectrum,
        weaker: equivalent_order < original_order,
    })
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let generator = |f: &mut fmt::Formatter<'_>, title: &str, g: &FilterGenerator, order: usize| {
            writeln!(f, "{title}:")?;
            writeln!(f, "  polynomial: {}", g.polynomial())?;
            writeln!(f, "  initial_state: {}", bit_string(g.initial_state()))?;
            writeln!(f, "  filter: {}", g.filter())?;
            writeln!(f, "  order: {order}")
        };
        generator(f, "original", &self.original, self.original_order)?;
        generator(f, "equivalent", &self.equivalent, self.equivalent_order)?;
        let table = |f: &mut fmt::Formatter<'_>, title: &str, s: &TraceSpectrum| {
            writeln!(f, "{title}:")?;
            if s.support().is_empty() {
                writeln!(f, "  none")?;
            }
            for (e, c) in s.coefficients() {
                let log = c.discrete_log().expect("stored coefficients are nonzero");
                writeln!(f, "  {e}: weight {}, alpha^{log}", e.count_ones())?;
            }
            Ok(())
        };
        table(f, "source cosets", &self.source_spectrum)?;
        table(f, "mapped cosets", &self.mapped_spectrum)?;
        write!(f, "weaker: {}", self.weaker)
    }
}

/// One equivalence class of generators of length L: a unit coset of k
/// values and the characteristic polynomial whose roots are alpha^k.
#[derive(Debug, Clone)]
pub struct EquivalenceClass {
    pub coset: CyclotomicCoset,
    pub polynomial: BinaryPolynomial,
}

/// The phi(2^L - 1)/L equivalence classes for length L.
#[derive(Debug, Clone)]
pub struct ClassListing {
    pub degree: usize,
    /// The context whose generator plays the role of alpha.
    pub base_polynomial: BinaryPolynomial,
    pub count: u64,
    pub classes: Vec<EquivalenceClass>,
}

/// Lists the equivalence classes for length L relative to the canonical
/// (smallest-mask) primitive polynomial.
pub fn enumerate_classes(l: usize) -> Result<ClassListing> {
    crate::cosets::check_degree(l)?;
    let ctx = FieldContext::new(BinaryPolynomial::canonical_primitive(l))?;
    enumerate_classes_with(&ctx)
}

/// Lists the equivalence classes relative to an explicit base context.
pub fn enumerate_classes_with(ctx: &FieldContext) -> Result<ClassListing> {
    let l = ctx.degree();
    let classes: Vec<EquivalenceClass> = crate::cosets::unit_cosets(l)?
        .into_iter()
        .map(|coset| {
            let polynomial = ctx.minimal_polynomial(coset.leader());
            EquivalenceClass { coset, polynomial }
        })
        .collect();
    let count = euler_phi(ctx.period()) / l as u64;
    debug_assert_eq!(count as usize, classes.len());
    Ok(ClassListing {
        degree: l,
        base_polynomial: ctx.modulus().clone(),
        count,
        classes,
    })
}

impl fmt::Display for ClassListing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "L: {}", self.degree)?;
        writeln!(f, "classes: {}", self.count)?;
        writeln!(f, "base: {}", self.base_polynomial)?;
        let mut first = true;
        for class in &self.classes {
            if !first {
                writeln!(f)?;
            }
            first = false;
            let ks: Vec<String> = class.coset.elements().iter().map(u64::to_string).collect();
            write!(f, "k = {}: {}", ks.join(","), class.polynomial)?;
        }
        Ok(())
    }
}
