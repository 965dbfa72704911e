//! Analysis toolkit for LFSR-based nonlinear filter generators.
//!
//! A filter generator is a maximal-length LFSR of length L together with a
//! Boolean function applied to its sliding L-bit state window; the output
//! is the keystream. Distinct triples (polynomial, initial state, filter)
//! can emit the identical keystream; this crate computes the trace/coset
//! spectrum of a keystream, identifies the cosets behind its linear
//! complexity, and constructs the equivalent generator built on the
//! reciprocal LFSR, whose filter order drops to max(L - coset weight) and
//! is therefore often strictly weaker than the original.
//!
//! The pieces:
//!
//! - [`poly`]: polynomials over GF(2), primitivity testing, reciprocals.
//! - [`cosets`]: cyclotomic cosets and exponent arithmetic mod 2^L - 1.
//! - [`field`]: GF(2^L) contexts, trace, discrete logs, minimal
//!   polynomials.
//! - [`lfsr`]: LFSR state machines and the trace-phase correspondence.
//! - [`anf`]: filter functions in algebraic normal form; keystreams.
//! - [`linear_complexity`]: Berlekamp-Massey and coset identification.
//! - [`spectrum`]: the coset spectral transform and its inverse.
//! - [`equivalence`]: spectrum transport between LFSRs, filter
//!   reconstruction, equivalence-class counting.

pub mod anf;
pub mod cosets;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod lfsr;
pub mod linear_complexity;
pub mod poly;
pub mod spectrum;

pub use anf::{AnfFunction, FilterGenerator};
pub use cosets::{cyclotomic_cosets, exponent_inverse, unit_cosets, CyclotomicCoset};
pub use equivalence::{
    enumerate_classes, enumerate_classes_with, equivalent_generator, equivalent_generator_with,
    map_spectrum, predicted_order, reconstruct_anf, ClassListing, EquivalenceClass,
    EquivalenceReport, EquivalenceTransform,
};
pub use error::{Error, Result};
pub use field::{FieldContext, FieldElement};
pub use lfsr::{bit_string, parse_bit_string, state_from_phase, trace_phase, Lfsr};
pub use linear_complexity::{berlekamp_massey, coset_support, LinearComplexityResult};
pub use poly::BinaryPolynomial;
pub use spectrum::{compute_spectrum, monomial_spectrum, TraceSpectrum};
