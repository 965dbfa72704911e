//! Line-oriented "key = value" generator spec files.
//!
//! ```text
//! # the worked example
//! polynomial = x^5+x^3+1
//! initial_state = 10000
//! filter = x1 + x2 + x3
//! ```
//!
//! `polynomial` takes a monomial list or hex mask, `initial_state` an
//! ASCII bit string of length L, `filter` the ANF grammar. Blank lines and
//! '#' comments are ignored.

use filtergen::anf::{AnfFunction, FilterGenerator};
use filtergen::error::{Error, Result};
use filtergen::lfsr::{bit_string, parse_bit_string};
use filtergen::poly::BinaryPolynomial;

pub struct GeneratorSpec {
    pub polynomial: BinaryPolynomial,
    pub initial_state: Vec<u8>,
    pub filter_text: String,
}

impl GeneratorSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut polynomial = None;
        let mut initial_state = None;
        let mut filter_text = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let slot = match key {
                "polynomial" => &mut polynomial,
                "initial_state" => &mut initial_state,
                "filter" => &mut filter_text,
                other => return Err(Error::Parse(format!("line {}: unknown key {other:?}", lineno + 1))),
            };
            if slot.replace(value.to_string()).is_some() {
                return Err(Error::Parse(format!("line {}: duplicate key {key:?}", lineno + 1)));
            }
        }
        let missing = |k: &str| Error::Parse(format!("missing key {k:?}"));
        Ok(GeneratorSpec {
            polynomial: BinaryPolynomial::parse(&polynomial.ok_or_else(|| missing("polynomial"))?)?,
            initial_state: parse_bit_string(&initial_state.ok_or_else(|| missing("initial_state"))?)?,
            filter_text: filter_text.ok_or_else(|| missing("filter"))?,
        })
    }

    pub fn build(&self) -> Result<FilterGenerator> {
        let degree = self
            .polynomial
            .degree()
            .ok_or_else(|| Error::Parse("polynomial must be nonzero".into()))?;
        let filter = AnfFunction::parse(&self.filter_text, degree)?;
        FilterGenerator::new(self.polynomial.clone(), self.initial_state.clone(), filter)
    }
}

/// The spec-file form of a generator, re-parsable by `GeneratorSpec`.
pub fn format_generator(g: &FilterGenerator) -> String {
    format!(
        "polynomial = {}\ninitial_state = {}\nfilter = {}\n",
        g.polynomial(),
        bit_string(g.initial_state()),
        g.filter()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let text = "# example\npolynomial = x^5+x^3+1\ninitial_state = 10000\nfilter = x0*x1 + x2\n";
        let spec = GeneratorSpec::parse(text).unwrap();
        let g = spec.build().unwrap();
        let again = GeneratorSpec::parse(&format_generator(&g)).unwrap().build().unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn rejects_garbage() {
        assert!(GeneratorSpec::parse("polynomial x^3+x+1").is_err());
        assert!(GeneratorSpec::parse("frequency = 42").is_err());
        assert!(GeneratorSpec::parse("polynomial = x^5+x^3+1\npolynomial = 0x29").is_err());
        assert!(GeneratorSpec::parse("polynomial = x^5+x^3+1\ninitial_state = 10000").is_err());
    }
}
