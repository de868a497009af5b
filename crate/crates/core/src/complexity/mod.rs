//! Computable upper-bound proxies for Kolmogorov complexity.
//!
//! True K(s) is not computable, so everything downstream works with
//! [`ComplexityEstimate`] values tagged by the estimator that produced them:
//!
//! * [`Estimator::Lz76Phrases`]: raw phrase count of the exhaustive-history
//!   parse, a dimensionless innovation counter;
//! * [`Estimator::Lz76NormalizedBits`]: phrase count times `log2(n)`, the
//!   standard normalization that converges to the entropy rate in bits per
//!   symbol for stationary ergodic sources;
//! * [`Estimator::DictionaryCodeLength`]: exact bit length of the in-repo
//!   self-delimiting dictionary code, a decodable upper bound.
//!
//! All logarithms in this crate are base 2 and all quantities are bits.

pub mod dictionary;
pub mod lz76;

use std::fmt;
use std::str::FromStr;

use crate::bitstring::{BitString, SystemSpec};
use crate::error::{Error, Result};

/// Identifies which proxy produced an estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Estimator {
    Lz76Phrases,
    Lz76NormalizedBits,
    DictionaryCodeLength,
}

impl Estimator {
    pub const ALL: [Estimator; 3] = [
        Estimator::Lz76Phrases,
        Estimator::Lz76NormalizedBits,
        Estimator::DictionaryCodeLength,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Estimator::Lz76Phrases => "LZ76_PHRASES",
            Estimator::Lz76NormalizedBits => "LZ76_NORMALIZED_BITS",
            Estimator::DictionaryCodeLength => "DICTIONARY_CODE_LENGTH",
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Estimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "LZ76_PHRASES" => Ok(Estimator::Lz76Phrases),
            "LZ76_NORMALIZED_BITS" => Ok(Estimator::Lz76NormalizedBits),
            "DICTIONARY_CODE_LENGTH" => Ok(Estimator::DictionaryCodeLength),
            other => Err(Error::InvalidConfig(format!(
                "unknown estimator {other:?}; expected one of LZ76_PHRASES, \
                 LZ76_NORMALIZED_BITS, DICTIONARY_CODE_LENGTH"
            ))),
        }
    }
}

/// An upper-bound estimate of K(s) in bits, tagged with its provenance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexityEstimate {
    pub value_bits: f64,
    pub estimator: Estimator,
    pub input_length: usize,
}

impl ComplexityEstimate {
    pub fn new(value_bits: f64, estimator: Estimator, input_length: usize) -> Result<Self> {
        if !value_bits.is_finite() || value_bits < 0.0 {
            return Err(Error::InvalidEstimate { value_bits });
        }
        Ok(Self {
            value_bits,
            estimator,
            input_length,
        })
    }
}

/// Phrase count of the exhaustive-history parse; see [`lz76`].
pub fn lz76_phrase_count(s: &BitString) -> usize {
    lz76::phrase_count(s)
}

/// Phrase count normalized to bits: `count * log2(n)`.
pub fn lz76_bits(s: &BitString) -> Result<ComplexityEstimate> {
    if s.len() < 2 {
        return Err(Error::StringTooShort {
            len: s.len(),
            min: 2,
        });
    }
    let count = lz76::phrase_count(s) as f64;
    ComplexityEstimate::new(
        count * (s.len() as f64).log2(),
        Estimator::Lz76NormalizedBits,
        s.len(),
    )
}

/// Exact bit length of the dictionary code of `s`; decodable, so a genuine
/// upper bound on description length.
pub fn dictionary_code_length(s: &BitString) -> ComplexityEstimate {
    ComplexityEstimate {
        value_bits: dictionary::code_length_bits(s) as f64,
        estimator: Estimator::DictionaryCodeLength,
        input_length: s.len(),
    }
}

/// Runs the chosen estimator on `s`.
pub fn estimate(s: &BitString, estimator: Estimator) -> Result<ComplexityEstimate> {
    match estimator {
        Estimator::Lz76Phrases => ComplexityEstimate::new(
            lz76::phrase_count(s) as f64,
            Estimator::Lz76Phrases,
            s.len(),
        ),
        Estimator::Lz76NormalizedBits => lz76_bits(s),
        Estimator::DictionaryCodeLength => Ok(dictionary_code_length(s)),
    }
}

/// True iff the estimate is at least the system's degree-of-freedom count.
/// Upper-bound estimators report below `dof` only on compressible encodings.
pub fn check_dof_bound(est: &ComplexityEstimate, system: &SystemSpec) -> bool {
    est.value_bits >= system.dof() as f64
}
