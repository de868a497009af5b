//! Bit strings and fixed-width parameter encoding.
//!
//! [`BitString`] is the carrier for every identification, record, and code in
//! this crate: a finite sequence of binary symbols, written most significant
//! bit first in textual form. [`SystemSpec`] describes a system by its degrees
//! of freedom and fixes an injective map from parameter values to bits, so
//! that code lengths can be compared against parameter counts.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// A finite binary string. The empty string is a legal value.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    /// The empty string.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Parses a textual string of '0'/'1' characters, most significant first.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(text.len());
        for (pos, ch) in text.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                found => return Err(Error::InvalidBitChar { found, pos }),
            }
        }
        Ok(Self { bits })
    }

    /// `len` uniformly random bits drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Self {
        let bits = (0..len).map(|_| rng.gen::<bool>()).collect();
        Self { bits }
    }

    /// `len` copies of `bit`.
    pub fn repeat_bit(bit: bool, len: usize) -> Self {
        Self {
            bits: vec![bit; len],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend_from(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    /// Concatenation of `parts` in order. Identity element is the empty string.
    pub fn concat<'a, I>(parts: I) -> BitString
    where
        I: IntoIterator<Item = &'a BitString>,
    {
        let mut out = BitString::new();
        for part in parts {
            out.extend_from(part);
        }
        out
    }

    /// The string repeated `times` times.
    pub fn repeated(&self, times: usize) -> BitString {
        let mut bits = Vec::with_capacity(self.bits.len() * times);
        for _ in 0..times {
            bits.extend_from_slice(&self.bits);
        }
        Self { bits }
    }

    /// First `len` bits as a new string. Pre: `len <= self.len()`.
    pub fn prefix(&self, len: usize) -> BitString {
        Self {
            bits: self.bits[..len].to_vec(),
        }
    }

    /// Bits from `start` onward as a new string. Pre: `start <= self.len()`.
    pub fn suffix_from(&self, start: usize) -> BitString {
        Self {
            bits: self.bits[start..].to_vec(),
        }
    }

    pub fn to_text(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Long strings appear in assertion output; keep it readable.
        const SHOWN: usize = 64;
        if self.len() <= SHOWN {
            write!(f, "BitString({}, \"{}\")", self.len(), self.to_text())
        } else {
            write!(
                f,
                "BitString({}, \"{}…\")",
                self.len(),
                self.prefix(SHOWN).to_text()
            )
        }
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_text(s)
    }
}

/// One degree of freedom: the finite set of values it may take.
///
/// Values are encoded as their index in the sorted set, written as an
/// unsigned fixed-width field, most significant bit first. Width is
/// `ceil(log2(cardinality))`, at least one bit, so every degree of freedom
/// occupies at least one symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamField {
    values: Vec<i64>,
}

impl ParamField {
    /// Field over an explicit value set. Duplicates collapse; order is fixed
    /// by sorting, so the encoding does not depend on input order.
    pub fn new(mut values: Vec<i64>) -> Result<Self> {
        values.sort_unstable();
        values.dedup();
        if values.is_empty() {
            return Err(Error::InvalidConfig(
                "parameter field needs at least one admissible value".into(),
            ));
        }
        Ok(Self { values })
    }

    /// The two-valued spin field {-1, +1}: -1 encodes as 0, +1 as 1.
    pub fn spin() -> Self {
        Self {
            values: vec![-1, 1],
        }
    }

    /// Contiguous integer range `lo..=hi`.
    pub fn range(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidConfig(format!(
                "empty range {lo}..={hi} for parameter field"
            )));
        }
        Ok(Self {
            values: (lo..=hi).collect(),
        })
    }

    pub fn cardinality(&self) -> usize {
        self.values.len()
    }

    /// Fixed code width in bits, at least 1.
    pub fn width_bits(&self) -> usize {
        let card = self.values.len();
        let mut width = 0;
        while (1usize << width) < card {
            width += 1;
        }
        width.max(1)
    }

    fn index_of(&self, value: i64) -> Option<usize> {
        self.values.binary_search(&value).ok()
    }

    fn encode_into(&self, value: i64, field: usize, out: &mut BitString) -> Result<()> {
        let index = self
            .index_of(value)
            .ok_or(Error::ValueOutOfRange { value, field })?;
        let width = self.width_bits();
        for pos in (0..width).rev() {
            out.push((index >> pos) & 1 == 1);
        }
        Ok(())
    }

    fn decode_from(&self, bits: &[bool], field: usize) -> Result<i64> {
        let mut index = 0usize;
        for &b in bits {
            index = (index << 1) | usize::from(b);
        }
        self.values
            .get(index)
            .copied()
            .ok_or(Error::MalformedCode(format!(
                "index {index} exceeds field {field} cardinality {}",
                self.values.len()
            )))
    }
}

/// A system description: label plus one [`ParamField`] per degree of freedom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSpec {
    label: String,
    fields: Vec<ParamField>,
}

impl SystemSpec {
    pub fn new(label: impl Into<String>, fields: Vec<ParamField>) -> Self {
        Self {
            label: label.into(),
            fields,
        }
    }

    /// `n` spin-1/2 degrees of freedom.
    pub fn spins(label: impl Into<String>, n: usize) -> Self {
        Self::new(label, vec![ParamField::spin(); n])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn fields(&self) -> &[ParamField] {
        &self.fields
    }

    /// Number of degrees of freedom.
    pub fn dof(&self) -> usize {
        self.fields.len()
    }

    /// Total encoded length in bits; always >= dof.
    pub fn encoded_len(&self) -> usize {
        self.fields.iter().map(ParamField::width_bits).sum()
    }

    /// Encodes one value per degree of freedom into a fixed-width bit string.
    pub fn encode_parameters(&self, values: &[i64]) -> Result<BitString> {
        if values.len() != self.fields.len() {
            return Err(Error::ArityMismatch {
                expected: self.fields.len(),
                got: values.len(),
            });
        }
        let mut out = BitString::new();
        for (field, (spec, &value)) in self.fields.iter().zip(values).enumerate() {
            spec.encode_into(value, field, &mut out)?;
        }
        Ok(out)
    }

    /// Inverse of [`encode_parameters`](Self::encode_parameters).
    pub fn decode_parameters(&self, code: &BitString) -> Result<Vec<i64>> {
        if code.len() != self.encoded_len() {
            return Err(Error::MalformedCode(format!(
                "code length {} does not match spec length {}",
                code.len(),
                self.encoded_len()
            )));
        }
        let mut values = Vec::with_capacity(self.fields.len());
        let mut offset = 0;
        for (field, spec) in self.fields.iter().enumerate() {
            let width = spec.width_bits();
            values.push(spec.decode_from(&code.bits()[offset..offset + width], field)?);
            offset += width;
        }
        Ok(values)
    }
}
