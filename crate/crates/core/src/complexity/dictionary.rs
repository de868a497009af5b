//! Self-delimiting incremental-dictionary codec.
//!
//! Code layout, fixed so lengths are bit-exact and reproducible:
//!
//! * header: Elias gamma code of `n + 1`, where `n` is the payload length in
//!   bits (gamma cannot encode zero, hence the shift);
//! * for `n > 0`, one mode bit: `0` = raw literal (`n` bits follow verbatim),
//!   `1` = dictionary tokens;
//! * token stream: each token is the index of a known dictionary word in
//!   `ceil(log2(D + 1))` bits, `D` being the current dictionary size, followed
//!   by one innovation bit. Word plus innovation enters the dictionary. The
//!   final token omits the innovation when the input ends mid-word; the
//!   decoder detects this from the header length.
//!
//! The encoder picks whichever mode is shorter (ties go to raw), so the code
//! never exceeds the input length plus [`header_overhead_bits`]. The empty
//! string encodes as the header alone.

use std::collections::HashMap;

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// Bits needed to write indices `0..=d`: zero when the dictionary is empty.
fn index_width(d: usize) -> usize {
    if d == 0 {
        0
    } else {
        (usize::BITS - d.leading_zeros()) as usize
    }
}

fn gamma_len(k: usize) -> usize {
    debug_assert!(k >= 1);
    let bits = (usize::BITS - k.leading_zeros()) as usize;
    2 * bits - 1
}

fn gamma_append(k: usize, out: &mut BitString) {
    debug_assert!(k >= 1);
    let bits = (usize::BITS - k.leading_zeros()) as usize;
    for _ in 0..bits - 1 {
        out.push(false);
    }
    for pos in (0..bits).rev() {
        out.push((k >> pos) & 1 == 1);
    }
}

/// Header plus mode-bit cost for a payload of `n` bits; the code length never
/// exceeds `n + header_overhead_bits(n)`.
pub fn header_overhead_bits(n: usize) -> usize {
    if n == 0 {
        gamma_len(1)
    } else {
        gamma_len(n + 1) + 1
    }
}

/// Greedy incremental parse. Calls `visit(p, cost)` for every prefix length
/// `p` in `0..=n`, where `cost` is the token-stream cost of the first `p`
/// symbols (the cost of stopping mid-word is the bare index of the word
/// reached so far).
fn scan_token_costs<F: FnMut(usize, usize)>(s: &BitString, mut visit: F) {
    let bits = s.bits();
    let n = bits.len();
    let mut children: HashMap<(u32, bool), u32> = HashMap::new();
    let mut dict_size = 0usize;
    let mut cum = 0usize;
    let mut i = 0usize;
    visit(0, 0);
    while i < n {
        let width = index_width(dict_size);
        let mut node = 0u32;
        while i < n {
            match children.get(&(node, bits[i])) {
                Some(&child) => {
                    node = child;
                    i += 1;
                    visit(i, cum + width);
                }
                None => break,
            }
        }
        if i < n {
            let innovation = bits[i];
            i += 1;
            cum += width + 1;
            visit(i, cum);
            dict_size += 1;
            children.insert((node, innovation), dict_size as u32);
        } else {
            cum += width;
        }
    }
}

fn total_length(payload_len: usize, token_cost: usize) -> usize {
    if payload_len == 0 {
        header_overhead_bits(0)
    } else {
        header_overhead_bits(payload_len) + token_cost.min(payload_len)
    }
}

/// Length in bits of [`encode`]'s output, without materializing the code.
pub fn code_length_bits(s: &BitString) -> usize {
    let mut last = 0;
    scan_token_costs(s, |p, cost| {
        if p == s.len() {
            last = cost;
        }
    });
    total_length(s.len(), last)
}

/// Code lengths of the prefixes of `s` listed in `prefix_lens`.
/// Pre: `prefix_lens` is sorted ascending, each entry `<= s.len()`.
/// Each value equals `code_length_bits` of the standalone prefix; one pass
/// suffices because the greedy parse of a prefix is a truncation of the
/// full parse.
pub fn code_lengths_at(s: &BitString, prefix_lens: &[usize]) -> Vec<usize> {
    debug_assert!(prefix_lens.windows(2).all(|w| w[0] <= w[1]));
    debug_assert!(prefix_lens.last().is_none_or(|&l| l <= s.len()));
    let mut out = Vec::with_capacity(prefix_lens.len());
    let mut cursor = 0usize;
    scan_token_costs(s, |p, cost| {
        while cursor < prefix_lens.len() && prefix_lens[cursor] == p {
            out.push(total_length(p, cost));
            cursor += 1;
        }
    });
    debug_assert_eq!(out.len(), prefix_lens.len());
    out
}

/// Encodes `s` into a self-delimiting code; see the module docs for layout.
pub fn encode(s: &BitString) -> BitString {
    let bits = s.bits();
    let n = bits.len();
    let mut out = BitString::new();
    gamma_append(n + 1, &mut out);
    if n == 0 {
        return out;
    }

    let mut tokens: Vec<(u32, usize, Option<bool>)> = Vec::new();
    let mut token_cost = 0usize;
    {
        let mut children: HashMap<(u32, bool), u32> = HashMap::new();
        let mut dict_size = 0usize;
        let mut i = 0usize;
        while i < n {
            let width = index_width(dict_size);
            let mut node = 0u32;
            while i < n {
                match children.get(&(node, bits[i])) {
                    Some(&child) => {
                        node = child;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i < n {
                let innovation = bits[i];
                i += 1;
                tokens.push((node, width, Some(innovation)));
                token_cost += width + 1;
                dict_size += 1;
                children.insert((node, innovation), dict_size as u32);
            } else {
                tokens.push((node, width, None));
                token_cost += width;
            }
        }
    }

    if token_cost < n {
        out.push(true);
        for (index, width, innovation) in tokens {
            for pos in (0..width).rev() {
                out.push((index >> pos) & 1 == 1);
            }
            if let Some(bit) = innovation {
                out.push(bit);
            }
        }
    } else {
        out.push(false);
        for &b in bits {
            out.push(b);
        }
    }
    out
}

struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl<'a> BitReader<'a> {
    fn take(&mut self) -> Result<bool> {
        let b = self
            .bits
            .get(self.pos)
            .copied()
            .ok_or_else(|| Error::MalformedCode("code truncated".into()))?;
        self.pos += 1;
        Ok(b)
    }

    fn take_uint(&mut self, width: usize) -> Result<usize> {
        let mut value = 0usize;
        for _ in 0..width {
            value = (value << 1) | usize::from(self.take()?);
        }
        Ok(value)
    }

    fn take_gamma(&mut self) -> Result<usize> {
        let mut zeros = 0usize;
        while !self.take()? {
            zeros += 1;
            if zeros > usize::BITS as usize {
                return Err(Error::MalformedCode("gamma prefix too long".into()));
            }
        }
        let mut value = 1usize;
        for _ in 0..zeros {
            value = (value << 1) | usize::from(self.take()?);
        }
        Ok(value)
    }
}

/// Exact inverse of [`encode`]. Rejects truncated or trailing input.
pub fn decode(code: &BitString) -> Result<BitString> {
    let mut reader = BitReader {
        bits: code.bits(),
        pos: 0,
    };
    let n = reader.take_gamma()? - 1;
    let mut out = Vec::with_capacity(n);

    if n > 0 {
        let tokens_mode = reader.take()?;
        if tokens_mode {
            // entries[k] = (parent entry, appended bit, word length)
            let mut entries: Vec<(usize, bool, usize)> = Vec::new();
            let mut word = Vec::new();
            while out.len() < n {
                let width = index_width(entries.len());
                let index = reader.take_uint(width)?;
                word.clear();
                let mut at = index;
                while at > 0 {
                    let (parent, bit, _) = entries[at - 1];
                    word.push(bit);
                    at = parent;
                }
                word.reverse();
                if out.len() + word.len() > n {
                    return Err(Error::MalformedCode(format!(
                        "token overruns declared length {n}"
                    )));
                }
                out.extend_from_slice(&word);
                if out.len() < n {
                    let innovation = reader.take()?;
                    out.push(innovation);
                    entries.push((index, innovation, word.len() + 1));
                }
            }
        } else {
            for _ in 0..n {
                let b = reader.take()?;
                out.push(b);
            }
        }
    }

    if reader.pos != code.len() {
        return Err(Error::MalformedCode(format!(
            "{} trailing bits after payload",
            code.len() - reader.pos
        )));
    }
    Ok(BitString::from_bits(out))
}
