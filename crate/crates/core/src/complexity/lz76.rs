//! Exhaustive-history Lempel-Ziv 1976 parsing.
//!
//! The parse splits a string into phrases left to right. A phrase starting at
//! position `i` extends while the candidate `s[i..j)` still occurs somewhere
//! in `s[0..j-1)`, i.e. can be copied from an earlier starting point with
//! overlap allowed; the first symbol that breaks this closes the phrase as its
//! innovation. The final phrase may end mid-copy and carry no innovation.
//! The phrase count of a fair-coin string, normalized by `log2(n)`, converges
//! to one bit per symbol, which is what makes it usable as a complexity proxy.
//!
//! Matching is answered by a suffix automaton over the whole input with a
//! first-occurrence end position per state, so a full parse runs in linear
//! time. One parse also yields the phrase count of every prefix: boundaries
//! depend only on symbols to their left, so a prefix's parse is the truncation
//! of the full parse.

use crate::bitstring::BitString;

const NONE: u32 = u32::MAX;

/// Suffix automaton over a binary alphabet. `firstpos` holds the end index
/// (inclusive) of the first occurrence of each state's substrings.
struct Automaton {
    next: Vec<[u32; 2]>,
    link: Vec<u32>,
    len: Vec<u32>,
    firstpos: Vec<u32>,
    last: u32,
}

impl Automaton {
    fn with_capacity(n: usize) -> Self {
        let cap = 2 * n + 2;
        let mut a = Automaton {
            next: Vec::with_capacity(cap),
            link: Vec::with_capacity(cap),
            len: Vec::with_capacity(cap),
            firstpos: Vec::with_capacity(cap),
            last: 0,
        };
        a.push_state([NONE; 2], NONE, 0, 0);
        a
    }

    fn push_state(&mut self, next: [u32; 2], link: u32, len: u32, firstpos: u32) -> u32 {
        self.next.push(next);
        self.link.push(link);
        self.len.push(len);
        self.firstpos.push(firstpos);
        (self.next.len() - 1) as u32
    }

    fn extend(&mut self, c: usize, pos: u32) {
        let cur = self.push_state([NONE; 2], NONE, self.len[self.last as usize] + 1, pos);
        let mut p = self.last;
        while p != NONE && self.next[p as usize][c] == NONE {
            self.next[p as usize][c] = cur;
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
        } else {
            let q = self.next[p as usize][c];
            if self.len[p as usize] + 1 == self.len[q as usize] {
                self.link[cur as usize] = q;
            } else {
                // Split q: the clone keeps q's shorter substrings, whose first
                // occurrence coincides with q's at this point of construction.
                let clone = self.push_state(
                    self.next[q as usize],
                    self.link[q as usize],
                    self.len[p as usize] + 1,
                    self.firstpos[q as usize],
                );
                while p != NONE && self.next[p as usize][c] == q {
                    self.next[p as usize][c] = clone;
                    p = self.link[p as usize];
                }
                self.link[q as usize] = clone;
                self.link[cur as usize] = clone;
            }
        }
        self.last = cur;
    }
}

/// Result of one exhaustive-history parse.
///
/// `boundaries[k]` is the end index (exclusive) of phrase `k`; the phrase
/// count of any prefix falls out of the same boundary list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lz76Parse {
    boundaries: Vec<usize>,
    len: usize,
}

impl Lz76Parse {
    pub fn input_len(&self) -> usize {
        self.len
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    /// Number of phrases in the full string.
    pub fn phrase_count(&self) -> usize {
        self.boundaries.len()
    }

    /// Number of phrases in the prefix of length `prefix_len`.
    /// Pre: `prefix_len <= input_len`.
    pub fn phrase_count_at(&self, prefix_len: usize) -> usize {
        assert!(
            prefix_len <= self.len,
            "prefix length {prefix_len} exceeds input length {}",
            self.len
        );
        // Completed phrases plus one in progress if the cut falls mid-phrase.
        let complete = self.boundaries.partition_point(|&b| b <= prefix_len);
        let last_end = complete
            .checked_sub(1)
            .map(|k| self.boundaries[k])
            .unwrap_or(0);
        complete + usize::from(prefix_len > last_end)
    }
}

/// Parses `s` into its exhaustive history. Empty input has zero phrases.
pub fn parse(s: &BitString) -> Lz76Parse {
    let bits = s.bits();
    let n = bits.len();
    let mut automaton = Automaton::with_capacity(n);
    for (pos, &b) in bits.iter().enumerate() {
        automaton.extend(usize::from(b), pos as u32);
    }

    let mut boundaries = Vec::new();
    let mut i = 0usize;
    while i < n {
        // Longest m with s[i..i+m) reproducible from the text before i+m-1:
        // extend while the automaton knows s[i..i+m+1) and its first
        // occurrence ends before position i+m.
        let mut state = 0u32;
        let mut m = 0usize;
        while i + m < n {
            let q = automaton.next[state as usize][usize::from(bits[i + m])];
            if q == NONE {
                break;
            }
            if i + m == 0 || automaton.firstpos[q as usize] as usize > i + m - 1 {
                break;
            }
            state = q;
            m += 1;
        }
        let end = (i + m + 1).min(n);
        boundaries.push(end);
        i = end;
    }
    Lz76Parse { boundaries, len: n }
}

/// Phrase count of the full string; see [`parse`].
pub fn phrase_count(s: &BitString) -> usize {
    parse(s).phrase_count()
}
