//! Shannon entropy, block-entropy rates, and synthetic sources.
//!
//! The observation process under study is the sequence of identification
//! strings a system receives as observers are added; its "time axis" is the
//! observer index. Two rate estimators are provided and meant to be compared:
//!
//! * the plug-in (conditional-entropy) estimator `H(m) - H(m-1)` over
//!   overlapping blocks of whole strings, where each distinct string is one
//!   symbol of a countable alphabet;
//! * the LZ estimator, normalized complexity of the concatenation per
//!   concatenated symbol.
//!
//! Both are in bits. For stationary ergodic sources they converge to the same
//! rate, which is what the zero-rate check exploits.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitstring::BitString;
use crate::complexity;
use crate::ensemble::ObservationEnsemble;
use crate::error::{Error, Result};

const PROBABILITY_TOL: f64 = 1e-12;

/// A finite distribution over distinct equal-length outcome strings.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityTable {
    outcomes: Vec<BitString>,
    probabilities: Vec<f64>,
}

impl ProbabilityTable {
    pub fn new(outcomes: Vec<BitString>, probabilities: Vec<f64>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        if outcomes.len() != probabilities.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} outcomes but {} probabilities",
                outcomes.len(),
                probabilities.len()
            )));
        }
        let r = outcomes[0].len();
        for (k, s) in outcomes.iter().enumerate() {
            if s.len() != r {
                return Err(Error::InvalidDistribution(format!(
                    "outcome {k} has length {}, expected common length {r}",
                    s.len()
                )));
            }
            if outcomes[..k].contains(s) {
                return Err(Error::InvalidDistribution(format!(
                    "duplicate outcome {s}"
                )));
            }
        }
        if let Some(&q) = probabilities.iter().find(|q| !q.is_finite() || **q < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "probability {q} is negative or not finite"
            )));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_TOL {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, need 1 within {PROBABILITY_TOL}"
            )));
        }
        Ok(Self {
            outcomes,
            probabilities,
        })
    }

    /// Uniform distribution over the given outcomes.
    pub fn uniform(outcomes: Vec<BitString>) -> Result<Self> {
        let q = 1.0 / outcomes.len() as f64;
        let probabilities = vec![q; outcomes.len()];
        Self::new(outcomes, probabilities)
    }

    pub fn outcomes(&self) -> &[BitString] {
        &self.outcomes
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Common outcome length r.
    pub fn outcome_len(&self) -> usize {
        self.outcomes[0].len()
    }
}

/// `-Σ q_k log2 q_k`, with `0 · log 0 = 0`.
pub fn shannon_entropy(table: &ProbabilityTable) -> f64 {
    entropy_of_probs(table.probabilities.iter().copied())
}

fn entropy_of_probs(probs: impl Iterator<Item = f64>) -> f64 {
    let mut h = 0.0;
    for q in probs {
        if q > 0.0 {
            h -= q * q.log2();
        }
    }
    h
}

/// Interns each distinct string to a small id so blocks hash cheaply.
fn intern(sequence: &[BitString]) -> Vec<u32> {
    let mut ids: HashMap<&BitString, u32> = HashMap::new();
    sequence
        .iter()
        .map(|s| {
            let next = ids.len() as u32;
            *ids.entry(s).or_insert(next)
        })
        .collect()
}

fn block_entropy_of_ids(ids: &[u32], block_len: usize) -> f64 {
    let mut counts: HashMap<&[u32], usize> = HashMap::new();
    for window in ids.windows(block_len) {
        *counts.entry(window).or_insert(0) += 1;
    }
    let total = (ids.len() - block_len + 1) as f64;
    entropy_of_probs(counts.values().map(|&c| c as f64 / total))
}

/// Shannon entropy of the empirical distribution over overlapping blocks of
/// `block_len` consecutive entries, in bits per block. Each whole string is
/// one symbol.
pub fn block_entropy(sequence: &[BitString], block_len: usize) -> Result<f64> {
    if block_len == 0 {
        return Err(Error::InvalidConfig("block length must be positive".into()));
    }
    if sequence.len() < block_len {
        return Err(Error::InsufficientData {
            what: "block entropy",
            needed: block_len,
            got: sequence.len(),
        });
    }
    Ok(block_entropy_of_ids(&intern(sequence), block_len))
}

/// Plug-in rate estimate plus its diagnostic curve.
#[derive(Clone, Debug, PartialEq)]
pub struct PluginRateReport {
    /// `H(max_block) - H(max_block - 1)` in bits per step; `H(0) = 0`.
    pub rate_bits: f64,
    /// `block_entropies[m - 1]` is `H(m)` for `m = 1..=max_block`.
    pub block_entropies: Vec<f64>,
}

/// Conditional-entropy estimator of the rate at block order `max_block`.
pub fn entropy_rate_plugin(sequence: &[BitString], max_block: usize) -> Result<PluginRateReport> {
    if max_block == 0 {
        return Err(Error::InvalidConfig("block order must be positive".into()));
    }
    if sequence.len() < 10 * max_block {
        return Err(Error::InsufficientData {
            what: "plug-in entropy rate",
            needed: 10 * max_block,
            got: sequence.len(),
        });
    }
    let ids = intern(sequence);
    let block_entropies: Vec<f64> = (1..=max_block)
        .map(|m| block_entropy_of_ids(&ids, m))
        .collect();
    let h_top = block_entropies[max_block - 1];
    let h_prev = if max_block >= 2 {
        block_entropies[max_block - 2]
    } else {
        0.0
    };
    Ok(PluginRateReport {
        rate_bits: h_top - h_prev,
        block_entropies,
    })
}

/// Normalized LZ complexity of the concatenation, per concatenated symbol.
pub fn entropy_rate_lz(sequence: &[BitString]) -> Result<f64> {
    let joined = BitString::concat(sequence);
    let est = complexity::lz76_bits(&joined)?;
    Ok(est.value_bits / joined.len() as f64)
}

/// Outcome of the two-estimator zero-rate test on one ensemble column.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroRateCheck {
    pub plugin_rate_bits: f64,
    pub lz_rate_bits: f64,
    pub max_block: usize,
    pub tol_bits: f64,
    pub is_zero: bool,
}

/// Block order used by the zero-rate check unless data forces a lower one.
pub const DEFAULT_MAX_BLOCK: usize = 4;

/// Runs both rate estimators on column `system_index` and requires both to
/// fall below `tol`.
pub fn zero_rate_check(
    ensemble: &ObservationEnsemble,
    system_index: usize,
    tol: f64,
    max_block: usize,
) -> Result<ZeroRateCheck> {
    if ensemble.num_observers() < 2 {
        return Err(Error::InsufficientData {
            what: "entropy rate of an observation column",
            needed: 2,
            got: ensemble.num_observers(),
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "zero-rate tolerance must be positive, got {tol}"
        )));
    }
    let column = ensemble.column(system_index)?;
    let plugin = entropy_rate_plugin(&column, max_block)?;
    let lz = entropy_rate_lz(&column)?;
    Ok(ZeroRateCheck {
        plugin_rate_bits: plugin.rate_bits,
        lz_rate_bits: lz,
        max_block,
        tol_bits: tol,
        is_zero: plugin.rate_bits < tol && lz < tol,
    })
}

/// [`zero_rate_check`] at the default block order, capped by available data.
pub fn is_zero_entropy_rate(
    ensemble: &ObservationEnsemble,
    system_index: usize,
    tol: f64,
) -> Result<bool> {
    let max_block = DEFAULT_MAX_BLOCK.min(ensemble.num_observers() / 10).max(1);
    Ok(zero_rate_check(ensemble, system_index, tol, max_block)?.is_zero)
}

/// A validated finite-state chain over string-valued states.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovChain {
    states: Vec<BitString>,
    transition: Vec<Vec<f64>>,
    initial: Vec<f64>,
}

impl MarkovChain {
    pub fn new(
        states: Vec<BitString>,
        transition: Vec<Vec<f64>>,
        initial: Vec<f64>,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::InvalidDistribution("no states".into()));
        }
        for (k, s) in states.iter().enumerate() {
            if states[..k].contains(s) {
                return Err(Error::InvalidDistribution(format!("duplicate state {s}")));
            }
        }
        if transition.len() != n {
            return Err(Error::InvalidDistribution(format!(
                "{} transition rows for {n} states",
                transition.len()
            )));
        }
        for (k, row) in transition.iter().enumerate() {
            validate_distribution(row, n, &format!("transition row {k}"))?;
        }
        validate_distribution(&initial, n, "initial distribution")?;
        Ok(Self {
            states,
            transition,
            initial,
        })
    }
}

fn validate_distribution(probs: &[f64], n: usize, what: &str) -> Result<()> {
    if probs.len() != n {
        return Err(Error::InvalidDistribution(format!(
            "{what} has {} entries, expected {n}",
            probs.len()
        )));
    }
    if probs.iter().any(|q| !q.is_finite() || *q < 0.0) {
        return Err(Error::InvalidDistribution(format!(
            "{what} has a negative or non-finite entry"
        )));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > PROBABILITY_TOL {
        return Err(Error::InvalidDistribution(format!(
            "{what} sums to {total}, need 1 within {PROBABILITY_TOL}"
        )));
    }
    Ok(())
}

/// What kind of synthetic source to run.
#[derive(Clone, Debug, PartialEq)]
pub enum ProcessKind {
    /// Repeats one fixed string.
    Constant(BitString),
    /// Independent draws from a probability table.
    IidTable(ProbabilityTable),
    /// A walk over a finite-state chain, emitting the visited states.
    Markov(MarkovChain),
}

/// A synthetic source: kind plus the seed that makes it reproducible.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessModel {
    pub kind: ProcessKind,
    pub seed: u64,
}

impl ProcessModel {
    pub fn constant(value: BitString) -> Self {
        Self {
            kind: ProcessKind::Constant(value),
            seed: 0,
        }
    }

    pub fn iid(table: ProbabilityTable, seed: u64) -> Self {
        Self {
            kind: ProcessKind::IidTable(table),
            seed,
        }
    }

    pub fn markov(chain: MarkovChain, seed: u64) -> Self {
        Self {
            kind: ProcessKind::Markov(chain),
            seed,
        }
    }
}

/// Inverse-CDF draw: first index whose cumulative probability passes `u`.
fn sample_index<R: Rng + ?Sized>(rng: &mut R, probs: &[f64]) -> usize {
    let u: f64 = rng.gen();
    let mut cum = 0.0;
    for (k, &q) in probs.iter().enumerate() {
        cum += q;
        if u < cum {
            return k;
        }
    }
    probs.len() - 1
}

/// Runs the source for `count` steps. Deterministic given the model's seed;
/// the generator is ChaCha8, whose stream is stable across platforms.
pub fn generate(model: &ProcessModel, count: usize) -> Result<Vec<BitString>> {
    if count == 0 {
        return Err(Error::InvalidConfig("sample count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    match &model.kind {
        ProcessKind::Constant(value) => Ok(vec![value.clone(); count]),
        ProcessKind::IidTable(table) => Ok((0..count)
            .map(|_| table.outcomes[sample_index(&mut rng, &table.probabilities)].clone())
            .collect()),
        ProcessKind::Markov(chain) => {
            let mut state = sample_index(&mut rng, &chain.initial);
            let mut out = Vec::with_capacity(count);
            out.push(chain.states[state].clone());
            for _ in 1..count {
                state = sample_index(&mut rng, &chain.transition[state]);
                out.push(chain.states[state].clone());
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bs(t: &str) -> BitString {
        BitString::from_text(t).unwrap()
    }

    fn fair_coin_table() -> ProbabilityTable {
        ProbabilityTable::new(vec![bs("0"), bs("1")], vec![0.5, 0.5]).unwrap()
    }

    fn flip_chain(p: f64) -> MarkovChain {
        MarkovChain::new(
            vec![bs("0"), bs("1")],
            vec![vec![1.0 - p, p], vec![p, 1.0 - p]],
            vec![0.5, 0.5],
        )
        .unwrap()
    }

    #[test]
    fn shannon_entropy_pinned_values() {
        let degenerate = ProbabilityTable::new(vec![bs("0")], vec![1.0]).unwrap();
        assert_eq!(shannon_entropy(&degenerate), 0.0);
        assert!((shannon_entropy(&fair_coin_table()) - 1.0).abs() < 1e-15);
        let skewed =
            ProbabilityTable::new(vec![bs("00"), bs("01"), bs("10")], vec![0.5, 0.25, 0.25])
                .unwrap();
        assert!((shannon_entropy(&skewed) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn uniform_table_attains_maximum_entropy() {
        for r in 1..=8usize {
            let outcomes: Vec<BitString> = (0..1usize << r)
                .map(|pattern| {
                    BitString::from_bits((0..r).map(|k| (pattern >> k) & 1 == 1).collect())
                })
                .collect();
            let table = ProbabilityTable::uniform(outcomes).unwrap();
            let h = shannon_entropy(&table);
            assert!(
                (h - r as f64).abs() < 1e-9,
                "uniform over 2^{r} strings gave {h} bits"
            );
        }
    }

    #[test]
    fn table_validation_catches_bad_inputs() {
        assert!(ProbabilityTable::new(vec![], vec![]).is_err());
        assert!(ProbabilityTable::new(vec![bs("0"), bs("0")], vec![0.5, 0.5]).is_err());
        assert!(ProbabilityTable::new(vec![bs("0"), bs("11")], vec![0.5, 0.5]).is_err());
        assert!(ProbabilityTable::new(vec![bs("0"), bs("1")], vec![0.6, 0.6]).is_err());
        assert!(ProbabilityTable::new(vec![bs("0"), bs("1")], vec![-0.5, 1.5]).is_err());
    }

    #[test]
    fn block_entropy_of_constant_sequence_is_zero() {
        let seq = vec![bs("0110"); 50];
        for block_len in [1, 2, 5] {
            assert_eq!(block_entropy(&seq, block_len).unwrap(), 0.0);
        }
    }

    #[test]
    fn block_entropy_of_alternating_pair() {
        // 11 entries: block 1 sees 6/5, block 2 sees the two phases 5/5.
        let seq: Vec<BitString> = (0..11)
            .map(|k| if k % 2 == 0 { bs("00") } else { bs("11") })
            .collect();
        let h1 = block_entropy(&seq, 1).unwrap();
        assert!((h1 - 0.994).abs() < 0.01, "H(1) = {h1}");
        let h2 = block_entropy(&seq, 2).unwrap();
        assert!((h2 - 1.0).abs() < 1e-12, "H(2) = {h2}");
    }

    #[test]
    fn block_entropy_of_uniform_four_strings() {
        let outcomes = vec![bs("00"), bs("01"), bs("10"), bs("11")];
        let model = ProcessModel::iid(ProbabilityTable::uniform(outcomes).unwrap(), 12);
        let seq = generate(&model, 100_000).unwrap();
        let h = block_entropy(&seq, 1).unwrap();
        assert!((h - 2.0).abs() < 0.05, "H(1) = {h}, expected 2.0 ± 0.05");
    }

    #[test]
    fn block_entropy_rejects_short_sequences() {
        let seq = vec![bs("0"); 3];
        assert!(matches!(
            block_entropy(&seq, 4),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn plugin_rate_of_constant_sequence_is_exactly_zero() {
        let seq = vec![bs("0101"); 200];
        let report = entropy_rate_plugin(&seq, 4).unwrap();
        assert_eq!(report.rate_bits, 0.0);
        assert_eq!(report.block_entropies, vec![0.0; 4]);
    }

    #[test]
    fn plugin_rate_of_fair_coin_near_one_bit() {
        let model = ProcessModel::iid(fair_coin_table(), 7);
        let seq = generate(&model, 100_000).unwrap();
        let report = entropy_rate_plugin(&seq, 4).unwrap();
        assert!(
            (report.rate_bits - 1.0).abs() < 0.05,
            "rate = {}",
            report.rate_bits
        );
    }

    #[test]
    fn plugin_rate_of_flip_chain_near_binary_entropy() {
        let h_expected = 0.468_995_593_589_281_2; // -0.1 log2 0.1 - 0.9 log2 0.9
        let model = ProcessModel::markov(flip_chain(0.1), 19);
        let seq = generate(&model, 100_000).unwrap();
        let report = entropy_rate_plugin(&seq, 4).unwrap();
        assert!(
            (report.rate_bits - h_expected).abs() < 0.1 * h_expected,
            "rate = {}, expected {h_expected} ± 10%",
            report.rate_bits
        );
    }

    #[test]
    fn plugin_rate_of_periodic_sequence_nearly_vanishes() {
        // The conditional estimator is exactly zero only in the infinite-data
        // limit for period >= 2: consecutive block totals cannot both divide
        // by the period, so finite data leaves an O(1/n) remainder.
        let seq: Vec<BitString> = (0..10_000)
            .map(|k| if k % 2 == 0 { bs("0") } else { bs("1") })
            .collect();
        let report = entropy_rate_plugin(&seq, 3).unwrap();
        assert!(
            report.rate_bits.abs() < 1e-4,
            "periodic rate = {}",
            report.rate_bits
        );
    }

    #[test]
    fn lz_rate_of_structured_sources_is_small() {
        let constant = vec![bs("0"); 1 << 14];
        let rate = entropy_rate_lz(&constant).unwrap();
        assert!(rate < 0.05, "constant rate = {rate}");

        let periodic: Vec<BitString> = (0..1 << 14)
            .map(|k| if k % 2 == 0 { bs("0") } else { bs("1") })
            .collect();
        let rate = entropy_rate_lz(&periodic).unwrap();
        assert!(rate < 0.05, "period-2 rate = {rate}");
    }

    #[test]
    fn lz_rate_of_fair_coin_near_one_bit() {
        let model = ProcessModel::iid(fair_coin_table(), 3);
        let seq = generate(&model, 1 << 17).unwrap();
        let rate = entropy_rate_lz(&seq).unwrap();
        assert!((rate - 1.0).abs() < 0.05, "rate = {rate}");
    }

    #[test]
    fn lz_rate_needs_two_symbols() {
        assert!(matches!(
            entropy_rate_lz(&[bs("1")]),
            Err(Error::StringTooShort { .. })
        ));
    }

    #[test]
    fn zero_rate_check_separates_identical_from_random() {
        // The common identification must be long enough that the parse's
        // log2(n) normalization overhead sits below the tolerance.
        let identical = ObservationEnsemble::from_column(
            "same",
            vec![bs("01").repeated(512); 64],
        )
        .unwrap();
        let check = zero_rate_check(&identical, 0, 0.01, 4).unwrap();
        assert_eq!(check.plugin_rate_bits, 0.0);
        assert!(check.is_zero);
        assert!(is_zero_entropy_rate(&identical, 0, 0.01).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let random = ObservationEnsemble::from_column(
            "fresh",
            (0..64).map(|_| BitString::random(&mut rng, 64)).collect(),
        )
        .unwrap();
        assert!(!is_zero_entropy_rate(&random, 0, 0.01).unwrap());
    }

    #[test]
    fn zero_rate_check_rejects_single_observer() {
        let ens = ObservationEnsemble::from_column("s", vec![bs("0")]).unwrap();
        assert!(matches!(
            is_zero_entropy_rate(&ens, 0, 0.01),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn generate_constant_and_degenerate_iid_agree() {
        let constant = ProcessModel::constant(bs("01"));
        assert_eq!(
            generate(&constant, 3).unwrap(),
            vec![bs("01"), bs("01"), bs("01")]
        );
        let degenerate = ProcessModel::iid(
            ProbabilityTable::new(vec![bs("01")], vec![1.0]).unwrap(),
            5,
        );
        assert_eq!(generate(&degenerate, 3).unwrap(), generate(&constant, 3).unwrap());
    }

    #[test]
    fn generate_absorbing_chain_stays_put() {
        let chain = MarkovChain::new(
            vec![bs("0"), bs("1")],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![1.0, 0.0],
        )
        .unwrap();
        let seq = generate(&ProcessModel::markov(chain, 8), 10).unwrap();
        assert_eq!(seq, vec![bs("0"); 10]);
    }

    #[test]
    fn generate_is_reproducible_and_seed_sensitive() {
        let model = ProcessModel::iid(fair_coin_table(), 77);
        assert_eq!(generate(&model, 500).unwrap(), generate(&model, 500).unwrap());
        let other = ProcessModel::iid(fair_coin_table(), 78);
        assert_ne!(generate(&model, 500).unwrap(), generate(&other, 500).unwrap());
    }

    #[test]
    fn generate_rejects_zero_count() {
        let model = ProcessModel::constant(bs("0"));
        assert!(matches!(generate(&model, 0), Err(Error::InvalidConfig(_))));
    }

    proptest! {
        #[test]
        fn shannon_entropy_is_permutation_invariant(
            weights in proptest::collection::vec(0.01f64..1.0, 2..9),
            swap in (0usize..8, 0usize..8),
        ) {
            let total: f64 = weights.iter().sum();
            let probs: Vec<f64> = weights.iter().map(|w| w / total).collect();
            let n = probs.len();
            let outcomes: Vec<BitString> = (0..n)
                .map(|k| BitString::from_bits((0..4).map(|b| (k >> b) & 1 == 1).collect()))
                .collect();
            let table = ProbabilityTable::new(outcomes.clone(), probs.clone()).unwrap();

            let (a, b) = (swap.0 % n, swap.1 % n);
            let mut swapped_outcomes = outcomes;
            let mut swapped_probs = probs;
            swapped_outcomes.swap(a, b);
            swapped_probs.swap(a, b);
            let swapped = ProbabilityTable::new(swapped_outcomes, swapped_probs).unwrap();

            let diff = (shannon_entropy(&table) - shannon_entropy(&swapped)).abs();
            prop_assert!(diff < 1e-12, "entropy moved by {diff} under permutation");
        }
    }
}
