//! Concatenation curves, complexity growth, and the element-of-reality verdict.
//!
//! For one system, the identifications produced by observers 1..i are glued
//! into a single string and its complexity estimate becomes the curve point
//! k(i). How k grows with i is the diagnostic: an identification that all
//! observers essentially share grows boundedly or logarithmically, while
//! independent identifications grow linearly. The verdict combines this
//! growth class with the zero-entropy-rate check of the same column.
//!
//! Concatenation here is bookkeeping, not a physical act, so one parse of the
//! full concatenation serves every prefix: phrase boundaries depend only on
//! symbols to their left.

use crate::bitstring::BitString;
use crate::complexity::{dictionary, lz76, Estimator};
use crate::ensemble::ObservationEnsemble;
use crate::entropy::{self, ZeroRateCheck};
use crate::error::{Error, Result};
use crate::observer::ObserverSIA;

use std::fmt;

/// One point of a concatenation curve: the complexity estimate, in bits or
/// phrases depending on the estimator, of the first `observers` strings glued
/// together.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub observers: usize,
    pub k_bits: f64,
}

/// Complexity of the growing concatenation for one system.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcatenationCurve {
    pub system_label: String,
    pub estimator: Estimator,
    pub points: Vec<CurvePoint>,
}

/// Builds the curve for column `system_index`: one point per observer count
/// `i`, estimating the concatenation of the first `i` identifications.
///
/// For `LZ76_NORMALIZED_BITS` the normalization `log2(len)` is floored at one
/// bit so that sub-2-bit prefixes still carry their phrase count.
pub fn build_curve(
    ensemble: &ObservationEnsemble,
    system_index: usize,
    estimator: Estimator,
) -> Result<ConcatenationCurve> {
    if ensemble.num_observers() < 2 {
        return Err(Error::InsufficientData {
            what: "concatenation curve",
            needed: 2,
            got: ensemble.num_observers(),
        });
    }
    let column = ensemble.column(system_index)?;
    let joined = BitString::concat(&column);
    let prefix_lens: Vec<usize> = column
        .iter()
        .scan(0usize, |acc, s| {
            *acc += s.len();
            Some(*acc)
        })
        .collect();

    let values: Vec<f64> = match estimator {
        Estimator::Lz76Phrases | Estimator::Lz76NormalizedBits => {
            let parsed = lz76::parse(&joined);
            prefix_lens
                .iter()
                .map(|&len| {
                    let count = parsed.phrase_count_at(len) as f64;
                    match estimator {
                        Estimator::Lz76Phrases => count,
                        _ => count * (len.max(2) as f64).log2(),
                    }
                })
                .collect()
        }
        Estimator::DictionaryCodeLength => dictionary::code_lengths_at(&joined, &prefix_lens)
            .into_iter()
            .map(|bits| bits as f64)
            .collect(),
    };

    let points = values
        .into_iter()
        .enumerate()
        .map(|(k, k_bits)| CurvePoint {
            observers: k + 1,
            k_bits,
        })
        .collect();
    Ok(ConcatenationCurve {
        system_label: ensemble.system_labels()[system_index].clone(),
        estimator,
        points,
    })
}

/// Ratio sequence k(i)/i with a tail estimate of its limit.
#[derive(Clone, Debug, PartialEq)]
pub struct BrudnoReport {
    pub ratios: Vec<(usize, f64)>,
    /// Mean of the last quartile of ratios; the finite stand-in for the limit.
    pub tail_estimate: f64,
}

pub fn brudno_ratio(curve: &ConcatenationCurve) -> Result<BrudnoReport> {
    let n = curve.points.len();
    if n < 3 {
        return Err(Error::InsufficientData {
            what: "Brudno ratio",
            needed: 3,
            got: n,
        });
    }
    let ratios: Vec<(usize, f64)> = curve
        .points
        .iter()
        .map(|p| (p.observers, p.k_bits / p.observers as f64))
        .collect();
    let tail_len = n.div_ceil(4);
    let tail_estimate =
        ratios[n - tail_len..].iter().map(|(_, r)| r).sum::<f64>() / tail_len as f64;
    Ok(BrudnoReport {
        ratios,
        tail_estimate,
    })
}

/// Per-i report of `k(i) < capacity(X_i)`. A report, not an assertion:
/// violations are returned to the caller, never panicked on.
pub fn check_observer_bound(
    curve: &ConcatenationCurve,
    observers: &[ObserverSIA],
) -> Result<Vec<bool>> {
    if observers.len() < curve.points.len() {
        return Err(Error::InsufficientData {
            what: "observer bound check (one observer per curve point)",
            needed: curve.points.len(),
            got: observers.len(),
        });
    }
    Ok(curve
        .points
        .iter()
        .zip(observers)
        .map(|(p, obs)| p.k_bits < obs.capacity_bits())
        .collect())
}

/// How the curve grows in the observer count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GrowthClass {
    Bounded,
    Logarithmic,
    SuperLogarithmic,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrowthClass::Bounded => "BOUNDED",
            GrowthClass::Logarithmic => "LOGARITHMIC",
            GrowthClass::SuperLogarithmic => "SUPER_LOGARITHMIC",
        })
    }
}

/// One candidate model's least-squares result.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelFit {
    pub class: GrowthClass,
    /// `[a]` for constant, `[a, b]` for `a + b·log2(i)`, `[a, c]` for `a + c·i`.
    pub params: Vec<f64>,
    pub rss: f64,
    /// Selection score: `rss / (n - p)`, one residual degree of freedom per
    /// parameter.
    pub score: f64,
}

/// Growth verdict with the full fit table behind it.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthFit {
    pub class: GrowthClass,
    pub models: Vec<ModelFit>,
}

fn fit_constant(points: &[CurvePoint]) -> (Vec<f64>, f64) {
    let n = points.len() as f64;
    let mean = points.iter().map(|p| p.k_bits).sum::<f64>() / n;
    let rss = points
        .iter()
        .map(|p| (p.k_bits - mean).powi(2))
        .sum::<f64>();
    (vec![mean], rss)
}

/// Ordinary least squares of y against one regressor x plus intercept.
fn fit_affine(points: &[CurvePoint], x_of: impl Fn(f64) -> f64) -> (Vec<f64>, f64) {
    let n = points.len() as f64;
    let (mut sx, mut sy) = (0.0, 0.0);
    for p in points {
        sx += x_of(p.observers as f64);
        sy += p.k_bits;
    }
    let (mx, my) = (sx / n, sy / n);
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for p in points {
        let dx = x_of(p.observers as f64) - mx;
        sxx += dx * dx;
        sxy += dx * (p.k_bits - my);
    }
    // Degenerate regressor (all x equal) collapses to the constant model.
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rss = points
        .iter()
        .map(|p| {
            let predicted = intercept + slope * x_of(p.observers as f64);
            (p.k_bits - predicted).powi(2)
        })
        .sum::<f64>();
    (vec![intercept, slope], rss)
}

/// Fits constant, logarithmic, and linear models and selects the best score;
/// ties go to the model with fewer parameters, in the order listed.
pub fn classify_growth(curve: &ConcatenationCurve) -> Result<GrowthFit> {
    let n = curve.points.len();
    if n < 8 {
        return Err(Error::InsufficientData {
            what: "growth classification",
            needed: 8,
            got: n,
        });
    }

    let (const_params, const_rss) = fit_constant(&curve.points);
    let (log_params, log_rss) = fit_affine(&curve.points, f64::log2);
    let (lin_params, lin_rss) = fit_affine(&curve.points, |x| x);

    let models = vec![
        ModelFit {
            class: GrowthClass::Bounded,
            score: const_rss / (n - 1) as f64,
            params: const_params,
            rss: const_rss,
        },
        ModelFit {
            class: GrowthClass::Logarithmic,
            score: log_rss / (n - 2) as f64,
            params: log_params,
            rss: log_rss,
        },
        ModelFit {
            class: GrowthClass::SuperLogarithmic,
            score: lin_rss / (n - 2) as f64,
            params: lin_params,
            rss: lin_rss,
        },
    ];

    let mut best = &models[0];
    for model in &models[1..] {
        if model.score < best.score {
            best = model;
        }
    }
    Ok(GrowthFit {
        class: best.class,
        models,
    })
}

/// Tolerances and knobs for the verdict.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealityConfig {
    /// Both rate estimators must fall below this, in bits per step.
    pub zero_rate_tol: f64,
    /// Estimator used for the concatenation curve; reported with the verdict.
    pub estimator: Estimator,
    /// Block order for the plug-in rate, capped by available observers.
    pub max_block: usize,
}

impl Default for RealityConfig {
    fn default() -> Self {
        Self {
            zero_rate_tol: 0.01,
            // Phrase counting tracks innovation structure without the
            // log2(total length) factor the bit normalization carries.
            estimator: Estimator::Lz76Phrases,
            max_block: entropy::DEFAULT_MAX_BLOCK,
        }
    }
}

/// The per-system verdict with its diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct RealityVerdict {
    pub system_label: String,
    pub estimator: Estimator,
    pub is_element_of_reality: bool,
    /// Headline rate: the larger of the two estimators, the one that binds.
    pub entropy_rate_bits: f64,
    pub growth_class: GrowthClass,
    pub zero_rate: ZeroRateCheck,
    pub fit: GrowthFit,
}

/// True iff the column's entropy rate vanishes under both estimators and the
/// concatenation curve grows at most logarithmically.
pub fn is_element_of_reality(
    ensemble: &ObservationEnsemble,
    system_index: usize,
    config: &RealityConfig,
) -> Result<RealityVerdict> {
    if ensemble.num_observers() < 8 {
        return Err(Error::InsufficientData {
            what: "reality verdict",
            needed: 8,
            got: ensemble.num_observers(),
        });
    }
    let max_block = config
        .max_block
        .min(ensemble.num_observers() / 10)
        .max(1);
    let zero_rate = entropy::zero_rate_check(
        ensemble,
        system_index,
        config.zero_rate_tol,
        max_block,
    )?;
    let curve = build_curve(ensemble, system_index, config.estimator)?;
    let fit = classify_growth(&curve)?;
    let growth_ok = matches!(fit.class, GrowthClass::Bounded | GrowthClass::Logarithmic);
    Ok(RealityVerdict {
        system_label: curve.system_label.clone(),
        estimator: config.estimator,
        is_element_of_reality: zero_rate.is_zero && growth_ok,
        entropy_rate_bits: zero_rate.plugin_rate_bits.max(zero_rate.lz_rate_bits),
        growth_class: fit.class,
        zero_rate,
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bs(t: &str) -> BitString {
        BitString::from_text(t).unwrap()
    }

    fn column_ensemble(column: Vec<BitString>) -> ObservationEnsemble {
        ObservationEnsemble::from_column("s", column).unwrap()
    }

    fn synthetic_curve(values: &[f64]) -> ConcatenationCurve {
        ConcatenationCurve {
            system_label: "synthetic".into(),
            estimator: Estimator::Lz76Phrases,
            points: values
                .iter()
                .enumerate()
                .map(|(k, &k_bits)| CurvePoint {
                    observers: k + 1,
                    k_bits,
                })
                .collect(),
        }
    }

    #[test]
    fn identical_strings_give_a_flat_phrase_curve() {
        let ens = column_ensemble(vec![bs("0101"); 5]);
        let curve = build_curve(&ens, 0, Estimator::Lz76Phrases).unwrap();
        let values: Vec<f64> = curve.points.iter().map(|p| p.k_bits).collect();
        // The alternating unit already parses into its saturated phrase set.
        assert_eq!(values, vec![3.0; 5]);
        assert!(curve
            .points
            .iter()
            .enumerate()
            .all(|(k, p)| p.observers == k + 1));
    }

    #[test]
    fn independent_strings_give_near_linear_dictionary_growth() {
        let mut hits = 0;
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ens =
                column_ensemble((0..5).map(|_| BitString::random(&mut rng, 64)).collect());
            let curve = build_curve(&ens, 0, Estimator::DictionaryCodeLength).unwrap();
            let last = curve.points.last().unwrap();
            if last.k_bits >= 0.8 * 64.0 * 5.0 {
                hits += 1;
            }
        }
        assert_eq!(
            hits, 20,
            "random 64-bit strings compressed below 0.8 of their length"
        );
    }

    #[test]
    fn build_curve_needs_two_observers() {
        let ens = column_ensemble(vec![bs("0")]);
        assert!(matches!(
            build_curve(&ens, 0, Estimator::Lz76Phrases),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn brudno_tail_vanishes_for_constant_identifications() {
        let ens = column_ensemble(vec![bs("0"); 2048]);
        let curve = build_curve(&ens, 0, Estimator::Lz76NormalizedBits).unwrap();
        let report = brudno_ratio(&curve).unwrap();
        assert!(
            report.tail_estimate < 0.05,
            "constant tail = {}",
            report.tail_estimate
        );
    }

    #[test]
    fn brudno_tail_of_fair_coin_bits_near_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let column: Vec<BitString> = (0..10_000).map(|_| BitString::random(&mut rng, 1)).collect();
        let ens = column_ensemble(column);
        let curve = build_curve(&ens, 0, Estimator::Lz76NormalizedBits).unwrap();
        let report = brudno_ratio(&curve).unwrap();
        assert!(
            (report.tail_estimate - 1.0).abs() < 0.1,
            "fair-coin tail = {}",
            report.tail_estimate
        );
    }

    #[test]
    fn brudno_needs_three_points_and_handles_the_minimum() {
        let two = synthetic_curve(&[1.0, 2.0]);
        assert!(brudno_ratio(&two).is_err());
        let three = synthetic_curve(&[1.0, 2.0, 3.0]);
        let report = brudno_ratio(&three).unwrap();
        assert_eq!(report.ratios.len(), 3);
        assert!(report.tail_estimate > 0.0 && report.tail_estimate < 2.0);
    }

    #[test]
    fn brudno_tail_tracks_lz_rate_on_the_same_column() {
        // Both are per-symbol LZ views of the same limit; on a nonvanishing
        // rate they must agree within 10%.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let column: Vec<BitString> = (0..8192).map(|_| BitString::random(&mut rng, 1)).collect();
        let lz_rate = entropy::entropy_rate_lz(&column).unwrap();
        let ens = column_ensemble(column);
        let curve = build_curve(&ens, 0, Estimator::Lz76NormalizedBits).unwrap();
        let tail = brudno_ratio(&curve).unwrap().tail_estimate;
        assert!(
            (tail - lz_rate).abs() < 0.1 * lz_rate,
            "tail {tail} vs lz rate {lz_rate}"
        );
    }

    #[test]
    fn observer_bound_reports_dominance_cases() {
        let tiny = column_ensemble(vec![bs("01"); 4]);
        let curve = build_curve(&tiny, 0, Estimator::DictionaryCodeLength).unwrap();
        let generous: Vec<ObserverSIA> = (0..4)
            .map(|k| ObserverSIA::new(format!("x{k}"), 1e6).unwrap())
            .collect();
        assert_eq!(check_observer_bound(&curve, &generous).unwrap(), vec![true; 4]);

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let wide = column_ensemble((0..4).map(|_| BitString::random(&mut rng, 64)).collect());
        let curve = build_curve(&wide, 0, Estimator::DictionaryCodeLength).unwrap();
        let starved: Vec<ObserverSIA> = (0..4)
            .map(|k| ObserverSIA::new(format!("x{k}"), 1.0).unwrap())
            .collect();
        assert_eq!(
            check_observer_bound(&curve, &starved).unwrap(),
            vec![false; 4],
            "1-bit capacities must fail from i = 1"
        );
    }

    #[test]
    fn observer_bound_holds_in_the_absorption_setting() {
        // Ten short records against capacities an order of magnitude above
        // the full cumulative memory.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ens = column_ensemble((0..10).map(|_| BitString::random(&mut rng, 10)).collect());
        let curve = build_curve(&ens, 0, Estimator::DictionaryCodeLength).unwrap();
        let observers: Vec<ObserverSIA> = (0..10)
            .map(|k| ObserverSIA::new(format!("x{k}"), 1000.0).unwrap())
            .collect();
        assert_eq!(
            check_observer_bound(&curve, &observers).unwrap(),
            vec![true; 10]
        );
    }

    #[test]
    fn observer_bound_requires_enough_observers() {
        let curve = synthetic_curve(&[1.0, 2.0, 3.0]);
        let observers = vec![ObserverSIA::new("x", 10.0).unwrap(); 2];
        assert!(matches!(
            check_observer_bound(&curve, &observers),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn growth_classification_recovers_generating_models() {
        let constant = synthetic_curve(&[7.5; 16]);
        assert_eq!(
            classify_growth(&constant).unwrap().class,
            GrowthClass::Bounded
        );

        let log_values: Vec<f64> = (1..=64)
            .map(|i| 5.0 + 3.0 * (i as f64).log2())
            .collect();
        assert_eq!(
            classify_growth(&synthetic_curve(&log_values)).unwrap().class,
            GrowthClass::Logarithmic
        );

        let mut super_log_hits = 0;
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let linear_values: Vec<f64> = (1..=64)
                .map(|i| (2.0 + 4.0 * i as f64) * (1.0 + 0.01 * rng.gen_range(-1.0..1.0)))
                .collect();
            if classify_growth(&synthetic_curve(&linear_values)).unwrap().class
                == GrowthClass::SuperLogarithmic
            {
                super_log_hits += 1;
            }
        }
        assert!(
            super_log_hits >= 95,
            "noisy linear curves recovered in only {super_log_hits}/100 runs"
        );
    }

    #[test]
    fn growth_classification_needs_eight_points() {
        let short = synthetic_curve(&[1.0; 7]);
        assert!(matches!(
            classify_growth(&short),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn growth_class_is_offset_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let kind = rng.gen_range(0..3);
            let values: Vec<f64> = (1..=32)
                .map(|i| {
                    let x = i as f64;
                    let noise = 0.05 * rng.gen_range(-1.0..1.0);
                    match kind {
                        0 => 4.0 + noise,
                        1 => 4.0 + 2.0 * x.log2() + noise,
                        _ => 4.0 + 3.0 * x + noise,
                    }
                })
                .collect();
            let base = classify_growth(&synthetic_curve(&values)).unwrap().class;
            let shifted: Vec<f64> = values.iter().map(|v| v + 1000.0).collect();
            let shifted_class = classify_growth(&synthetic_curve(&shifted)).unwrap().class;
            assert_eq!(base, shifted_class, "offset changed the growth class");
        }
    }

    #[test]
    fn verdict_true_for_identical_identifications() {
        let ens = column_ensemble(vec![bs("01").repeated(512); 64]);
        let verdict = is_element_of_reality(&ens, 0, &RealityConfig::default()).unwrap();
        assert!(verdict.is_element_of_reality);
        assert_eq!(verdict.growth_class, GrowthClass::Bounded);
        assert_eq!(verdict.zero_rate.plugin_rate_bits, 0.0);
        assert!(verdict.entropy_rate_bits < 0.01);
    }

    #[test]
    fn verdict_false_for_independent_identifications() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let ens =
            column_ensemble((0..64).map(|_| BitString::random(&mut rng, 64)).collect());
        let verdict = is_element_of_reality(&ens, 0, &RealityConfig::default()).unwrap();
        assert!(!verdict.is_element_of_reality);
        assert_eq!(verdict.growth_class, GrowthClass::SuperLogarithmic);
    }

    #[test]
    fn verdict_needs_eight_observers() {
        let ens = column_ensemble(vec![bs("0101"); 7]);
        assert!(matches!(
            is_element_of_reality(&ens, 0, &RealityConfig::default()),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn verdict_survives_observer_duplication() {
        let half = vec![bs("01").repeated(512); 32];
        let ens = column_ensemble(half.clone());
        let verdict = is_element_of_reality(&ens, 0, &RealityConfig::default()).unwrap();
        assert!(verdict.is_element_of_reality);

        let mut doubled = half.clone();
        doubled.extend(half);
        let ens = column_ensemble(doubled);
        let verdict = is_element_of_reality(&ens, 0, &RealityConfig::default()).unwrap();
        assert!(
            verdict.is_element_of_reality,
            "duplicating observers flipped the verdict"
        );
    }
}
