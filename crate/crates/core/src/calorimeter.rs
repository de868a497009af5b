//! Absorption calorimetry for a finite-memory observer.
//!
//! A molecule with a fixed memory capacity absorbs photons one at a time.
//! Each absorption acts as a measurement: a fresh record is written into
//! memory at zero heat cost. Once the next record no longer fits, stored
//! records must be erased first, and erasure is the step that costs energy:
//! the calorimeter registers a heat burst equal to the Landauer cost of the
//! erased string's estimated complexity, not of its raw length. Compressible
//! memory burns cooler than incompressible memory at the same bit count.
//!
//! An external ledger tracks physical entropy S = H + K: the Shannon term H
//! accumulates the outside observer's per-photon uncertainty, and the
//! Kolmogorov term K is the complexity estimate of the memory held inside.
//!
//! Randomness discipline: a run draws from a single ChaCha8 stream seeded by
//! the config, consuming exactly one `record_bits`-bit record per photon in
//! arrival order (none in compressible mode). Replaying that stream
//! reproduces the memory contents the trace deliberately omits.

use crate::bitstring::BitString;
use crate::complexity::dictionary_code_length;
use crate::error::{Error, Result};
use crate::observer::{ObserverSIA, RecordOutcome};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::fmt;
use std::str::FromStr;

/// Exact SI Boltzmann constant, joules per kelvin.
pub const BOLTZMANN_J_PER_K: f64 = 1.380649e-23;

/// Minimum heat released by erasing `bits` bits at temperature `T`:
/// `bits × k_B × T × ln 2`.
pub fn landauer_heat(bits: f64, temperature_kelvin: f64) -> Result<f64> {
    if temperature_kelvin <= 0.0 || !temperature_kelvin.is_finite() {
        return Err(Error::NonPositiveTemperature {
            kelvin: temperature_kelvin,
        });
    }
    if bits < 0.0 || !bits.is_finite() {
        return Err(Error::InvalidBitCount { bits });
    }
    Ok(bits * BOLTZMANN_J_PER_K * temperature_kelvin * std::f64::consts::LN_2)
}

/// Entropy, in bits, a photon's polarization presents to an observer who
/// knows only its mixedness: 0 for a pure state, 1 bit for fully mixed.
///
/// The eigenvalue pair of the polarization state is
/// `((2 - mixedness) / 2, mixedness / 2)`.
pub fn photon_entropy(mixedness: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&mixedness) || !mixedness.is_finite() {
        return Err(Error::MixednessOutOfRange { value: mixedness });
    }
    let p = mixedness / 2.0;
    let term = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    Ok(term(p) + term(1.0 - p))
}

/// One incoming photon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhotonEvent {
    pub arrival_index: usize,
    /// Metadata only; carries no information content of its own.
    pub wavelength_nm: f64,
    pub record_bits: usize,
    pub polarization_mixedness: f64,
}

impl PhotonEvent {
    pub fn new(
        arrival_index: usize,
        wavelength_nm: f64,
        record_bits: usize,
        polarization_mixedness: f64,
    ) -> Result<Self> {
        if record_bits == 0 {
            return Err(Error::InvalidConfig(
                "record_bits must be at least 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&polarization_mixedness) || !polarization_mixedness.is_finite() {
            return Err(Error::MixednessOutOfRange {
                value: polarization_mixedness,
            });
        }
        Ok(Self {
            arrival_index,
            wavelength_nm,
            record_bits,
            polarization_mixedness,
        })
    }
}

/// What to do with memory once the next record no longer fits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SaturationPolicy {
    /// Erase everything in one catastrophic burst, then record.
    EraseAll,
    /// Erase only the oldest bits needed to make room, then record.
    EraseOldest,
}

impl SaturationPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            SaturationPolicy::EraseAll => "ERASE_ALL",
            SaturationPolicy::EraseOldest => "ERASE_OLDEST",
        }
    }
}

impl fmt::Display for SaturationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SaturationPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ERASE_ALL" => Ok(SaturationPolicy::EraseAll),
            "ERASE_OLDEST" => Ok(SaturationPolicy::EraseOldest),
            other => Err(Error::InvalidConfig(format!(
                "unknown saturation policy '{other}' (expected ERASE_ALL or ERASE_OLDEST)"
            ))),
        }
    }
}

/// Content of the records written on absorption.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RecordMode {
    /// Seeded-pseudorandom records: incompressible in expectation.
    Random,
    /// All-zero records: maximally compressible, for contrast runs.
    Compressible,
}

impl RecordMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            RecordMode::Random => "RANDOM",
            RecordMode::Compressible => "COMPRESSIBLE",
        }
    }
}

impl fmt::Display for RecordMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RecordMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "RANDOM" => Ok(RecordMode::Random),
            "COMPRESSIBLE" => Ok(RecordMode::Compressible),
            other => Err(Error::InvalidConfig(format!(
                "unknown record mode '{other}' (expected RANDOM or COMPRESSIBLE)"
            ))),
        }
    }
}

/// Full experiment parameters. The default reproduces the ten-absorption
/// scenario: capacity one order of magnitude above the per-photon record.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimConfig {
    pub capacity_bits: f64,
    pub record_bits_per_photon: usize,
    pub temperature_kelvin: f64,
    pub num_photons: usize,
    pub post_saturation_policy: SaturationPolicy,
    pub seed: u64,
    pub wavelength_nm: f64,
    pub polarization_mixedness: f64,
    pub record_mode: RecordMode,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            capacity_bits: 100.0,
            record_bits_per_photon: 10,
            temperature_kelvin: 300.0,
            num_photons: 12,
            post_saturation_policy: SaturationPolicy::EraseAll,
            seed: 0,
            wavelength_nm: 308.0,
            polarization_mixedness: 1.0,
            record_mode: RecordMode::Random,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.capacity_bits.is_finite() || self.capacity_bits <= 0.0 {
            return Err(Error::InvalidCapacity {
                capacity_bits: self.capacity_bits,
            });
        }
        if self.record_bits_per_photon == 0 {
            return Err(Error::InvalidConfig(
                "record_bits_per_photon must be at least 1".into(),
            ));
        }
        if (self.record_bits_per_photon as f64) > self.capacity_bits {
            return Err(Error::RecordExceedsCapacity {
                record_bits: self.record_bits_per_photon,
                capacity_bits: self.capacity_bits,
            });
        }
        if self.temperature_kelvin <= 0.0 || !self.temperature_kelvin.is_finite() {
            return Err(Error::NonPositiveTemperature {
                kelvin: self.temperature_kelvin,
            });
        }
        if !(0.0..=1.0).contains(&self.polarization_mixedness)
            || !self.polarization_mixedness.is_finite()
        {
            return Err(Error::MixednessOutOfRange {
                value: self.polarization_mixedness,
            });
        }
        if !self.wavelength_nm.is_finite() || self.wavelength_nm <= 0.0 {
            return Err(Error::InvalidConfig(
                "wavelength_nm must be positive and finite".into(),
            ));
        }
        Ok(())
    }
}

/// Whether an absorption fit into memory or forced an erasure first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventOutcome {
    Recorded,
    HeatBurst,
}

impl fmt::Display for EventOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EventOutcome::Recorded => "RECORDED",
            EventOutcome::HeatBurst => "HEAT_BURST",
        })
    }
}

/// One calorimeter reading. Exposes burst timing and magnitude only; memory
/// contents never appear in the trace.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeatEvent {
    pub arrival_index: usize,
    pub outcome: EventOutcome,
    pub heat_joules: f64,
    pub memory_bits_after: usize,
}

/// The calorimeter's view of a whole run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HeatTrace {
    pub events: Vec<HeatEvent>,
}

impl HeatTrace {
    pub fn total_heat_joules(&self) -> f64 {
        self.events.iter().map(|e| e.heat_joules).sum()
    }

    pub fn burst_indices(&self) -> Vec<usize> {
        self.events
            .iter()
            .filter(|e| e.outcome == EventOutcome::HeatBurst)
            .map(|e| e.arrival_index)
            .collect()
    }
}

/// Physical entropy S = H + K after an event: outside uncertainty plus the
/// complexity estimate of what memory currently holds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalEntropyLedger {
    pub shannon_term_bits: f64,
    pub kolmogorov_term_bits: f64,
    pub total_bits: f64,
}

impl PhysicalEntropyLedger {
    pub fn new(shannon_term_bits: f64, kolmogorov_term_bits: f64) -> Self {
        Self {
            shannon_term_bits,
            kolmogorov_term_bits,
            total_bits: shannon_term_bits + kolmogorov_term_bits,
        }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0)
    }
}

/// Trace plus the per-event entropy ledger.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub trace: HeatTrace,
    pub ledger_series: Vec<PhysicalEntropyLedger>,
}

impl RunReport {
    pub fn final_ledger(&self) -> PhysicalEntropyLedger {
        self.ledger_series
            .last()
            .copied()
            .unwrap_or_else(PhysicalEntropyLedger::zero)
    }
}

fn fresh_record<R: Rng + ?Sized>(bits: usize, mode: RecordMode, rng: &mut R) -> BitString {
    match mode {
        RecordMode::Random => BitString::random(rng, bits),
        RecordMode::Compressible => BitString::repeat_bit(false, bits),
    }
}

fn erased_heat(erased: &BitString, temperature_kelvin: f64) -> Result<f64> {
    let estimate = dictionary_code_length(erased);
    landauer_heat(estimate.value_bits, temperature_kelvin)
}

/// Absorbs one photon: writes its record at zero heat if it fits, otherwise
/// erases per policy, charges the Landauer cost of the erased string's
/// complexity estimate, and then writes the record.
///
/// The record is drawn from `rng` before the saturation check, so every
/// photon consumes the same amount of stream regardless of outcome.
pub fn absorb<R: Rng + ?Sized>(
    observer: &ObserverSIA,
    photon: &PhotonEvent,
    config: &SimConfig,
    rng: &mut R,
) -> Result<(ObserverSIA, HeatEvent)> {
    if (photon.record_bits as f64) > config.capacity_bits
        || (photon.record_bits as f64) > observer.capacity_bits()
    {
        return Err(Error::RecordExceedsCapacity {
            record_bits: photon.record_bits,
            capacity_bits: config.capacity_bits.min(observer.capacity_bits()),
        });
    }
    let record = fresh_record(photon.record_bits, config.record_mode, rng);

    match observer.record(&record) {
        RecordOutcome::Recorded(updated) => {
            let event = HeatEvent {
                arrival_index: photon.arrival_index,
                outcome: EventOutcome::Recorded,
                heat_joules: 0.0,
                memory_bits_after: updated.recorded_bits(),
            };
            Ok((updated, event))
        }
        RecordOutcome::Saturated(_) => {
            let (erased, survivor) = match config.post_saturation_policy {
                SaturationPolicy::EraseAll => {
                    (observer.memory().clone(), observer.with_memory_erased())
                }
                SaturationPolicy::EraseOldest => {
                    let overflow = observer.recorded_bits() as f64 + photon.record_bits as f64
                        - observer.capacity_bits();
                    let drop = (overflow.ceil() as usize).min(observer.recorded_bits());
                    (observer.memory().prefix(drop), observer.with_memory_from(drop))
                }
            };
            let heat_joules = erased_heat(&erased, config.temperature_kelvin)?;
            let updated = match survivor.record(&record) {
                RecordOutcome::Recorded(updated) => updated,
                // The erasure freed at least record_bits of room.
                RecordOutcome::Saturated(_) => unreachable!("record fits after erasure"),
            };
            let event = HeatEvent {
                arrival_index: photon.arrival_index,
                outcome: EventOutcome::HeatBurst,
                heat_joules,
                memory_bits_after: updated.recorded_bits(),
            };
            Ok((updated, event))
        }
    }
}

/// Streams `num_photons` absorptions through a fresh observer, returning the
/// heat trace and the entropy ledger after every event.
pub fn run_experiment(config: &SimConfig) -> Result<RunReport> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut observer = ObserverSIA::new("fullerene", config.capacity_bits)?;
    let mut trace = HeatTrace::default();
    let mut ledger_series = Vec::with_capacity(config.num_photons);
    let mut shannon_bits = 0.0;

    for arrival in 1..=config.num_photons {
        let photon = PhotonEvent::new(
            arrival,
            config.wavelength_nm,
            config.record_bits_per_photon,
            config.polarization_mixedness,
        )?;
        let (updated, event) = absorb(&observer, &photon, config, &mut rng)?;
        observer = updated;
        shannon_bits += photon_entropy(photon.polarization_mixedness)?;
        let kolmogorov_bits = dictionary_code_length(observer.memory()).value_bits;
        ledger_series.push(PhysicalEntropyLedger::new(shannon_bits, kolmogorov_bits));
        trace.events.push(event);
    }

    Ok(RunReport {
        trace,
        ledger_series,
    })
}
