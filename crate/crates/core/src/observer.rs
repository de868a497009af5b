//! Finite-capacity observers and the quantum/classical verdict.
//!
//! An observer is characterized by a complexity budget `capacity_bits` and a
//! memory of recorded measurement information. The budget is always supplied
//! from outside, never computed from the observer itself. A system is quantum
//! with respect to an observer exactly when the system's complexity estimate
//! falls strictly below the observer's budget; ties are classical.

use std::fmt;

use crate::bitstring::BitString;
use crate::complexity::ComplexityEstimate;
use crate::error::{Error, Result};

/// Default multiplicative threshold for "comparable capacity" in
/// [`relative_view`]: capacities within a factor of 2 count as close.
pub const DEFAULT_CLOSENESS_FACTOR: f64 = 2.0;

/// An observer with a fixed complexity budget and recorded memory.
/// Values are immutable; [`record`](Self::record) returns a new observer.
#[derive(Clone, Debug, PartialEq)]
pub struct ObserverSIA {
    label: String,
    capacity_bits: f64,
    memory: BitString,
}

impl ObserverSIA {
    pub fn new(label: impl Into<String>, capacity_bits: f64) -> Result<Self> {
        if !capacity_bits.is_finite() || capacity_bits <= 0.0 {
            return Err(Error::InvalidCapacity { capacity_bits });
        }
        Ok(Self {
            label: label.into(),
            capacity_bits,
            memory: BitString::new(),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn capacity_bits(&self) -> f64 {
        self.capacity_bits
    }

    pub fn memory(&self) -> &BitString {
        &self.memory
    }

    /// Current memory usage; always at most `capacity_bits`.
    pub fn recorded_bits(&self) -> usize {
        self.memory.len()
    }

    /// Appends `info` to memory if it fits entirely, otherwise leaves the
    /// observer untouched. All-or-nothing: there are no partial writes, and
    /// saturation is an outcome rather than an error.
    pub fn record(&self, info: &BitString) -> RecordOutcome {
        if (self.recorded_bits() + info.len()) as f64 <= self.capacity_bits {
            let mut updated = self.clone();
            updated.memory.extend_from(info);
            RecordOutcome::Recorded(updated)
        } else {
            RecordOutcome::Saturated(self.clone())
        }
    }

    /// Observer with memory cleared; capacity and label are kept.
    pub fn with_memory_erased(&self) -> Self {
        Self {
            label: self.label.clone(),
            capacity_bits: self.capacity_bits,
            memory: BitString::new(),
        }
    }

    /// Observer keeping only the memory suffix from `start` onward.
    /// Pre: `start <= recorded_bits`.
    pub fn with_memory_from(&self, start: usize) -> Self {
        Self {
            label: self.label.clone(),
            capacity_bits: self.capacity_bits,
            memory: self.memory.suffix_from(start),
        }
    }
}

/// Result of a [`record`](ObserverSIA::record) call, carrying the observer
/// state after the call.
#[derive(Clone, Debug, PartialEq)]
pub enum RecordOutcome {
    Recorded(ObserverSIA),
    Saturated(ObserverSIA),
}

impl RecordOutcome {
    pub fn observer(&self) -> &ObserverSIA {
        match self {
            RecordOutcome::Recorded(obs) | RecordOutcome::Saturated(obs) => obs,
        }
    }

    pub fn into_observer(self) -> ObserverSIA {
        match self {
            RecordOutcome::Recorded(obs) | RecordOutcome::Saturated(obs) => obs,
        }
    }

    pub fn is_recorded(&self) -> bool {
        matches!(self, RecordOutcome::Recorded(_))
    }
}

/// The exhaustive two-way verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Quantum,
    Classical,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Quantum => "QUANTUM",
            Classification::Classical => "CLASSICAL",
        })
    }
}

/// Quantum iff the system's estimated complexity is strictly below the
/// observer's budget; equality is classical.
pub fn classify(
    system_complexity: &ComplexityEstimate,
    observer: &ObserverSIA,
) -> Classification {
    if system_complexity.value_bits < observer.capacity_bits {
        Classification::Quantum
    } else {
        Classification::Classical
    }
}

/// How one observer sees a system and a fellow observer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelativeView {
    pub system: Classification,
    pub other_observer: Classification,
}

/// The watcher's verdicts on a system and on another observer. The fellow
/// observer is quantum only when its budget is smaller by more than
/// `closeness_factor`; comparable budgets look classical to each other.
pub fn relative_view(
    watcher: &ObserverSIA,
    other: &ObserverSIA,
    system_complexity: &ComplexityEstimate,
    closeness_factor: f64,
) -> Result<RelativeView> {
    if closeness_factor <= 1.0 || !closeness_factor.is_finite() {
        return Err(Error::InvalidFactor {
            factor: closeness_factor,
        });
    }
    let other_observer = if other.capacity_bits * closeness_factor < watcher.capacity_bits {
        Classification::Quantum
    } else {
        Classification::Classical
    };
    Ok(RelativeView {
        system: classify(system_complexity, watcher),
        other_observer,
    })
}
