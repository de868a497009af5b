//! Observation matrices: which observer identified which system by what string.

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// A complete observation matrix. Row `i` holds observer `i`'s identification
/// string for every system; systems are addressed by index or label.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservationEnsemble {
    system_labels: Vec<String>,
    rows: Vec<Vec<BitString>>,
    observer_capacities: Option<Vec<f64>>,
}

impl ObservationEnsemble {
    /// Builds an ensemble from distinct system labels and one row per
    /// observer; every row must cover every system.
    pub fn new(system_labels: Vec<String>, rows: Vec<Vec<BitString>>) -> Result<Self> {
        if system_labels.is_empty() {
            return Err(Error::MalformedEnsemble("no systems".into()));
        }
        for (k, label) in system_labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::MalformedEnsemble(format!("empty label at index {k}")));
            }
            if system_labels[..k].contains(label) {
                return Err(Error::MalformedEnsemble(format!(
                    "duplicate system label {label:?}"
                )));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != system_labels.len() {
                return Err(Error::MalformedEnsemble(format!(
                    "observer {i} has {} entries, expected {}",
                    row.len(),
                    system_labels.len()
                )));
            }
        }
        Ok(Self {
            system_labels,
            rows,
            observer_capacities: None,
        })
    }

    /// Single-system ensemble from one column of identification strings.
    pub fn from_column(label: impl Into<String>, column: Vec<BitString>) -> Result<Self> {
        Self::new(
            vec![label.into()],
            column.into_iter().map(|s| vec![s]).collect(),
        )
    }

    pub fn num_observers(&self) -> usize {
        self.rows.len()
    }

    pub fn num_systems(&self) -> usize {
        self.system_labels.len()
    }

    pub fn system_labels(&self) -> &[String] {
        &self.system_labels
    }

    pub fn system_index(&self, label: &str) -> Option<usize> {
        self.system_labels.iter().position(|l| l == label)
    }

    /// Identification of system `system` by observer `observer`.
    /// Pre: both indices in range.
    pub fn entry(&self, observer: usize, system: usize) -> &BitString {
        &self.rows[observer][system]
    }

    /// The sequence of identifications of one system across observers, in
    /// observer order.
    pub fn column(&self, system: usize) -> Result<Vec<BitString>> {
        if system >= self.system_labels.len() {
            return Err(Error::SystemIndexOutOfRange {
                index: system,
                count: self.system_labels.len(),
            });
        }
        Ok(self.rows.iter().map(|row| row[system].clone()).collect())
    }

    /// Attaches per-observer capacity estimates (bits), one per observer.
    pub fn set_observer_capacities(&mut self, capacities: Vec<f64>) -> Result<()> {
        if capacities.len() != self.rows.len() {
            return Err(Error::MalformedEnsemble(format!(
                "{} capacities for {} observers",
                capacities.len(),
                self.rows.len()
            )));
        }
        if let Some(&bad) = capacities.iter().find(|c| !c.is_finite() || **c <= 0.0) {
            return Err(Error::InvalidCapacity { capacity_bits: bad });
        }
        self.observer_capacities = Some(capacities);
        Ok(())
    }

    pub fn observer_capacities(&self) -> Option<&[f64]> {
        self.observer_capacities.as_deref()
    }
}
