//! File formats: bit-string files, ensemble CSVs, and calorimeter configs.
//!
//! All numeric output follows one formatting rule so files diff cleanly:
//! bit quantities use six decimal places, heats use six-decimal scientific
//! notation.

use obskit::bitstring::BitString;
use obskit::calorimeter::SimConfig;
use obskit::ensemble::ObservationEnsemble;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

pub const ENSEMBLE_HEADER: &str = "observer_index,system_label,bits";

pub fn format_bits(value: f64) -> String {
    format!("{value:.6}")
}

pub fn format_heat(value: f64) -> String {
    format!("{value:.6e}")
}

pub fn read_to_string(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// Reads a file of '0'/'1' characters as one bit string, ignoring all ASCII
/// whitespace.
pub fn read_bit_file(path: &Path) -> Result<BitString, String> {
    let text = read_to_string(path)?;
    let compact: String = text.chars().filter(|c| !c.is_ascii_whitespace()).collect();
    compact
        .parse()
        .map_err(|e| format!("{}: {e}", path.display()))
}

/// Parses the `observer_index,system_label,bits` schema. Every observer must
/// supply exactly one string for every system label.
pub fn read_ensemble(path: &Path) -> Result<ObservationEnsemble, String> {
    let text = read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end() == ENSEMBLE_HEADER => {}
        _ => {
            return Err(format!(
                "{}: first line must be the header '{ENSEMBLE_HEADER}'",
                path.display()
            ))
        }
    }

    let mut labels: Vec<String> = Vec::new();
    let mut observers: BTreeMap<usize, BTreeMap<String, BitString>> = BTreeMap::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.splitn(3, ',');
        let (index, label, bits) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => {
                return Err(format!(
                    "{}:{}: expected 3 comma-separated fields",
                    path.display(),
                    lineno + 1
                ))
            }
        };
        let index: usize = index.trim().parse().map_err(|_| {
            format!(
                "{}:{}: observer_index {index:?} is not an integer",
                path.display(),
                lineno + 1
            )
        })?;
        let label = label.trim().to_string();
        let bits: BitString = bits.trim().parse().map_err(|e| {
            format!("{}:{}: {e}", path.display(), lineno + 1)
        })?;
        if !labels.contains(&label) {
            labels.push(label.clone());
        }
        if observers.entry(index).or_default().insert(label.clone(), bits).is_some() {
            return Err(format!(
                "{}:{}: duplicate entry for observer {index}, system {label:?}",
                path.display(),
                lineno + 1
            ));
        }
    }

    let mut rows = Vec::with_capacity(observers.len());
    for (index, mut row) in observers {
        let mut ordered = Vec::with_capacity(labels.len());
        for label in &labels {
            match row.remove(label) {
                Some(bits) => ordered.push(bits),
                None => {
                    return Err(format!(
                        "{}: observer {index} has no entry for system {label:?}",
                        path.display()
                    ))
                }
            }
        }
        if let Some(extra) = row.into_keys().next() {
            return Err(format!(
                "{}: observer {index} names unknown system {extra:?}",
                path.display()
            ));
        }
        rows.push(ordered);
    }

    ObservationEnsemble::new(labels, rows).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn write_ensemble_csv(ensemble: &ObservationEnsemble) -> String {
    let mut out = String::from(ENSEMBLE_HEADER);
    out.push('\n');
    for observer in 0..ensemble.num_observers() {
        for (system, label) in ensemble.system_labels().iter().enumerate() {
            let bits = ensemble.entry(observer, system);
            out.push_str(&format!("{observer},{label},{bits}\n"));
        }
    }
    out
}

/// Calorimeter configs are flat `key=value` lines; `#` starts a comment and
/// every key is optional, falling back to the default scenario.
pub fn parse_calorimeter_config(text: &str, origin: &str) -> Result<SimConfig, String> {
    let mut config = SimConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{origin}:{}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |what: &str| format!("{origin}:{}: {key} {what}, got {value:?}", lineno + 1);
        match key {
            "capacity_bits" => {
                config.capacity_bits = value.parse().map_err(|_| bad("must be a number"))?
            }
            "record_bits_per_photon" => {
                config.record_bits_per_photon =
                    value.parse().map_err(|_| bad("must be an integer"))?
            }
            "temperature_kelvin" => {
                config.temperature_kelvin = value.parse().map_err(|_| bad("must be a number"))?
            }
            "num_photons" => {
                config.num_photons = value.parse().map_err(|_| bad("must be an integer"))?
            }
            "post_saturation_policy" => {
                config.post_saturation_policy =
                    value.parse().map_err(|e| format!("{origin}:{}: {e}", lineno + 1))?
            }
            "seed" => config.seed = value.parse().map_err(|_| bad("must be an integer"))?,
            "wavelength_nm" => {
                config.wavelength_nm = value.parse().map_err(|_| bad("must be a number"))?
            }
            "polarization_mixedness" => {
                config.polarization_mixedness =
                    value.parse().map_err(|_| bad("must be a number"))?
            }
            "record_mode" => {
                config.record_mode =
                    value.parse().map_err(|e| format!("{origin}:{}: {e}", lineno + 1))?
            }
            _ => return Err(format!("{origin}:{}: unknown key {key:?}", lineno + 1)),
        }
    }
    Ok(config)
}

/// Echoes a config with every default resolved; parsing this text again
/// reproduces the run exactly.
pub fn render_calorimeter_config(config: &SimConfig) -> String {
    format!(
        "capacity_bits={}\nrecord_bits_per_photon={}\ntemperature_kelvin={}\n\
         num_photons={}\npost_saturation_policy={}\nseed={}\nwavelength_nm={}\n\
         polarization_mixedness={}\nrecord_mode={}\n",
        format_bits(config.capacity_bits),
        config.record_bits_per_photon,
        format_bits(config.temperature_kelvin),
        config.num_photons,
        config.post_saturation_policy,
        config.seed,
        format_bits(config.wavelength_nm),
        format_bits(config.polarization_mixedness),
        config.record_mode,
    )
}

pub const TRACE_HEADER: &str = "arrival_index,outcome,heat_joules,memory_bits_after,S_total_bits";

pub fn render_trace_csv(report: &obskit::calorimeter::RunReport) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for (event, ledger) in report.trace.events.iter().zip(&report.ledger_series) {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            event.arrival_index,
            event.outcome,
            format_heat(event.heat_joules),
            event.memory_bits_after,
            format_bits(ledger.total_bits),
        ));
    }
    out
}
