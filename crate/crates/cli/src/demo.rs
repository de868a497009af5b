//! Built-in demonstration: a positive control that qualifies as an element
//! of reality, a negative control that does not, and the ten-photon
//! calorimeter scenario. Everything is a pure function of the seed.

use crate::io;

use obskit::bitstring::BitString;
use obskit::calorimeter::{self, EventOutcome, SimConfig};
use obskit::complexity::Estimator;
use obskit::ensemble::ObservationEnsemble;
use obskit::reality::{self, RealityConfig};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::fs;
use std::path::Path;

const OBSERVERS: usize = 64;

pub fn positive_control() -> ObservationEnsemble {
    let shared = BitString::from_text("01").expect("literal").repeated(512);
    ObservationEnsemble::from_column("positive", vec![shared; OBSERVERS]).expect("valid control")
}

pub fn negative_control(seed: u64) -> ObservationEnsemble {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let column = (0..OBSERVERS)
        .map(|_| BitString::random(&mut rng, 64))
        .collect();
    ObservationEnsemble::from_column("negative", column).expect("valid control")
}

fn control_row(
    control: &str,
    ensemble: &ObservationEnsemble,
    estimator: Estimator,
) -> Result<(String, String), String> {
    let config = RealityConfig {
        estimator,
        ..RealityConfig::default()
    };
    let verdict =
        reality::is_element_of_reality(ensemble, 0, &config).map_err(|e| e.to_string())?;
    let tail_curve =
        reality::build_curve(ensemble, 0, Estimator::Lz76NormalizedBits).map_err(|e| e.to_string())?;
    let tail = reality::brudno_ratio(&tail_curve).map_err(|e| e.to_string())?.tail_estimate;
    let row = format!(
        "{control},{},{},{},{},{},{}\n",
        verdict.system_label,
        verdict.estimator,
        verdict.is_element_of_reality,
        io::format_bits(verdict.entropy_rate_bits),
        verdict.growth_class,
        io::format_bits(tail),
    );
    let summary = format!(
        "{control} control: is_element_of_reality={} (growth {}, rate {} bits/step, Brudno tail {} bits/observer)",
        verdict.is_element_of_reality,
        verdict.growth_class,
        io::format_bits(verdict.entropy_rate_bits),
        io::format_bits(tail),
    );
    Ok((row, summary))
}

pub fn run(seed: u64, out_dir: &Path) -> Result<String, String> {
    fs::create_dir_all(out_dir)
        .map_err(|e| format!("cannot create {}: {e}", out_dir.display()))?;
    let write = |name: &str, content: &str| -> Result<(), String> {
        let path = out_dir.join(name);
        fs::write(&path, content).map_err(|e| format!("cannot write {}: {e}", path.display()))
    };

    let mut summary = Vec::new();

    let positive = positive_control();
    let negative = negative_control(seed);
    write("positive_ensemble.csv", &io::write_ensemble_csv(&positive))?;
    write("negative_ensemble.csv", &io::write_ensemble_csv(&negative))?;

    let mut controls = String::from(
        "control,system_label,estimator,is_element_of_reality,entropy_rate_bits,growth_class,brudno_tail_bits\n",
    );
    let (row, line) = control_row("positive", &positive, Estimator::Lz76Phrases)?;
    controls.push_str(&row);
    summary.push(line);
    let (row, line) = control_row("negative", &negative, Estimator::Lz76NormalizedBits)?;
    controls.push_str(&row);
    summary.push(line);
    write("reality_controls.csv", &controls)?;

    let sim = SimConfig {
        seed,
        ..SimConfig::default()
    };
    let report = calorimeter::run_experiment(&sim).map_err(|e| e.to_string())?;
    write("calorimeter_trace.csv", &io::render_trace_csv(&report))?;
    write("calorimeter_config.txt", &io::render_calorimeter_config(&sim))?;
    write("demo_config.txt", &format!("seed={seed}\n"))?;

    let burst = report
        .trace
        .events
        .iter()
        .find(|e| e.outcome == EventOutcome::HeatBurst)
        .expect("default scenario saturates");
    summary.push(format!(
        "calorimeter: {} photons, first heat burst at photon {}, heat {} J",
        sim.num_photons,
        burst.arrival_index,
        io::format_heat(burst.heat_joules),
    ));
    summary.push(format!("wrote 6 files to {}", out_dir.display()));
    Ok(summary.join("\n"))
}
