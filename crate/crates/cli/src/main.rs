//! Command-line front end for the bounded-observer toolkit.
//!
//! Outputs are plain CSV on stdout (or files under `demo --out-dir`) and are
//! byte-deterministic given the same inputs and seed.

mod demo;
mod io;

use clap::{Parser, Subcommand};
use obskit::complexity::{self, Estimator};
use obskit::entropy;
use obskit::reality::{self, RealityConfig};

use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "obskit",
    version,
    about = "Complexity, entropy-rate, and calorimetry analyses for bounded observers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the complexity of one bit string read from a text file.
    Complexity {
        /// File of '0'/'1' characters; whitespace is ignored.
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// LZ76_PHRASES, LZ76_NORMALIZED_BITS, or DICTIONARY_CODE_LENGTH.
        #[arg(long, default_value = "LZ76_PHRASES")]
        estimator: Estimator,
    },
    /// Estimate entropy rates for every system in an ensemble CSV.
    Entropy {
        /// CSV with header observer_index,system_label,bits.
        #[arg(long, value_name = "FILE")]
        ensemble: PathBuf,
        /// Largest block order for the plug-in estimator.
        #[arg(long = "max-block", default_value_t = entropy::DEFAULT_MAX_BLOCK)]
        max_block: usize,
    },
    /// Decide element-of-reality verdicts for every system in an ensemble.
    Reality {
        /// CSV with header observer_index,system_label,bits.
        #[arg(long, value_name = "FILE")]
        ensemble: PathBuf,
        /// Zero-rate tolerance in bits per step.
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
        /// Estimator for the concatenation curve.
        #[arg(long, default_value = "LZ76_PHRASES")]
        estimator: Estimator,
    },
    /// Run the photon-absorption experiment described by a key=value config.
    Calorimeter {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
    },
    /// Run the built-in controls and the ten-photon calorimeter scenario.
    Demo {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for the generated CSVs (created if missing).
        #[arg(long = "out-dir", default_value = "obskit-demo")]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Complexity { input, estimator } => {
            let bits = io::read_bit_file(&input)?;
            let estimate = complexity::estimate(&bits, estimator).map_err(|e| e.to_string())?;
            println!("estimator,input_bits,value_bits");
            println!(
                "{},{},{}",
                estimate.estimator,
                estimate.input_length,
                io::format_bits(estimate.value_bits)
            );
            Ok(())
        }
        Command::Entropy {
            ensemble,
            max_block,
        } => {
            let ensemble = io::read_ensemble(&ensemble)?;
            println!("system_label,max_block,plugin_rate_bits,lz_rate_bits");
            for (index, label) in ensemble.system_labels().iter().enumerate() {
                let column = ensemble.column(index).map_err(|e| e.to_string())?;
                let plugin = entropy::entropy_rate_plugin(&column, max_block)
                    .map_err(|e| format!("system {label:?}: {e}"))?;
                let lz = entropy::entropy_rate_lz(&column)
                    .map_err(|e| format!("system {label:?}: {e}"))?;
                println!(
                    "{label},{max_block},{},{}",
                    io::format_bits(plugin.rate_bits),
                    io::format_bits(lz)
                );
            }
            Ok(())
        }
        Command::Reality {
            ensemble,
            tol,
            estimator,
        } => {
            let ensemble = io::read_ensemble(&ensemble)?;
            let config = RealityConfig {
                zero_rate_tol: tol,
                estimator,
                ..RealityConfig::default()
            };
            println!(
                "system_label,estimator,is_element_of_reality,entropy_rate_bits,plugin_rate_bits,lz_rate_bits,growth_class"
            );
            for (index, label) in ensemble.system_labels().iter().enumerate() {
                let verdict = reality::is_element_of_reality(&ensemble, index, &config)
                    .map_err(|e| format!("system {label:?}: {e}"))?;
                println!(
                    "{label},{},{},{},{},{},{}",
                    verdict.estimator,
                    verdict.is_element_of_reality,
                    io::format_bits(verdict.entropy_rate_bits),
                    io::format_bits(verdict.zero_rate.plugin_rate_bits),
                    io::format_bits(verdict.zero_rate.lz_rate_bits),
                    verdict.growth_class
                );
            }
            Ok(())
        }
        Command::Calorimeter { config } => {
            let text = io::read_to_string(&config)?;
            let sim = io::parse_calorimeter_config(&text, &config.display().to_string())?;
            let report = obskit::calorimeter::run_experiment(&sim).map_err(|e| e.to_string())?;
            print!("{}", io::render_trace_csv(&report));
            Ok(())
        }
        Command::Demo { seed, out_dir } => {
            let summary = demo::run(seed, &out_dir)?;
            println!("{summary}");
            Ok(())
        }
    }
}
