use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tunneling_times::config::{self, OutputKind, ScenarioConfig};
use tunneling_times::distribution::{from_attoseconds, to_attoseconds, HistogramSpec};
use tunneling_times::{output, run_scenario, Error};

/// Tunneling-time distributions measured by a quantum clock.
///
/// Exit status: 0 success, 2 invalid arguments / configuration / input file,
/// 3 numerical failure in a pipeline stage, 4 file-system error.
#[derive(Parser, Debug)]
#[command(name = "tunneling-times", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a scenario from a TOML file or a named preset.
    Run {
        /// Path to a config file, or a preset name (see `presets`).
        scenario: String,
        /// Override the sampling seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the number of Monte Carlo samples.
        #[arg(long)]
        samples: Option<usize>,
        /// Directory for the output files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Override the histogram bin width (a.u.).
        #[arg(long)]
        bins: Option<f64>,
        /// Also write the raw samples to samples.csv.
        #[arg(long)]
        keep_samples: bool,
        /// Print the resolved config as TOML instead of running.
        #[arg(long)]
        print_config: bool,
    },
    /// List the built-in presets.
    Presets {
        /// Print the TOML document of one preset.
        #[arg(long)]
        show: Option<String>,
    },
    /// Re-summarize a samples.csv file.
    Stats {
        samples_file: PathBuf,
        /// Histogram bin width (a.u.); defaults to the one recorded in the file.
        #[arg(long)]
        bins: Option<f64>,
    },
    /// Convert a time between atomic units and attoseconds.
    Convert {
        value: f64,
        #[arg(long, value_enum, default_value_t = Unit::Au)]
        from: Unit,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Unit {
    Au,
    As,
}

fn load(scenario: &str) -> Result<ScenarioConfig, Error> {
    let path = Path::new(scenario);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(config::parse_config(&text)?)
    } else {
        Ok(config::preset(scenario)?.config())
    }
}

fn bad_flag(field: &str, message: &str) -> Error {
    Error::Config(config::ConfigError::Invalid {
        field: field.to_string(),
        message: message.to_string(),
    })
}

fn execute(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run {
            scenario,
            seed,
            samples,
            out_dir,
            bins,
            keep_samples,
            print_config,
        } => {
            let mut cfg = load(&scenario)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(n) = samples {
                if n == 0 {
                    return Err(bad_flag("--samples", "must be at least 1"));
                }
                cfg.n_samples = n;
            }
            if let Some(w) = bins {
                if !(w > 0.0 && w.is_finite()) {
                    return Err(bad_flag("--bins", "must be positive and finite"));
                }
                cfg.bins = match cfg.bins.range {
                    Some((lo, hi)) => HistogramSpec::with_range(w, lo, hi),
                    None => HistogramSpec::new(w),
                };
            }
            if keep_samples && !cfg.wants(OutputKind::Samples) {
                cfg.outputs.push(OutputKind::Samples);
            }
            if print_config {
                print!("{}", config::to_document(&cfg));
                return Ok(());
            }
            let (result, manifest) = run_scenario(&cfg, &out_dir)?;
            if let Some(d) = &result.distribution {
                println!(
                    "mean = {:.6e} a.u. ({:.4} as), median = {:.6e} a.u., superluminal = {:.3e}",
                    d.stats.mean,
                    to_attoseconds(d.stats.mean),
                    d.stats.median,
                    result.superluminal_exact
                );
            }
            for e in &manifest.entries {
                println!(
                    "wrote {} ({} bytes, sha256 {})",
                    out_dir.join(&e.file).display(),
                    e.bytes,
                    e.sha256
                );
            }
            Ok(())
        }
        Command::Presets { show } => {
            match show {
                Some(name) => print!("{}", config::preset(&name)?.document),
                None => {
                    println!("presets (version {}):", config::PRESETS_VERSION);
                    for p in config::PRESETS {
                        println!("  {:<12} {}", p.name, p.description);
                    }
                }
            }
            Ok(())
        }
        Command::Stats { samples_file, bins } => {
            let text = std::fs::read_to_string(&samples_file).map_err(|source| Error::Io {
                path: samples_file.clone(),
                source,
            })?;
            print!("{}", output::stats_from_samples(&text, bins)?);
            Ok(())
        }
        Command::Convert { value, from } => {
            match from {
                Unit::Au => println!("{:.10e} as", to_attoseconds(value)),
                Unit::As => println!("{:.10e} a.u.", from_attoseconds(value)),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
