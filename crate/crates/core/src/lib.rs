//! Distributions of quantum-clock tunneling times.
//!
//! A clock whose hand turns only while the particle sits in a region reads a
//! definite time `t_c(k)` for each energy eigencomponent. Given the weight
//! `rho(k)` of those components in the final state, the distribution of
//! readings is the push-forward of `rho` through `t_c`. Two models supply
//! `(rho, t_c)`: a Gaussian packet transmitted through a square barrier, and
//! a bound state released by thinning the wall of its well.
//!
//! Units are Rydberg atomic units (`hbar = 2m = 1`), so energies equal `k^2`
//! and the time unit is `2 x 24.188843265857` attoseconds.

use std::path::{Path, PathBuf};

pub mod barrier;
pub mod config;
pub mod distribution;
pub mod ionization;
pub mod numerics;
pub mod output;
pub mod propagator;
pub mod run;

pub use run::{compute, run_scenario, ComputeError, ScenarioResult, Stage};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(#[from] config::ConfigError),
    #[error("{stage} stage failed: {source}")]
    Pipeline { stage: Stage, source: ComputeError },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Process exit status: 2 for bad input, 3 for a failed computation,
    /// 4 for file-system errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Parse(_) => 2,
            Error::Pipeline { .. } => 3,
            Error::Io { .. } => 4,
        }
    }
}
