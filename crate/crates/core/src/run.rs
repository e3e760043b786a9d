//! Scenario pipeline: density, clock curve, distribution, statistics.

use std::fmt;
use std::path::Path;

use crate::barrier::{self, BarrierError};
use crate::config::{Model, OutputKind, ScenarioConfig};
use crate::distribution::{
    cdf_of_times, mean_time, sample_times, ClockCurve, DistributionError, LightCone,
    SpectralDensity, TimeDistribution,
};
use crate::ionization::{self, InitialState, IonizationError};
use crate::numerics::{Interval, NumericsError};
use crate::output::{self, Manifest};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Setup,
    Density,
    ClockCurve,
    Distribution,
    Output,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Setup => "setup",
            Stage::Density => "density",
            Stage::ClockCurve => "clock curve",
            Stage::Distribution => "distribution",
            Stage::Output => "output",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ComputeError {
    #[error(transparent)]
    Barrier(#[from] BarrierError),
    #[error(transparent)]
    Ionization(#[from] IonizationError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

fn at<T, E: Into<ComputeError>>(stage: Stage, r: Result<T, E>) -> Result<T, crate::Error> {
    r.map_err(|e| crate::Error::Pipeline {
        stage,
        source: e.into(),
    })
}

/// Everything computed for one scenario.
#[derive(Debug, Clone)]
pub struct ScenarioResult {
    pub config: ScenarioConfig,
    pub rho: SpectralDensity,
    pub clock: ClockCurve,
    pub light: LightCone,
    /// `int t_c(k) rho(k) dk`.
    pub mean_exact: f64,
    /// `P(tau < light time)` from the CDF.
    pub superluminal_exact: f64,
    /// Present when an output needs the Monte Carlo sample.
    pub distribution: Option<TimeDistribution>,
    /// Model-specific `key = value` facts for the stats file.
    pub metadata: Vec<(String, String)>,
}

fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Runs the pipeline without writing anything.
pub fn compute(config: &ScenarioConfig) -> Result<ScenarioResult, crate::Error> {
    let mut metadata = Vec::new();
    let explicit = match config.grid.support {
        Some((lo, hi)) => Some(at(Stage::Setup, Interval::new(lo, hi))?),
        None => None,
    };
    let (rho, clock) = match config.model {
        Model::Barrier { barrier: b, packet } => {
            let support = match explicit {
                Some(s) => s,
                None => at(Stage::Density, barrier::default_support(&packet, &b))?,
            };
            let rho = at(
                Stage::Density,
                barrier::transmitted_density(&packet, &b, support, config.grid.n),
            )?;
            let clock = ClockCurve::new(
                move |k| barrier::clock_time(k, &b).unwrap_or(f64::NAN),
                crate::numerics::DEFAULT_DERIVATIVE_SCALE,
            );
            metadata.push(("transmitted_mode_k".into(), fmt_num(rho.mode())));
            metadata.push(("barrier_height".into(), fmt_num(b.height())));
            metadata.push(("barrier_width".into(), fmt_num(b.width())));
            metadata.push(("packet_k0".into(), fmt_num(packet.k0())));
            metadata.push(("packet_sigma".into(), fmt_num(packet.sigma())));
            metadata.push(("packet_x0".into(), fmt_num(packet.x0())));
            (rho, clock)
        }
        Model::Ionization { well, initial } => {
            let state = at(Stage::Setup, initial.resolve(&well))?;
            let support = match explicit {
                Some(s) => s,
                None => at(Stage::Density, ionization::default_support(&state, &well))?,
            };
            let rho = at(
                Stage::Density,
                ionization::ionization_density(&well, &state, support, config.grid.n),
            )?;
            metadata.push(("well_height".into(), fmt_num(well.height())));
            metadata.push(("well_a".into(), fmt_num(well.inner_edge())));
            metadata.push(("well_b".into(), fmt_num(well.outer_edge())));
            if let InitialState::Ground(bound) = state {
                metadata.push(("bound_k0".into(), fmt_num(bound.k0())));
                metadata.push((
                    "penetration_probability".into(),
                    fmt_num(ionization::penetration_probability(&bound)),
                ));
            } else {
                metadata.push(("initial_k0".into(), fmt_num(state.k0())));
            }
            metadata.push((
                "above_barrier_weight".into(),
                fmt_num(ionization::above_barrier_weight(&rho, &well)),
            ));
            (rho, ionization::ionization_clock_curve(&well))
        }
    };
    metadata.push(("grid_points".into(), rho.len().to_string()));
    metadata.push(("support_k_min".into(), fmt_num(rho.support().lo())));
    metadata.push(("support_k_max".into(), fmt_num(rho.support().hi())));
    metadata.push(("norm_residual".into(), fmt_num(rho.norm_residual())));
    metadata.push(("truncation_loss".into(), fmt_num(rho.truncation_loss())));

    let clock = at(Stage::ClockCurve, clock.tabulate(rho.grid()))?;
    let light = LightCone::new(config.model.clock_region_width());
    let mean_exact = at(Stage::Distribution, mean_time(&rho, &clock))?;
    let superluminal_exact = at(
        Stage::Distribution,
        cdf_of_times(light.light_time(), &rho, &clock),
    )?;
    let distribution = if config.outputs.iter().any(|o| o.needs_samples()) {
        Some(at(
            Stage::Distribution,
            sample_times(
                &rho,
                &clock,
                config.n_samples,
                config.seed,
                light,
                &config.bins,
            ),
        )?)
    } else {
        None
    };
    Ok(ScenarioResult {
        config: config.clone(),
        rho,
        clock,
        light,
        mean_exact,
        superluminal_exact,
        distribution,
        metadata,
    })
}

/// Runs the pipeline and writes every requested output into `out_dir`,
/// followed by `manifest.txt`.
pub fn run_scenario(
    config: &ScenarioConfig,
    out_dir: &Path,
) -> Result<(ScenarioResult, Manifest), crate::Error> {
    let result = compute(config)?;
    let manifest = write_outputs(&result, out_dir)?;
    Ok((result, manifest))
}

pub fn write_outputs(result: &ScenarioResult, out_dir: &Path) -> Result<Manifest, crate::Error> {
    std::fs::create_dir_all(out_dir).map_err(|e| crate::Error::io(out_dir, e))?;
    let mut manifest = Manifest::default();
    for &kind in &result.config.outputs {
        let text = match kind {
            OutputKind::DensityK => output::density_csv(result),
            OutputKind::ClockCurve => output::clock_csv(result),
            OutputKind::TimeHistogram => output::histogram_csv(result),
            OutputKind::TimeCdf => at(Stage::Output, output::cdf_csv(result))?,
            OutputKind::Stats => output::stats_text(result),
            OutputKind::Samples => output::samples_csv(result),
        };
        manifest.write(out_dir, kind.file_name(), &text)?;
    }
    manifest.finish(out_dir)?;
    Ok(manifest)
}
