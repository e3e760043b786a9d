//! Scenario configuration: a TOML document with one table per concern.
//!
//! ```toml
//! [model]
//! kind = "barrier"          # or "ionization"
//!
//! [barrier]                 # barrier model only
//! height = 7.0              # V0, Rydberg
//! width = 2.0               # 2L, bohr
//!
//! [packet]                  # barrier model only
//! k0 = 1.5
//! sigma = 5.0
//! x0 = -40.0                # optional, default -8 sigma
//!
//! [well]                    # ionization model only
//! height = 7.0
//! a = 1.0
//! b = 3.0
//!
//! [initial]                 # ionization model only
//! kind = "ground_state"     # or "confined_sine" (needs k0)
//!
//! [grid]
//! n = 4096                  # base grid points
//! k_min = 0.5               # optional, both or neither
//! k_max = 2.6
//!
//! [sampling]
//! n_samples = 1000000
//! seed = 1
//!
//! [histogram]
//! bin_width = 0.0031        # a.u.
//! range_min = 0.0           # optional, both or neither
//! range_max = 1.0
//!
//! [output]
//! files = ["density_k", "clock_curve", "time_histogram", "time_cdf", "stats"]
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::barrier::{BarrierSpec, GaussianPacketSpec};
use crate::distribution::HistogramSpec;
use crate::ionization::{InitialStateSpec, WellSpec};

pub const DEFAULT_GRID_POINTS: usize = 4096;
pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_BIN_WIDTH: f64 = 0.0031;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("malformed config: {0}")]
    Syntax(String),
    #[error("unknown keys: {}", .0.join(", "))]
    UnknownKeys(Vec<String>),
    #[error("missing model: add a [model] table with kind = \"barrier\" or \"ionization\"")]
    MissingModel,
    #[error("missing {0}")]
    Missing(String),
    #[error("invalid {field}: {message}")]
    Invalid { field: String, message: String },
    #[error("unknown preset {0:?} (see `presets`)")]
    UnknownPreset(String),
}

fn invalid(field: &str, message: impl fmt::Display) -> ConfigError {
    ConfigError::Invalid {
        field: field.to_string(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutputKind {
    DensityK,
    ClockCurve,
    TimeHistogram,
    TimeCdf,
    Stats,
    Samples,
}

impl OutputKind {
    pub const ALL: [OutputKind; 6] = [
        OutputKind::DensityK,
        OutputKind::ClockCurve,
        OutputKind::TimeHistogram,
        OutputKind::TimeCdf,
        OutputKind::Stats,
        OutputKind::Samples,
    ];

    pub fn key(self) -> &'static str {
        match self {
            OutputKind::DensityK => "density_k",
            OutputKind::ClockCurve => "clock_curve",
            OutputKind::TimeHistogram => "time_histogram",
            OutputKind::TimeCdf => "time_cdf",
            OutputKind::Stats => "stats",
            OutputKind::Samples => "samples",
        }
    }

    pub fn file_name(self) -> &'static str {
        match self {
            OutputKind::DensityK => "density_k.csv",
            OutputKind::ClockCurve => "clock_curve.csv",
            OutputKind::TimeHistogram => "time_hist.csv",
            OutputKind::TimeCdf => "time_cdf.csv",
            OutputKind::Stats => "stats.txt",
            OutputKind::Samples => "samples.csv",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.key() == key)
    }

    /// Whether producing this output needs the Monte Carlo sample.
    pub fn needs_samples(self) -> bool {
        matches!(
            self,
            OutputKind::TimeHistogram | OutputKind::Stats | OutputKind::Samples
        )
    }
}

pub const DEFAULT_OUTPUTS: [OutputKind; 5] = [
    OutputKind::DensityK,
    OutputKind::ClockCurve,
    OutputKind::TimeHistogram,
    OutputKind::TimeCdf,
    OutputKind::Stats,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Barrier {
        barrier: BarrierSpec,
        packet: GaussianPacketSpec,
    },
    Ionization {
        well: WellSpec,
        initial: InitialStateSpec,
    },
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Barrier { .. } => "barrier",
            Model::Ionization { .. } => "ionization",
        }
    }

    /// Width of the clock region, used for the light-crossing time.
    pub fn clock_region_width(&self) -> f64 {
        match self {
            Model::Barrier { barrier, .. } => barrier.width(),
            Model::Ionization { well, .. } => well.width(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    /// Explicit `(k_min, k_max)`; otherwise the model's default support.
    pub support: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: Option<String>,
    pub model: Model,
    pub grid: GridSpec,
    pub n_samples: usize,
    pub seed: u64,
    pub bins: HistogramSpec,
    pub outputs: Vec<OutputKind>,
}

impl ScenarioConfig {
    pub fn wants(&self, kind: OutputKind) -> bool {
        self.outputs.contains(&kind)
    }
}

#[derive(Debug, Default, Deserialize)]
struct RawConfig {
    name: Option<String>,
    model: Option<RawModel>,
    barrier: Option<RawBarrier>,
    packet: Option<RawPacket>,
    well: Option<RawWell>,
    initial: Option<RawInitial>,
    grid: Option<RawGrid>,
    sampling: Option<RawSampling>,
    histogram: Option<RawHistogram>,
    output: Option<RawOutput>,
}

#[derive(Debug, Deserialize)]
struct RawModel {
    kind: Option<String>,
}

#[derive(Debug, Deserialize)]
struct RawBarrier {
    height: Option<f64>,
    width: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct RawPacket {
    k0: Option<f64>,
    sigma: Option<f64>,
    x0: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct RawWell {
    height: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct RawInitial {
    kind: Option<String>,
    k0: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct RawGrid {
    n: Option<i64>,
    k_min: Option<f64>,
    k_max: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct RawSampling {
    n_samples: Option<i64>,
    seed: Option<i64>,
}

#[derive(Debug, Deserialize)]
struct RawHistogram {
    bin_width: Option<f64>,
    range_min: Option<f64>,
    range_max: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct RawOutput {
    files: Option<Vec<String>>,
}

const SCHEMA: &[(&str, &[&str])] = &[
    ("model", &["kind"]),
    ("barrier", &["height", "width"]),
    ("packet", &["k0", "sigma", "x0"]),
    ("well", &["height", "a", "b"]),
    ("initial", &["kind", "k0"]),
    ("grid", &["n", "k_min", "k_max"]),
    ("sampling", &["n_samples", "seed"]),
    ("histogram", &["bin_width", "range_min", "range_max"]),
    ("output", &["files"]),
];

fn unknown_keys(doc: &toml::Table) -> Vec<String> {
    let mut unknown = Vec::new();
    for (key, value) in doc {
        if key == "name" {
            continue;
        }
        match SCHEMA.iter().find(|(t, _)| t == key) {
            Some((_, fields)) => match value.as_table() {
                Some(table) => unknown.extend(
                    table
                        .keys()
                        .filter(|k| !fields.contains(&k.as_str()))
                        .map(|k| format!("{key}.{k}")),
                ),
                None => unknown.push(key.clone()),
            },
            None => unknown.push(key.clone()),
        }
    }
    unknown
}

fn required(value: Option<f64>, field: &str) -> Result<f64, ConfigError> {
    value.ok_or_else(|| ConfigError::Missing(field.to_string()))
}

fn pair(lo: Option<f64>, hi: Option<f64>, field: &str) -> Result<Option<(f64, f64)>, ConfigError> {
    match (lo, hi) {
        (None, None) => Ok(None),
        (Some(lo), Some(hi)) if hi > lo && lo.is_finite() && hi.is_finite() => Ok(Some((lo, hi))),
        (Some(lo), Some(hi)) => Err(invalid(field, format!("need min < max, got [{lo}, {hi}]"))),
        _ => Err(invalid(field, "give both ends or neither")),
    }
}

/// Parses and fully validates a scenario document.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let doc: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| ConfigError::Syntax(e.to_string()))?;
    let unknown = unknown_keys(&doc);
    if !unknown.is_empty() {
        return Err(ConfigError::UnknownKeys(unknown));
    }
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
    let kind = raw
        .model
        .and_then(|m| m.kind)
        .ok_or(ConfigError::MissingModel)?;

    let model = match kind.as_str() {
        "barrier" => {
            for (present, table) in [
                (raw.well.is_some(), "well"),
                (raw.initial.is_some(), "initial"),
            ] {
                if present {
                    return Err(invalid(table, "not used by the barrier model"));
                }
            }
            let b = raw
                .barrier
                .ok_or_else(|| ConfigError::Missing("[barrier] table".into()))?;
            let p = raw
                .packet
                .ok_or_else(|| ConfigError::Missing("[packet] table".into()))?;
            let barrier = BarrierSpec::with_width(
                required(b.height, "barrier.height")?,
                required(b.width, "barrier.width")?,
            )
            .map_err(|e| invalid("barrier", e))?;
            let k0 = required(p.k0, "packet.k0")?;
            let sigma = required(p.sigma, "packet.sigma")?;
            let packet = match p.x0 {
                Some(x0) => GaussianPacketSpec::new(k0, sigma, x0),
                None => GaussianPacketSpec::standard(k0, sigma),
            }
            .map_err(|e| invalid("packet", e))?;
            Model::Barrier { barrier, packet }
        }
        "ionization" => {
            for (present, table) in [
                (raw.barrier.is_some(), "barrier"),
                (raw.packet.is_some(), "packet"),
            ] {
                if present {
                    return Err(invalid(table, "not used by the ionization model"));
                }
            }
            let w = raw
                .well
                .ok_or_else(|| ConfigError::Missing("[well] table".into()))?;
            let well = WellSpec::new(
                required(w.height, "well.height")?,
                required(w.a, "well.a")?,
                required(w.b, "well.b")?,
            )
            .map_err(|e| invalid("well", e))?;
            let initial = match raw.initial {
                None => InitialStateSpec::GroundState,
                Some(i) => match i.kind.as_deref() {
                    None | Some("ground_state") => {
                        if i.k0.is_some() {
                            return Err(invalid(
                                "initial.k0",
                                "only used by kind = \"confined_sine\"",
                            ));
                        }
                        InitialStateSpec::GroundState
                    }
                    Some("confined_sine") => InitialStateSpec::ConfinedSine {
                        k0: required(i.k0, "initial.k0")?,
                    },
                    Some(other) => {
                        return Err(invalid(
                            "initial.kind",
                            format!("{other:?}; expected \"ground_state\" or \"confined_sine\""),
                        ))
                    }
                },
            };
            initial.resolve(&well).map_err(|e| invalid("initial", e))?;
            Model::Ionization { well, initial }
        }
        other => {
            return Err(invalid(
                "model.kind",
                format!("{other:?}; expected \"barrier\" or \"ionization\""),
            ))
        }
    };

    let grid = match raw.grid {
        None => GridSpec {
            n: DEFAULT_GRID_POINTS,
            support: None,
        },
        Some(g) => {
            let n = g.n.unwrap_or(DEFAULT_GRID_POINTS as i64);
            if !(16..=10_000_000).contains(&n) {
                return Err(invalid("grid.n", format!("{n}; must be in [16, 1e7]")));
            }
            let support = pair(g.k_min, g.k_max, "grid.k_min/k_max")?;
            if let Some((lo, _)) = support {
                if lo <= 0.0 {
                    return Err(invalid("grid.k_min", format!("{lo}; must be positive")));
                }
            }
            GridSpec {
                n: n as usize,
                support,
            }
        }
    };

    let (n_samples, seed) = match raw.sampling {
        None => (DEFAULT_SAMPLES, DEFAULT_SEED),
        Some(s) => {
            let n = s.n_samples.unwrap_or(DEFAULT_SAMPLES as i64);
            if n < 1 {
                return Err(invalid(
                    "sampling.n_samples",
                    format!("{n}; must be at least 1"),
                ));
            }
            let seed = s.seed.unwrap_or(DEFAULT_SEED as i64);
            if seed < 0 {
                return Err(invalid(
                    "sampling.seed",
                    format!("{seed}; must be non-negative"),
                ));
            }
            (n as usize, seed as u64)
        }
    };

    let bins = match raw.histogram {
        None => HistogramSpec::new(DEFAULT_BIN_WIDTH),
        Some(h) => {
            let w = h.bin_width.unwrap_or(DEFAULT_BIN_WIDTH);
            if !(w > 0.0 && w.is_finite()) {
                return Err(invalid(
                    "histogram.bin_width",
                    format!("{w}; must be positive"),
                ));
            }
            HistogramSpec {
                bin_width: w,
                range: pair(h.range_min, h.range_max, "histogram.range_min/range_max")?,
            }
        }
    };

    let outputs = match raw.output.and_then(|o| o.files) {
        None => DEFAULT_OUTPUTS.to_vec(),
        Some(files) => {
            let mut kinds = Vec::new();
            let mut bad = Vec::new();
            for f in &files {
                match OutputKind::from_key(f) {
                    Some(k) if !kinds.contains(&k) => kinds.push(k),
                    Some(_) => {}
                    None => bad.push(f.clone()),
                }
            }
            if !bad.is_empty() {
                let known: Vec<_> = OutputKind::ALL.iter().map(|k| k.key()).collect();
                return Err(invalid(
                    "output.files",
                    format!("unknown outputs {bad:?}; expected any of {known:?}"),
                ));
            }
            kinds.sort();
            kinds
        }
    };

    Ok(ScenarioConfig {
        name: raw.name,
        model,
        grid,
        n_samples,
        seed,
        bins,
        outputs,
    })
}

/// A named, built-in scenario.
#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub document: &'static str,
}

impl Preset {
    pub fn config(&self) -> ScenarioConfig {
        parse_config(self.document).expect("built-in presets are valid")
    }
}

pub const PRESETS_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig1-top",
        description: "barrier V0=7, 2L=2, packet k0=1.5, sigma=5: k densities and clock curve",
        document: r#"name = "fig1-top"
[model]
kind = "barrier"
[barrier]
height = 7.0
width = 2.0
[packet]
k0 = 1.5
sigma = 5.0
[output]
files = ["density_k", "clock_curve", "time_cdf"]
"#,
    },
    Preset {
        name: "fig1-bottom",
        description: "barrier V0=7, 2L=16, packet k0=1.5, sigma=5: k densities and clock curve",
        document: r#"name = "fig1-bottom"
[model]
kind = "barrier"
[barrier]
height = 7.0
width = 16.0
[packet]
k0 = 1.5
sigma = 5.0
[output]
files = ["density_k", "clock_curve", "time_cdf"]
"#,
    },
    Preset {
        name: "fig2-top",
        description: "barrier V0=7, 2L=2: Monte Carlo time distribution",
        document: r#"name = "fig2-top"
[model]
kind = "barrier"
[barrier]
height = 7.0
width = 2.0
[packet]
k0 = 1.5
sigma = 5.0
[sampling]
n_samples = 1000000
seed = 1
[histogram]
bin_width = 0.0031
[output]
files = ["time_histogram", "time_cdf", "stats"]
"#,
    },
    Preset {
        name: "fig2-bottom",
        description: "barrier V0=7, 2L=16: Monte Carlo time distribution",
        document: r#"name = "fig2-bottom"
[model]
kind = "barrier"
[barrier]
height = 7.0
width = 16.0
[packet]
k0 = 1.5
sigma = 5.0
[sampling]
n_samples = 1000000
seed = 1
[histogram]
bin_width = 0.0031
[output]
files = ["time_histogram", "time_cdf", "stats"]
"#,
    },
    Preset {
        name: "fig3",
        description: "ionization V0=7, a=1, b=3, ground state: rho(k) and clock curve",
        document: r#"name = "fig3"
[model]
kind = "ionization"
[well]
height = 7.0
a = 1.0
b = 3.0
[initial]
kind = "ground_state"
[output]
files = ["density_k", "clock_curve", "time_cdf"]
"#,
    },
    Preset {
        name: "fig4",
        description: "ionization V0=7, a=1, b=5, ground state: rho(k) and clock curve",
        document: r#"name = "fig4"
[model]
kind = "ionization"
[well]
height = 7.0
a = 1.0
b = 5.0
[initial]
kind = "ground_state"
[output]
files = ["density_k", "clock_curve", "time_cdf"]
"#,
    },
    Preset {
        name: "fig5-top",
        description: "ionization b-a=2: decay-time distribution, bins 0.0031 a.u.",
        document: r#"name = "fig5-top"
[model]
kind = "ionization"
[well]
height = 7.0
a = 1.0
b = 3.0
[initial]
kind = "ground_state"
[sampling]
n_samples = 1000000
seed = 1
[histogram]
bin_width = 0.0031
[output]
files = ["time_histogram", "time_cdf", "stats"]
"#,
    },
    Preset {
        name: "fig5-bottom",
        description: "ionization b-a=4: decay-time distribution, bins 40 a.u.",
        document: r#"name = "fig5-bottom"
[model]
kind = "ionization"
[well]
height = 7.0
a = 1.0
b = 5.0
[initial]
kind = "ground_state"
[sampling]
n_samples = 1000000
seed = 1
[histogram]
bin_width = 40.0
[output]
files = ["time_histogram", "time_cdf", "stats"]
"#,
    },
    Preset {
        name: "fig6-top",
        description: "ionization b-a=2: close view of small times",
        document: r#"name = "fig6-top"
[model]
kind = "ionization"
[well]
height = 7.0
a = 1.0
b = 3.0
[sampling]
n_samples = 1000000
seed = 1
[histogram]
bin_width = 0.0031
range_min = 0.0
range_max = 0.5
[output]
files = ["time_histogram", "stats"]
"#,
    },
    Preset {
        name: "fig6-bottom",
        description: "ionization b-a=2: close view of large times",
        document: r#"name = "fig6-bottom"
[model]
kind = "ionization"
[well]
height = 7.0
a = 1.0
b = 3.0
[sampling]
n_samples = 1000000
seed = 1
[histogram]
bin_width = 0.0031
range_min = 40.0
range_max = 48.0
[output]
files = ["time_histogram", "stats"]
"#,
    },
    Preset {
        name: "fig7-top",
        description: "ionization b-a=4: close view of small times",
        document: r#"name = "fig7-top"
[model]
kind = "ionization"
[well]
height = 7.0
a = 1.0
b = 5.0
[sampling]
n_samples = 1000000
seed = 1
[histogram]
bin_width = 0.0031
range_min = 0.0
range_max = 0.5
[output]
files = ["time_histogram", "stats"]
"#,
    },
    Preset {
        name: "fig7-bottom",
        description: "ionization b-a=4: close view of large times, bins 2 a.u.",
        document: r#"name = "fig7-bottom"
[model]
kind = "ionization"
[well]
height = 7.0
a = 1.0
b = 5.0
[sampling]
n_samples = 1000000
seed = 1
[histogram]
bin_width = 2.0
range_min = 16000.0
range_max = 18800.0
[output]
files = ["time_histogram", "stats"]
"#,
    },
    Preset {
        name: "fig8",
        description: "confined sine k0=pi, V0=11, a=1, b=2: many-peaked distribution",
        document: r#"name = "fig8"
[model]
kind = "ionization"
[well]
height = 11.0
a = 1.0
b = 2.0
[initial]
kind = "confined_sine"
k0 = 3.141592653589793
[grid]
n = 8192
[sampling]
n_samples = 1000000
seed = 1
[histogram]
bin_width = 0.0031
[output]
files = ["density_k", "clock_curve", "time_histogram", "time_cdf", "stats"]
"#,
    },
];

pub fn preset(name: &str) -> Result<&'static Preset, ConfigError> {
    PRESETS
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| ConfigError::UnknownPreset(name.to_string()))
}

/// Rendering of `config` as a document accepted by [`parse_config`].
pub fn to_document(config: &ScenarioConfig) -> String {
    let mut root: BTreeMap<&str, toml::Value> = BTreeMap::new();
    let table = |pairs: Vec<(&str, toml::Value)>| {
        toml::Value::Table(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    };
    let f = toml::Value::Float;
    match config.model {
        Model::Barrier { barrier, packet } => {
            root.insert("model", table(vec![("kind", "barrier".into())]));
            root.insert(
                "barrier",
                table(vec![
                    ("height", f(barrier.height())),
                    ("width", f(barrier.width())),
                ]),
            );
            root.insert(
                "packet",
                table(vec![
                    ("k0", f(packet.k0())),
                    ("sigma", f(packet.sigma())),
                    ("x0", f(packet.x0())),
                ]),
            );
        }
        Model::Ionization { well, initial } => {
            root.insert("model", table(vec![("kind", "ionization".into())]));
            root.insert(
                "well",
                table(vec![
                    ("height", f(well.height())),
                    ("a", f(well.inner_edge())),
                    ("b", f(well.outer_edge())),
                ]),
            );
            root.insert(
                "initial",
                match initial {
                    InitialStateSpec::GroundState => table(vec![("kind", "ground_state".into())]),
                    InitialStateSpec::ConfinedSine { k0 } => {
                        table(vec![("kind", "confined_sine".into()), ("k0", f(k0))])
                    }
                },
            );
        }
    }
    let mut grid = vec![("n", toml::Value::Integer(config.grid.n as i64))];
    if let Some((lo, hi)) = config.grid.support {
        grid.push(("k_min", f(lo)));
        grid.push(("k_max", f(hi)));
    }
    root.insert("grid", table(grid));
    root.insert(
        "sampling",
        table(vec![
            ("n_samples", toml::Value::Integer(config.n_samples as i64)),
            ("seed", toml::Value::Integer(config.seed as i64)),
        ]),
    );
    let mut hist = vec![("bin_width", f(config.bins.bin_width))];
    if let Some((lo, hi)) = config.bins.range {
        hist.push(("range_min", f(lo)));
        hist.push(("range_max", f(hi)));
    }
    root.insert("histogram", table(hist));
    root.insert(
        "output",
        table(vec![(
            "files",
            toml::Value::Array(config.outputs.iter().map(|o| o.key().into()).collect()),
        )]),
    );
    let mut doc = toml::Table::new();
    if let Some(name) = &config.name {
        doc.insert("name".into(), name.clone().into());
    }
    for (k, v) in root {
        doc.insert(k.to_string(), v);
    }
    toml::to_string(&doc).expect("config tables serialize")
}
