//! Text outputs: comma-separated tables behind a `#` comment header, and a
//! `key = value` stats file. Floats use 17 significant digits so every value
//! reads back bit-exactly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::distribution::{
    cdf_of_times, summarize, to_attoseconds, HistogramSpec, LightCone, SummaryStats,
    ATTOSECONDS_PER_AU, RNG_ALGORITHM,
};
use crate::run::ScenarioResult;
use crate::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Points in the written CDF table.
const CDF_POINTS: usize = 2001;

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn header(result: &ScenarioResult, what: &str) -> String {
    let c = &result.config;
    let mut h = String::new();
    let _ = writeln!(h, "# tunneling-times {VERSION}");
    let _ = writeln!(h, "# {what}");
    if let Some(name) = &c.name {
        let _ = writeln!(h, "# scenario: {name}");
    }
    let _ = writeln!(h, "# model: {}", c.model.kind());
    let _ = writeln!(h, "# seed: {}", c.seed);
    let _ = writeln!(
        h,
        "# units: Rydberg atomic units (hbar = 2m = 1); k in 1/bohr, tau in a.u. of {ATTOSECONDS_PER_AU} as"
    );
    h
}

pub fn density_csv(result: &ScenarioResult) -> String {
    let mut s = header(
        result,
        "transmitted / overlap wave-number density rho(k), unit norm",
    );
    s.push_str("k,rho\n");
    for (k, r) in result.rho.grid().iter().zip(result.rho.density()) {
        let _ = writeln!(s, "{},{}", num(*k), num(*r));
    }
    s
}

pub fn clock_csv(result: &ScenarioResult) -> String {
    let mut s = header(result, "clock time t_c(k) on the density grid");
    s.push_str("k,tau_au,tau_as\n");
    let (grid, taus) = result
        .clock
        .table()
        .expect("clock curve is tabulated by compute");
    for (k, t) in grid.iter().zip(taus) {
        let _ = writeln!(s, "{},{},{}", num(*k), num(*t), num(to_attoseconds(*t)));
    }
    s
}

pub fn histogram_csv(result: &ScenarioResult) -> String {
    let dist = result
        .distribution
        .as_ref()
        .expect("histogram needs samples");
    let h = &dist.stats.histogram;
    let mut s = header(result, "Monte Carlo histogram of clock readings");
    let _ = writeln!(s, "# n_samples: {}", dist.n_samples);
    let _ = writeln!(s, "# bin_width: {}", num(h.bin_width()));
    let _ = writeln!(s, "# underflow: {}", h.underflow);
    let _ = writeln!(s, "# overflow: {}", h.overflow);
    s.push_str("bin_lo,bin_hi,count,freq,bin_lo_as,bin_hi_as\n");
    let n = dist.n_samples as f64;
    for (i, &c) in h.counts.iter().enumerate() {
        let (lo, hi) = (h.edges[i], h.edges[i + 1]);
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            num(lo),
            num(hi),
            c,
            num(c as f64 / n),
            num(to_attoseconds(lo)),
            num(to_attoseconds(hi))
        );
    }
    s
}

/// Time nodes for the CDF table: uniform in `tau` between the clock
/// extremes, merged with `t_c` at uniform quantiles of `rho`, so both the
/// bulk and the long tails are resolved.
fn cdf_nodes(result: &ScenarioResult) -> Vec<f64> {
    let (_, taus) = result
        .clock
        .table()
        .expect("clock curve is tabulated by compute");
    let lo = taus.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = taus.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let half = CDF_POINTS / 2;
    let mut nodes: Vec<f64> = (0..=half)
        .map(|i| lo + (hi - lo) * i as f64 / half as f64)
        .collect();
    let inv = crate::distribution::InverseCdf::new(&result.rho);
    nodes.extend((1..half).map(|i| result.clock.eval(inv.quantile(i as f64 / half as f64))));
    nodes.retain(|t| t.is_finite());
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    nodes
}

pub fn cdf_csv(result: &ScenarioResult) -> Result<String, crate::distribution::DistributionError> {
    let mut s = header(
        result,
        "exact CDF of clock readings, F(tau) = P(t_c(K) <= tau)",
    );
    s.push_str("tau,F,tau_as\n");
    for t in cdf_nodes(result) {
        let f = cdf_of_times(t, &result.rho, &result.clock)?;
        let _ = writeln!(s, "{},{},{}", num(t), num(f), num(to_attoseconds(t)));
    }
    Ok(s)
}

fn push_stats(s: &mut String, stats: &SummaryStats) {
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(s, "{k} = {v}");
    };
    kv("n", stats.n.to_string());
    for (key, v) in [
        ("mean", stats.mean),
        ("median", stats.median),
        ("q1", stats.q1),
        ("q3", stats.q3),
        ("min", stats.min),
        ("max", stats.max),
    ] {
        kv(key, num(v));
        kv(&format!("{key}_as"), num(to_attoseconds(v)));
    }
    kv("std_dev", num(stats.std_dev));
    kv("std_error", num(stats.std_error));
    for &(p, v) in &stats.percentiles {
        kv(&format!("p{:02}", p as u32), num(v));
        kv(&format!("p{:02}_as", p as u32), num(to_attoseconds(v)));
    }
    kv("light_time", num(stats.light_time));
    kv("light_time_as", num(to_attoseconds(stats.light_time)));
    kv("superluminal_prob", num(stats.superluminal_prob));
    kv("histogram_bins", stats.histogram.counts.len().to_string());
    kv("histogram_bin_width", num(stats.histogram.bin_width()));
    kv("histogram_underflow", stats.histogram.underflow.to_string());
    kv("histogram_overflow", stats.histogram.overflow.to_string());
}

pub fn stats_text(result: &ScenarioResult) -> String {
    let mut s = header(
        result,
        "summary statistics (times in a.u., *_as in attoseconds)",
    );
    let dist = result.distribution.as_ref().expect("stats need samples");
    let _ = writeln!(s, "version = {VERSION}");
    if let Some(name) = &result.config.name {
        let _ = writeln!(s, "scenario = {name}");
    }
    let _ = writeln!(s, "model = {}", result.config.model.kind());
    let _ = writeln!(s, "seed = {}", dist.seed);
    let _ = writeln!(s, "rng = {}", dist.rng_algorithm);
    push_stats(&mut s, &dist.stats);
    let _ = writeln!(
        s,
        "superluminal_prob_exact = {}",
        num(result.superluminal_exact)
    );
    let _ = writeln!(s, "mean_exact = {}", num(result.mean_exact));
    let _ = writeln!(
        s,
        "mean_exact_as = {}",
        num(to_attoseconds(result.mean_exact))
    );
    let _ = writeln!(s, "barrier_width = {}", num(result.light.barrier_width()));
    let _ = writeln!(s, "c_ryd = {}", num(result.light.c_ryd()));
    for (k, v) in &result.metadata {
        let _ = writeln!(s, "{k} = {v}");
    }
    s
}

pub fn samples_csv(result: &ScenarioResult) -> String {
    let dist = result
        .distribution
        .as_ref()
        .expect("samples need the Monte Carlo stage");
    let mut s = header(result, "Monte Carlo clock readings, one per line");
    let _ = writeln!(s, "# rng: {}", dist.rng_algorithm);
    let _ = writeln!(s, "# barrier_width: {}", num(result.light.barrier_width()));
    let _ = writeln!(s, "# bin_width: {}", num(result.config.bins.bin_width));
    s.push_str("tau\n");
    for t in &dist.samples {
        let _ = writeln!(s, "{}", num(*t));
    }
    s
}

/// Re-summarizes a samples file written by [`samples_csv`]. `bin_width`
/// overrides the width stored in the header.
pub fn stats_from_samples(text: &str, bin_width: Option<f64>) -> Result<String, Error> {
    let (comments, table) = read_table(text)?;
    let field = |key: &str| -> Option<f64> {
        comments.iter().find_map(|c| {
            c.strip_prefix(&format!("{key}: "))
                .and_then(|v| v.trim().parse().ok())
        })
    };
    let width = field("barrier_width")
        .ok_or_else(|| Error::Parse("samples file lacks a '# barrier_width:' header".into()))?;
    let bins = bin_width
        .or_else(|| field("bin_width"))
        .unwrap_or(crate::config::DEFAULT_BIN_WIDTH);
    let samples = table.column("tau")?;
    let stats = summarize(&samples, LightCone::new(width), &HistogramSpec::new(bins))
        .map_err(|e| Error::Parse(e.to_string()))?;
    let mut s = format!(
        "# tunneling-times {VERSION}\n# summary of {} samples\nversion = {VERSION}\n",
        samples.len()
    );
    push_stats(&mut s, &stats);
    Ok(s)
}

/// A parsed comma-separated table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Result<Vec<f64>, Error> {
        let j = self
            .columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::Parse(format!("no column {name:?}")))?;
        Ok(self.rows.iter().map(|r| r[j]).collect())
    }
}

/// Splits a written table into its comment lines (without `# `) and data.
pub fn read_table(text: &str) -> Result<(Vec<String>, Table), Error> {
    let mut comments = Vec::new();
    let mut lines = text.lines().peekable();
    while let Some(line) = lines.peek() {
        match line.strip_prefix('#') {
            Some(c) => {
                comments.push(c.trim_start().to_string());
                lines.next();
            }
            None => break,
        }
    }
    let columns: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::Parse("table has no column header".into()))?
        .split(',')
        .map(|c| c.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let row: Result<Vec<f64>, _> = line.split(',').map(|v| v.trim().parse::<f64>()).collect();
        let row = row.map_err(|e| Error::Parse(format!("data line {}: {e}", i + 1)))?;
        if row.len() != columns.len() {
            return Err(Error::Parse(format!(
                "data line {} has {} fields, expected {}",
                i + 1,
                row.len(),
                columns.len()
            )));
        }
        rows.push(row);
    }
    Ok((comments, Table { columns, rows }))
}

/// Parses a `key = value` stats file, skipping comments.
pub fn read_stats(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub file: String,
    pub bytes: usize,
    pub sha256: String,
}

/// Written files with their SHA-256 checksums.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

pub const MANIFEST_FILE: &str = "manifest.txt";

impl Manifest {
    pub(crate) fn write(&mut self, dir: &Path, name: &str, text: &str) -> Result<(), Error> {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        self.entries.push(ManifestEntry {
            file: name.to_string(),
            bytes: text.len(),
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        });
        Ok(())
    }

    pub(crate) fn finish(&self, dir: &Path) -> Result<PathBuf, Error> {
        let path = dir.join(MANIFEST_FILE);
        std::fs::write(&path, self.render()).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }

    pub fn render(&self) -> String {
        let mut s = format!("# tunneling-times {VERSION}\n# sha256 bytes file\n");
        for e in &self.entries {
            let _ = writeln!(s, "{} {} {}", e.sha256, e.bytes, e.file);
        }
        s
    }
}

/// SHA-256 of a file on disk, hex encoded.
pub fn file_sha256(path: &Path) -> Result<String, Error> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Describes the generator for documentation and headers.
pub fn rng_description() -> &'static str {
    RNG_ALGORITHM
}
