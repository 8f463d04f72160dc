//! Output sinks: tabular files in CSV or JSON, JSON summaries, and the run
//! manifest that lists everything a command wrote.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// A named invariant evaluated after a run.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Collects invariant checks for one command.
#[derive(Debug, Default)]
pub struct Checks {
    items: Vec<Check>,
}

impl Checks {
    pub fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.items.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records `|value − target| ≤ tol`.
    pub fn near(&mut self, name: impl Into<String>, value: f64, target: f64, tol: f64) {
        let err = (value - target).abs();
        self.record(name, err <= tol, format!("|{value} - {target}| = {err:e} (tolerance {tol:e})"));
    }

    /// Records `lo ≤ value ≤ hi`.
    pub fn within(&mut self, name: impl Into<String>, value: f64, lo: f64, hi: f64) {
        self.record(name, (lo..=hi).contains(&value), format!("{value} in [{lo}, {hi}]"));
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.items.iter().filter(|c| !c.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|c| c.passed)
    }
}

/// Writes files into one output directory and remembers their names.
pub struct Sink {
    dir: PathBuf,
    format: Format,
    outputs: Vec<String>,
}

impl Sink {
    pub fn new(dir: &Path, format: Format) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating output directory {}", dir.display()))?;
        Ok(Sink {
            dir: dir.to_path_buf(),
            format,
            outputs: Vec::new(),
        })
    }

    /// Writes `rows` as `<stem>.csv` or `<stem>.json` depending on the format.
    pub fn table<T: Serialize>(&mut self, stem: &str, rows: &[T]) -> Result<()> {
        let name = format!("{stem}.{}", self.format.extension());
        for row in rows {
            ensure_finite(&name, &serde_json::to_value(row)?)?;
        }
        let path = self.dir.join(&name);
        match self.format {
            Format::Csv => {
                let mut w = csv::Writer::from_path(&path).with_context(|| format!("creating {}", path.display()))?;
                for row in rows {
                    w.serialize(row)?;
                }
                w.flush()?;
            }
            Format::Json => write_json(&path, &rows)?,
        }
        self.outputs.push(name);
        Ok(())
    }

    /// Writes a JSON document tagged with the manifest that produced it.
    pub fn document<T: Serialize>(&mut self, name: &str, body: &T) -> Result<()> {
        let mut value = serde_json::to_value(body)?;
        ensure_finite(name, &value)?;
        if let Value::Object(map) = &mut value {
            map.insert("manifest".into(), Value::String(MANIFEST_NAME.into()));
        }
        write_json(&self.dir.join(name), &value)?;
        self.outputs.push(name.to_string());
        Ok(())
    }

    /// Writes `manifest.json` and returns its path.
    pub fn finish(self, command: &str, parameters: Value, max_deviation: Option<f64>, checks: &Checks) -> Result<PathBuf> {
        let manifest = json!({
            "command": command,
            "parameters": parameters,
            "version": catsim::VERSION,
            "cli_version": env!("CARGO_PKG_VERSION"),
            "timestamp": chrono::Utc::now().to_rfc3339(),
            "outputs": self.outputs,
            "max_deviation": max_deviation,
            "checks": checks.items,
            "passed": checks.all_passed(),
        });
        if let Some(d) = max_deviation {
            if !d.is_finite() {
                bail!("non-finite max deviation {d}");
            }
        }
        let path = self.dir.join(MANIFEST_NAME);
        write_json(&path, &manifest)?;
        Ok(path)
    }
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// serde_json maps NaN and infinities to `null`; every number we emit must be finite.
fn ensure_finite(name: &str, value: &Value) -> Result<()> {
    match value {
        Value::Null => bail!("non-finite value in {name}"),
        Value::Array(items) => items.iter().try_for_each(|v| ensure_finite(name, v)),
        Value::Object(map) => map.values().try_for_each(|v| ensure_finite(name, v)),
        _ => Ok(()),
    }
}
