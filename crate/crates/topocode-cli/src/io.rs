use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use topocode::auth::KeyBundle;
use topocode::labeling::{Labeling, Params};
use topocode::topcode::TopcodeMatrix;
use topocode::Graph;

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn json_file<T: DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("malformed JSON in {}", path.display()))
}

pub fn graph(path: &Path) -> Result<Graph> {
    Graph::parse_any(&read(path)?).with_context(|| format!("malformed graph in {}", path.display()))
}

pub fn labeling(path: &Path) -> Result<Labeling> {
    json_file(path)
}

pub fn matrix(path: &Path) -> Result<TopcodeMatrix> {
    TopcodeMatrix::parse_any(&read(path)?).with_context(|| format!("malformed matrix in {}", path.display()))
}

pub fn bundle(path: &Path) -> Result<KeyBundle> {
    json_file(path)
}

pub fn params(pairs: &[String]) -> Result<Params> {
    pairs
        .iter()
        .map(|p| {
            let (name, value) = p.split_once('=').ok_or_else(|| anyhow!("parameter `{p}` is not NAME=VALUE"))?;
            let value = value.trim().parse().with_context(|| format!("parameter `{p}` needs an integer value"))?;
            Ok((name.trim().to_string(), value))
        })
        .collect()
}

pub fn ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().with_context(|| format!("`{t}` is not an integer")))
        .collect()
}

/// A 1-based index from the command line, returned 0-based.
pub fn one_based(i: usize) -> Result<usize> {
    if i == 0 {
        bail!("indices start at 1");
    }
    Ok(i - 1)
}

/// Where results go: compact JSON with `--json`, human text otherwise.
pub struct Output {
    pub json: bool,
}

impl Output {
    pub fn emit<T: Serialize>(&self, value: &T, human: impl FnOnce() -> String) -> Result<()> {
        if self.json {
            println!("{}", serde_json::to_string(value)?);
        } else {
            let text = human();
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
        Ok(())
    }

    /// Artifacts that are themselves file formats: compact with `--json`, pretty otherwise.
    pub fn artifact<T: Serialize>(&self, value: &T) -> Result<()> {
        let text = if self.json { serde_json::to_string(value)? } else { serde_json::to_string_pretty(value)? };
        println!("{text}");
        Ok(())
    }
}
