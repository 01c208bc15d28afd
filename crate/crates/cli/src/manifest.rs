use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::commands::Failure;

/// Everything needed to re-run a command. Written into every output file;
/// it deliberately carries no timestamp or thread count so that re-runs are
/// byte-identical.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub inputs: Vec<String>,
    pub flags: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub out_dir: String,
}

impl RunManifest {
    pub fn new(command: &'static str, inputs: &[&Path], out_dir: &Path) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            flags: BTreeMap::new(),
            seed: None,
            out_dir: out_dir.display().to_string(),
        }
    }

    pub fn flag(mut self, key: &str, value: impl ToString) -> Self {
        self.flags.insert(key.to_string(), value.to_string());
        self
    }

    fn comment_line(&self) -> String {
        format!("# manifest: {}\n", serde_json::to_string(self).expect("manifest serializes"))
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    manifest: &'a RunManifest,
    result: &'a T,
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, manifest: &RunManifest, result: &T) -> Result<String, Failure> {
    let text = wlsurv::report::to_json(&Envelope { manifest, result })? + "\n";
    write(dir, name, &text)?;
    Ok(text)
}

/// CSV preceded by the manifest as a `#` comment line.
pub fn write_csv(dir: &Path, name: &str, manifest: &RunManifest, body: &str) -> Result<(), Failure> {
    write(dir, name, &(manifest.comment_line() + body))
}

fn write(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::input(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}
