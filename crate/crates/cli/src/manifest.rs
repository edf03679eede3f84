//! Run manifests and their replay.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Duration;

use orbitlab::nilalg::ASSOCIATIVITY_SEED;
use orbitlab::{Budgets, Error};
use serde::{Deserialize, Serialize};

use crate::commands::Outcome;
use crate::inputs::{self, sha256_hex};

#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    /// Arguments after the program name, with `--manifest` removed.
    pub command: Vec<String>,
    /// Working directory the command ran in; relative paths resolve against it.
    pub cwd: String,
    /// Input file path -> SHA-256 of its contents.
    pub inputs: BTreeMap<String, String>,
    pub budgets: BTreeMap<String, u64>,
    /// Seed of the sampled associativity test.
    pub seed: u64,
    pub elapsed_ms: u128,
    pub exit_code: u8,
    pub output_sha256: String,
}

fn recorded_argv() -> Vec<String> {
    let mut out = Vec::new();
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        if a == "--manifest" {
            args.next();
        } else if !a.starts_with("--manifest=") {
            out.push(a);
        }
    }
    out
}

pub fn write(path: &Path, outcome: &Outcome, budgets: &Budgets, elapsed: Duration) -> Result<(), Error> {
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: recorded_argv(),
        cwd: std::env::current_dir()
            .map(|d| d.display().to_string())
            .unwrap_or_default(),
        inputs: outcome.inputs.iter().cloned().collect(),
        budgets: budgets
            .as_map()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        seed: ASSOCIATIVITY_SEED,
        elapsed_ms: elapsed.as_millis(),
        exit_code: outcome.exit_code,
        output_sha256: sha256_hex(outcome.stdout.as_bytes()),
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(path, text + "\n").map_err(|e| Error::validation(format!("{}: {e}", path.display())))
}

/// Re-runs the recorded command with the recorded budgets and compares output digests.
pub fn replay(path: &Path) -> Result<ExitCode, Error> {
    let manifest: RunManifest = serde_json::from_str(&inputs::read(path)?)
        .map_err(|e| Error::validation(format!("{}: {e}", path.display())))?;
    if manifest.tool_version != env!("CARGO_PKG_VERSION") {
        eprintln!(
            "warning: manifest written by version {}, replaying with {}",
            manifest.tool_version,
            env!("CARGO_PKG_VERSION")
        );
    }
    let cwd = Path::new(&manifest.cwd);
    let mut changed = Vec::new();
    for (file, digest) in &manifest.inputs {
        let now = std::fs::read(cwd.join(file))
            .map(|b| sha256_hex(&b))
            .map_err(|e| Error::validation(format!("{file}: {e}")))?;
        if &now != digest {
            changed.push(file.clone());
        }
    }
    if !changed.is_empty() {
        return Err(Error::validation(format!("inputs changed since the manifest was written: {}", changed.join(", "))));
    }
    let exe = std::env::current_exe().map_err(|e| Error::internal(format!("cannot locate executable: {e}")))?;
    let mut cmd = Command::new(exe);
    cmd.current_dir(cwd).args(&manifest.command);
    for (k, v) in &manifest.budgets {
        cmd.arg("--budget").arg(format!("{k}={v}"));
    }
    let out = cmd
        .output()
        .map_err(|e| Error::internal(format!("cannot re-run command: {e}")))?;
    let digest = sha256_hex(&out.stdout);
    let code = out.status.code().unwrap_or(-1);
    let matches = digest == manifest.output_sha256 && code == manifest.exit_code as i32;
    let report = serde_json::json!({
        "command": manifest.command,
        "recorded_sha256": manifest.output_sha256,
        "replayed_sha256": digest,
        "recorded_exit_code": manifest.exit_code,
        "replayed_exit_code": code,
        "identical": matches,
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("json values always serialize"));
    Ok(if matches { ExitCode::SUCCESS } else { ExitCode::from(4) })
}
