//! Run manifests: when output goes to a file, a sibling
//! `<file>.manifest.json` records the subcommand, its full parameter set,
//! timestamps, the tool version, and a SHA-256 digest of the output bytes.
//! Re-running a deterministic subcommand with the manifest's parameters
//! reproduces the digest.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::OnceLock;

use serde::Serialize;
use sha2::{Digest, Sha256};

static STARTED: OnceLock<chrono::DateTime<chrono::Utc>> = OnceLock::new();

/// Records the moment the run began; called once at startup.
pub fn mark_start() {
    let _ = STARTED.set(chrono::Utc::now());
}

#[derive(Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub version: String,
    pub started: String,
    pub finished: String,
    pub output_digest: String,
}

/// Writes `content` to stdout or to `out`; with `out` set, also writes the
/// manifest next to it.
pub fn emit<P: Serialize>(
    subcommand: &str,
    params: &P,
    seed: Option<u64>,
    out: Option<&Path>,
    content: &str,
) -> Result<(), String> {
    let started = *STARTED.get_or_init(chrono::Utc::now);
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| e.to_string())?;
            Ok(())
        }
        Some(path) => {
            fs::write(path, content).map_err(|e| format!("{}: {e}", path.display()))?;
            let digest = Sha256::digest(content.as_bytes());
            let manifest = RunManifest {
                subcommand: subcommand.to_string(),
                params: serde_json::to_value(params).map_err(|e| e.to_string())?,
                seed,
                version: env!("CARGO_PKG_VERSION").to_string(),
                started: started.to_rfc3339(),
                finished: chrono::Utc::now().to_rfc3339(),
                output_digest: format!("sha256:{:x}", digest),
            };
            let manifest_path = path.with_file_name(format!(
                "{}.manifest.json",
                path.file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "output".to_string())
            ));
            let body = serde_json::to_string_pretty(&manifest).map_err(|e| e.to_string())?;
            fs::write(&manifest_path, format!("{body}\n"))
                .map_err(|e| format!("{}: {e}", manifest_path.display()))?;
            Ok(())
        }
    }
}
