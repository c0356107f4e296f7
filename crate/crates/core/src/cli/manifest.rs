use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::certificates::{cert_to_json, load_cert, verify, Certificate};
use crate::error::{Error, Result};
use crate::generacy::{Budget, Mode, Verdict};

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub input: String,
    pub verdict: Verdict,
    /// Path relative to the manifest's directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
}

/// Record of one CLI run tying each verdict to a certificate file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub manifest_version: u32,
    pub command_line: Vec<String>,
    pub mode: Mode,
    pub budget: Budget,
    pub entries: Vec<ManifestEntry>,
    pub wall_clock_secs: f64,
    pub artifact_version: String,
}

impl RunManifest {
    pub fn new(mode: Mode, budget: &Budget) -> Self {
        RunManifest {
            manifest_version: MANIFEST_VERSION,
            command_line: std::env::args().collect(),
            mode,
            budget: budget.clone(),
            entries: Vec::new(),
            wall_clock_secs: 0.0,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(d) = path.parent() {
            fs::create_dir_all(d)?;
        }
        fs::write(path, serde_json::to_string_pretty(self).expect("manifest serializes") + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
    }
}

pub fn digest(cert: &Certificate) -> String {
    format!("{:x}", Sha256::digest(cert_to_json(cert).as_bytes()))
}

/// Check that every decided entry references a certificate that loads, verifies,
/// matches its digest and proves the recorded outcome.
pub fn check_manifest(path: &Path) -> Result<Vec<(String, std::result::Result<(), String>)>> {
    let m = RunManifest::load(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
    let mut out = Vec::new();
    for e in &m.entries {
        let r = (|| {
            if !e.verdict.is_decided() {
                return Ok(());
            }
            let rel = e.certificate.as_ref().ok_or("decided verdict without a certificate")?;
            let cert = load_cert(&base.join(rel)).map_err(|err| err.to_string())?;
            if cert.proves_generating() != e.verdict.is_generating() {
                return Err(format!("{rel} proves the opposite outcome"));
            }
            if let Some(d) = &e.digest {
                if *d != digest(&cert) {
                    return Err(format!("{rel}: digest mismatch"));
                }
            }
            let rep = verify(&cert);
            if rep.passed {
                Ok(())
            } else {
                Err(format!("{rel} does not verify"))
            }
        })();
        out.push((e.input.clone(), r));
    }
    Ok(out)
}
