use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

use super::Certificate;

pub fn cert_from_json(text: &str) -> Result<Certificate> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("invalid JSON: {e}")))?;
    let kind = value
        .get("type")
        .and_then(|t| t.as_str())
        .ok_or_else(|| Error::Schema("missing string field `type`".into()))?
        .to_string();
    if let Some(v) = value.get("version") {
        if v.as_u64() != Some(u64::from(super::SCHEMA_VERSION)) {
            return Err(Error::Schema(format!("unsupported schema version {v}")));
        }
    }
    fn typed<T: serde::de::DeserializeOwned>(kind: &str, v: serde_json::Value) -> Result<T> {
        serde_path_to_error::deserialize(v).map_err(|e| {
            let path = e.path().to_string();
            Error::Schema(format!("{kind}: at `{path}`: {}", e.into_inner()))
        })
    }
    match kind.as_str() {
        "const_witness" => typed(&kind, value).map(Certificate::ConstWitness),
        "general_witness" => typed(&kind, value).map(Certificate::GeneralWitness),
        "nongen_invariant" => typed(&kind, value).map(Certificate::NongenInvariant),
        "general_nongen_invariant" => typed(&kind, value).map(Certificate::GeneralNongenInvariant),
        other => Err(Error::Schema(format!("unknown certificate type {other:?}"))),
    }
}

pub fn cert_to_json(cert: &Certificate) -> String {
    let mut v = serde_json::to_value(cert).expect("certificates serialize");
    if let Some(obj) = v.as_object_mut() {
        obj.insert("version".into(), serde_json::json!(super::SCHEMA_VERSION));
    }
    serde_json::to_string_pretty(&v).expect("certificates serialize")
}

pub fn load_cert(path: &Path) -> Result<Certificate> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    cert_from_json(&text).map_err(|e| match e {
        Error::Schema(m) => Error::Schema(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn save_cert(cert: &Certificate, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(path, cert_to_json(cert) + "\n")?;
    Ok(())
}
