//! Witness diagrams and certificate bundles shipped with the crate.
//!
//! Files are embedded at build time. Setting `LINKSET_ASSET_DIR` makes the
//! loaders read from that directory instead.

use std::path::{Path, PathBuf};

use crate::catalog::canonical_graph_name;
use crate::certificates::CertificateBundle;
use crate::diagram::Diagram;
use crate::error::{Error, Result};

pub const ASSET_DIR_VAR: &str = "LINKSET_ASSET_DIR";

macro_rules! embedded {
    ($($name:literal),* $(,)?) => {
        &[$(
            (concat!("h_", $name, ".json"), include_str!(concat!("../assets/h_", $name, ".json"))),
            (concat!($name, ".battery.json"), include_str!(concat!("../assets/", $name, ".battery.json"))),
        )*]
    };
}

static EMBEDDED: &[(&str, &str)] = embedded!("K6", "Q7", "Q8", "P7", "P8", "P9", "P10", "G8", "G9", "G10");

pub fn embedded_names() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(n, _)| *n)
}

pub fn asset_dir_override() -> Option<PathBuf> {
    std::env::var_os(ASSET_DIR_VAR).filter(|s| !s.is_empty()).map(PathBuf::from)
}

/// Contents of the asset `file`, from the override directory when set.
pub fn asset_text(file: &str) -> Result<String> {
    if let Some(dir) = asset_dir_override() {
        let path = dir.join(file);
        return std::fs::read_to_string(&path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())));
    }
    EMBEDDED
        .iter()
        .find(|(n, _)| *n == file)
        .map(|(_, s)| s.to_string())
        .ok_or_else(|| Error::UnknownName(format!("asset {file}")))
}

/// Reads a path given on a command line. Existing files are read directly;
/// otherwise a path whose file name is a shipped asset (such as
/// `assets/h_G8.json`) resolves to that asset.
pub fn read_input(path: &Path) -> Result<String> {
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())));
    }
    let file = path
        .file_name()
        .and_then(|f| f.to_str())
        .ok_or_else(|| Error::Parse(format!("{}: no such file", path.display())))?;
    asset_text(file).map_err(|_| Error::Parse(format!("{}: no such file", path.display())))
}

fn graph_name(name: &str) -> Result<&'static str> {
    canonical_graph_name(name).ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn witness_diagram(name: &str) -> Result<Diagram> {
    let text = asset_text(&format!("h_{}.json", graph_name(name)?))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn certificate_bundle(name: &str) -> Result<CertificateBundle> {
    let text = asset_text(&format!("{}.battery.json", graph_name(name)?))?;
    Ok(serde_json::from_str(&text)?)
}
