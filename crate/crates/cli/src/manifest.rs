//! JSON manifests listing the twin-pair matrix files of one cohort.

use std::fs;
use std::path::{Path, PathBuf};

use combinf_core::{ConnectivityMatrix, TwinCohort};
use serde::Deserialize;

use crate::matrix_io::read_matrix;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub a: PathBuf,
    pub b: PathBuf,
}

/// `{ "labels_from": optional path, "pairs": [ {"a": path, "b": path}, ... ] }`
///
/// Relative paths resolve against the manifest's directory. `labels_from`
/// names a text file with one node label per line and overrides labels found
/// in matrix headers.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohortManifest {
    #[serde(default)]
    pub labels_from: Option<PathBuf>,
    pub pairs: Vec<PairEntry>,
}

impl CohortManifest {
    pub fn load(path: &Path) -> Result<(Self, PathBuf), String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let manifest: CohortManifest =
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((manifest, base))
    }

    /// Reads every referenced matrix and assembles the cohort.
    pub fn load_cohort(path: &Path, symmetry_tol: f64) -> Result<TwinCohort, String> {
        let (manifest, base) = Self::load(path)?;
        let labels = match &manifest.labels_from {
            Some(p) => Some(read_labels(&base.join(p))?),
            None => None,
        };
        let load = |p: &Path| -> Result<ConnectivityMatrix, String> {
            let m = read_matrix(&base.join(p), symmetry_tol)?;
            match &labels {
                Some(l) => ConnectivityMatrix::new(l.clone(), m.entries().to_vec())
                    .map_err(|e| format!("{}: {e}", p.display())),
                None => Ok(m),
            }
        };
        let pairs = manifest
            .pairs
            .iter()
            .map(|pair| Ok((load(&pair.a)?, load(&pair.b)?)))
            .collect::<Result<Vec<_>, String>>()?;
        TwinCohort::new(pairs).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn read_labels(path: &Path) -> Result<Vec<String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}
