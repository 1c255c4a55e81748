//! JSON density-matrix files: `{"dim": 4, "re": [[..]; 4], "im": [[..]; 4]}`.

use std::fs;
use std::path::Path;

use lurkit::linalg::Mat4;
use lurkit::quantum::DensityMatrix;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

fn square4(rows: &[Vec<f64>]) -> Option<[[f64; 4]; 4]> {
    if rows.len() != 4 {
        return None;
    }
    let mut out = [[0.0; 4]; 4];
    for (dst, src) in out.iter_mut().zip(rows) {
        *dst = src.as_slice().try_into().ok()?;
    }
    Some(out)
}

impl DensityFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let rows = rho.matrix().rows();
        Self {
            dim: 4,
            re: rows.iter().map(|r| r.iter().map(|z| z.re).collect()).collect(),
            im: rows.iter().map(|r| r.iter().map(|z| z.im).collect()).collect(),
        }
    }

    /// Checks shape and every density-matrix invariant.
    pub fn to_density(&self) -> Result<DensityMatrix, String> {
        if self.dim != 4 {
            return Err(format!("dim must be 4, got {}", self.dim));
        }
        let re = square4(&self.re).ok_or("`re` must be a 4x4 array")?;
        let im = square4(&self.im).ok_or("`im` must be a 4x4 array")?;
        let m = Mat4::from_parts(re, im).map_err(|e| e.to_string())?;
        DensityMatrix::new(m).map_err(|e| e.to_string())
    }
}

pub fn load(path: &Path) -> Result<DensityMatrix, CliError> {
    let fail = |reason: String| CliError::DensityFile {
        path: path.display().to_string(),
        reason,
    };
    let text = fs::read_to_string(path).map_err(|e| fail(e.to_string()))?;
    let file: DensityFile = serde_json::from_str(&text).map_err(|e| fail(e.to_string()))?;
    file.to_density().map_err(fail)
}
