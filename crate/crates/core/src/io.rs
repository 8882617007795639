//! JSON state files: `{"dims": [2, 2], "re": [[..]], "im": [[..]]}`, row-major.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{complex_matrix, DensityMatrix};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl StateFile {
    pub fn from_state<T: Real>(rho: &DensityMatrix<T>) -> Self {
        let m = rho.matrix();
        let n = m.nrows();
        let rows = |f: &dyn Fn(usize, usize) -> f64| (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        StateFile {
            dims: rho.dims().to_vec(),
            re: rows(&|i, j| m[(i, j)].re.as_f64()),
            im: rows(&|i, j| m[(i, j)].im.as_f64()),
        }
    }

    /// Full validation as a density matrix.
    pub fn to_state<T: Real>(&self) -> Result<DensityMatrix<T>> {
        let conv = |rows: &[Vec<f64>]| -> Vec<Vec<T>> {
            rows.iter().map(|r| r.iter().map(|&x| T::lit(x)).collect()).collect()
        };
        let m = complex_matrix(&conv(&self.re), &conv(&self.im))?;
        DensityMatrix::new(m, self.dims.clone())
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::StateFile(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

pub fn read_state<T: Real>(path: impl AsRef<Path>) -> Result<DensityMatrix<T>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::StateFile(format!("{}: {e}", path.display())))?;
    StateFile::parse(&text)?.to_state()
}

pub fn write_state<T: Real>(path: impl AsRef<Path>, rho: &DensityMatrix<T>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, StateFile::from_state(rho).to_json())
        .map_err(|e| Error::StateFile(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{random_density_matrix_with, seeded_rng};
    use crate::states::werner;

    #[test]
    fn round_trip_is_exact_in_f64() {
        let mut rng = seeded_rng(7);
        let rho = random_density_matrix_with::<f64, _>(&mut rng, vec![2, 2]);
        let back: DensityMatrix<f64> = StateFile::parse(&StateFile::from_state(&rho).to_json())
            .unwrap()
            .to_state()
            .unwrap();
        assert!(rho.max_distance(&back) < 1e-15);
    }

    #[test]
    fn literal_werner_file() {
        let text = r#"{"dims":[2,2],
            "re":[[0.25,0,0,0],[0,0.25,0,0],[0,0,0.25,0],[0,0,0,0.25]],
            "im":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;
        let rho: DensityMatrix<f64> = StateFile::parse(text).unwrap().to_state().unwrap();
        assert!(rho.max_distance(&werner(0.0)) < 1e-15);
    }

    #[test]
    fn invalid_files_are_rejected() {
        assert!(matches!(StateFile::parse("{\"dims\":[2]}"), Err(Error::StateFile(_))));
        assert!(StateFile::parse(r#"{"dims":[2],"re":[[1,0],[0,0]],"im":[[0,0],[0,0]],"x":1}"#).is_err());
        let ragged = StateFile {
            dims: vec![2],
            re: vec![vec![1.0, 0.0], vec![0.0]],
            im: vec![vec![0.0; 2]; 2],
        };
        assert!(matches!(ragged.to_state::<f64>(), Err(Error::BadShape(_))));
        let not_psd = StateFile {
            dims: vec![2],
            re: vec![vec![1.5, 0.0], vec![0.0, -0.5]],
            im: vec![vec![0.0; 2]; 2],
        };
        assert!(matches!(not_psd.to_state::<f64>(), Err(Error::NotPsd(_))));
        let wrong_dims = StateFile {
            dims: vec![3],
            re: vec![vec![1.0, 0.0], vec![0.0, 0.0]],
            im: vec![vec![0.0; 2]; 2],
        };
        assert!(matches!(
            wrong_dims.to_state::<f64>(),
            Err(Error::DimensionMismatch(3, 2))
        ));
    }
}
