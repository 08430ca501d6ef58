//! JSON state files: explicit dims and row-major `[re, im]` entries.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{ComplexMatrix, DensityMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        Self {
            dims: rho.dims().to_vec(),
            matrix: (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
                .collect(),
        }
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        let n = self.matrix.len();
        if self.matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Parse("matrix rows must have equal length".into()));
        }
        let data = self
            .matrix
            .iter()
            .flatten()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        DensityMatrix::new(ComplexMatrix::from_vec(n, n, data)?, &self.dims)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn read_state(path: &Path) -> Result<DensityMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    StateFile::from_json(&text)?.to_density()
}

pub fn write_state(path: &Path, rho: &DensityMatrix) -> Result<()> {
    std::fs::write(path, StateFile::from_density(rho).to_json() + "\n")
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_state;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn round_trip_is_exact() {
        let rho = random_state(&mut ChaCha8Rng::seed_from_u64(11), &[2, 3]).unwrap();
        let text = StateFile::from_density(&rho).to_json();
        let back = StateFile::from_json(&text).unwrap().to_density().unwrap();
        assert_eq!(back.dims(), rho.dims());
        assert!(back.matrix().approx_eq(rho.matrix(), 0.0));
    }

    #[test]
    fn invalid_matrix_is_rejected() {
        let file = StateFile {
            dims: vec![2],
            matrix: vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[0.0, 0.0], [1.0, 0.0]]],
        };
        assert!(matches!(file.to_density(), Err(Error::NotUnitTrace { .. })));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let text = r#"{"dims":[2],"matrix":[[[1,0]],[[0,0],[0,0]]]}"#;
        assert!(matches!(
            StateFile::from_json(text).unwrap().to_density(),
            Err(Error::Parse(_))
        ));
        assert!(StateFile::from_json("{").is_err());
    }
}
