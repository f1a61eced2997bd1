//! JSON matrix files: `{"n": 3, "real": [[...], ...], "imag": [[...], ...]}`
//! with `imag` optional.

use std::fs;
use std::path::Path;

use eigenid_core::matrix::{validate_hermitian, ComplexMatrix, DEFAULT_HERM_TOL};
use eigenid_core::HermitianMatrix;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub real: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imag: Option<Vec<Vec<f64>>>,
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid matrix file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let n = m.rows();
        let real = (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect();
        let imag: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect();
        let any_imag = imag.iter().flatten().any(|&x| x != 0.0);
        Self { n, real, imag: any_imag.then_some(imag) }
    }

    fn check_block(&self, name: &str, rows: &[Vec<f64>]) -> Result<(), CliError> {
        if rows.len() != self.n {
            return Err(CliError::Validation(format!("\"{name}\" has {} rows, expected {}", rows.len(), self.n)));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != self.n) {
            return Err(CliError::Validation(format!(
                "row {} of \"{name}\" has {} entries, expected {}",
                i + 1,
                r.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// Checks shapes and Hermitian symmetry.
    pub fn to_hermitian(&self) -> Result<HermitianMatrix, CliError> {
        if self.n == 0 {
            return Err(CliError::Validation("matrix dimension must be at least 1".into()));
        }
        self.check_block("real", &self.real)?;
        let zeros;
        let imag = match &self.imag {
            Some(im) => {
                self.check_block("imag", im)?;
                im
            }
            None => {
                zeros = vec![vec![0.0; self.n]; self.n];
                &zeros
            }
        };
        let re: Vec<f64> = self.real.iter().flatten().copied().collect();
        let im: Vec<f64> = imag.iter().flatten().copied().collect();
        let m = ComplexMatrix::from_parts(self.n, self.n, &re, &im)?;
        Ok(validate_hermitian(m, DEFAULT_HERM_TOL)?)
    }
}

pub fn load(path: &Path) -> Result<HermitianMatrix, CliError> {
    MatrixFile::read(path)?.to_hermitian()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_real_and_complex() {
        let f = MatrixFile::parse(r#"{"n": 2, "real": [[1, 2], [2, 3]]}"#).unwrap();
        assert!(f.imag.is_none());
        assert!(f.to_hermitian().unwrap().is_real());
        let f = MatrixFile::parse(r#"{"n": 2, "real": [[1, 0], [0, 1]], "imag": [[0, 1], [-1, 0]]}"#).unwrap();
        assert!(!f.to_hermitian().unwrap().is_real());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(MatrixFile::parse("{not json"), Err(CliError::Parse(_))));
        assert!(matches!(MatrixFile::parse(r#"{"n": 2, "real": [[1]], "extra": 1}"#), Err(CliError::Parse(_))));
        let ragged = MatrixFile::parse(r#"{"n": 2, "real": [[1, 2], [3]]}"#).unwrap();
        assert!(matches!(ragged.to_hermitian(), Err(CliError::Validation(_))));
        let asym = MatrixFile::parse(r#"{"n": 2, "real": [[1, 2], [3, 1]]}"#).unwrap();
        let err = asym.to_hermitian().unwrap_err();
        assert!(matches!(err, CliError::Validation(_)));
        assert!(err.to_string().contains("deviation"));
    }

    #[test]
    fn round_trip_is_exact() {
        let f = MatrixFile {
            n: 2,
            real: vec![vec![0.1, 1.0 / 3.0], vec![1.0 / 3.0, -2.5e-300]],
            imag: Some(vec![vec![0.0, std::f64::consts::PI], vec![-std::f64::consts::PI, 0.0]]),
        };
        let back = MatrixFile::parse(&f.to_json()).unwrap();
        assert_eq!(back, f);
        for (a, b) in back.real.iter().flatten().zip(f.real.iter().flatten()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}
