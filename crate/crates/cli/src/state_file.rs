//! JSON state files: `{"dims": [dA, dB], "matrix_real": [[..]], "matrix_imag": [[..]]}`.
//! `matrix_imag` may be omitted for real states.

use std::fs;
use std::path::Path;

use locinfo::{BipartiteDims, HermitianOperator, C64};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const HERMITIAN_TOL: f64 = 1e-9;
pub const TRACE_TOL: f64 = 1e-8;
pub const PSD_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum StateFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("state file is not valid JSON for the state schema: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("matrix is not Hermitian (max |A - A†| = {0:e}, tolerance 1e-9)")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1 within 1e-8")]
    Trace(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e}, tolerance 1e-9)")]
    NotPsd(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub matrix_real: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_imag: Option<Vec<Vec<f64>>>,
}

/// A validated state with its bipartition.
#[derive(Clone, Debug)]
pub struct LoadedState {
    pub rho: HermitianOperator,
    pub dims: BipartiteDims,
}

fn check_square(name: &str, m: &[Vec<f64>], n: usize) -> Result<(), StateFileError> {
    if m.len() != n {
        return Err(StateFileError::Shape(format!("{name} has {} rows, expected {n}", m.len())));
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(StateFileError::Shape(format!(
                "{name} row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|x| !x.is_finite()) {
            return Err(StateFileError::Shape(format!("{name}[{i}][{j}] is not finite")));
        }
    }
    Ok(())
}

impl StateFile {
    pub fn from_operator(rho: &HermitianOperator, dims: BipartiteDims) -> Self {
        let n = rho.dim();
        let part = |f: fn(C64) -> f64| -> Vec<Vec<f64>> {
            (0..n).map(|i| (0..n).map(|j| f(rho.get(i, j))).collect()).collect()
        };
        let imag = part(|z| z.im);
        let has_imag = imag.iter().flatten().any(|x| *x != 0.0);
        StateFile {
            dims: vec![dims.d_a, dims.d_b],
            matrix_real: part(|z| z.re),
            matrix_imag: has_imag.then_some(imag),
        }
    }

    /// Checks shape, Hermiticity, trace and positivity, in that order.
    pub fn validate(&self) -> Result<LoadedState, StateFileError> {
        let (d_a, d_b) = match self.dims.as_slice() {
            [a, b] if *a >= 1 && *b >= 1 => (*a, *b),
            _ => {
                return Err(StateFileError::Shape(format!(
                    "dims must be two positive integers, got {:?}",
                    self.dims
                )))
            }
        };
        let n = d_a * d_b;
        check_square("matrix_real", &self.matrix_real, n)?;
        if let Some(im) = &self.matrix_imag {
            check_square("matrix_imag", im, n)?;
        }
        let m = DMatrix::from_fn(n, n, |i, j| {
            let im = self.matrix_imag.as_ref().map_or(0.0, |m| m[i][j]);
            C64::new(self.matrix_real[i][j], im)
        });
        let deviation = (&m - m.adjoint()).camax();
        if deviation > HERMITIAN_TOL {
            return Err(StateFileError::NotHermitian(deviation));
        }
        let rho = HermitianOperator::with_tolerance(m, HERMITIAN_TOL)
            .map_err(|_| StateFileError::NotHermitian(deviation))?;
        let trace = rho.trace();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(StateFileError::Trace(trace));
        }
        let min = rho.min_eigenvalue();
        if min < -PSD_TOL {
            return Err(StateFileError::NotPsd(min));
        }
        let dims = BipartiteDims::new(d_a, d_b).map_err(|e| StateFileError::Shape(e.to_string()))?;
        Ok(LoadedState { rho, dims })
    }

    pub fn parse(text: &str) -> Result<LoadedState, StateFileError> {
        serde_json::from_str::<StateFile>(text)?.validate()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state file serializes")
    }
}

pub fn load_state_file(path: &Path) -> Result<LoadedState, StateFileError> {
    let text = fs::read_to_string(path).map_err(|source| StateFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    StateFile::parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use locinfo::{b1_general, StateFamily, Werner};

    fn singlet_file() -> StateFile {
        let rho = Werner.state(2, -1.0).unwrap();
        StateFile::from_operator(&rho, BipartiteDims::square(2))
    }

    #[test]
    fn singlet_roundtrip() {
        let f = singlet_file();
        assert!(f.matrix_imag.is_none());
        let s = StateFile::parse(&f.to_json()).unwrap();
        assert!((b1_general(&s.rho, s.dims).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bad_trace() {
        let mut f = singlet_file();
        for row in &mut f.matrix_real {
            for x in row.iter_mut() {
                *x *= 0.9;
            }
        }
        assert!(matches!(f.validate(), Err(StateFileError::Trace(t)) if (t - 0.9).abs() < 1e-12));
    }

    #[test]
    fn asymmetric() {
        let mut f = singlet_file();
        f.matrix_real[0][1] = 0.3;
        assert!(matches!(f.validate(), Err(StateFileError::NotHermitian(_))));
    }

    #[test]
    fn not_psd() {
        let f = StateFile {
            dims: vec![1, 2],
            matrix_real: vec![vec![1.5, 0.0], vec![0.0, -0.5]],
            matrix_imag: None,
        };
        assert!(matches!(f.validate(), Err(StateFileError::NotPsd(_))));
    }

    #[test]
    fn shape_errors() {
        let f = StateFile {
            dims: vec![2, 2],
            matrix_real: vec![vec![1.0]],
            matrix_imag: None,
        };
        assert!(matches!(f.validate(), Err(StateFileError::Shape(_))));
        let f = StateFile {
            dims: vec![2],
            matrix_real: vec![],
            matrix_imag: None,
        };
        assert!(matches!(f.validate(), Err(StateFileError::Shape(_))));
        assert!(matches!(StateFile::parse("{"), Err(StateFileError::Parse(_))));
    }

    #[test]
    fn complex_entries() {
        // |ψ⟩ = (|01⟩ + i|10⟩)/√2
        let mut re = vec![vec![0.0; 4]; 4];
        let mut im = vec![vec![0.0; 4]; 4];
        re[1][1] = 0.5;
        re[2][2] = 0.5;
        im[2][1] = 0.5;
        im[1][2] = -0.5;
        let f = StateFile {
            dims: vec![2, 2],
            matrix_real: re,
            matrix_imag: Some(im),
        };
        let s = f.validate().unwrap();
        assert!((b1_general(&s.rho, s.dims).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(StateFile::from_operator(&s.rho, s.dims), f);
    }
}
