use num_complex::Complex64;

use super::eigen::{eigen_hermitian, HermitianEigen, DEFAULT_DEGENERACY_TOL};
use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = -1e-9;
pub const MAX_DIM: usize = 16;

/// Which factor of a bipartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// A validated density operator on one system or on a bipartite `A (x) B`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

/// Checks Hermiticity, unit trace and positivity and wraps the matrix.
pub fn validate_density(matrix: ComplexMatrix, dims: &[usize]) -> Result<DensityMatrix> {
    if dims.is_empty() || dims.len() > 2 || dims.contains(&0) {
        return Err(Error::WrongDimension {
            expected: "one or two nonzero subsystem dimensions".into(),
            got: format!("{dims:?}"),
        });
    }
    let side: usize = dims.iter().product();
    if !matrix.is_square() || matrix.rows() != side {
        return Err(Error::DimensionMismatch(format!(
            "dims {dims:?} need a {side}x{side} matrix, got {}x{}",
            matrix.rows(),
            matrix.cols()
        )));
    }
    if side > MAX_DIM {
        return Err(Error::DimensionTooLarge(side, MAX_DIM));
    }
    let herm = matrix.hermitian_defect();
    if herm > HERMITIAN_TOL {
        return Err(Error::NotHermitian {
            measured: herm,
            tolerance: HERMITIAN_TOL,
        });
    }
    let tr = matrix.trace();
    let trace_err = (tr - Complex64::new(1.0, 0.0)).norm();
    if trace_err > TRACE_TOL {
        return Err(Error::NotUnitTrace {
            measured: trace_err,
            tolerance: TRACE_TOL,
        });
    }
    let min_eig = eigen_hermitian(&matrix, DEFAULT_DEGENERACY_TOL)?.min_value();
    if min_eig < PSD_TOL {
        return Err(Error::NotPsd {
            measured: min_eig,
            tolerance: PSD_TOL,
        });
    }
    Ok(DensityMatrix {
        dims: dims.to_vec(),
        matrix: matrix.hermitian_part(),
    })
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dims: &[usize]) -> Result<Self> {
        validate_density(matrix, dims)
    }

    pub fn maximally_mixed(dims: &[usize]) -> Result<Self> {
        let d: usize = dims.iter().product();
        validate_density(ComplexMatrix::identity(d).scale_real(1.0 / d as f64), dims)
    }

    pub fn pure(psi: &[Complex64], dims: &[usize]) -> Result<Self> {
        let norm = super::matrix::vec_norm(psi);
        if norm == 0.0 {
            return Err(Error::ParameterOutOfRange("zero state vector".into()));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        validate_density(ComplexMatrix::projector(&v), dims)
    }

    /// Normalizes a PSD-up-to-rounding operator by its trace, then validates.
    pub fn from_unnormalized(matrix: ComplexMatrix, dims: &[usize]) -> Result<Self> {
        let tr = matrix.trace().re;
        if tr <= 0.0 {
            return Err(Error::NotUnitTrace {
                measured: (tr - 1.0).abs(),
                tolerance: TRACE_TOL,
            });
        }
        validate_density(matrix.scale_real(1.0 / tr), dims)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn is_bipartite(&self) -> bool {
        self.dims.len() == 2
    }

    pub fn bipartite_dims(&self) -> Result<(usize, usize)> {
        match self.dims[..] {
            [a, b] => Ok((a, b)),
            _ => Err(Error::NotBipartite(self.dims.clone())),
        }
    }

    pub fn eigen(&self, degeneracy_tol: f64) -> HermitianEigen {
        eigen_hermitian(&self.matrix, degeneracy_tol).expect("validated density matrix is Hermitian")
    }

    /// Reduced state on `keep`.
    pub fn partial_trace(&self, keep: Subsystem) -> Result<DensityMatrix> {
        let (da, db) = self.bipartite_dims()?;
        let reduced = partial_trace_matrix(&self.matrix, da, db, keep);
        let d = reduced.rows();
        validate_density(reduced, &[d])
    }

    /// `(U_A (x) U_B) rho (U_A (x) U_B)^H`
    pub fn local_unitary(&self, ua: &ComplexMatrix, ub: &ComplexMatrix) -> Result<DensityMatrix> {
        let u = ua.kron(ub);
        validate_density(self.matrix.conjugate_by(&u), &self.dims)
    }

    /// Exchanges the two factors.
    pub fn swap(&self) -> Result<DensityMatrix> {
        let (da, db) = self.bipartite_dims()?;
        let n = da * db;
        let idx = |i: usize| (i % db) * da + i / db;
        let mut out = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out[(idx(r), idx(c))] = self.matrix[(r, c)];
            }
        }
        validate_density(out, &[db, da])
    }

    /// Tensor product `self (x) other` of two single-system states.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        validate_density(self.matrix.kron(&other.matrix), &[self.dim(), other.dim()])
    }
}

/// Partial trace of an arbitrary operator on `C^da (x) C^db`.
pub fn partial_trace_matrix(m: &ComplexMatrix, da: usize, db: usize, keep: Subsystem) -> ComplexMatrix {
    match keep {
        Subsystem::B => {
            let mut out = ComplexMatrix::zeros(db, db);
            for k in 0..da {
                for r in 0..db {
                    for c in 0..db {
                        out[(r, c)] += m[(k * db + r, k * db + c)];
                    }
                }
            }
            out
        }
        Subsystem::A => {
            let mut out = ComplexMatrix::zeros(da, da);
            for r in 0..da {
                for c in 0..da {
                    let mut s = ZERO;
                    for k in 0..db {
                        s += m[(r * db + k, c * db + k)];
                    }
                    out[(r, c)] = s;
                }
            }
            out
        }
    }
}
