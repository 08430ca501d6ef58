use num_complex::Complex64;

use super::bloch::{pauli, BlochVector};
use super::density::{validate_density, DensityMatrix};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Two-qubit Pauli coefficients `theta[i][j] = tr(rho sigma_i (x) sigma_j)`.
///
/// Row index belongs to Alice, column index to Bob, so row 0 holds Bob's
/// Bloch vector and column 0 holds Alice's.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliForm {
    pub theta: [[f64; 4]; 4],
}

impl PauliForm {
    pub fn from_blocks(alice: BlochVector, bob: BlochVector, t: [[f64; 3]; 3]) -> Self {
        let a = alice.to_array();
        let b = bob.to_array();
        let mut theta = [[0.0; 4]; 4];
        theta[0][0] = 1.0;
        for k in 0..3 {
            theta[0][k + 1] = b[k];
            theta[k + 1][0] = a[k];
            for l in 0..3 {
                theta[k + 1][l + 1] = t[k][l];
            }
        }
        Self { theta }
    }

    /// Alice's Bloch vector `a`.
    pub fn alice(&self) -> BlochVector {
        BlochVector::new(self.theta[1][0], self.theta[2][0], self.theta[3][0])
    }

    /// Bob's Bloch vector `b`.
    pub fn bob(&self) -> BlochVector {
        BlochVector::new(self.theta[0][1], self.theta[0][2], self.theta[0][3])
    }

    /// Correlation block `T`.
    pub fn correlations(&self) -> [[f64; 3]; 3] {
        let mut t = [[0.0; 3]; 3];
        for (k, row) in t.iter_mut().enumerate() {
            for (l, v) in row.iter_mut().enumerate() {
                *v = self.theta[k + 1][l + 1];
            }
        }
        t
    }

    /// `T^T m`
    pub fn t_transpose_times(&self, m: BlochVector) -> BlochVector {
        let m = m.to_array();
        let mut out = [0.0; 3];
        for (l, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|k| self.theta[k + 1][l + 1] * m[k]).sum();
        }
        BlochVector::from_array(out)
    }
}

pub fn pauli_decompose(rho: &DensityMatrix) -> Result<PauliForm> {
    if rho.dims() != [2, 2] {
        return Err(Error::WrongDimension {
            expected: "[2, 2]".into(),
            got: format!("{:?}", rho.dims()),
        });
    }
    let mut theta = [[0.0; 4]; 4];
    for (i, row) in theta.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let op = pauli(i).kron(&pauli(j));
            *v = (rho.matrix() * &op).trace().re;
        }
    }
    Ok(PauliForm { theta })
}

/// `rho = 1/4 sum theta_ij sigma_i (x) sigma_j`, validated.
pub fn pauli_compose(form: &PauliForm) -> Result<DensityMatrix> {
    let t00 = form.theta[0][0];
    if (t00 - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnitTrace {
            measured: (t00 - 1.0).abs(),
            tolerance: 1e-12,
        });
    }
    let mut m = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            let c = form.theta[i][j];
            if c != 0.0 {
                m = &m + &pauli(i).kron(&pauli(j)).scale(Complex64::new(0.25 * c, 0.0));
            }
        }
    }
    validate_density(m, &[2, 2])
}
