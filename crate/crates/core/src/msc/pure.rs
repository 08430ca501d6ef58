use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{eigen_hermitian, partial_trace_matrix, ComplexMatrix, Subsystem};
use crate::steering::PovmElement;

const MIN_SCHMIDT: f64 = 1e-8;

/// Outcome that steers a full-Schmidt-rank pure state to the maximally
/// coherent state in Bob's Schmidt basis.
///
/// For `|Psi> = sum_i l_i |phi_i>|xi_i>` this is the projector onto the
/// normalization of `sum_i (1/l_i) |phi_i>`.
pub fn optimal_measurement_pure(psi: &[Complex64], dims: (usize, usize)) -> Result<PovmElement> {
    let (da, db) = dims;
    if psi.len() != da * db {
        return Err(Error::DimensionMismatch(format!(
            "state vector of length {} for dims ({da}, {db})",
            psi.len()
        )));
    }
    let psi = crate::qcore::normalized(psi)
        .ok_or_else(|| Error::ParameterOutOfRange("zero state vector".into()))?;
    let rho_a = partial_trace_matrix(&ComplexMatrix::projector(&psi), da, db, Subsystem::A);
    let eig = eigen_hermitian(&rho_a, 0.0)?;
    // Bob's Schmidt rank is at most d_A.
    if da < db {
        return Err(Error::RankDeficientSchmidt(0.0));
    }
    let coefficients: Vec<f64> = eig.values[..db].iter().map(|v| v.max(0.0).sqrt()).collect();
    let smallest = coefficients.iter().copied().fold(f64::INFINITY, f64::min);
    if smallest < MIN_SCHMIDT {
        return Err(Error::RankDeficientSchmidt(smallest));
    }
    let mut target = vec![Complex64::new(0.0, 0.0); da];
    for (lambda, phi) in coefficients.iter().zip(eig.basis.vectors()) {
        for (t, x) in target.iter_mut().zip(phi) {
            *t += x / *lambda;
        }
    }
    PovmElement::projector(&target)
}
