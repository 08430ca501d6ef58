//! The l1-norm coherence of a state in a fixed basis.

use crate::error::{Error, Result};
use crate::qcore::{inner, Basis, BlochVector, ComplexMatrix, DensityMatrix};

/// Sum of the moduli of the off-diagonal elements of `rho` in `basis`.
pub fn coherence_l1(rho: &DensityMatrix, basis: &Basis) -> Result<f64> {
    if rho.dim() != basis.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {} with basis of dimension {}",
            rho.dim(),
            basis.dim()
        )));
    }
    Ok(off_diagonal_l1(rho.matrix(), basis))
}

/// The same sum for an arbitrary (possibly unnormalized) operator.
pub fn off_diagonal_l1(m: &ComplexMatrix, basis: &Basis) -> f64 {
    let images: Vec<_> = basis.vectors().iter().map(|v| m.apply(v)).collect();
    let mut total = 0.0;
    for (i, xi) in basis.vectors().iter().enumerate() {
        for (j, image) in images.iter().enumerate() {
            if i != j {
                total += inner(xi, image).norm();
            }
        }
    }
    total
}

/// Qubit coherence in the basis `{n, -n}`: the distance from `b` to the
/// line through the origin along `n`.
pub fn coherence_bloch(b: BlochVector, n: BlochVector) -> Result<f64> {
    let norm = n.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NonUnitAxis(norm));
    }
    Ok(b.cross(n).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::spinor;
    use num_complex::Complex64;

    #[test]
    fn plus_state_in_computational_basis() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = [Complex64::new(s, 0.0), Complex64::new(s, 0.0)];
        let rho = DensityMatrix::pure(&plus, &[2]).unwrap();
        let c = coherence_l1(&rho, &Basis::computational(2)).unwrap();
        assert!((c - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_state_is_incoherent() {
        let rho = DensityMatrix::new(ComplexMatrix::diagonal(&[0.7, 0.3]), &[2]).unwrap();
        assert_eq!(coherence_l1(&rho, &Basis::computational(2)).unwrap(), 0.0);
    }

    #[test]
    fn maximally_coherent_qutrit() {
        // every one of the 6 off-diagonals is 1/3
        let a = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
        let rho = DensityMatrix::pure(&[a, a, a], &[3]).unwrap();
        let c = coherence_l1(&rho, &Basis::computational(3)).unwrap();
        assert!((c - 2.0).abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch() {
        let rho = DensityMatrix::maximally_mixed(&[3]).unwrap();
        assert!(matches!(
            coherence_l1(&rho, &Basis::computational(2)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn bloch_form() {
        let z = BlochVector::Z;
        assert_eq!(coherence_bloch(BlochVector::new(0.0, 0.0, 0.5), z).unwrap(), 0.0);
        assert!((coherence_bloch(BlochVector::new(0.5, 0.0, 0.0), z).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(
            coherence_bloch(z, BlochVector::new(0.0, 0.0, 0.9)),
            Err(Error::NonUnitAxis(_))
        ));
    }

    #[test]
    fn complex_off_diagonals_use_modulus() {
        // |+i> has purely imaginary coherences
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = [Complex64::new(s, 0.0), Complex64::new(0.0, s)];
        let rho = DensityMatrix::pure(&v, &[2]).unwrap();
        assert!((coherence_l1(&rho, &Basis::computational(2)).unwrap() - 1.0).abs() < 1e-15);
        let basis = Basis::new(vec![spinor(BlochVector::Y), spinor(-BlochVector::Y)], false).unwrap();
        assert!(coherence_l1(&rho, &basis).unwrap() < 1e-15);
    }
}
