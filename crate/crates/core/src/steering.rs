//! Steered states, steered Bloch vectors and the quantum steering ellipsoid.
//!
//! For a two-qubit state with Pauli blocks `(a, b, T)`, the outcome
//! `M = (1 + m.sigma)/2` on Alice's side leaves Bob with Bloch vector
//! `(b + T^T m) / (1 + a.m)`. The set of all such vectors is the steering
//! ellipsoid. It is computed here by first moving to the canonical state
//! with Alice's marginal maximally mixed, where the ellipsoid is simply
//! `{ b + T^T m : |m| <= 1 }`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{
    eigen_hermitian, hermitian_function, partial_trace_matrix, pauli_decompose, BlochVector, ComplexMatrix,
    DensityMatrix, PauliForm, Subsystem,
};

pub const ZERO_PROBABILITY: f64 = 1e-12;
const POVM_TOL: f64 = 1e-10;
const SINGULAR_MARGINAL: f64 = 1e-12;

/// A POVM element `0 <= M <= 1` on Alice's space.
#[derive(Debug, Clone, PartialEq)]
pub struct PovmElement {
    matrix: ComplexMatrix,
}

impl PovmElement {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let defect = matrix.hermitian_defect();
        if defect > POVM_TOL {
            return Err(Error::InvalidPovm(format!("not Hermitian (defect {defect:e})")));
        }
        let eig = eigen_hermitian(&matrix, 0.0)?;
        let (hi, lo) = (eig.values[0], eig.min_value());
        if lo < -POVM_TOL || hi > 1.0 + POVM_TOL {
            return Err(Error::InvalidPovm(format!(
                "eigenvalues [{lo}, {hi}] leave [0, 1]"
            )));
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
        })
    }

    /// `(1 + m.sigma)/2` with `|m| <= 1`.
    pub fn from_bloch(m: BlochVector) -> Result<Self> {
        if m.norm() > 1.0 + POVM_TOL {
            return Err(Error::InvalidPovm(format!("|m| = {} exceeds 1", m.norm())));
        }
        Ok(Self {
            matrix: m.to_operator(),
        })
    }

    /// Rank-one projector onto the normalized `psi`.
    pub fn projector(psi: &[Complex64]) -> Result<Self> {
        let v = crate::qcore::normalized(psi).ok_or_else(|| Error::InvalidPovm("zero vector".into()))?;
        Ok(Self {
            matrix: ComplexMatrix::projector(&v),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// Bob's conditional state after Alice obtains `m`, with its probability.
pub fn steer(rho: &DensityMatrix, m: &PovmElement) -> Result<(DensityMatrix, f64)> {
    let (da, db) = rho.bipartite_dims()?;
    if m.dim() != da {
        return Err(Error::DimensionMismatch(format!(
            "POVM element of dimension {} on Alice's space of dimension {da}",
            m.dim()
        )));
    }
    let unnormalized = steered_operator(rho.matrix(), m.matrix(), da, db);
    let p = unnormalized.trace().re;
    if p <= ZERO_PROBABILITY {
        return Err(Error::ZeroProbability(p));
    }
    let state = DensityMatrix::new(unnormalized.scale_real(1.0 / p), &[db])?;
    Ok((state, p))
}

/// `tr_A((M (x) 1) rho)` without normalization.
pub fn steered_operator(rho: &ComplexMatrix, m: &ComplexMatrix, da: usize, db: usize) -> ComplexMatrix {
    let lifted = m.kron(&ComplexMatrix::identity(db));
    partial_trace_matrix(&(&lifted * rho), da, db, Subsystem::B)
}

/// `(b + T^T m) / |1 + a.m|`
pub fn steered_bloch(form: &PauliForm, m: BlochVector) -> Result<BlochVector> {
    let denom = 1.0 + form.alice().dot(m);
    if denom.abs() <= ZERO_PROBABILITY {
        return Err(Error::SingularDenominator(denom.abs()));
    }
    Ok((form.bob() + form.t_transpose_times(m)) * (1.0 / denom.abs()))
}

/// `(rho_A^{-1/2} (x) 1) rho (rho_A^{-1/2} (x) 1)`, renormalized.
///
/// The result has a maximally mixed Alice marginal and the same steering
/// ellipsoid as `rho`.
pub fn canonical_transform(rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dims() != [2, 2] {
        return Err(Error::WrongDimension {
            expected: "[2, 2]".into(),
            got: format!("{:?}", rho.dims()),
        });
    }
    let rho_a = rho.partial_trace(Subsystem::A)?;
    let min = rho_a.eigen(0.0).min_value();
    if min < SINGULAR_MARGINAL {
        return Err(Error::SingularMarginal(min));
    }
    let inv_sqrt = hermitian_function(rho_a.matrix(), |x| Complex64::new(x.powf(-0.5), 0.0))?;
    let k = inv_sqrt.kron(&ComplexMatrix::identity(2));
    DensityMatrix::from_unnormalized(&(&k * rho.matrix()) * &k, &[2, 2])
}

/// Center, ordered semiaxes and orientation of a (possibly flat) ellipsoid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipsoid {
    pub center: BlochVector,
    /// `c1 >= c2 >= c3 >= 0`
    pub semiaxes: [f64; 3],
    /// Unit axis directions matching `semiaxes`.
    pub frame: [BlochVector; 3],
}

impl Ellipsoid {
    /// Ball of radius `r` about `center`, axes along x, y, z.
    pub fn ball(center: BlochVector, r: f64) -> Self {
        Self {
            center,
            semiaxes: [r; 3],
            frame: [BlochVector::X, BlochVector::Y, BlochVector::Z],
        }
    }

    /// Point of the surface in direction `u` of the unit sphere, expressed
    /// in frame coordinates.
    pub fn surface_point(&self, u: BlochVector) -> BlochVector {
        let u = u.to_array();
        (0..3).fold(self.center, |acc, k| {
            acc + self.frame[k] * (self.semiaxes[k] * u[k])
        })
    }

    /// Coordinates of `p - center` along the frame axes.
    pub fn local(&self, p: BlochVector) -> [f64; 3] {
        let d = p - self.center;
        [d.dot(self.frame[0]), d.dot(self.frame[1]), d.dot(self.frame[2])]
    }

    /// `sum (y_k / c_k)^2 - 1` over axes of nonzero length.
    ///
    /// Zero on the surface of a full-rank ellipsoid. Axes of length below
    /// `flat_tol` are skipped; use [`Ellipsoid::contains`] for flat shapes.
    pub fn quadric_residual(&self, p: BlochVector, flat_tol: f64) -> f64 {
        let y = self.local(p);
        (0..3)
            .filter(|&k| self.semiaxes[k] > flat_tol)
            .map(|k| (y[k] / self.semiaxes[k]).powi(2))
            .sum::<f64>()
            - 1.0
    }

    pub fn contains(&self, p: BlochVector, tol: f64) -> bool {
        let y = self.local(p);
        let mut q = 0.0;
        for (yk, &c) in y.iter().zip(&self.semiaxes) {
            if c > tol {
                q += (yk / c).powi(2);
            } else if yk.abs() > tol {
                return false;
            }
        }
        q <= 1.0 + tol
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.semiaxes.iter().filter(|&&c| c > tol).count()
    }

    /// Largest `|p|` over `samples` points of the surface.
    pub fn max_radius(&self, samples: usize) -> f64 {
        crate::optim::fibonacci_sphere(samples)
            .into_iter()
            .map(|u| self.surface_point(u).norm())
            .fold(0.0, f64::max)
    }

    pub fn frame_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.frame[i].dot(self.frame[j]) - target).abs());
            }
        }
        worst
    }
}

/// Steering ellipsoid of Bob's qubit.
pub fn qse(rho: &DensityMatrix) -> Result<Ellipsoid> {
    let can = canonical_transform(rho)?;
    let form = pauli_decompose(&can)?;
    Ok(image_of_unit_ball(form.bob(), &form.correlations()))
}

/// `{ center + T^T m : |m| <= 1 }`, via the eigenvectors of `T^T T`.
pub fn image_of_unit_ball(center: BlochVector, t: &[[f64; 3]; 3]) -> Ellipsoid {
    let mut gram = ComplexMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let s: f64 = (0..3).map(|k| t[k][i] * t[k][j]).sum();
            gram[(i, j)] = Complex64::new(s, 0.0);
        }
    }
    let eig = eigen_hermitian(&gram, 0.0).expect("Gram matrix is symmetric");
    let mut axes: Vec<(f64, BlochVector)> = eig
        .basis
        .vectors()
        .iter()
        .map(|v| {
            let dir = BlochVector::new(v[0].re, v[1].re, v[2].re);
            let dir = dir.normalized().unwrap_or(dir);
            // |T v| resolves zero singular values to rounding level.
            let tv = (0..3)
                .map(|k| (0..3).map(|l| t[k][l] * dir.to_array()[l]).sum::<f64>().powi(2))
                .sum::<f64>()
                .sqrt();
            (tv, dir)
        })
        .collect();
    axes.sort_by(|x, y| y.0.total_cmp(&x.0));
    Ellipsoid {
        center,
        semiaxes: [axes[0].0, axes[1].0, axes[2].0],
        frame: [axes[0].1, axes[1].1, axes[2].1],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{ONE, ZERO};

    fn bell() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [Complex64::new(s, 0.0), ZERO, ZERO, Complex64::new(s, 0.0)];
        DensityMatrix::pure(&psi, &[2, 2]).unwrap()
    }

    #[test]
    fn product_states_cannot_be_steered() {
        let a = BlochVector::new(0.2, 0.1, -0.3).to_density().unwrap();
        let b = BlochVector::new(0.0, 0.5, 0.5).to_density().unwrap();
        let rho = a.tensor(&b).unwrap();
        for m in [BlochVector::X, -BlochVector::Z, BlochVector::new(0.3, 0.3, 0.3)] {
            let (state, _) = steer(&rho, &PovmElement::from_bloch(m).unwrap()).unwrap();
            assert!(state.matrix().approx_eq(b.matrix(), 1e-14));
        }
    }

    #[test]
    fn bell_state_steered_to_plus() {
        let (state, p) = steer(&bell(), &PovmElement::from_bloch(BlochVector::X).unwrap()).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        let plus = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        assert!(state.matrix().approx_eq(&plus, 1e-15));
    }

    #[test]
    fn zero_probability_outcome() {
        let rho = DensityMatrix::pure(&[ONE, ZERO, ZERO, ZERO], &[2, 2]).unwrap();
        let m = PovmElement::from_bloch(-BlochVector::Z).unwrap();
        assert!(matches!(steer(&rho, &m), Err(Error::ZeroProbability(_))));
    }

    #[test]
    fn povm_bounds() {
        assert!(PovmElement::new(ComplexMatrix::diagonal(&[1.2, 0.0])).is_err());
        assert!(PovmElement::new(ComplexMatrix::diagonal(&[0.5, -0.1])).is_err());
        assert!(PovmElement::new(ComplexMatrix::diagonal(&[1.0, 0.0])).is_ok());
        assert!(PovmElement::from_bloch(BlochVector::new(1.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn trivial_measurement_returns_marginal() {
        let form = PauliForm::from_blocks(
            BlochVector::new(0.1, 0.0, 0.2),
            BlochVector::new(0.3, -0.2, 0.1),
            [[0.1, 0.0, 0.2], [0.0, -0.3, 0.0], [0.1, 0.1, 0.1]],
        );
        let out = steered_bloch(&form, BlochVector::ZERO).unwrap();
        assert!(out.distance(form.bob()) < 1e-15);
    }

    #[test]
    fn singular_denominator() {
        let form = PauliForm::from_blocks(BlochVector::Z, BlochVector::ZERO, [[0.0; 3]; 3]);
        assert!(matches!(
            steered_bloch(&form, -BlochVector::Z),
            Err(Error::SingularDenominator(_))
        ));
    }

    #[test]
    fn canonical_transform_rejects_pure_marginal() {
        let a = BlochVector::Z.to_density().unwrap();
        let b = DensityMatrix::maximally_mixed(&[2]).unwrap();
        let rho = a.tensor(&b).unwrap();
        assert!(matches!(
            canonical_transform(&rho),
            Err(Error::SingularMarginal(_))
        ));
    }

    #[test]
    fn product_state_ellipsoid_is_a_point() {
        let a = BlochVector::new(0.3, 0.0, 0.0).to_density().unwrap();
        let b = BlochVector::new(0.0, 0.2, 0.4).to_density().unwrap();
        let e = qse(&a.tensor(&b).unwrap()).unwrap();
        assert!(e.semiaxes.iter().all(|&c| c < 1e-12));
        assert!(e.center.distance(BlochVector::new(0.0, 0.2, 0.4)) < 1e-12);
    }

    #[test]
    fn ball_surface_and_residual() {
        let e = Ellipsoid::ball(BlochVector::new(0.0, 0.0, 0.1), 0.5);
        let p = e.surface_point(BlochVector::X);
        assert!((p.x - 0.5).abs() < 1e-15);
        assert!(e.quadric_residual(p, 1e-12).abs() < 1e-15);
        assert!(e.contains(BlochVector::new(0.0, 0.0, 0.3), 1e-12));
        assert!(!e.contains(BlochVector::new(0.0, 0.0, 0.7), 1e-12));
        assert!(e.frame_defect() < 1e-15);
    }
}
