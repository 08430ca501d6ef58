use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::density::DensityMatrix;
use super::eigen::Basis;
use super::matrix::{ComplexMatrix, I, ONE, ZERO};
use crate::error::{Error, Result};

/// Real 3-vector: a qubit Bloch vector or a measurement direction.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);
    pub const X: Self = Self::new(1.0, 0.0, 0.0);
    pub const Y: Self = Self::new(0.0, 1.0, 0.0);
    pub const Z: Self = Self::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Unit vector from polar and azimuthal angles.
    pub fn from_angles(polar: f64, azimuth: f64) -> Self {
        let s = polar.sin();
        Self::new(s * azimuth.cos(), s * azimuth.sin(), polar.cos())
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0).then(|| self * (1.0 / n))
    }

    pub fn distance(self, o: Self) -> f64 {
        (self - o).norm()
    }

    /// Angle to `o` in `[0, pi]`.
    pub fn angle(self, o: Self) -> f64 {
        self.cross(o).norm().atan2(self.dot(o))
    }

    /// Two unit vectors completing `self` (assumed unit) to a right-handed frame.
    pub fn orthonormal_complement(self) -> (Self, Self) {
        let helper = if self.x.abs() < 0.9 { Self::X } else { Self::Y };
        let e1 = self.cross(helper).normalized().expect("helper not parallel");
        let e2 = self.cross(e1);
        (e1, e2)
    }

    /// `(1 + r.sigma)/2`
    pub fn to_operator(self) -> ComplexMatrix {
        let h = 0.5;
        ComplexMatrix::from_vec(
            2,
            2,
            vec![
                Complex64::new(h * (1.0 + self.z), 0.0),
                Complex64::new(h * self.x, -h * self.y),
                Complex64::new(h * self.x, h * self.y),
                Complex64::new(h * (1.0 - self.z), 0.0),
            ],
        )
        .expect("2x2")
    }

    pub fn to_density(self) -> Result<DensityMatrix> {
        if self.norm() > 1.0 + 1e-10 {
            return Err(Error::NotPsd {
                measured: 0.5 * (1.0 - self.norm()),
                tolerance: super::density::PSD_TOL,
            });
        }
        DensityMatrix::new(self.to_operator(), &[2])
    }

    /// Bloch vector of a qubit operator, `r_i = tr(rho sigma_i)`.
    pub fn of_operator(m: &ComplexMatrix) -> Result<Self> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::WrongDimension {
                expected: "2x2".into(),
                got: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        Ok(Self::new(
            2.0 * m[(1, 0)].re,
            2.0 * m[(1, 0)].im,
            (m[(0, 0)] - m[(1, 1)]).re,
        ))
    }

    pub fn of_state(rho: &DensityMatrix) -> Result<Self> {
        Self::of_operator(rho.matrix())
    }

    /// Basis `{|n>, |-n>}` of eigenvectors of `n.sigma`, `|n>` first.
    pub fn basis(self) -> Result<Basis> {
        let n = self.norm();
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::NonUnitAxis(n));
        }
        let up = spinor(self);
        let down = spinor(-self);
        Basis::new(vec![up, down], false)
    }
}

/// Pure qubit state with Bloch vector `n` (unit), phase fixed so the first
/// nonzero amplitude is real.
pub fn spinor(n: BlochVector) -> Vec<Complex64> {
    let polar = n.z.clamp(-1.0, 1.0).acos();
    let azimuth = n.y.atan2(n.x);
    let c = (polar / 2.0).cos();
    let s = (polar / 2.0).sin();
    if c > 1e-15 {
        vec![Complex64::new(c, 0.0), Complex64::from_polar(s, azimuth)]
    } else {
        vec![ZERO, ONE]
    }
}

/// `sigma_0..sigma_3`
pub fn pauli(i: usize) -> ComplexMatrix {
    let m = match i {
        0 => vec![ONE, ZERO, ZERO, ONE],
        1 => vec![ZERO, ONE, ONE, ZERO],
        2 => vec![ZERO, -I, I, ZERO],
        3 => vec![ONE, ZERO, ZERO, -ONE],
        _ => panic!("Pauli index {i} out of range"),
    };
    ComplexMatrix::from_vec(2, 2, m).expect("2x2")
}

impl Add for BlochVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for BlochVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for BlochVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for BlochVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_round_trip() {
        let r = BlochVector::new(0.3, -0.4, 0.5);
        let back = BlochVector::of_operator(&r.to_operator()).unwrap();
        assert!(back.distance(r) < 1e-15);
    }

    #[test]
    fn spinor_has_requested_bloch_vector() {
        for n in [
            BlochVector::Z,
            -BlochVector::Z,
            BlochVector::from_angles(1.1, -2.0),
            BlochVector::from_angles(2.9, 0.4),
        ] {
            let psi = spinor(n);
            let r = BlochVector::of_operator(&ComplexMatrix::projector(&psi)).unwrap();
            assert!(r.distance(n) < 1e-14, "{n:?} -> {r:?}");
        }
    }

    #[test]
    fn basis_requires_unit_axis() {
        assert!(matches!(
            BlochVector::new(0.0, 0.0, 0.5).basis(),
            Err(Error::NonUnitAxis(_))
        ));
        let b = BlochVector::X.basis().unwrap();
        assert_eq!(b.dim(), 2);
    }

    #[test]
    fn outside_ball_is_not_a_state() {
        assert!(BlochVector::new(1.0, 1.0, 0.0).to_density().is_err());
    }
}
