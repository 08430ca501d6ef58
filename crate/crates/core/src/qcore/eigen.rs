//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Matrices here are at most 16x16, where Jacobi is accurate to a few ulps
//! in the eigenvectors and needs no external LAPACK.

use std::cmp::Ordering;

use num_complex::Complex64;

use super::matrix::{inner, ComplexMatrix, ZERO};
use crate::error::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Orthonormal basis of column vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    vectors: Vec<Vec<Complex64>>,
    degenerate: bool,
}

impl Basis {
    /// Builds a basis, checking orthonormality to `1e-9`.
    pub fn new(vectors: Vec<Vec<Complex64>>, degenerate: bool) -> Result<Self> {
        let d = vectors.len();
        if vectors.iter().any(|v| v.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "basis of {d} vectors must have vectors of length {d}"
            )));
        }
        let defect = orthonormality_defect(&vectors);
        if defect > 1e-9 {
            return Err(Error::GeometryViolation(format!(
                "basis vectors are not orthonormal (defect {defect:e})"
            )));
        }
        Ok(Self { vectors, degenerate })
    }

    pub fn computational(d: usize) -> Self {
        let vectors = (0..d)
            .map(|i| {
                let mut v = vec![ZERO; d];
                v[i] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        Self {
            vectors,
            degenerate: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[Complex64] {
        &self.vectors[i]
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Unitary whose columns are the basis vectors.
    pub fn to_unitary(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(&self.vectors)
    }

    /// Multiplies every vector by an arbitrary phase.
    pub fn rephased(&self, phases: &[f64]) -> Self {
        let vectors = self
            .vectors
            .iter()
            .zip(phases)
            .map(|(v, &ph)| {
                let f = Complex64::from_polar(1.0, ph);
                v.iter().map(|z| z * f).collect()
            })
            .collect();
        Self {
            vectors,
            degenerate: self.degenerate,
        }
    }
}

fn orthonormality_defect(vectors: &[Vec<Complex64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((inner(a, b) - target).norm());
        }
    }
    worst
}

/// Eigenvalues in descending order with the matching eigenbasis.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub basis: Basis,
}

impl HermitianEigen {
    pub fn min_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Smallest gap between adjacent eigenvalues (infinite for d = 1).
    pub fn min_gap(&self) -> f64 {
        self.values
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(f64::INFINITY, f64::min)
    }

    /// Index ranges of eigenvalue clusters whose adjacent gaps are below `tol`.
    pub fn clusters(&self, tol: f64) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.values.len() {
            if i == self.values.len() || self.values[i - 1] - self.values[i] >= tol {
                out.push(start..i);
                start = i;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = self.values.len();
        let mut out = ComplexMatrix::zeros(d, d);
        for (lambda, v) in self.values.iter().zip(self.basis.vectors()) {
            out = &out + &ComplexMatrix::projector(v).scale_real(*lambda);
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// `degeneracy_tol` sets the adjacent-gap threshold below which the basis is
/// flagged as degenerate.
pub fn eigen_hermitian(h: &ComplexMatrix, degeneracy_tol: f64) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let defect = h.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian {
            measured: defect,
            tolerance: HERMITIAN_TOL,
        });
    }
    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < OFF_DIAGONAL_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut pairs: Vec<(f64, Vec<Complex64>)> =
        (0..n).map(|i| (a[(i, i)].re, fix_phase(v.column(i)))).collect();
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(Ordering::Equal));
    // Ties: order numerically equal eigenvalues by their phase-fixed vectors.
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && (pairs[end - 1].0 - pairs[end].0).abs() < 1e-12 {
            end += 1;
        }
        pairs[start..end].sort_by(|x, y| lexicographic(&x.1, &y.1));
        start = end;
    }

    let values: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let degenerate = values.windows(2).any(|w| w[0] - w[1] < degeneracy_tol);
    let basis = Basis {
        vectors: pairs.into_iter().map(|p| p.1).collect(),
        degenerate,
    };
    Ok(HermitianEigen { values, basis })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating `a[p][q]`.
///
/// Writes the 2x2 block as `D B D^H` with `D = diag(1, e^{-i phi})` and `B`
/// real symmetric, then applies the real Jacobi rotation to `B`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag < 1e-300 {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U = D P restricted to (p, q).
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Rotates the vector's phase so its largest-magnitude component is real
/// and positive. The first component within `1e-12` of the maximum wins.
pub fn fix_phase(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return v;
    }
    let pivot = v.iter().position(|z| z.norm() >= max - 1e-12).unwrap_or(0);
    let f = v[pivot].conj() / v[pivot].norm();
    for z in &mut v {
        *z *= f;
    }
    v[pivot] = Complex64::new(v[pivot].re, 0.0);
    v
}

fn lexicographic(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        for (s, t) in [(x.re, y.re), (x.im, y.im)] {
            if (s - t).abs() > 1e-12 {
                return t.partial_cmp(&s).unwrap_or(Ordering::Equal);
            }
        }
    }
    Ordering::Equal
}

/// `f(H) = V f(Lambda) V^H` for a Hermitian matrix.
pub fn hermitian_function(h: &ComplexMatrix, f: impl Fn(f64) -> Complex64) -> Result<ComplexMatrix> {
    let eig = eigen_hermitian(h, 0.0)?;
    let n = h.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for (lambda, vec) in eig.values.iter().zip(eig.basis.vectors()) {
        out = &out + &ComplexMatrix::projector(vec).scale(f(*lambda));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::matrix::ONE;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_input() {
        let eig = eigen_hermitian(&ComplexMatrix::diagonal(&[0.3, 0.7]), 1e-9).unwrap();
        assert_eq!(eig.values, vec![0.7, 0.3]);
        assert_eq!(eig.basis.vector(0), &[ZERO, ONE]);
        assert_eq!(eig.basis.vector(1), &[ONE, ZERO]);
        assert!(!eig.basis.is_degenerate());
    }

    #[test]
    fn maximally_mixed_is_degenerate() {
        let eig = eigen_hermitian(&ComplexMatrix::identity(2).scale_real(0.5), 1e-9).unwrap();
        assert!(eig.basis.is_degenerate());
        assert_eq!(eig.clusters(1e-9), vec![0..2]);
    }

    #[test]
    fn sigma_x_mixture() {
        // (1 + 0.6 sigma_x)/2 has eigenvalues 0.8, 0.2 on |+>, |->.
        let h = ComplexMatrix::from_real_rows(&[&[0.5, 0.3], &[0.3, 0.5]]).unwrap();
        let eig = eigen_hermitian(&h, 1e-9).unwrap();
        assert!((eig.values[0] - 0.8).abs() < 1e-14);
        assert!((eig.values[1] - 0.2).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = [c(s, 0.0), c(s, 0.0)];
        let minus = [c(s, 0.0), c(-s, 0.0)];
        assert!((inner(eig.basis.vector(0), &plus).norm() - 1.0).abs() < 1e-12);
        assert!((inner(eig.basis.vector(1), &minus).norm() - 1.0).abs() < 1e-12);
        // phase convention: first of the equal-magnitude components is real positive
        assert!((eig.basis.vector(1)[0] - c(s, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let h = ComplexMatrix::from_vec(
            3,
            3,
            vec![
                c(2.0, 0.0),
                c(0.5, -1.0),
                c(0.0, 0.3),
                c(0.5, 1.0),
                c(-1.0, 0.0),
                c(0.2, 0.2),
                c(0.0, -0.3),
                c(0.2, -0.2),
                c(0.4, 0.0),
            ],
        )
        .unwrap();
        let eig = eigen_hermitian(&h, 1e-9).unwrap();
        assert!(eig.reconstruct().max_abs_diff(&h) < 1e-12);
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        Basis::new(eig.basis.vectors().to_vec(), false).unwrap();
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(
            eigen_hermitian(&m, 1e-9),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn cluster_ranges() {
        let eig = eigen_hermitian(&ComplexMatrix::diagonal(&[0.4, 0.4, 0.2]), 1e-9).unwrap();
        assert_eq!(eig.clusters(1e-9), vec![0..2, 2..3]);
        assert!(eig.basis.is_degenerate());
    }

    #[test]
    fn matrix_square_root() {
        let h = ComplexMatrix::from_real_rows(&[&[0.5, 0.3], &[0.3, 0.5]]).unwrap();
        let root = hermitian_function(&h, |x| Complex64::new(x.sqrt(), 0.0)).unwrap();
        assert!((&root * &root).max_abs_diff(&h) < 1e-14);
    }

    #[test]
    fn basis_rejects_non_orthonormal() {
        let v = vec![vec![ONE, ZERO], vec![ONE, ONE]];
        assert!(Basis::new(v, false).is_err());
    }
}
