//! State families with known steered-coherence values or bounds.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{kron_vec, vec_norm, Basis, BlochVector, ComplexMatrix, DensityMatrix, ONE, ZERO};
use crate::steering::{qse, Ellipsoid};

const WEIGHT_TOL: f64 = 1e-12;
const MIN_SCHMIDT: f64 = 1e-8;

/// Two-sided bound on the MSC of a family member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MscBounds {
    pub lower: f64,
    pub upper: f64,
    /// The value stays strictly below `upper`.
    pub strict_upper: bool,
}

impl MscBounds {
    pub fn holds(&self, value: f64, tol: f64) -> bool {
        value >= self.lower - tol && value <= self.upper + tol
    }
}

#[derive(Debug, Clone)]
pub struct StateFamilyResult {
    pub state: DensityMatrix,
    pub analytic_msc: Option<f64>,
    pub analytic_qse: Option<Ellipsoid>,
    pub msc_bounds: Option<MscBounds>,
}

impl StateFamilyResult {
    fn plain(state: DensityMatrix) -> Self {
        Self {
            state,
            analytic_msc: None,
            analytic_qse: None,
            msc_bounds: None,
        }
    }
}

fn check_unit_interval(name: &str, x: f64, open_low: bool, open_high: bool) -> Result<()> {
    let low_ok = if open_low { x > 0.0 } else { x >= 0.0 };
    let high_ok = if open_high { x < 1.0 } else { x <= 1.0 };
    if low_ok && high_ok && x.is_finite() {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(format!("{name} = {x}")))
    }
}

fn plus_minus() -> (Vec<Complex64>, Vec<Complex64>) {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    (vec![h, h], vec![h, -h])
}

/// `sum_i p_i rho_i (x) |xi_i><xi_i|`, zero steered coherence by construction.
pub fn classical_state(
    weights: &[f64],
    alice_states: &[DensityMatrix],
    basis: &Basis,
) -> Result<StateFamilyResult> {
    if weights.len() != alice_states.len() || weights.len() > basis.dim() || weights.is_empty() {
        return Err(Error::WeightsInvalid(format!(
            "{} weights, {} Alice states, basis of dimension {}",
            weights.len(),
            alice_states.len(),
            basis.dim()
        )));
    }
    let total: f64 = weights.iter().sum();
    if weights.iter().any(|&w| w.is_nan() || w < 0.0) || (total - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::WeightsInvalid(format!(
            "weights {weights:?} do not form a probability vector"
        )));
    }
    let da = alice_states[0].dim();
    if alice_states.iter().any(|s| s.dims() != [da]) {
        return Err(Error::DimensionMismatch(
            "Alice states must be single systems of one dimension".into(),
        ));
    }
    let db = basis.dim();
    let mut m = ComplexMatrix::zeros(da * db, da * db);
    for (i, (w, s)) in weights.iter().zip(alice_states).enumerate() {
        let xi = ComplexMatrix::projector(basis.vector(i));
        m = &m + &s.matrix().kron(&xi).scale_real(*w);
    }
    Ok(StateFamilyResult {
        analytic_msc: Some(0.0),
        ..StateFamilyResult::plain(DensityMatrix::new(m, &[da, db])?)
    })
}

/// `t |++><++| + (1-t) |--><--|`
pub fn rho_c(t: f64) -> Result<StateFamilyResult> {
    check_unit_interval("t", t, false, false)?;
    let (plus, minus) = plus_minus();
    let basis = Basis::new(vec![plus.clone(), minus.clone()], false)?;
    let alice = [
        DensityMatrix::pure(&plus, &[2])?,
        DensityMatrix::pure(&minus, &[2])?,
    ];
    classical_state(&[t, 1.0 - t], &alice, &basis)
}

/// Amplitude-damped `rho_c(t)` on Bob's side has
/// `C = 2 t g sqrt(1-g) / sqrt((1-2t)^2 (1-g) + g^2)`.
pub fn damped_rho_c_msc(t: f64, gamma: f64) -> f64 {
    let den = ((1.0 - 2.0 * t).powi(2) * (1.0 - gamma) + gamma * gamma).sqrt();
    if den == 0.0 {
        return 0.0;
    }
    2.0 * t * gamma * (1.0 - gamma).max(0.0).sqrt() / den
}

/// `p |Psi><Psi| + (1-p)/4`, `|Psi> = cos(theta/2)|++> + sin(theta/2)|-->`.
pub fn rho_p(p: f64, theta: f64) -> Result<StateFamilyResult> {
    check_unit_interval("p", p, true, true)?;
    let (plus, minus) = plus_minus();
    let (s, c) = (theta / 2.0).sin_cos();
    let psi: Vec<Complex64> = kron_vec(&plus, &plus)
        .iter()
        .zip(kron_vec(&minus, &minus))
        .map(|(x, y)| x * c + y * s)
        .collect();
    let m = &ComplexMatrix::projector(&psi).scale_real(p)
        + &ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    let state = DensityMatrix::new(m, &[2, 2])?;

    let pc = p * theta.cos();
    let den = 1.0 - pc * pc;
    let c1 = p * (1.0 - p * theta.cos().powi(2)) / den;
    let c2 = p * theta.sin().abs() / den.sqrt();
    let center = BlochVector::new(p * (1.0 - p) * theta.cos() / den, 0.0, 0.0);
    Ok(StateFamilyResult {
        state,
        analytic_msc: Some(c2),
        analytic_qse: Some(Ellipsoid {
            center,
            semiaxes: [c1, c2, c2],
            frame: [BlochVector::X, BlochVector::Y, BlochVector::Z],
        }),
        msc_bounds: None,
    })
}

/// `p |Psi-><Psi-| + (1-p)/4`
pub fn werner(p: f64) -> Result<StateFamilyResult> {
    check_unit_interval("p", p, false, false)?;
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let singlet = [ZERO, s, -s, ZERO];
    let m = &ComplexMatrix::projector(&singlet).scale_real(p)
        + &ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    Ok(StateFamilyResult {
        state: DensityMatrix::new(m, &[2, 2])?,
        analytic_msc: Some(p),
        analytic_qse: Some(Ellipsoid::ball(BlochVector::ZERO, p)),
        msc_bounds: None,
    })
}

/// `(1 - b/2)|Psi_b><Psi_b| + (b/2)|00><00|`,
/// `|Psi_b> = (sqrt(1-b)|01> + |10>) / sqrt(2-b)`.
pub fn maximally_obese(b: f64) -> Result<StateFamilyResult> {
    check_unit_interval("b", b, false, true)?;
    let n = (2.0 - b).sqrt();
    let psi = [
        ZERO,
        Complex64::new((1.0 - b).sqrt() / n, 0.0),
        Complex64::new(1.0 / n, 0.0),
        ZERO,
    ];
    let m = &ComplexMatrix::projector(&psi).scale_real(1.0 - b / 2.0)
        + &ComplexMatrix::diagonal(&[b / 2.0, 0.0, 0.0, 0.0]);
    let r = (1.0 - b).sqrt();
    Ok(StateFamilyResult {
        state: DensityMatrix::new(m, &[2, 2])?,
        analytic_msc: Some(r),
        analytic_qse: Some(Ellipsoid {
            center: BlochVector::new(0.0, 0.0, b),
            semiaxes: [r, r, 1.0 - b],
            frame: [BlochVector::X, BlochVector::Y, BlochVector::Z],
        }),
        msc_bounds: None,
    })
}

fn unit_qubit(name: &str, v: &[Complex64]) -> Result<Vec<Complex64>> {
    if v.len() != 2 {
        return Err(Error::WrongDimension {
            expected: "2".into(),
            got: v.len().to_string(),
        });
    }
    let n = vec_norm(v);
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::ParameterOutOfRange(format!(
            "{name} has norm {n}, expected 1"
        )));
    }
    Ok(v.to_vec())
}

/// `1/2 |psi><psi| (x) |chi><chi| + 1/2 |psi'><psi'| (x) |chi'><chi'|` with
/// `psi'` orthogonal to `psi`.
///
/// The steering ellipsoid is the chord from `chi` to `chi'`, and
/// `C = sqrt(1 - b^2)`. A chord through the origin is rejected: Bob's
/// marginal is then maximally mixed and the chord is radial for one of its
/// eigenbases.
pub fn chord_state(
    psi: &[Complex64],
    chi: &[Complex64],
    chi_prime: &[Complex64],
) -> Result<StateFamilyResult> {
    let psi = unit_qubit("psi", psi)?;
    let chi = unit_qubit("chi", chi)?;
    let chi_prime = unit_qubit("chi'", chi_prime)?;
    let psi_bar = vec![-psi[1].conj(), psi[0].conj()];

    let u = BlochVector::of_operator(&ComplexMatrix::projector(&chi))?;
    let v = BlochVector::of_operator(&ComplexMatrix::projector(&chi_prime))?;
    let b = (u + v) * 0.5;
    let chord = u - v;
    if b.norm() < 1e-9 {
        return Err(Error::GeometryViolation("chord passes through the origin".into()));
    }
    let tilt = b.dot(chord).abs() / (b.norm() * chord.norm().max(1e-300));
    if chord.norm() > 1e-12 && tilt > 1e-9 {
        return Err(Error::GeometryViolation(format!(
            "chord is not perpendicular to Bob's Bloch vector (cosine {tilt:e})"
        )));
    }

    let m = &ComplexMatrix::projector(&kron_vec(&psi, &chi)).scale_real(0.5)
        + &ComplexMatrix::projector(&kron_vec(&psi_bar, &chi_prime)).scale_real(0.5);
    let half = chord.norm() / 2.0;
    let axis = chord.normalized().unwrap_or(b.normalized().expect("nonzero"));
    let (e1, e2) = axis.orthonormal_complement();
    Ok(StateFamilyResult {
        state: DensityMatrix::new(m, &[2, 2])?,
        analytic_msc: Some((1.0 - b.dot(b)).max(0.0).sqrt()),
        analytic_qse: Some(Ellipsoid {
            center: b,
            semiaxes: [half, 0.0, 0.0],
            frame: [axis, e1, e2],
        }),
        msc_bounds: None,
    })
}

/// Chord state with `psi = |0>` and endpoints `(+-sqrt(1-b^2), 0, b)`.
pub fn chord_symmetric(b: f64) -> Result<StateFamilyResult> {
    check_unit_interval("b", b, true, false)?;
    let polar = b.acos();
    let chi = crate::qcore::spinor(BlochVector::from_angles(polar, 0.0));
    let chi_prime = crate::qcore::spinor(BlochVector::from_angles(polar, std::f64::consts::PI));
    chord_state(&[ONE, ZERO], &chi, &chi_prime)
}

/// Root `theta1` in `[0, theta]` of `b1 sin(t) = b2 sin(theta - t)`.
pub fn dlc_theta1(b1: f64, b2: f64, theta: f64) -> f64 {
    let f = |t: f64| b1 * t.sin() - b2 * (theta - t).sin();
    let (mut lo, mut hi) = (0.0, theta);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Bounds for a segment ellipsoid with ends of lengths `b1 >= b2` at angle
/// `theta`.
pub fn dlc_bounds(b1: f64, b2: f64, theta: f64) -> MscBounds {
    let (b1, b2) = if b1 >= b2 { (b1, b2) } else { (b2, b1) };
    let lower = b1 * dlc_theta1(b1, b2, theta).sin();
    if theta <= std::f64::consts::FRAC_PI_2 {
        MscBounds {
            lower,
            upper: b1 * theta.sin(),
            strict_upper: true,
        }
    } else {
        MscBounds {
            lower,
            upper: b1,
            strict_upper: false,
        }
    }
}

/// `q |0><0| (x) sigma(b1) + (1-q) |1><1| (x) sigma(b2)`.
///
/// Alice's two outcomes steer Bob to `b1` and `b2`, so the steering
/// ellipsoid is the segment between them.
pub fn dlc_state(b1: BlochVector, b2: BlochVector, q: f64) -> Result<StateFamilyResult> {
    check_unit_interval("q", q, true, true)?;
    if b1.cross(b2).norm() < 1e-12 {
        return Err(Error::RadialSegment);
    }
    let s1 = b1.to_density()?;
    let s2 = b2.to_density()?;
    let m = &ComplexMatrix::diagonal(&[q, 0.0]).kron(s1.matrix())
        + &ComplexMatrix::diagonal(&[0.0, 1.0 - q]).kron(s2.matrix());
    let theta = b1.angle(b2);
    Ok(StateFamilyResult {
        msc_bounds: Some(dlc_bounds(b1.norm(), b2.norm(), theta)),
        ..StateFamilyResult::plain(DensityMatrix::new(m, &[2, 2])?)
    })
}

/// Segment from the pure state `z` to `b2 (sin theta, 0, cos theta)`,
/// weighted so that Bob's Bloch vector is perpendicular to `z`. For
/// `theta > pi/2` this attains `C = 1`.
pub fn dlc_perpendicular(b2: f64, theta: f64) -> Result<StateFamilyResult> {
    let c = b2 * theta.cos();
    if c >= 0.0 {
        return Err(Error::ParameterOutOfRange(format!(
            "need b2 cos(theta) < 0, got {c}"
        )));
    }
    let q = -c / (1.0 - c);
    let far = BlochVector::new(theta.sin(), 0.0, theta.cos()) * b2;
    dlc_state(BlochVector::Z, far, q)
}

/// `sum_i lambda_i U_A|i> (x) U_B|i>`, maximal steered coherence `d - 1`.
pub fn pure_schmidt(lambda: &[f64], ua: &ComplexMatrix, ub: &ComplexMatrix) -> Result<StateFamilyResult> {
    let d = lambda.len();
    if ua.rows() != d || ua.cols() != d || ub.rows() != d || ub.cols() != d {
        return Err(Error::DimensionMismatch(format!(
            "{d} Schmidt coefficients need {d}x{d} local unitaries"
        )));
    }
    let norm2: f64 = lambda.iter().map(|l| l * l).sum();
    if (norm2 - 1.0).abs() > 1e-10 {
        return Err(Error::WeightsInvalid(format!(
            "squared Schmidt coefficients sum to {norm2}"
        )));
    }
    if let Some(&small) = lambda.iter().find(|l| l.abs() < MIN_SCHMIDT) {
        return Err(Error::RankDeficientSchmidt(small));
    }
    let mut psi = vec![ZERO; d * d];
    for (i, &l) in lambda.iter().enumerate() {
        for (slot, v) in psi.iter_mut().zip(kron_vec(&ua.column(i), &ub.column(i))) {
            *slot += v * l;
        }
    }
    Ok(StateFamilyResult {
        analytic_msc: Some((d - 1) as f64),
        ..StateFamilyResult::plain(DensityMatrix::pure(&psi, &[d, d])?)
    })
}

/// State with entries only on the diagonal and anti-diagonal.
///
/// `anti = [rho_03, rho_12]`. Bob's Bloch vector lies along z and the
/// steering ellipsoid has an axis there, so `C` is the longer of the other
/// two semiaxes. When Bob's marginal is maximally mixed any axis may serve,
/// and the infimum picks the middle semiaxis.
pub fn x_state(diagonal: [f64; 4], anti: [Complex64; 2]) -> Result<StateFamilyResult> {
    let mut m = ComplexMatrix::diagonal(&diagonal);
    m[(0, 3)] = anti[0];
    m[(3, 0)] = anti[0].conj();
    m[(1, 2)] = anti[1];
    m[(2, 1)] = anti[1].conj();
    let state = DensityMatrix::new(m, &[2, 2])?;
    let Ok(e) = qse(&state) else {
        // pure Alice marginal: a product state
        return Ok(StateFamilyResult {
            analytic_msc: Some(0.0),
            ..StateFamilyResult::plain(state)
        });
    };
    let bz = diagonal[0] - diagonal[1] + diagonal[2] - diagonal[3];
    let value = if bz.abs() < 1e-9 {
        e.semiaxes[1]
    } else {
        let along = (0..3)
            .max_by(|&i, &j| e.frame[i].z.abs().total_cmp(&e.frame[j].z.abs()))
            .expect("three axes");
        (0..3)
            .filter(|&k| k != along)
            .map(|k| e.semiaxes[k])
            .fold(0.0, f64::max)
    };
    Ok(StateFamilyResult {
        state,
        analytic_msc: Some(value),
        analytic_qse: Some(e),
        msc_bounds: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::pauli_decompose;
    use std::f64::consts::PI;

    fn assert_qse(found: &Ellipsoid, expected: &Ellipsoid, tol: f64) {
        assert!(
            found.center.distance(expected.center) < tol,
            "{found:?} vs {expected:?}"
        );
        for k in 0..3 {
            assert!(
                (found.semiaxes[k] - expected.semiaxes[k]).abs() < tol,
                "{found:?} vs {expected:?}"
            );
        }
    }

    #[test]
    fn rho_c_is_classical() {
        let r = rho_c(0.75).unwrap();
        assert_eq!(r.analytic_msc, Some(0.0));
        let form = pauli_decompose(&r.state).unwrap();
        assert!(form.bob().distance(BlochVector::new(0.5, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn classical_weights_checked() {
        let basis = Basis::computational(2);
        let a = DensityMatrix::maximally_mixed(&[2]).unwrap();
        assert!(matches!(
            classical_state(&[0.5, 0.6], &[a.clone(), a.clone()], &basis),
            Err(Error::WeightsInvalid(_))
        ));
        assert!(matches!(
            classical_state(&[1.5, -0.5], &[a.clone(), a.clone()], &basis),
            Err(Error::WeightsInvalid(_))
        ));
        let single = classical_state(&[1.0], &[a], &basis).unwrap();
        assert_eq!(single.state.dims(), &[2, 2]);
    }

    #[test]
    fn rho_p_matches_its_steering_ellipsoid() {
        for (p, theta) in [(0.9, 0.2 * PI), (0.5, 0.1 * PI), (0.3, 1.1), (0.7, 2.5)] {
            let r = rho_p(p, theta).unwrap();
            let found = qse(&r.state).unwrap();
            assert_qse(&found, &r.analytic_qse.unwrap(), 1e-12);
        }
    }

    #[test]
    fn rho_p_axis_ratios() {
        let expected = [0.980, 0.859, 0.629, 0.496];
        for ((p, theta), want) in [(0.9, 0.2 * PI), (0.9, 0.1 * PI), (0.7, 0.1 * PI), (0.5, 0.1 * PI)]
            .into_iter()
            .zip(expected)
        {
            let e = rho_p(p, theta).unwrap().analytic_qse.unwrap();
            assert!((e.semiaxes[2] / e.semiaxes[0] - want).abs() < 1e-3);
        }
    }

    #[test]
    fn rho_p_at_right_angle() {
        let r = rho_p(0.4, PI / 2.0).unwrap();
        assert!((r.analytic_msc.unwrap() - 0.4).abs() < 1e-15);
        assert!(rho_p(1.0, 0.3).is_err());
    }

    #[test]
    fn werner_ellipsoid_is_a_ball() {
        for p in [0.0, 0.3, 1.0] {
            let r = werner(p).unwrap();
            assert_qse(&qse(&r.state).unwrap(), &r.analytic_qse.unwrap(), 1e-12);
        }
        assert!(werner(1.2).is_err());
    }

    #[test]
    fn maximally_obese_geometry() {
        for b in [0.0, 0.5, 0.64, 0.9] {
            let r = maximally_obese(b).unwrap();
            let form = pauli_decompose(&r.state).unwrap();
            assert!(form.alice().norm() < 1e-14);
            assert_qse(&qse(&r.state).unwrap(), &r.analytic_qse.unwrap(), 1e-12);
        }
        assert!((maximally_obese(0.64).unwrap().analytic_msc.unwrap() - 0.6).abs() < 1e-15);
        assert!(maximally_obese(1.0).is_err());
    }

    #[test]
    fn chord_endpoints_and_value() {
        let r = chord_symmetric(0.8).unwrap();
        assert!((r.analytic_msc.unwrap() - 0.6).abs() < 1e-15);
        let found = qse(&r.state).unwrap();
        assert_qse(&found, &r.analytic_qse.unwrap(), 1e-12);
        assert!(pauli_decompose(&r.state).unwrap().alice().norm() < 1e-15);
    }

    #[test]
    fn chord_through_origin_rejected() {
        let x = crate::qcore::spinor(BlochVector::X);
        let mx = crate::qcore::spinor(-BlochVector::X);
        assert!(matches!(
            chord_state(&[ONE, ZERO], &x, &mx),
            Err(Error::GeometryViolation(_))
        ));
    }

    #[test]
    fn dlc_segment_and_bounds() {
        let theta = 0.6 * PI;
        let b2 = BlochVector::new(theta.sin(), 0.0, theta.cos());
        let r = dlc_state(BlochVector::Z, b2, 0.5).unwrap();
        let e = qse(&r.state).unwrap();
        assert_eq!(e.rank(1e-9), 1);
        assert!(e.contains(BlochVector::Z, 1e-9) && e.contains(b2, 1e-9));
        let bounds = r.msc_bounds.unwrap();
        // equal lengths: theta1 is half the angle
        assert!((bounds.lower - (theta / 2.0).sin()).abs() < 1e-11);
        assert_eq!(bounds.upper, 1.0);
    }

    #[test]
    fn dlc_theta1_solves_its_equation() {
        for (b1, b2, theta) in [(0.9, 0.4, 1.0), (1.0, 0.2, 2.8), (0.5, 0.5, 0.3)] {
            let t1 = dlc_theta1(b1, b2, theta);
            assert!((b1 * t1.sin() - b2 * (theta - t1).sin()).abs() < 1e-11);
        }
    }

    #[test]
    fn radial_segments_rejected() {
        let b = BlochVector::new(0.1, 0.2, 0.3);
        assert!(matches!(dlc_state(b, b, 0.5), Err(Error::RadialSegment)));
        assert!(matches!(dlc_state(b, b * -2.0, 0.5), Err(Error::RadialSegment)));
    }

    #[test]
    fn dlc_perpendicular_weights() {
        let r = dlc_perpendicular(0.7, 0.75 * PI).unwrap();
        let b = pauli_decompose(&r.state).unwrap().bob();
        assert!(b.z.abs() < 1e-14);
    }

    #[test]
    fn pure_schmidt_checks() {
        let id = ComplexMatrix::identity(2);
        let r = pure_schmidt(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2], &id, &id).unwrap();
        assert_eq!(r.analytic_msc, Some(1.0));
        assert!(matches!(
            pure_schmidt(&[1.0, 0.0], &id, &id),
            Err(Error::RankDeficientSchmidt(_))
        ));
        assert!(matches!(
            pure_schmidt(&[0.5, 0.5], &id, &id),
            Err(Error::WeightsInvalid(_))
        ));
        let id3 = ComplexMatrix::identity(3);
        let l: Vec<f64> = [0.5f64, 0.3, 0.2].iter().map(|x| x.sqrt()).collect();
        assert_eq!(pure_schmidt(&l, &id3, &id3).unwrap().analytic_msc, Some(2.0));
    }

    #[test]
    fn x_state_reproduces_werner() {
        let p = 0.6;
        let d = [(1.0 - p) / 4.0, (1.0 + p) / 4.0, (1.0 + p) / 4.0, (1.0 - p) / 4.0];
        let x = x_state(d, [ZERO, Complex64::new(-p / 2.0, 0.0)]).unwrap();
        assert!(x
            .state
            .matrix()
            .approx_eq(werner(p).unwrap().state.matrix(), 1e-15));
        assert!((x.analytic_msc.unwrap() - p).abs() < 1e-12);
    }

    #[test]
    fn x_state_transverse_axis() {
        // rho_B along z, transverse semiaxes from |rho_03| and |rho_12|
        let x = x_state(
            [0.4, 0.1, 0.3, 0.2],
            [Complex64::new(0.1, 0.05), Complex64::new(0.05, 0.0)],
        )
        .unwrap();
        let e = x.analytic_qse.unwrap();
        assert!(e.center.x.abs() < 1e-14 && e.center.y.abs() < 1e-14);
        assert!(x.analytic_msc.unwrap() > 0.0);
    }

    #[test]
    fn classical_x_state() {
        let t = 0.3;
        let x = x_state([t / 2.0, t / 2.0, (1.0 - t) / 2.0, (1.0 - t) / 2.0], [ZERO, ZERO]).unwrap();
        assert!(x.analytic_msc.unwrap().abs() < 1e-12);
    }

    #[test]
    fn damped_formula_endpoints() {
        for t in [0.6, 0.75, 0.9] {
            assert_eq!(damped_rho_c_msc(t, 0.0), 0.0);
            assert_eq!(damped_rho_c_msc(t, 1.0), 0.0);
        }
        assert!(damped_rho_c_msc(0.75, 0.5) > 0.01);
    }
}
