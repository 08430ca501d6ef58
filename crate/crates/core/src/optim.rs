//! Derivative-free minimization and deterministic point sets on the sphere.

use crate::qcore::BlochVector;

/// Golden ratio conjugate, `(sqrt(5) - 1) / 2`.
const GOLDEN_FRACTION: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    pub initial_step: f64,
    /// Spread of simplex values at which a run may stop.
    pub f_tol: f64,
    /// Simplex diameter at which a run may stop.
    pub x_tol: f64,
    pub max_evaluations: usize,
    /// Restarts from the incumbent end once one improves by less than this.
    pub improvement_tol: f64,
    pub max_restarts: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.1,
            f_tol: 1e-13,
            x_tol: 1e-9,
            max_evaluations: 4000,
            improvement_tol: 1e-9,
            max_restarts: 6,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Adaptive Nelder–Mead with restarts from the best vertex.
pub fn nelder_mead(mut f: impl FnMut(&[f64]) -> f64, x0: &[f64], opts: &NelderMeadOptions) -> Minimum {
    let mut best = Minimum {
        value: f(x0),
        x: x0.to_vec(),
        evaluations: 1,
        converged: false,
    };
    let mut step = opts.initial_step;
    for _ in 0..=opts.max_restarts {
        let run = simplex_run(&mut f, &best.x, step, opts);
        let improvement = best.value - run.value;
        best.evaluations += run.evaluations;
        best.converged = run.converged;
        if run.value < best.value {
            best.value = run.value;
            best.x = run.x;
        }
        if improvement < opts.improvement_tol && run.converged {
            break;
        }
        step = (step * 0.5).max(opts.x_tol * 10.0);
    }
    best
}

fn simplex_run(
    f: &mut impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    opts: &NelderMeadOptions,
) -> Minimum {
    let n = x0.len();
    let nf = n as f64;
    let (alpha, gamma, rho, sigma) = if n > 2 {
        (1.0, 1.0 + 2.0 / nf, 0.75 - 1.0 / (2.0 * nf), 1.0 - 1.0 / nf)
    } else {
        (1.0, 2.0, 0.5, 0.5)
    };

    let mut pts: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| f(p)).collect();
    let mut evals = n + 1;
    let mut converged = false;

    while evals < opts.max_evaluations {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let spread = vals[n] - vals[0];
        let diameter = pts[1..].iter().map(|p| dist(p, &pts[0])).fold(0.0, f64::max);
        if (spread <= opts.f_tol && diameter <= opts.x_tol) || diameter <= 1e-14 {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|k| pts[..n].iter().map(|p| p[k]).sum::<f64>() / nf)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&pts[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(alpha);
        let fr = f(&xr);
        evals += 1;
        if fr < vals[0] {
            let xe = along(alpha * gamma);
            let fe = f(&xe);
            evals += 1;
            if fe < fr {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
            continue;
        }
        if fr < vals[n - 1] {
            pts[n] = xr;
            vals[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[n] {
            let xc = along(alpha * rho);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = along(-rho);
            let fc = f(&xc);
            (xc, fc)
        };
        evals += 1;
        if fc < vals[n].min(fr) {
            pts[n] = xc;
            vals[n] = fc;
            continue;
        }
        for i in 1..=n {
            let shrunk: Vec<f64> = pts[0]
                .iter()
                .zip(&pts[i])
                .map(|(b, p)| b + sigma * (p - b))
                .collect();
            vals[i] = f(&shrunk);
            pts[i] = shrunk;
        }
        evals += n;
    }

    let best = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap_or(0);
    Minimum {
        x: pts[best].clone(),
        value: vals[best],
        evaluations: evals,
        converged,
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Unit vector at tangent-plane coordinates `(u, v)` around `origin`.
///
/// `origin` must be a unit vector; `e1, e2` complete it to a frame. The
/// chart has no coordinate singularity within a hemisphere of `origin`.
pub fn sphere_chart(origin: BlochVector, e1: BlochVector, e2: BlochVector, uv: &[f64]) -> BlochVector {
    let p = origin + e1 * uv[0] + e2 * uv[1];
    p.normalized().unwrap_or(origin)
}

/// The `n`-point Fibonacci lattice on the unit sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<BlochVector> {
    let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden_angle * i as f64;
            BlochVector::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

/// Van der Corput radical inverse of `k` in `base`.
pub fn radical_inverse(mut k: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut out = 0.0;
    while k > 0 {
        out += (k % base) as f64 * f;
        k /= base;
        f *= inv;
    }
    out
}

/// Point `k` of an infinite golden-angle spiral with radical-inverse
/// heights. Any prefix is an evenly spread point set, and the set for
/// `n` points is contained in the set for every larger `n`.
pub fn nested_sphere_point(k: u64) -> BlochVector {
    let z = 1.0 - 2.0 * radical_inverse(k, 2) - 1.0 / (1u64 << 20) as f64;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let phi = 2.0 * std::f64::consts::PI * (k as f64 * GOLDEN_FRACTION).fract();
    BlochVector::new(r * phi.cos(), r * phi.sin(), z)
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Point `k` of the Halton sequence in `[0, 1)^dim`, `dim <= 16`.
pub fn halton(k: u64, dim: usize) -> Vec<f64> {
    assert!(dim <= PRIMES.len(), "Halton dimension {dim} unsupported");
    PRIMES[..dim].iter().map(|&b| radical_inverse(k + 1, b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_rosenbrock() {
        let rosen = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let opts = NelderMeadOptions {
            max_evaluations: 20_000,
            ..Default::default()
        };
        let min = nelder_mead(rosen, &[-1.2, 1.0], &opts);
        assert!(min.converged);
        assert!(
            (min.x[0] - 1.0).abs() < 1e-5 && (min.x[1] - 1.0).abs() < 1e-5,
            "{:?}",
            min.x
        );
    }

    #[test]
    fn minimizes_quadratic_in_six_dimensions() {
        let f = |x: &[f64]| {
            x.iter()
                .enumerate()
                .map(|(i, v)| (i + 1) as f64 * (v - 0.3).powi(2))
                .sum()
        };
        let min = nelder_mead(f, &[0.0; 6], &NelderMeadOptions::default());
        assert!(min.value < 1e-12, "{}", min.value);
    }

    #[test]
    fn fibonacci_points_are_unit_and_spread() {
        let pts = fibonacci_sphere(512);
        assert!(pts.iter().all(|p| (p.norm() - 1.0).abs() < 1e-14));
        let mean = pts.iter().fold(BlochVector::ZERO, |a, &p| a + p) * (1.0 / 512.0);
        assert!(mean.norm() < 1e-2);
    }

    #[test]
    fn nested_points_are_unit() {
        for k in 0..1000 {
            assert!((nested_sphere_point(k).norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn nested_points_cover_sphere() {
        // every Fibonacci probe direction has a nested point within 0.15 rad
        let pts: Vec<_> = (0..4096).map(nested_sphere_point).collect();
        for probe in fibonacci_sphere(200) {
            let best = pts.iter().map(|p| p.angle(probe)).fold(f64::INFINITY, f64::min);
            assert!(best < 0.15, "gap {best} at {probe:?}");
        }
    }

    #[test]
    fn radical_inverse_base_two() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(2, 2), 0.25);
        assert_eq!(radical_inverse(3, 2), 0.75);
    }
}
