use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{Measurement, MscOptions, MscResult};
use crate::coherence::coherence_l1;
use crate::error::{Error, Result};
use crate::optim::{halton, nelder_mead, NelderMeadOptions};
use crate::qcore::{hermitian_function, normalized, Basis, ComplexMatrix, DensityMatrix, Subsystem, ZERO};
use crate::steering::{steer, PovmElement};

pub const MAX_GENERAL_DIM: usize = 4;
const OUTER_GRID: u64 = 32;

/// `rho` with Bob's factor rotated into `basis`, so that the steered
/// operator's matrix is already expressed in that basis.
fn in_bob_basis(rho: &DensityMatrix, basis: &Basis) -> ComplexMatrix {
    let (da, _) = rho.bipartite_dims().expect("bipartite");
    let u = ComplexMatrix::identity(da).kron(&basis.to_unitary());
    &(&u.adjoint() * rho.matrix()) * &u
}

/// Coherence of the state steered by `|psi><psi|`, with `rho_in_basis`
/// from [`in_bob_basis`].
fn objective(rho_in_basis: &ComplexMatrix, da: usize, db: usize, x: &[f64]) -> f64 {
    let psi: Vec<Complex64> = (0..da).map(|k| Complex64::new(x[2 * k], x[2 * k + 1])).collect();
    let Some(psi) = normalized(&psi) else {
        return 0.0;
    };
    // sigma[b][b'] = sum_{k,l} psi_k conj(psi_l) rho[(l,b),(k,b')]
    let mut sigma = vec![ZERO; db * db];
    for k in 0..da {
        for l in 0..da {
            let w = psi[k] * psi[l].conj();
            if w == ZERO {
                continue;
            }
            for b in 0..db {
                for bp in 0..db {
                    sigma[b * db + bp] += w * rho_in_basis[(l * db + b, k * db + bp)];
                }
            }
        }
    }
    let p: f64 = (0..db).map(|b| sigma[b * db + b].re).sum();
    if p <= 1e-14 {
        return 0.0;
    }
    let mut off = 0.0;
    for b in 0..db {
        for bp in 0..db {
            if b != bp {
                off += sigma[b * db + bp].norm();
            }
        }
    }
    off / p
}

struct PureMax {
    x: Vec<f64>,
    value: f64,
    converged: bool,
}

fn maximize_over_rank_one(
    rho: &DensityMatrix,
    basis: &Basis,
    starts: usize,
    refine: usize,
    opts: &MscOptions,
) -> PureMax {
    let (da, db) = rho.bipartite_dims().expect("bipartite");
    let rho_b = in_bob_basis(rho, basis);
    let f = |x: &[f64]| objective(&rho_b, da, db, x);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut candidates: Vec<(Vec<f64>, f64)> = (0..starts.max(1))
        .map(|_| {
            let x: Vec<f64> = (0..2 * da).map(|_| StandardNormal.sample(&mut rng)).collect();
            let v = f(&x);
            (x, v)
        })
        .collect();
    // stable: equal values keep generation order
    candidates.sort_by(|a, b| b.1.total_cmp(&a.1));

    let nm = NelderMeadOptions {
        initial_step: 0.2,
        improvement_tol: opts.tolerance,
        max_evaluations: opts.max_evaluations,
        ..NelderMeadOptions::default()
    };
    let mut best = PureMax {
        x: candidates[0].0.clone(),
        value: candidates[0].1,
        converged: refine == 0,
    };
    for (i, (x0, _)) in candidates.iter().take(refine).enumerate() {
        let scale = x0.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-12);
        let x0: Vec<f64> = x0.iter().map(|v| v / scale).collect();
        let run = nelder_mead(|x| -f(x), &x0, &nm);
        if -run.value > best.value || (i == 0 && -run.value >= best.value) {
            best = PureMax {
                x: run.x,
                value: -run.value,
                converged: run.converged,
            };
        }
    }
    best
}

/// Eigenbasis rotated within its degenerate clusters by `exp(i H)`, with
/// the off-diagonal entries of each cluster's `H` taken from `params`.
pub(crate) fn rotated_basis(
    base: &Basis,
    clusters: &[std::ops::Range<usize>],
    params: &[f64],
) -> Result<Basis> {
    let d = base.dim();
    let mut vectors = base.vectors().to_vec();
    let mut offset = 0;
    for cluster in clusters.iter().filter(|c| c.len() > 1) {
        let k = cluster.len();
        let mut h = ComplexMatrix::zeros(k, k);
        for i in 0..k {
            for j in (i + 1)..k {
                let z = Complex64::new(params[offset], params[offset + 1]);
                offset += 2;
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        let u = hermitian_function(&h, |x| Complex64::from_polar(1.0, x))?;
        for c in 0..k {
            let mut v = vec![ZERO; d];
            for r in 0..k {
                let coef = u[(r, c)];
                for (slot, x) in v.iter_mut().zip(base.vector(cluster.start + r)) {
                    *slot += coef * x;
                }
            }
            vectors[cluster.start + c] = v;
        }
    }
    Basis::new(vectors, true)
}

pub(crate) fn generator_len(clusters: &[std::ops::Range<usize>]) -> usize {
    clusters.iter().map(|c| c.len() * (c.len() - 1)).sum()
}

/// MSC by direct search over rank-one outcomes `|psi><psi|`, `d_A, d_B <= 4`.
///
/// Rank one suffices: for a fixed basis the steered state of a general
/// outcome is a probability-weighted mixture of rank-one steered states,
/// and the l1 coherence is convex.
pub fn msc_general(rho: &DensityMatrix, opts: &MscOptions) -> Result<MscResult> {
    let (da, db) = rho.bipartite_dims()?;
    if da.max(db) > MAX_GENERAL_DIM {
        return Err(Error::DimensionTooLarge(da.max(db), MAX_GENERAL_DIM));
    }
    let rho_b = rho.partial_trace(Subsystem::B)?;
    let eig = rho_b.eigen(opts.degeneracy_tol);

    let (best, basis) = if !eig.basis.is_degenerate() {
        let best = maximize_over_rank_one(rho, &eig.basis, opts.general_starts, 6, opts);
        (best, eig.basis.clone())
    } else {
        let clusters = eig.clusters(opts.degeneracy_tol);
        let n_params = generator_len(&clusters);
        let inner = |params: &[f64]| -> f64 {
            match rotated_basis(&eig.basis, &clusters, params) {
                Ok(basis) => maximize_over_rank_one(rho, &basis, 16, 2, opts).value,
                Err(_) => f64::INFINITY,
            }
        };
        let half_pi = std::f64::consts::FRAC_PI_2;
        let mut grid: Vec<(Vec<f64>, f64)> = (0..=OUTER_GRID)
            .map(|k| {
                let p: Vec<f64> = if k == 0 {
                    vec![0.0; n_params]
                } else {
                    halton(k, n_params)
                        .iter()
                        .map(|u| (2.0 * u - 1.0) * half_pi)
                        .collect()
                };
                let v = inner(&p);
                (p, v)
            })
            .collect();
        grid.sort_by(|a, b| a.1.total_cmp(&b.1));
        let nm = NelderMeadOptions {
            initial_step: 0.1,
            improvement_tol: opts.tolerance,
            max_evaluations: opts.max_evaluations / 4,
            max_restarts: 3,
            ..NelderMeadOptions::default()
        };
        let mut best_params = grid[0].0.clone();
        let mut best_value = grid[0].1;
        let mut outer_converged = true;
        for (p0, _) in grid.iter().take(opts.outer_starts.min(3)) {
            let run = nelder_mead(inner, p0, &nm);
            if run.value < best_value {
                best_value = run.value;
                best_params = run.x;
                outer_converged = run.converged;
            }
        }
        let basis = rotated_basis(&eig.basis, &clusters, &best_params)?;
        let mut best = maximize_over_rank_one(rho, &basis, opts.general_starts, 6, opts);
        best.converged &= outer_converged;
        (best, basis)
    };

    let psi: Vec<Complex64> = (0..da)
        .map(|k| Complex64::new(best.x[2 * k], best.x[2 * k + 1]))
        .collect();
    let psi = normalized(&psi).ok_or_else(|| Error::DidNotConverge("zero measurement vector".into()))?;
    let (steered_state, _) = steer(rho, &PovmElement::projector(&psi)?)?;
    let value = coherence_l1(&steered_state, &basis)?;
    Ok(MscResult {
        value,
        measurement: Measurement::Vector(psi),
        steered_state,
        reference_basis: basis,
        degenerate_path: eig.basis.is_degenerate(),
        ill_conditioned: !eig.basis.is_degenerate() && eig.min_gap() < opts.conditioning_gap,
        converged: best.converged,
    })
}
