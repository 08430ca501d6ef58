use super::{Measurement, MscOptions, MscResult};
use crate::error::{Error, Result};
use crate::optim::{fibonacci_sphere, nelder_mead, sphere_chart, NelderMeadOptions};
use crate::qcore::{pauli_decompose, BlochVector, DensityMatrix, PauliForm, Subsystem};
use crate::steering::{qse, steer, PovmElement};

const PURE_MARGINAL: f64 = 1e-9;

/// Coherence of the state steered by `m`, in the basis `{n, -n}`.
fn steered_coherence(form: &PauliForm, m: BlochVector, n: BlochVector) -> f64 {
    let denom = (1.0 + form.alice().dot(m)).abs();
    if denom <= 1e-15 {
        return 0.0;
    }
    (form.bob() + form.t_transpose_times(m)).cross(n).norm() / denom
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SphereMax {
    pub point: BlochVector,
    pub value: f64,
    pub converged: bool,
}

/// Multi-start maximization of `f` over the unit sphere.
///
/// The grid is scanned in lattice order; the best points at least
/// `start_separation` apart are refined in a tangent-plane chart. Equal
/// maxima resolve to the earliest start.
pub(crate) fn maximize_on_sphere(
    f: impl Fn(BlochVector) -> f64,
    grid: &[BlochVector],
    refine_starts: usize,
    separation: f64,
    nm: &NelderMeadOptions,
) -> SphereMax {
    let values: Vec<f64> = grid.iter().map(|&p| f(p)).collect();
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));

    let mut starts: Vec<usize> = Vec::with_capacity(refine_starts);
    for &i in &order {
        if starts.len() >= refine_starts {
            break;
        }
        if starts.iter().all(|&s| grid[s].angle(grid[i]) >= separation) {
            starts.push(i);
        }
    }

    let mut best = SphereMax {
        point: grid[order[0]],
        value: values[order[0]],
        converged: refine_starts == 0,
    };
    for &s in &starts {
        let origin = grid[s];
        let (e1, e2) = origin.orthonormal_complement();
        let run = nelder_mead(|uv| -f(sphere_chart(origin, e1, e2, uv)), &[0.0, 0.0], nm);
        let value = -run.value;
        if value > best.value || (s == starts[0] && value >= best.value) {
            best = SphereMax {
                point: sphere_chart(origin, e1, e2, &run.x),
                value,
                converged: run.converged,
            };
        }
    }
    best
}

fn sphere_nm(opts: &MscOptions) -> NelderMeadOptions {
    NelderMeadOptions {
        initial_step: 0.1,
        improvement_tol: opts.tolerance,
        max_evaluations: opts.max_evaluations,
        ..NelderMeadOptions::default()
    }
}

/// MSC of a two-qubit state from its Pauli form.
///
/// With a non-degenerate Bob marginal this maximizes
/// `|T^T m x n_B| / |1 + a.m|` over unit `m`, `n_B = b/|b|`. With a
/// degenerate marginal it takes the infimum of that maximum over unit
/// `n_B`.
pub fn msc_two_qubit(rho: &DensityMatrix, opts: &MscOptions) -> Result<MscResult> {
    let form = pauli_decompose(rho)?;
    let a = form.alice();
    if a.norm() >= 1.0 - PURE_MARGINAL {
        return Err(Error::TrivialProductState(a.norm()));
    }
    let rho_b = rho.partial_trace(Subsystem::B)?;
    let eig = rho_b.eigen(opts.degeneracy_tol);
    let grid = fibonacci_sphere(opts.grid_points);
    let nm = sphere_nm(opts);

    let (m, value, n, degenerate, converged) = if !eig.basis.is_degenerate() {
        let n = form
            .bob()
            .normalized()
            .expect("non-degenerate marginal has b != 0");
        let best = maximize_on_sphere(
            |m| steered_coherence(&form, m, n),
            &grid,
            opts.refine_starts,
            opts.start_separation,
            &nm,
        );
        (best.point, best.value, n, false, best.converged)
    } else {
        let (n, best) = degenerate_minimax(rho, &form, &grid, opts);
        (best.point, best.value, n, true, best.converged)
    };

    let reference_basis = if degenerate {
        let b = n.basis()?;
        crate::qcore::Basis::new(b.vectors().to_vec(), true)?
    } else {
        eig.basis.clone()
    };
    let (steered_state, _) = steer(rho, &PovmElement::from_bloch(m)?)?;
    Ok(MscResult {
        value,
        measurement: Measurement::Bloch(m),
        steered_state,
        reference_basis,
        degenerate_path: degenerate,
        ill_conditioned: !degenerate && eig.min_gap() < opts.conditioning_gap,
        converged,
    })
}

/// `inf_n max_m` for a degenerate Bob marginal.
///
/// The inner maximum is not concave in `n`, so the outer search restarts
/// from the lowest grid directions and from the ellipsoid axes.
fn degenerate_minimax(
    rho: &DensityMatrix,
    form: &PauliForm,
    grid: &[BlochVector],
    opts: &MscOptions,
) -> (BlochVector, SphereMax) {
    let coarse = |n: BlochVector| {
        grid.iter()
            .map(|&m| steered_coherence(form, m, n))
            .fold(0.0, f64::max)
    };
    let inner_grid = fibonacci_sphere((opts.grid_points / 4).max(64));
    let nm = sphere_nm(opts);
    let inner = |n: BlochVector| {
        maximize_on_sphere(
            |m| steered_coherence(form, m, n),
            &inner_grid,
            opts.refine_starts.min(4),
            opts.start_separation,
            &nm,
        )
    };

    let outer_values: Vec<f64> = grid.iter().map(|&n| coarse(n)).collect();
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&i, &j| outer_values[i].total_cmp(&outer_values[j]).then(i.cmp(&j)));
    let mut candidates: Vec<BlochVector> = Vec::new();
    for &i in &order {
        if candidates.len() >= opts.outer_starts {
            break;
        }
        if candidates
            .iter()
            .all(|c| c.angle(grid[i]) >= opts.start_separation)
        {
            candidates.push(grid[i]);
        }
    }
    if let Ok(e) = qse(rho) {
        candidates.extend(e.frame);
    }

    let outer_nm = NelderMeadOptions {
        initial_step: 0.05,
        improvement_tol: opts.tolerance,
        max_evaluations: opts.max_evaluations / 4,
        max_restarts: 3,
        ..NelderMeadOptions::default()
    };
    let mut best_n = candidates[0];
    let mut best_value = f64::INFINITY;
    let mut converged = true;
    for origin in candidates {
        let (e1, e2) = origin.orthonormal_complement();
        let run = nelder_mead(
            |uv| inner(sphere_chart(origin, e1, e2, uv)).value,
            &[0.0, 0.0],
            &outer_nm,
        );
        if run.value < best_value {
            best_value = run.value;
            best_n = sphere_chart(origin, e1, e2, &run.x);
            converged = run.converged;
        }
    }

    let full = maximize_on_sphere(
        |m| steered_coherence(form, m, best_n),
        grid,
        opts.refine_starts,
        opts.start_separation,
        &nm,
    );
    (
        best_n,
        SphereMax {
            converged: converged && full.converged,
            ..full
        },
    )
}
