use num_complex::Complex64;

use super::general::{generator_len, rotated_basis};
use crate::coherence::off_diagonal_l1;
use crate::error::{Error, Result};
use crate::optim::{halton, nested_sphere_point};
use crate::qcore::{ComplexMatrix, DensityMatrix, Subsystem, DEFAULT_DEGENERACY_TOL};
use crate::steering::steered_operator;

pub const MAX_ORACLE_DIM: usize = 3;
/// Basis samples for the infimum when Bob's marginal is degenerate.
const ORACLE_BASES: u64 = 64;

/// Rank-one outcome number `k` of the oracle grid on Alice's side.
fn grid_outcome(k: u64, da: usize) -> ComplexMatrix {
    match da {
        2 => nested_sphere_point(k).to_operator(),
        _ => {
            // hyperspherical amplitudes and relative phases
            let u = halton(k, 4);
            let (alpha, beta) = (
                u[0] * std::f64::consts::FRAC_PI_2,
                u[1] * std::f64::consts::FRAC_PI_2,
            );
            let tau = std::f64::consts::TAU;
            let psi = [
                Complex64::new(alpha.cos(), 0.0),
                Complex64::from_polar(alpha.sin() * beta.cos(), tau * u[2]),
                Complex64::from_polar(alpha.sin() * beta.sin(), tau * u[3]),
            ];
            ComplexMatrix::projector(&psi)
        }
    }
}

/// Brute-force MSC over a deterministic grid of `resolution` rank-one
/// outcomes on Alice's side (`d_A <= 3`).
///
/// The grids are prefixes of fixed infinite sequences, so raising the
/// resolution never lowers the result. With a non-degenerate Bob marginal
/// the value is a lower bound on the true MSC. With a degenerate marginal
/// it is the minimum over a fixed sample of eigenbases.
pub fn msc_oracle(rho: &DensityMatrix, resolution: usize) -> Result<f64> {
    let (da, db) = rho.bipartite_dims()?;
    if da > MAX_ORACLE_DIM {
        return Err(Error::DimensionTooLarge(da, MAX_ORACLE_DIM));
    }
    if da == 1 {
        return Ok(0.0);
    }
    let steered: Vec<(ComplexMatrix, f64)> = (0..resolution as u64)
        .filter_map(|k| {
            let s = steered_operator(rho.matrix(), &grid_outcome(k, da), da, db);
            let p = s.trace().re;
            (p > 1e-12).then_some((s, p))
        })
        .collect();

    let eig = rho.partial_trace(Subsystem::B)?.eigen(DEFAULT_DEGENERACY_TOL);
    let bases = if eig.basis.is_degenerate() {
        let clusters = eig.clusters(DEFAULT_DEGENERACY_TOL);
        let n = generator_len(&clusters);
        (0..=ORACLE_BASES)
            .map(|k| {
                let params: Vec<f64> = if k == 0 {
                    vec![0.0; n]
                } else {
                    halton(k, n)
                        .iter()
                        .map(|u| (2.0 * u - 1.0) * std::f64::consts::FRAC_PI_2)
                        .collect()
                };
                rotated_basis(&eig.basis, &clusters, &params)
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![eig.basis]
    };

    Ok(bases
        .iter()
        .map(|basis| {
            steered
                .iter()
                .map(|(s, p)| off_diagonal_l1(s, basis) / p)
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min))
}
