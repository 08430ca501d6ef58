//! Seeded random states, unitaries and channels for property checks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Dirichlet, Distribution, StandardNormal};

use crate::channels::KrausChannel;
use crate::error::Result;
use crate::qcore::{inner, pauli, BlochVector, ComplexMatrix, DensityMatrix, ZERO};
use crate::steering::canonical_transform;

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn ginibre(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// `G G^H / tr(G G^H)` for a `d x d` complex Gaussian `G`.
pub fn random_state(rng: &mut impl Rng, dims: &[usize]) -> Result<DensityMatrix> {
    let d: usize = dims.iter().product();
    let g = ginibre(rng, d, d);
    DensityMatrix::from_unnormalized((&g * &g.adjoint()).hermitian_part(), dims)
}

/// Haar-random unitary by Gram–Schmidt on Gaussian columns.
pub fn random_unitary(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for c in &cols {
                let overlap = inner(c, &v);
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= overlap * y;
                }
            }
        }
        if let Some(v) = crate::qcore::normalized(&v) {
            cols.push(v);
        }
    }
    ComplexMatrix::from_columns(&cols)
}

/// Uniform point of the closed unit ball.
pub fn random_bloch(rng: &mut impl Rng) -> BlochVector {
    loop {
        let v = BlochVector::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        if v.norm() <= 1.0 {
            return v;
        }
    }
}

/// Canonical form of a random two-qubit state.
pub fn random_canonical_state(rng: &mut impl Rng) -> Result<DensityMatrix> {
    canonical_transform(&random_state(rng, &[2, 2])?)
}

/// `rho -> U (sum_i e_i sigma_i (V rho V^H) sigma_i) U^H` with Dirichlet
/// weights and Haar `U`, `V`. Every unital qubit channel has this form.
pub fn random_unital_channel(rng: &mut impl Rng) -> Result<KrausChannel> {
    let e: Vec<f64> = Dirichlet::new(&[1.0; 4])
        .expect("valid concentration")
        .sample(rng);
    let u = random_unitary(rng, 2);
    let v = random_unitary(rng, 2);
    let ops = (0..4)
        .map(|i| (&(&u * &pauli(i)) * &v).scale_real(e[i].sqrt()))
        .collect();
    KrausChannel::new(ops, "random-unital")
}

/// Channel from the first `d` rows of a Haar unitary on `C^d (x) C^k`.
pub fn random_channel(rng: &mut impl Rng, d: usize, k: usize) -> Result<KrausChannel> {
    let w = random_unitary(rng, d * k);
    let ops = (0..k)
        .map(|j| ComplexMatrix::from_fn(d, d, |r, c| w[(j * d + r, c)]))
        .collect();
    KrausChannel::new(ops, "random")
}

/// A random orthonormal basis as the columns of a Haar unitary.
pub fn random_basis(rng: &mut impl Rng, d: usize) -> Result<crate::qcore::Basis> {
    let u = random_unitary(rng, d);
    crate::qcore::Basis::new((0..d).map(|c| u.column(c)).collect(), false)
}

/// Pure state vector with Gaussian amplitudes, normalized.
pub fn random_pure(rng: &mut impl Rng, d: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
    crate::qcore::normalized(&v).unwrap_or_else(|| {
        let mut e = vec![ZERO; d];
        e[0] = Complex64::new(1.0, 0.0);
        e
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in [2, 3, 4] {
            let u = random_unitary(&mut rng, d);
            assert!((&u.adjoint() * &u).approx_eq(&ComplexMatrix::identity(d), 1e-12));
        }
    }

    #[test]
    fn states_are_valid_and_seeded() {
        let a = random_state(&mut ChaCha8Rng::seed_from_u64(7), &[2, 3]).unwrap();
        let b = random_state(&mut ChaCha8Rng::seed_from_u64(7), &[2, 3]).unwrap();
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn unital_channels_fix_the_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let ch = random_unital_channel(&mut rng).unwrap();
            let mixed = DensityMatrix::maximally_mixed(&[2]).unwrap();
            assert!(ch
                .apply(&mixed)
                .unwrap()
                .matrix()
                .approx_eq(mixed.matrix(), 1e-12));
        }
    }

    #[test]
    fn random_channels_are_complete() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(random_channel(&mut rng, 2, 3).unwrap().completeness_defect() < 1e-12);
    }

    #[test]
    fn canonical_states_have_mixed_alice() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = random_canonical_state(&mut rng).unwrap();
        let form = crate::qcore::pauli_decompose(&rho).unwrap();
        assert!(form.alice().norm() < 1e-12);
    }
}
