//! Maximal steered coherence.
//!
//! The quantity is the largest l1 coherence, measured in the eigenbasis of
//! Bob's marginal, that any outcome of a measurement on Alice's side can
//! leave Bob's state with. When Bob's marginal is degenerate its eigenbasis
//! is not unique and the value is the infimum of that maximum over all
//! eigenbases.
//!
//! [`msc_two_qubit`] works in Bloch coordinates, [`msc_general`] directly on
//! rank-one measurements for `d <= 4`, and [`msc_oracle`] is a brute-force
//! grid search used to cross-check both.

mod general;
mod oracle;
mod pure;
mod two_qubit;

use num_complex::Complex64;

pub use general::msc_general;
pub use oracle::msc_oracle;
pub use pure::optimal_measurement_pure;
pub use two_qubit::msc_two_qubit;

use crate::error::Result;
use crate::qcore::{Basis, BlochVector, DensityMatrix, DEFAULT_DEGENERACY_TOL};
use crate::steering::PovmElement;

/// Optimizer settings shared by both MSC paths.
#[derive(Debug, Clone, Copy)]
pub struct MscOptions {
    /// Fibonacci-lattice size for the multi-start over measurement directions.
    pub grid_points: usize,
    /// How many grid maxima are refined with Nelder–Mead.
    pub refine_starts: usize,
    /// Minimum angle between two refined starts (radians).
    pub start_separation: f64,
    /// Random starting vectors for the general-dimension search.
    pub general_starts: usize,
    /// Outer-infimum starts on the degenerate branch.
    pub outer_starts: usize,
    /// Eigenvalue gap below which Bob's marginal counts as degenerate.
    pub degeneracy_tol: f64,
    /// Gaps between `degeneracy_tol` and this are flagged as ill-conditioned.
    pub conditioning_gap: f64,
    /// Objective improvement below which refinement stops.
    pub tolerance: f64,
    pub max_evaluations: usize,
    pub seed: u64,
}

impl Default for MscOptions {
    fn default() -> Self {
        Self {
            grid_points: 512,
            refine_starts: 8,
            start_separation: 0.35,
            general_starts: 64,
            outer_starts: 4,
            degeneracy_tol: DEFAULT_DEGENERACY_TOL,
            conditioning_gap: 1e-4,
            tolerance: 1e-9,
            max_evaluations: 4000,
            seed: 0x5eed,
        }
    }
}

/// The maximizing measurement outcome.
#[derive(Debug, Clone, PartialEq)]
pub enum Measurement {
    /// Projective outcome `(1 + m.sigma)/2` on a qubit.
    Bloch(BlochVector),
    /// Rank-one outcome `|psi><psi|`.
    Vector(Vec<Complex64>),
}

impl Measurement {
    pub fn povm(&self) -> Result<PovmElement> {
        match self {
            Measurement::Bloch(m) => PovmElement::from_bloch(*m),
            Measurement::Vector(v) => PovmElement::projector(v),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MscResult {
    pub value: f64,
    pub measurement: Measurement,
    pub steered_state: DensityMatrix,
    pub reference_basis: Basis,
    /// The infimum over eigenbases was taken.
    pub degenerate_path: bool,
    /// Bob's eigenvalue gap is small enough that the basis, and hence the
    /// value, is numerically unstable.
    pub ill_conditioned: bool,
    pub converged: bool,
}
