//! Dense complex linear algebra for small systems, density operators and the
//! two-qubit Pauli decomposition.

mod bloch;
mod density;
mod eigen;
mod matrix;
mod pauli;

pub use bloch::{pauli, spinor, BlochVector};
pub use density::{
    partial_trace_matrix, validate_density, DensityMatrix, Subsystem, HERMITIAN_TOL, MAX_DIM, PSD_TOL,
    TRACE_TOL,
};
pub use eigen::{
    eigen_hermitian, fix_phase, hermitian_function, Basis, HermitianEigen, DEFAULT_DEGENERACY_TOL,
};
pub use matrix::{inner, kron_vec, normalized, vec_norm, ComplexMatrix, I, ONE, ZERO};
pub use num_complex::Complex64;
pub use pauli::{pauli_compose, pauli_decompose, PauliForm};
