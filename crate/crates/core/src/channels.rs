//! Qubit channels in Kraus form and their one-sided action on bipartite
//! states.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{pauli, Basis, ComplexMatrix, DensityMatrix};
use crate::steering::PovmElement;

const COMPLETENESS_TOL: f64 = 1e-10;

/// `rho -> sum_i E_i rho E_i^H` with `sum_i E_i^H E_i = 1`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    kraus_ops: Vec<ComplexMatrix>,
    label: String,
}

impl KrausChannel {
    pub fn new(kraus_ops: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        let d = kraus_ops
            .first()
            .map(ComplexMatrix::cols)
            .ok_or(Error::IncompleteKraus(1.0))?;
        if kraus_ops.iter().any(|e| e.rows() != d || e.cols() != d) {
            return Err(Error::DimensionMismatch(
                "Kraus operators must share one square shape".into(),
            ));
        }
        let sum = kraus_ops
            .iter()
            .fold(ComplexMatrix::zeros(d, d), |acc, e| &acc + &(&e.adjoint() * e));
        let defect = sum.max_abs_diff(&ComplexMatrix::identity(d));
        if defect > COMPLETENESS_TOL {
            return Err(Error::IncompleteKraus(defect));
        }
        Ok(Self {
            kraus_ops,
            label: label.into(),
        })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            kraus_ops: vec![ComplexMatrix::identity(d)],
            label: "identity".into(),
        }
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.kraus_ops
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.kraus_ops[0].rows()
    }

    pub fn completeness_defect(&self) -> f64 {
        let d = self.dim();
        self.kraus_ops
            .iter()
            .fold(ComplexMatrix::zeros(d, d), |acc, e| &acc + &(&e.adjoint() * e))
            .max_abs_diff(&ComplexMatrix::identity(d))
    }

    /// Action on a single system.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dims() != [self.dim()] {
            return Err(Error::DimensionMismatch(format!(
                "channel on dimension {} applied to dims {:?}",
                self.dim(),
                rho.dims()
            )));
        }
        let out = self
            .kraus_ops
            .iter()
            .fold(ComplexMatrix::zeros(self.dim(), self.dim()), |acc, e| {
                &acc + &rho.matrix().conjugate_by(e)
            });
        DensityMatrix::new(out, rho.dims())
    }
}

/// Amplitude damping: `E0 = |0><0| + sqrt(1-g)|1><1|`, `E1 = sqrt(g)|0><1|`.
pub fn amplitude_damping(gamma: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::ParameterOutOfRange(format!(
            "damping strength {gamma} outside [0, 1]"
        )));
    }
    let e0 = ComplexMatrix::diagonal(&[1.0, (1.0 - gamma).sqrt()]);
    let e1 = ComplexMatrix::from_real_rows(&[&[0.0, gamma.sqrt()], &[0.0, 0.0]])?;
    KrausChannel::new(vec![e0, e1], format!("amplitude-damping({gamma})"))
}

/// Mixture of Pauli conjugations `sum_i e_i sigma_i rho sigma_i`.
///
/// Shrinks the Bloch vector componentwise by
/// `p_1 = e0 + e1 - e2 - e3` and its cyclic analogues.
pub fn unital_pauli(e: [f64; 4]) -> Result<KrausChannel> {
    if e.iter().any(|&x| x < 0.0) || (e.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return Err(Error::ParameterOutOfRange(format!(
            "Pauli weights {e:?} are not a probability vector"
        )));
    }
    let ops = e
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0.0)
        .map(|(i, &w)| pauli(i).scale_real(w.sqrt()))
        .collect();
    KrausChannel::new(ops, format!("pauli({:?})", e))
}

/// Bloch shrinking factors of [`unital_pauli`].
pub fn pauli_shrink_factors(e: [f64; 4]) -> [f64; 3] {
    [
        e[0] + e[1] - e[2] - e[3],
        e[0] - e[1] + e[2] - e[3],
        e[0] - e[1] - e[2] + e[3],
    ]
}

/// Measure-and-prepare channel `rho -> sum_k tr(F_k rho) |k><k|`.
///
/// Every output is diagonal in `basis`. The Kraus operators are
/// `|k><f_kj|` for the spectral decompositions `F_k = sum_j |f_kj><f_kj|`.
pub fn semi_classical(basis: &Basis, povm: &[PovmElement]) -> Result<KrausChannel> {
    let d = basis.dim();
    if povm.len() != d || povm.iter().any(|f| f.dim() != d) {
        return Err(Error::DimensionMismatch(format!(
            "semi-classical channel needs {d} POVM elements of dimension {d}"
        )));
    }
    let total = povm
        .iter()
        .fold(ComplexMatrix::zeros(d, d), |acc, f| &acc + f.matrix());
    let defect = total.max_abs_diff(&ComplexMatrix::identity(d));
    if defect > COMPLETENESS_TOL {
        return Err(Error::IncompletePovm(defect));
    }
    let mut ops = Vec::new();
    for (k, f) in povm.iter().enumerate() {
        let eig = crate::qcore::eigen_hermitian(f.matrix(), 0.0)?;
        for (lambda, v) in eig.values.iter().zip(eig.basis.vectors()) {
            if *lambda <= 0.0 {
                continue;
            }
            let w: Vec<Complex64> = v.iter().map(|z| z * lambda.sqrt()).collect();
            ops.push(ComplexMatrix::outer(basis.vector(k), &w));
        }
    }
    KrausChannel::new(ops, "semi-classical")
}

/// `sum_i (1 (x) E_i) rho (1 (x) E_i)^H`
pub fn apply_on_b(rho: &DensityMatrix, channel: &KrausChannel) -> Result<DensityMatrix> {
    let (da, db) = rho.bipartite_dims()?;
    if db != channel.dim() {
        return Err(Error::DimensionMismatch(format!(
            "channel on dimension {} applied to Bob's dimension {db}",
            channel.dim()
        )));
    }
    let id = ComplexMatrix::identity(da);
    let out = channel
        .kraus_ops()
        .iter()
        .fold(ComplexMatrix::zeros(da * db, da * db), |acc, e| {
            &acc + &rho.matrix().conjugate_by(&id.kron(e))
        });
    DensityMatrix::new(out, rho.dims())
}

/// Alice-side application, by swapping the factors around [`apply_on_b`].
pub fn apply_on_a(rho: &DensityMatrix, channel: &KrausChannel) -> Result<DensityMatrix> {
    apply_on_b(&rho.swap()?, channel)?.swap()
}
