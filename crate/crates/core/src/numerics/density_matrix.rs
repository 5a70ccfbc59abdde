use num_complex::Complex64 as C64;

use super::{eig_hermitian, CMatrix};
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Eigenvalues in `[-CLIP_TOLERANCE, 0)` are treated as zero by
/// [`DensityMatrix::spectrum`]; anything more negative is an error.
pub const CLIP_TOLERANCE: f64 = 1e-12;

/// One of the three spin-½ parties, in tensor-product order A ⊗ B ⊗ C.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    /// Qubit position inside the three-party register.
    pub fn qubit(self) -> usize {
        match self {
            Party::A => 0,
            Party::B => 1,
            Party::C => 2,
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix of dimension 2, 4 or 8.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    tolerance: f64,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(matrix: CMatrix, tolerance: f64) -> Result<Self> {
        if !matches!(matrix.dim(), 2 | 4 | 8) {
            return Err(Error::InvalidArgument(format!(
                "density matrix dimension must be 2, 4 or 8, got {}",
                matrix.dim()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if !(defect <= tolerance) {
            return Err(Error::NotHermitian { defect });
        }
        let deviation = (matrix.trace() - 1.0).norm();
        if !(deviation <= tolerance) {
            return Err(Error::TraceNotUnit { deviation });
        }
        let min_eigenvalue = *eig_hermitian(&matrix)?.values.last().unwrap();
        if min_eigenvalue < -tolerance {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(DensityMatrix { matrix, tolerance })
    }

    /// `|ψ⟩⟨ψ|` for a unit vector `ψ`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        Self::new(CMatrix::outer(psi))
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::new(CMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    /// Eigenvalues (descending) with round-off negatives clipped to zero.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let values = eig_hermitian(&self.matrix)?.values;
        values
            .into_iter()
            .map(|x| {
                if x >= 0.0 {
                    Ok(x)
                } else if x >= -CLIP_TOLERANCE {
                    Ok(0.0)
                } else {
                    Err(Error::NotPositive { min_eigenvalue: x })
                }
            })
            .collect()
    }

    /// `Tr[op ρ]`.
    pub fn expectation(&self, op: &CMatrix) -> C64 {
        (op * &self.matrix).trace()
    }

    /// Reduced matrix on the qubits listed in `keep` (strictly increasing).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let reduced = trace_out(&self.matrix, self.n_qubits(), keep)?;
        DensityMatrix::with_tolerance(reduced, self.tolerance)
    }

    /// Reduced matrix of the listed parties of a three-party state.
    pub fn reduce(&self, keep: &[Party]) -> Result<DensityMatrix> {
        if self.dim() != 8 {
            return Err(Error::InvalidArgument(
                "party selectors need a three-qubit density matrix".into(),
            ));
        }
        let qubits: Vec<usize> = keep.iter().map(|p| p.qubit()).collect();
        self.partial_trace(&qubits)
    }
}

/// Free-function form of [`DensityMatrix::partial_trace`].
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    rho.partial_trace(keep)
}

/// Partial trace of a `2^n × 2^n` matrix over every qubit not in `keep`.
/// Qubit 0 is the most significant bit of the basis index.
pub(crate) fn trace_out(m: &CMatrix, n_qubits: usize, keep: &[usize]) -> Result<CMatrix> {
    if m.dim() != 1 << n_qubits {
        return Err(Error::InvalidArgument(format!(
            "dimension {} is not 2^{n_qubits}",
            m.dim()
        )));
    }
    if keep.is_empty() {
        return Err(Error::InvalidArgument("at least one subsystem must be kept".into()));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&q| q >= n_qubits) {
        return Err(Error::InvalidArgument(format!(
            "subsystem selector {keep:?} must be strictly increasing qubit indices below {n_qubits}"
        )));
    }
    let traced: Vec<usize> = (0..n_qubits).filter(|q| !keep.contains(q)).collect();
    let compose = |kept_bits: usize, traced_bits: usize| -> usize {
        let mut index = 0;
        for (pos, &q) in keep.iter().enumerate() {
            let bit = (kept_bits >> (keep.len() - 1 - pos)) & 1;
            index |= bit << (n_qubits - 1 - q);
        }
        for (pos, &q) in traced.iter().enumerate() {
            let bit = (traced_bits >> (traced.len() - 1 - pos)) & 1;
            index |= bit << (n_qubits - 1 - q);
        }
        index
    };
    let dim = 1 << keep.len();
    Ok(CMatrix::from_fn(dim, |i, j| {
        (0..1usize << traced.len())
            .map(|t| m[(compose(i, t), compose(j, t))])
            .sum()
    }))
}
