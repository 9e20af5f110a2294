use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigh, psd_eig, ComplexMatrix, PsdEigen, SupportProjection};

/// Tolerance for Hermiticity, trace and eigenvalue checks on states.
pub const STATE_TOLERANCE: f64 = 1e-10;

/// Trace deviation accepted when normalizing the output of a channel that is
/// trace preserving only up to its own validation tolerance.
pub(crate) const OUTPUT_TRACE_TOLERANCE: f64 = 1e-7;

/// A density matrix: Hermitian, positive semidefinite, unit trace.
///
/// The clipped eigendecomposition is computed once at construction and
/// reused for every support, power and logarithm taken later.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    eig: PsdEigen,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_trace_tolerance(matrix, STATE_TOLERANCE)
    }

    pub fn from_diag(probabilities: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_diag(probabilities))
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) nonzero vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::InvalidState(
                "pure state vector must be nonzero and finite".into(),
            ));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&v, &v))
    }

    /// Computational basis state `|k⟩⟨k|`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidState(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut p = vec![0.0; dim];
        p[k] = 1.0;
        Self::from_diag(&p)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_diag(&vec![1.0 / dim as f64; dim]).expect("I/d is a state")
    }

    /// Validation with an explicit trace tolerance. Eigenvalue dust is
    /// clipped and the trace renormalized to exactly one.
    pub(crate) fn with_trace_tolerance(matrix: ComplexMatrix, trace_tol: f64) -> Result<Self> {
        let dim = matrix.ensure_square()?;
        let residual = matrix.hermiticity_residual();
        let scale = matrix.frobenius_norm().max(1.0);
        if residual > STATE_TOLERANCE * scale {
            return Err(Error::InvalidState(format!(
                "not Hermitian: |A - A^H|_F = {residual:.3e}"
            )));
        }
        let sym = matrix.hermitian_part();
        let trace = sym.trace().re;
        if (trace - 1.0).abs() > trace_tol {
            return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
        }
        let eig = psd_eig(&sym).map_err(|e| match e {
            Error::NotPsd { eigenvalue, .. } => {
                Error::InvalidState(format!("negative eigenvalue {eigenvalue:.3e}"))
            }
            other => other,
        })?;
        let mut eig = eig;
        let total: f64 = eig.eig.eigenvalues.iter().sum();
        for l in eig.eig.eigenvalues.iter_mut() {
            *l /= total;
        }
        eig.support_threshold /= total;
        let matrix = if eig.clipped {
            eig.eig.reconstruct().hermitian_part()
        } else if trace != 1.0 {
            sym.scale_real(1.0 / trace)
        } else {
            sym
        };
        debug_assert_eq!(matrix.rows(), dim);
        Ok(Self { matrix, eig })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Clipped eigendecomposition, ascending eigenvalues.
    pub fn spectrum(&self) -> &PsdEigen {
        &self.eig
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.eig.eigenvalues
    }

    pub fn support(&self) -> SupportProjection {
        self.eig.support()
    }

    pub fn rank(&self) -> usize {
        self.eig.rank()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim()
    }

    /// `ρ^{1/2}`.
    pub fn sqrt(&self) -> ComplexMatrix {
        self.power(Complex64::new(0.5, 0.0))
    }

    /// `ρ^z` on the support, zero on the kernel.
    pub fn power(&self, z: Complex64) -> ComplexMatrix {
        self.eig.support_power(z)
    }

    /// `ρ^{it}` on the support, identity on the kernel.
    pub fn imaginary_power(&self, t: f64) -> ComplexMatrix {
        self.eig.imaginary_power(t)
    }

    /// `Tr[ρ log ρ]` (natural log, `0 log 0 = 0`).
    pub fn neg_entropy(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .filter(|&&p| self.eig.in_support(p))
            .map(|&p| p * p.ln())
            .sum()
    }

    /// `Tr[ρ A]`.
    pub fn expectation(&self, a: &ComplexMatrix) -> Complex64 {
        self.matrix.trace_product(a)
    }

    /// `w ρ + (1 − w) τ`.
    pub fn mix(&self, other: &Self, w: f64) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::InvalidState(format!(
                "mixing weight {w} outside [0, 1]"
            )));
        }
        Self::new(self.matrix.scale_real(w).add_scaled(&other.matrix, 1.0 - w))
    }

    /// `ρ ⊗ τ`.
    pub fn tensor(&self, other: &Self) -> Self {
        Self::new(self.matrix.kron(&other.matrix)).expect("tensor product of states is a state")
    }

    /// `U ρ U†`.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.shape() != (self.dim(), self.dim()) {
            return Err(Error::DimensionMismatch("unitary shape".into()));
        }
        Self::with_trace_tolerance(u.sandwich(&self.matrix), OUTPUT_TRACE_TOLERANCE)
    }
}

/// A test operator `0 ≤ M ≤ I`.
#[derive(Debug, Clone)]
pub struct Effect {
    matrix: ComplexMatrix,
}

impl Effect {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.ensure_square()?;
        let residual = matrix.hermiticity_residual();
        if residual > STATE_TOLERANCE * matrix.frobenius_norm().max(1.0) {
            return Err(Error::InvalidEffect(format!(
                "not Hermitian: residual {residual:.3e}"
            )));
        }
        let sym = matrix.hermitian_part();
        let vals = eigh(&sym)?.eigenvalues;
        let (lo, hi) = (vals[0], vals[vals.len() - 1]);
        if lo < -STATE_TOLERANCE || hi > 1.0 + STATE_TOLERANCE {
            return Err(Error::InvalidEffect(format!(
                "spectrum [{lo:.3e}, {hi:.3e}] outside [0, 1]"
            )));
        }
        Ok(Self { matrix: sym })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `I − M`.
    pub fn complement(&self) -> Self {
        Self {
            matrix: &ComplexMatrix::identity(self.dim()) - &self.matrix,
        }
    }
}
