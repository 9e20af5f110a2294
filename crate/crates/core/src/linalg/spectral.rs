//! Matrix functions, positive/negative parts, support projections and norms.

use num_complex::Complex64;

use super::eigen::{
    eigh, eigvalsh, hermitian_eig, symmetrize_checked, HermitianEigen, DEFAULT_HERMITICITY_TOL,
};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Eigenvalues below `SUPPORT_RELATIVE_THRESHOLD · λ_max` count as kernel.
pub const SUPPORT_RELATIVE_THRESHOLD: f64 = 1e-10;

/// Negative eigenvalues of a PSD input down to `−PSD_CLIP_RELATIVE · λ_max`
/// are clipped to zero; anything more negative is rejected.
pub const PSD_CLIP_RELATIVE: f64 = 1e-10;

/// Absolute floor for the clip window, so that states with tiny λ_max still
/// tolerate round-off of order machine epsilon.
const PSD_CLIP_ABSOLUTE: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Orthogonal projector onto the support of a PSD matrix.
#[derive(Debug, Clone)]
pub struct SupportProjection {
    pub projector: ComplexMatrix,
    pub rank: usize,
    /// Eigenvalue cutoff actually applied (absolute).
    pub threshold: f64,
}

impl SupportProjection {
    pub fn dim(&self) -> usize {
        self.projector.rows()
    }

    /// `I − P`.
    pub fn complement(&self) -> ComplexMatrix {
        &ComplexMatrix::identity(self.dim()) - &self.projector
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.dim()
    }
}

/// Result of splitting a Hermitian matrix as `A = A₊ − A₋`.
#[derive(Debug, Clone)]
pub struct PosNegParts {
    pub pos: ComplexMatrix,
    pub neg: ComplexMatrix,
    pub tr_pos: f64,
    pub tr_neg: f64,
}

/// Eigendecomposition of a PSD matrix with round-off dust clipped to zero.
#[derive(Debug, Clone)]
pub struct PsdEigen {
    pub eig: HermitianEigen,
    /// Absolute cutoff separating support from kernel.
    pub support_threshold: f64,
    /// Whether any negative eigenvalue was clipped to zero.
    pub clipped: bool,
}

impl PsdEigen {
    pub fn in_support(&self, lambda: f64) -> bool {
        lambda > self.support_threshold
    }

    pub fn rank(&self) -> usize {
        self.eig
            .eigenvalues
            .iter()
            .filter(|&&l| self.in_support(l))
            .count()
    }

    pub fn support(&self) -> SupportProjection {
        let thr = self.support_threshold;
        SupportProjection {
            projector: self.eig.projector(|l| l > thr),
            rank: self.rank(),
            threshold: thr,
        }
    }

    /// `A^z` on the support, zero on the kernel.
    pub fn support_power(&self, z: Complex64) -> ComplexMatrix {
        let thr = self.support_threshold;
        self.eig
            .reconstruct_with(|l| if l > thr { (z * l.ln()).exp() } else { ZERO })
    }

    /// `A^{it}` on the support, identity on the kernel.
    pub fn imaginary_power(&self, t: f64) -> ComplexMatrix {
        let thr = self.support_threshold;
        self.eig.reconstruct_with(|l| {
            if l > thr {
                Complex64::from_polar(1.0, t * l.ln())
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
    }

    /// Basis of the kernel as eigenvectors.
    pub fn kernel_vectors(&self) -> Vec<Vec<Complex64>> {
        self.eig
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, &l)| !self.in_support(l))
            .map(|(k, _)| self.eig.eigenvector(k))
            .collect()
    }
}

fn clip_floor(lambda_max: f64) -> f64 {
    -(PSD_CLIP_RELATIVE * lambda_max.max(0.0)).max(PSD_CLIP_ABSOLUTE)
}

/// Decomposes a PSD matrix, clipping eigenvalues in `[−1e−10·λ_max, 0)` to
/// zero and rejecting anything more negative.
pub fn psd_eig(a: &ComplexMatrix) -> Result<PsdEigen> {
    let mut eig = eigh(a)?;
    let lambda_max = eig.max_eigenvalue();
    let floor = clip_floor(lambda_max);
    if let Some(&worst) = eig.eigenvalues.first() {
        if worst < floor {
            return Err(Error::NotPsd {
                eigenvalue: worst,
                floor,
            });
        }
    }
    let mut clipped = false;
    for l in eig.eigenvalues.iter_mut() {
        if *l < 0.0 {
            *l = 0.0;
            clipped = true;
        }
    }
    let support_threshold = SUPPORT_RELATIVE_THRESHOLD * lambda_max.max(0.0);
    Ok(PsdEigen {
        eig,
        support_threshold,
        clipped,
    })
}

/// `A = A₊ − A₋` with `Tr A₊ − Tr A₋ = Tr A` and `Tr A₊ + Tr A₋ = ‖A‖₁`.
pub fn positive_negative_parts(a: &ComplexMatrix) -> Result<PosNegParts> {
    let eig = eigh(a)?;
    let pos = eig.reconstruct_with(|l| Complex64::new(l.max(0.0), 0.0));
    let neg = eig.reconstruct_with(|l| Complex64::new((-l).max(0.0), 0.0));
    let tr_pos = eig.eigenvalues.iter().filter(|&&l| l > 0.0).sum();
    let tr_neg = -eig.eigenvalues.iter().filter(|&&l| l < 0.0).sum::<f64>();
    Ok(PosNegParts {
        pos,
        neg,
        tr_pos,
        tr_neg,
    })
}

/// `(Tr A₊, Tr A₋)` from eigenvalues alone.
pub fn part_traces(a: &ComplexMatrix) -> Result<(f64, f64)> {
    let vals = eigvalsh(a)?;
    let tr_pos = vals.iter().filter(|&&l| l > 0.0).sum();
    let tr_neg = -vals.iter().filter(|&&l| l < 0.0).sum::<f64>();
    Ok((tr_pos, tr_neg))
}

/// Trace norm `‖A‖₁ = Σ singular values`.
///
/// Hermitian inputs use `Σ|λ|`. Other square inputs use the Hermitian
/// dilation `[[0, A], [A†, 0]]`, whose spectrum is `±σᵢ`; this keeps small
/// singular values at absolute accuracy instead of taking square roots of
/// the eigenvalues of `A†A`.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    let n = a.ensure_square()?;
    if a.hermiticity_residual() <= 1e-13 * a.frobenius_norm().max(1.0) {
        let vals = eigvalsh(a)?;
        return Ok(vals.iter().map(|l| l.abs()).sum());
    }
    let dilation = ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, false) => a[(i, j - n)],
        (false, true) => a[(j, i - n)].conj(),
        _ => ZERO,
    });
    let vals = eigvalsh(&dilation)?;
    Ok(0.5 * vals.iter().map(|l| l.abs()).sum::<f64>())
}

/// `V f(Λ) V†`. With `support_only`, `f` is applied only to eigenvalues above
/// the default support threshold and the rest map to zero.
pub fn matrix_function(
    a: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
    support_only: bool,
) -> Result<ComplexMatrix> {
    matrix_function_complex(a, |l| Complex64::new(f(l), 0.0), support_only)
}

/// Complex-valued variant of [`matrix_function`].
pub fn matrix_function_complex(
    a: &ComplexMatrix,
    f: impl Fn(f64) -> Complex64,
    support_only: bool,
) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a, DEFAULT_HERMITICITY_TOL)?;
    let thr = SUPPORT_RELATIVE_THRESHOLD * eig.max_eigenvalue().max(0.0);
    let mut values = Vec::with_capacity(eig.dim());
    for &l in &eig.eigenvalues {
        if support_only && l <= thr {
            values.push(ZERO);
            continue;
        }
        let v = f(l);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::DomainError { eigenvalue: l });
        }
        values.push(v);
    }
    let mut it = values.into_iter();
    Ok(eig.reconstruct_with(|_| it.next().unwrap_or(ZERO)))
}

/// `A^{it} = exp(it log A)` on the support of a PSD matrix, identity on its
/// kernel.
pub fn matrix_imaginary_power(a: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    Ok(psd_eig(a)?.imaginary_power(t))
}

/// Projector onto eigenvectors of a PSD matrix with eigenvalue above the
/// absolute `threshold`.
pub fn support_projection(a: &ComplexMatrix, threshold: f64) -> Result<SupportProjection> {
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(Error::InvalidMatrix(format!(
            "support threshold must be positive, got {threshold}"
        )));
    }
    let psd = psd_eig(a)?;
    Ok(PsdEigen {
        support_threshold: threshold,
        ..psd
    }
    .support())
}

/// Support projection with the default relative threshold `1e−10·λ_max`.
pub fn support_of(a: &ComplexMatrix) -> Result<SupportProjection> {
    Ok(psd_eig(a)?.support())
}

/// Symmetrizes a matrix after checking Hermiticity with the default tolerance.
pub fn hermitian(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    symmetrize_checked(a, DEFAULT_HERMITICITY_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_parts() {
        let a = ComplexMatrix::from_diag(&[0.25, -0.25]);
        let p = positive_negative_parts(&a).unwrap();
        assert!((p.tr_pos - 0.25).abs() < 1e-15);
        assert!((p.tr_neg - 0.25).abs() < 1e-15);
        assert!((trace_norm(&a).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn psd_input_has_no_negative_part() {
        let a = ComplexMatrix::from_diag(&[0.6, 0.3, 0.1]);
        let p = positive_negative_parts(&a).unwrap();
        assert_eq!(p.tr_neg, 0.0);
        assert!(p.neg.max_abs() == 0.0);
    }

    #[test]
    fn difference_of_diagonal_states() {
        let rho = ComplexMatrix::from_diag(&[0.75, 0.25]);
        let sigma = ComplexMatrix::from_diag(&[0.5, 0.5]);
        let p = positive_negative_parts(&(&rho - &sigma)).unwrap();
        assert!((p.tr_neg - 0.25).abs() < 1e-15);
        // ρ − 2σ = diag(−0.25, −0.75)
        assert!((trace_norm(&rho.add_scaled(&sigma, -2.0)).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(trace_norm(&ComplexMatrix::zeros(3, 3)).unwrap(), 0.0);
    }

    #[test]
    fn non_hermitian_trace_norm_uses_singular_values() {
        // [[0, 2], [0, 0]] has singular values {2, 0}.
        let a = ComplexMatrix::from_real(2, 2, &[0.0, 2.0, 0.0, 0.0]);
        assert!((trace_norm(&a).unwrap() - 2.0).abs() < 1e-14);
        assert!(matches!(
            trace_norm(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn matrix_function_examples() {
        let a = ComplexMatrix::from_diag(&[4.0, 9.0]);
        let r = matrix_function(&a, f64::sqrt, false).unwrap();
        assert!(r.distance_frobenius(&ComplexMatrix::from_diag(&[2.0, 3.0])) < 1e-14);

        let h = ComplexMatrix::from_real(2, 2, &[1.0, 0.5, 0.5, -2.0]);
        let id = matrix_function(&h, |x| x, false).unwrap();
        assert!(id.distance_frobenius(&h) < 1e-14);

        let l = matrix_function(&ComplexMatrix::from_diag(&[0.5, 0.5]), f64::ln, true).unwrap();
        let expect = 0.5_f64.ln();
        assert!(l.distance_frobenius(&ComplexMatrix::from_diag(&[expect, expect])) < 1e-12);

        let neg = ComplexMatrix::from_diag(&[-1.0, 2.0]);
        assert!(matches!(
            matrix_function(&neg, f64::ln, false),
            Err(Error::DomainError { .. })
        ));
        // kernel eigenvalue is skipped under support_only
        let psd = ComplexMatrix::from_diag(&[0.0, 2.0]);
        let l = matrix_function(&psd, f64::ln, true).unwrap();
        assert!(l.distance_frobenius(&ComplexMatrix::from_diag(&[0.0, 2.0_f64.ln()])) < 1e-14);
    }

    #[test]
    fn imaginary_power_diagonal_and_zero() {
        let a = ComplexMatrix::from_diag(&[0.3, 0.7]);
        let u0 = matrix_imaginary_power(&a, 0.0).unwrap();
        assert!(u0.distance_frobenius(&ComplexMatrix::identity(2)) < 1e-15);
        let t = 1.3;
        let u = matrix_imaginary_power(&a, t).unwrap();
        let expect = ComplexMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                Complex64::from_polar(1.0, t * [0.3_f64, 0.7][i].ln())
            } else {
                ZERO
            }
        });
        assert!(u.distance_frobenius(&expect) < 1e-14);
        assert!(matches!(
            matrix_imaginary_power(&ComplexMatrix::from_diag(&[-0.5, 1.0]), 1.0),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn support_projection_examples() {
        let full = support_of(&ComplexMatrix::from_diag(&[0.5, 0.5])).unwrap();
        assert_eq!(full.rank, 2);
        assert!(
            full.projector
                .distance_frobenius(&ComplexMatrix::identity(2))
                < 1e-15
        );

        let p = support_of(&ComplexMatrix::from_diag(&[0.7, 0.3, 0.0])).unwrap();
        assert_eq!(p.rank, 2);
        assert!(
            p.projector
                .distance_frobenius(&ComplexMatrix::from_diag(&[1.0, 1.0, 0.0]))
                < 1e-15
        );

        let pure = support_projection(&ComplexMatrix::from_diag(&[1.0, 0.0]), 1e-12).unwrap();
        assert_eq!(pure.rank, 1);
        assert!(support_projection(&ComplexMatrix::from_diag(&[1.0, 0.0]), 0.0).is_err());
    }

    #[test]
    fn negative_dust_is_clipped_but_real_negatives_rejected() {
        let dusty = ComplexMatrix::from_diag(&[1.0, -1e-12]);
        let psd = psd_eig(&dusty).unwrap();
        assert_eq!(psd.eig.eigenvalues[0], 0.0);
        assert_eq!(psd.rank(), 1);
        assert!(psd_eig(&ComplexMatrix::from_diag(&[1.0, -1e-6])).is_err());
    }

    #[test]
    fn support_power_half_and_inverse_half() {
        let a = ComplexMatrix::from_diag(&[4.0, 0.0, 0.25]);
        let psd = psd_eig(&a).unwrap();
        let half = psd.support_power(Complex64::new(0.5, 0.0));
        assert!(half.distance_frobenius(&ComplexMatrix::from_diag(&[2.0, 0.0, 0.5])) < 1e-14);
        let inv_half = psd.support_power(Complex64::new(-0.5, 0.0));
        assert!(inv_half.distance_frobenius(&ComplexMatrix::from_diag(&[0.5, 0.0, 2.0])) < 1e-14);
        assert_eq!(psd.kernel_vectors().len(), 1);
    }
}
