//! Dense complex Hermitian linear algebra.

mod eigen;
mod matrix;
mod spectral;

pub use eigen::{
    eigh, eigvalsh, hermitian_eig, symmetrize_checked, HermitianEigen, DEFAULT_HERMITICITY_TOL,
    MAX_SWEEPS,
};
pub use matrix::ComplexMatrix;
pub use spectral::{
    hermitian, matrix_function, matrix_function_complex, matrix_imaginary_power, part_traces,
    positive_negative_parts, psd_eig, support_of, support_projection, trace_norm, PosNegParts,
    PsdEigen, SupportProjection, PSD_CLIP_RELATIVE, SUPPORT_RELATIVE_THRESHOLD,
};
