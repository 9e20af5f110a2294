//! States, effects and CPTP channels.

mod channel;
mod state;

pub use channel::{
    apply_adjoint, apply_channel, apply_kraus, apply_kraus_adjoint, apply_via_choi,
    channel_compose, choi_of_kraus, kraus_gram, kraus_to_choi, weyl, ChoiMatrix, QuantumChannel,
    CHANNEL_TOLERANCE,
};
pub use state::{DensityMatrix, Effect, STATE_TOLERANCE};

use crate::error::{Error, Result};
use crate::linalg::{trace_norm, ComplexMatrix};

pub(crate) fn ensure_same_dim(a: &DensityMatrix, b: &DensityMatrix) -> Result<usize> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "states of dimension {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(a.dim())
}

/// Fidelity `F(ρ, τ) = ‖ρ^{1/2} τ^{1/2}‖₁`.
pub fn fidelity(rho: &DensityMatrix, tau: &DensityMatrix) -> Result<f64> {
    ensure_same_dim(rho, tau)?;
    trace_norm(&(&rho.sqrt() * &tau.sqrt()))
}

/// `‖ρ − τ‖₁` (no factor ½).
pub fn l1_distance(rho: &DensityMatrix, tau: &DensityMatrix) -> Result<f64> {
    ensure_same_dim(rho, tau)?;
    trace_norm(&(rho.matrix() - tau.matrix()))
}

/// `‖ρ − sσ‖₁` for operators of matching shape.
pub fn l1_of_difference(a: &ComplexMatrix, b: &ComplexMatrix, s: f64) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch("operands differ in shape".into()));
    }
    trace_norm(&a.add_scaled(b, -s))
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;

    fn diag_pair() -> (DensityMatrix, DensityMatrix) {
        (
            DensityMatrix::from_diag(&[0.75, 0.25]).unwrap(),
            DensityMatrix::from_diag(&[0.5, 0.5]).unwrap(),
        )
    }

    fn hadamard() -> ComplexMatrix {
        let h = 0.5_f64.sqrt();
        ComplexMatrix::from_real(2, 2, &[h, h, h, -h])
    }

    #[test]
    fn identity_channel_leaves_state_unchanged() {
        let (rho, _) = diag_pair();
        let out = apply_channel(&QuantumChannel::identity(2), &rho).unwrap();
        assert!(out.matrix().distance_frobenius(rho.matrix()) < 1e-15);
    }

    #[test]
    fn depolarizing_examples() {
        let (rho, _) = diag_pair();
        let full = apply_channel(&QuantumChannel::completely_depolarizing(2), &rho).unwrap();
        assert!(
            full.matrix()
                .distance_frobenius(&ComplexMatrix::from_diag(&[0.5, 0.5]))
                < 1e-15
        );

        let half = QuantumChannel::depolarizing(2, 0.5).unwrap();
        let out = apply_channel(&half, &DensityMatrix::basis(2, 0).unwrap()).unwrap();
        assert!(
            out.matrix()
                .distance_frobenius(&ComplexMatrix::from_diag(&[0.75, 0.25]))
                < 1e-15
        );
    }

    #[test]
    fn apply_checks_dimensions() {
        let rho = DensityMatrix::maximally_mixed(3);
        assert!(matches!(
            apply_channel(&QuantumChannel::identity(2), &rho),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(QuantumChannel::identity(2)
            .adjoint(&ComplexMatrix::identity(3))
            .is_err());
    }

    #[test]
    fn rejects_non_trace_preserving_kraus() {
        let k = ComplexMatrix::from_diag(&[1.0, 0.5]);
        assert!(matches!(
            QuantumChannel::new(2, 2, vec![k]),
            Err(Error::InvalidChannel(_))
        ));
        let wrong_shape = ComplexMatrix::identity(3);
        assert!(QuantumChannel::new(2, 2, vec![wrong_shape]).is_err());
    }

    #[test]
    fn adjoint_unital_and_unitary_conjugation() {
        let ch = QuantumChannel::depolarizing(3, 0.3).unwrap();
        let id = ch.adjoint(&ComplexMatrix::identity(3)).unwrap();
        assert!(id.distance_frobenius(&ComplexMatrix::identity(3)) < 1e-12);

        let u = hadamard();
        let ch = QuantumChannel::unitary(u.clone()).unwrap();
        let a = ComplexMatrix::from_real(2, 2, &[0.3, 0.1, 0.1, -0.7]);
        let expect = &(&u.adjoint() * &a) * &u;
        assert!(ch.adjoint(&a).unwrap().distance_frobenius(&expect) < 1e-15);
    }

    #[test]
    fn choi_examples() {
        let choi = kraus_to_choi(&QuantumChannel::identity(2));
        let mut omega = ComplexMatrix::zeros(4, 4);
        for &(r, c) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            omega[(r, c)] = Complex64::new(1.0, 0.0);
        }
        assert!(choi.matrix().distance_frobenius(&omega) < 1e-15);

        let dep = kraus_to_choi(&QuantumChannel::completely_depolarizing(2));
        assert!(
            dep.matrix()
                .distance_frobenius(&ComplexMatrix::identity(4).scale_real(0.5))
                < 1e-15
        );

        let (rho, _) = diag_pair();
        let out = apply_via_choi(&choi, &rho).unwrap();
        assert!(out.matrix().distance_frobenius(rho.matrix()) < 1e-15);
        let out = apply_via_choi(&dep, &rho).unwrap();
        assert!(
            out.matrix()
                .distance_frobenius(&ComplexMatrix::from_diag(&[0.5, 0.5]))
                < 1e-15
        );
    }

    #[test]
    fn choi_round_trip_to_kraus() {
        let ch = QuantumChannel::amplitude_damping(0.3).unwrap();
        let back = QuantumChannel::from_choi(&ch.to_choi()).unwrap();
        let rho = DensityMatrix::from_diag(&[0.2, 0.8]).unwrap();
        let a = apply_channel(&ch, &rho).unwrap();
        let b = apply_channel(&back, &rho).unwrap();
        assert!(a.matrix().distance_frobenius(b.matrix()) < 1e-12);
    }

    #[test]
    fn fidelity_examples() {
        let (rho, sigma) = diag_pair();
        assert!((fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-12);
        let expect = 0.375_f64.sqrt() + 0.125_f64.sqrt();
        assert!((fidelity(&rho, &sigma).unwrap() - expect).abs() < 1e-12);
        let zero = fidelity(
            &DensityMatrix::basis(2, 0).unwrap(),
            &DensityMatrix::basis(2, 1).unwrap(),
        );
        assert!(zero.unwrap().abs() < 1e-15);
    }

    #[test]
    fn composition_examples() {
        let dep = QuantumChannel::depolarizing(2, 0.5).unwrap();
        let twice = channel_compose(&dep, &dep).unwrap();
        let once = QuantumChannel::depolarizing(2, 0.75).unwrap();
        for k in 0..2 {
            let b = DensityMatrix::basis(2, k).unwrap();
            let x = apply_channel(&twice, &b).unwrap();
            let y = apply_channel(&once, &b).unwrap();
            assert!(x.matrix().distance_frobenius(y.matrix()) < 1e-14);
        }

        let u = hadamard();
        let fwd = QuantumChannel::unitary(u.clone()).unwrap();
        let back = QuantumChannel::unitary(u.adjoint()).unwrap();
        let round = channel_compose(&back, &fwd).unwrap();
        let (rho, _) = diag_pair();
        let out = apply_channel(&round, &rho).unwrap();
        assert!(out.matrix().distance_frobenius(rho.matrix()) < 1e-14);

        assert!(channel_compose(&QuantumChannel::identity(3), &dep).is_err());
    }

    #[test]
    fn attach_and_trace_out_ancilla() {
        let tau = DensityMatrix::from_diag(&[0.6, 0.4]).unwrap();
        let attach = QuantumChannel::attach_ancilla(2, &tau).unwrap();
        let (rho, _) = diag_pair();
        let joint = apply_channel(&attach, &rho).unwrap();
        assert!(
            joint
                .matrix()
                .distance_frobenius(&rho.tensor(&tau).into_matrix())
                < 1e-15
        );
        let ptr = QuantumChannel::partial_trace_second(2, 2).unwrap();
        let back = apply_channel(&ptr, &joint).unwrap();
        assert!(back.matrix().distance_frobenius(rho.matrix()) < 1e-15);
    }
}
