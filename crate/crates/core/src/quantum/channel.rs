use std::f64::consts::PI;

use num_complex::Complex64;

use super::state::{DensityMatrix, OUTPUT_TRACE_TOLERANCE};
use crate::error::{Error, Result};
use crate::linalg::{eigh, psd_eig, ComplexMatrix};

/// Tolerance for trace preservation and Choi positivity of channels.
pub const CHANNEL_TOLERANCE: f64 = 1e-8;

/// A CPTP map `X ↦ Σ K_i X K_i†` stored by its Kraus operators.
#[derive(Debug, Clone)]
pub struct QuantumChannel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
}

/// `Σ K_i X K_i†` for an arbitrary Kraus family.
pub fn apply_kraus(kraus: &[ComplexMatrix], x: &ComplexMatrix) -> ComplexMatrix {
    let (rows, _) = kraus[0].shape();
    let mut out = ComplexMatrix::zeros(rows, rows);
    for k in kraus {
        out = &out + &k.sandwich(x);
    }
    out
}

/// `Σ K_i† A K_i` for an arbitrary Kraus family.
pub fn apply_kraus_adjoint(kraus: &[ComplexMatrix], a: &ComplexMatrix) -> ComplexMatrix {
    let (_, cols) = kraus[0].shape();
    let mut out = ComplexMatrix::zeros(cols, cols);
    for k in kraus {
        out = &out + &(&(&k.adjoint() * a) * k);
    }
    out
}

/// `Σ K_i† K_i`.
pub fn kraus_gram(kraus: &[ComplexMatrix]) -> ComplexMatrix {
    apply_kraus_adjoint(kraus, &ComplexMatrix::identity(kraus[0].rows()))
}

/// Choi matrix `Σ_{ij} K|i⟩⟨j|K† ⊗ |i⟩⟨j|`, output factor first, for any
/// Kraus family.
pub fn choi_of_kraus(dim_in: usize, dim_out: usize, kraus: &[ComplexMatrix]) -> ComplexMatrix {
    let n = dim_in * dim_out;
    let mut c = ComplexMatrix::zeros(n, n);
    for k in kraus {
        // vec index (o, i) -> o * dim_in + i, entry K[o, i]
        let v = k.data();
        for r in 0..n {
            let a = v[r];
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for s in 0..n {
                c[(r, s)] += a * v[s].conj();
            }
        }
    }
    c
}

impl QuantumChannel {
    pub fn new(dim_in: usize, dim_out: usize, kraus: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_tolerance(dim_in, dim_out, kraus, CHANNEL_TOLERANCE)
    }

    pub(crate) fn with_tolerance(
        dim_in: usize,
        dim_out: usize,
        kraus: Vec<ComplexMatrix>,
        tol: f64,
    ) -> Result<Self> {
        if dim_in == 0 || dim_out == 0 {
            return Err(Error::InvalidChannel("dimensions must be positive".into()));
        }
        if kraus.is_empty() {
            return Err(Error::InvalidChannel("empty Kraus family".into()));
        }
        for (idx, k) in kraus.iter().enumerate() {
            if k.shape() != (dim_out, dim_in) {
                return Err(Error::InvalidChannel(format!(
                    "Kraus operator {idx} is {}x{}, expected {dim_out}x{dim_in}",
                    k.rows(),
                    k.cols()
                )));
            }
        }
        let tp = kraus_gram(&kraus).distance_frobenius(&ComplexMatrix::identity(dim_in));
        if tp > tol {
            return Err(Error::InvalidChannel(format!(
                "not trace preserving: |sum K^H K - I|_F = {tp:.3e}"
            )));
        }
        let choi = choi_of_kraus(dim_in, dim_out, &kraus);
        let lowest = eigh(&choi)?.eigenvalues[0];
        if lowest < -tol {
            return Err(Error::InvalidChannel(format!(
                "Choi matrix eigenvalue {lowest:.3e}"
            )));
        }
        Ok(Self {
            dim_in,
            dim_out,
            kraus,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim_in: dim,
            dim_out: dim,
            kraus: vec![ComplexMatrix::identity(dim)],
        }
    }

    /// `X ↦ U X U†`.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        let n = u.ensure_square()?;
        Self::new(n, n, vec![u])
    }

    /// `X ↦ (1 − p) X + p Tr[X] I/d`, via the Weyl–Heisenberg basis.
    pub fn depolarizing(dim: usize, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidChannel(format!(
                "depolarizing parameter {p} outside [0, 1]"
            )));
        }
        let d2 = (dim * dim) as f64;
        let mut kraus = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                let weight = if a == 0 && b == 0 {
                    1.0 - p + p / d2
                } else {
                    p / d2
                };
                if weight == 0.0 {
                    continue;
                }
                kraus.push(weyl(dim, a, b).scale_real(weight.sqrt()));
            }
        }
        Self::new(dim, dim, kraus)
    }

    pub fn completely_depolarizing(dim: usize) -> Self {
        Self::depolarizing(dim, 1.0).expect("p = 1 is valid")
    }

    /// `X ↦ X ⊗ τ`.
    pub fn attach_ancilla(dim: usize, ancilla: &DensityMatrix) -> Result<Self> {
        let da = ancilla.dim();
        let eig = &ancilla.spectrum().eig;
        let mut kraus = Vec::new();
        for (k, &w) in eig.eigenvalues.iter().enumerate() {
            if w <= 0.0 {
                continue;
            }
            let v = eig.eigenvector(k);
            let col = ComplexMatrix::from_columns(da, &[v]).scale_real(w.sqrt());
            kraus.push(ComplexMatrix::identity(dim).kron(&col));
        }
        Self::new(dim, dim * da, kraus)
    }

    /// `X_{AB} ↦ Tr_B[X_{AB}]` for `dim = d_A · d_B`.
    pub fn partial_trace_second(dim_a: usize, dim_b: usize) -> Result<Self> {
        let kraus = (0..dim_b)
            .map(|j| {
                let bra = ComplexMatrix::from_fn(1, dim_b, |_, c| {
                    Complex64::new(if c == j { 1.0 } else { 0.0 }, 0.0)
                });
                ComplexMatrix::identity(dim_a).kron(&bra)
            })
            .collect();
        Self::new(dim_a * dim_b, dim_a, kraus)
    }

    /// `X ↦ Σ P_k X P_k` for projectors summing to the identity.
    pub fn pinching(projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let n = projectors
            .first()
            .ok_or_else(|| Error::InvalidChannel("no projectors".into()))?
            .ensure_square()?;
        Self::new(n, n, projectors)
    }

    /// Qubit amplitude damping with decay probability `gamma`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidChannel(format!(
                "damping {gamma} outside [0, 1]"
            )));
        }
        let k0 = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, (1.0 - gamma).sqrt()]);
        let k1 = ComplexMatrix::from_real(2, 2, &[0.0, gamma.sqrt(), 0.0, 0.0]);
        Self::new(2, 2, vec![k0, k1])
    }

    /// Rebuilds a Kraus family from a Choi matrix via its eigendecomposition.
    pub fn from_choi(choi: &ChoiMatrix) -> Result<Self> {
        let (din, dout) = (choi.dim_in, choi.dim_out);
        let psd = psd_eig(&choi.matrix)?;
        let mut kraus = Vec::new();
        for (k, &w) in psd.eig.eigenvalues.iter().enumerate().rev() {
            if !psd.in_support(w) {
                continue;
            }
            let v = psd.eig.eigenvector(k);
            let scale = w.sqrt();
            kraus.push(ComplexMatrix::from_fn(dout, din, |o, i| {
                v[o * din + i] * scale
            }));
        }
        if kraus.is_empty() {
            return Err(Error::InvalidChannel("Choi matrix is zero".into()));
        }
        Self::with_tolerance(din, dout, kraus, choi.tolerance)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// `Φ(X)` for any `dim_in × dim_in` operator.
    pub fn apply_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.shape() != (self.dim_in, self.dim_in) {
            return Err(Error::DimensionMismatch(format!(
                "channel input is {}x{}, operator is {}x{}",
                self.dim_in,
                self.dim_in,
                x.rows(),
                x.cols()
            )));
        }
        Ok(apply_kraus(&self.kraus, x))
    }

    /// `Φ*(A) = Σ K_i† A K_i`.
    pub fn adjoint(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if a.shape() != (self.dim_out, self.dim_out) {
            return Err(Error::DimensionMismatch(format!(
                "channel output is {}x{}, operator is {}x{}",
                self.dim_out,
                self.dim_out,
                a.rows(),
                a.cols()
            )));
        }
        Ok(apply_kraus_adjoint(&self.kraus, a))
    }

    pub fn to_choi(&self) -> ChoiMatrix {
        ChoiMatrix {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            matrix: choi_of_kraus(self.dim_in, self.dim_out, &self.kraus),
            tolerance: CHANNEL_TOLERANCE,
        }
    }
}

/// Generalized Pauli `X^a Z^b` on `C^d`.
pub fn weyl(dim: usize, a: usize, b: usize) -> ComplexMatrix {
    let omega = 2.0 * PI / dim as f64;
    ComplexMatrix::from_fn(dim, dim, |r, c| {
        if r == (c + a) % dim {
            Complex64::from_polar(1.0, omega * (b * c) as f64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Applies a channel to a state.
pub fn apply_channel(phi: &QuantumChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != phi.dim_in {
        return Err(Error::DimensionMismatch(format!(
            "state has dimension {}, channel expects {}",
            rho.dim(),
            phi.dim_in
        )));
    }
    output_state(apply_kraus(&phi.kraus, rho.matrix()))
}

/// Heisenberg-picture map `A ↦ Φ*(A)`.
pub fn apply_adjoint(phi: &QuantumChannel, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    phi.adjoint(a)
}

/// `Ψ ∘ Φ` with Kraus family `{L_j K_i}`.
pub fn channel_compose(psi: &QuantumChannel, phi: &QuantumChannel) -> Result<QuantumChannel> {
    if psi.dim_in != phi.dim_out {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose: outer channel takes {}, inner produces {}",
            psi.dim_in, phi.dim_out
        )));
    }
    let kraus = psi
        .kraus
        .iter()
        .flat_map(|l| phi.kraus.iter().map(move |k| l * k))
        .collect();
    QuantumChannel::new(phi.dim_in, psi.dim_out, kraus)
}

pub fn kraus_to_choi(phi: &QuantumChannel) -> ChoiMatrix {
    phi.to_choi()
}

pub(crate) fn output_state(m: ComplexMatrix) -> Result<DensityMatrix> {
    DensityMatrix::with_trace_tolerance(m, OUTPUT_TRACE_TOLERANCE).map_err(|e| match e {
        Error::InvalidState(msg) => Error::NotPsdOutput(msg),
        other => other,
    })
}

/// Channel in Choi form, `(Φ ⊗ id)(|Ω⟩⟨Ω|)` with the output factor first:
/// entry `((k, i), (l, j))` is `Φ(|i⟩⟨j|)_{kl}`.
#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    dim_in: usize,
    dim_out: usize,
    matrix: ComplexMatrix,
    tolerance: f64,
}

impl ChoiMatrix {
    pub fn new(dim_in: usize, dim_out: usize, matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(dim_in, dim_out, matrix, CHANNEL_TOLERANCE)
    }

    pub(crate) fn with_tolerance(
        dim_in: usize,
        dim_out: usize,
        matrix: ComplexMatrix,
        tolerance: f64,
    ) -> Result<Self> {
        let n = dim_in * dim_out;
        if n == 0 || matrix.shape() != (n, n) {
            return Err(Error::InvalidChannel(format!(
                "Choi matrix must be {n}x{n}, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let residual = matrix.hermiticity_residual();
        if residual > tolerance * matrix.frobenius_norm().max(1.0) {
            return Err(Error::InvalidChannel(format!(
                "Choi matrix not Hermitian ({residual:.3e})"
            )));
        }
        let matrix = matrix.hermitian_part();
        let lowest = eigh(&matrix)?.eigenvalues[0];
        if lowest < -tolerance {
            return Err(Error::InvalidChannel(format!(
                "Choi matrix eigenvalue {lowest:.3e}"
            )));
        }
        let choi = Self {
            dim_in,
            dim_out,
            matrix,
            tolerance,
        };
        let tp = choi
            .output_partial_trace()
            .distance_frobenius(&ComplexMatrix::identity(dim_in));
        if tp > tolerance {
            return Err(Error::InvalidChannel(format!(
                "not trace preserving ({tp:.3e})"
            )));
        }
        Ok(choi)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Partial trace over the output factor; the identity for a TP map.
    pub fn output_partial_trace(&self) -> ComplexMatrix {
        let din = self.dim_in;
        ComplexMatrix::from_fn(din, din, |i, j| {
            (0..self.dim_out)
                .map(|k| self.matrix[(k * din + i, k * din + j)])
                .sum()
        })
    }

    /// `out_{kl} = Σ_{ij} C_{(k,i),(l,j)} X_{ij}` for any input operator.
    pub fn apply_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let (din, dout) = (self.dim_in, self.dim_out);
        if x.shape() != (din, din) {
            return Err(Error::DimensionMismatch(format!(
                "Choi input dimension {din}, operator is {}x{}",
                x.rows(),
                x.cols()
            )));
        }
        Ok(ComplexMatrix::from_fn(dout, dout, |k, l| {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..din {
                for j in 0..din {
                    acc += self.matrix[(k * din + i, l * din + j)] * x[(i, j)];
                }
            }
            acc
        }))
    }
}

/// Applies a channel given in Choi form to a state.
pub fn apply_via_choi(choi: &ChoiMatrix, rho: &DensityMatrix) -> Result<DensityMatrix> {
    output_state(choi.apply_operator(rho.matrix())?)
}
