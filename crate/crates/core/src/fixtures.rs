//! Seeded random states, unitaries and channels, plus the named fixture
//! families used by tests, the acceptance suite and the CLI generator.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::ComplexMatrix;
use crate::quantum::{DensityMatrix, Effect, QuantumChannel};

/// Environment variable holding the fixture seed.
pub const SEED_ENV: &str = "QSUFF_SEED";
pub const DEFAULT_SEED: u64 = 42;

pub type FixtureRng = ChaCha8Rng;

/// Seed from `QSUFF_SEED`, falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> FixtureRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Matrix of independent standard complex Gaussian entries.
pub fn ginibre(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    ginibre(rng, dim, dim).hermitian_part()
}

/// `GG†/Tr[GG†]` with `G` a `dim × rank` Ginibre matrix.
pub fn random_state_with_rank(rng: &mut impl Rng, dim: usize, rank: usize) -> DensityMatrix {
    let g = ginibre(rng, dim, rank.clamp(1, dim));
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr)).expect("Wishart matrix normalizes to a state")
}

/// Full-rank random state from the Hilbert–Schmidt ensemble.
pub fn random_state(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    random_state_with_rank(rng, dim, dim)
}

fn orthonormalize(m: &ComplexMatrix) -> ComplexMatrix {
    let (rows, cols) = m.shape();
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = m.column(j);
        for _ in 0..2 {
            for u in &q {
                let dot: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= dot * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        q.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_columns(rows, &q)
}

/// `rows × cols` isometry (`V†V = I`) from Gram–Schmidt on Gaussian columns.
pub fn random_isometry(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    assert!(cols <= rows, "isometry needs cols <= rows");
    orthonormalize(&ginibre(rng, rows, cols))
}

pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    random_isometry(rng, dim, dim)
}

/// Channel with `env` Kraus operators cut from a random isometry
/// `C^{dim_in} → C^{dim_out} ⊗ C^{env}`.
pub fn random_channel(
    rng: &mut impl Rng,
    dim_in: usize,
    dim_out: usize,
    env: usize,
) -> QuantumChannel {
    let v = random_isometry(rng, dim_out * env, dim_in);
    let kraus = (0..env)
        .map(|e| ComplexMatrix::from_fn(dim_out, dim_in, |o, i| v[(o * env + e, i)]))
        .collect();
    QuantumChannel::new(dim_in, dim_out, kraus).expect("isometry blocks form a channel")
}

/// `U diag(u) U†` with `u` uniform on `[0, 1]`.
pub fn random_effect(rng: &mut impl Rng, dim: usize) -> Effect {
    let u = random_unitary(rng, dim);
    let diag: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
    Effect::new(u.sandwich(&ComplexMatrix::from_diag(&diag))).expect("spectrum lies in [0, 1]")
}

/// A pair of states and a channel.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub rho: DensityMatrix,
    pub sigma: DensityMatrix,
    pub channel: QuantumChannel,
}

/// Random full-rank pair under a random unitary conjugation.
pub fn unitary_fixture(rng: &mut impl Rng, dim: usize) -> Fixture {
    Fixture {
        name: "unitary".into(),
        rho: random_state(rng, dim),
        sigma: random_state(rng, dim),
        channel: QuantumChannel::unitary(random_unitary(rng, dim)).expect("unitary channel"),
    }
}

/// Random full-rank pair under `X ↦ X ⊗ τ` with a random full-rank `τ`.
pub fn ancilla_fixture(rng: &mut impl Rng, dim: usize, ancilla_dim: usize) -> Fixture {
    let tau = random_state(rng, ancilla_dim);
    Fixture {
        name: "attach-ancilla".into(),
        rho: random_state(rng, dim),
        sigma: random_state(rng, dim),
        channel: QuantumChannel::attach_ancilla(dim, &tau).expect("ancilla channel"),
    }
}

fn block_diagonal(a: &DensityMatrix, b: &DensityMatrix, w: f64) -> DensityMatrix {
    let (da, db) = (a.dim(), b.dim());
    let m = ComplexMatrix::from_fn(da + db, da + db, |r, c| {
        if r < da && c < da {
            a.matrix()[(r, c)] * w
        } else if r >= da && c >= da {
            b.matrix()[(r - da, c - da)] * (1.0 - w)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    DensityMatrix::new(m).expect("block sum of states is a state")
}

/// States block diagonal for `C^{d1} ⊕ C^{d2}` under the pinching onto the
/// two blocks, conjugated by a common random unitary.
pub fn pinching_fixture(rng: &mut impl Rng, d1: usize, d2: usize) -> Fixture {
    let w_rho = rng.gen_range(0.2..0.8);
    let w_sigma = rng.gen_range(0.2..0.8);
    let rho = block_diagonal(&random_state(rng, d1), &random_state(rng, d2), w_rho);
    let sigma = block_diagonal(&random_state(rng, d1), &random_state(rng, d2), w_sigma);
    let u = random_unitary(rng, d1 + d2);
    let p: Vec<f64> = (0..d1 + d2)
        .map(|k| if k < d1 { 1.0 } else { 0.0 })
        .collect();
    let proj = u.sandwich(&ComplexMatrix::from_diag(&p));
    let comp = &ComplexMatrix::identity(d1 + d2) - &proj;
    Fixture {
        name: "pinching".into(),
        rho: rho.conjugate(&u).expect("unitary conjugation"),
        sigma: sigma.conjugate(&u).expect("unitary conjugation"),
        channel: QuantumChannel::pinching(vec![proj.hermitian_part(), comp.hermitian_part()])
            .expect("pinching channel"),
    }
}

/// Qubit depolarizing channel `p = 0.5` with `ρ = diag(0.75, 0.25)` and
/// `σ = I/2 + 0.2 X`, which do not commute.
pub fn depolarizing_fixture() -> Fixture {
    Fixture {
        name: "depolarizing".into(),
        rho: DensityMatrix::from_diag(&[0.75, 0.25]).expect("diagonal state"),
        sigma: DensityMatrix::new(ComplexMatrix::from_real(2, 2, &[0.5, 0.2, 0.2, 0.5]))
            .expect("state"),
        channel: QuantumChannel::depolarizing(2, 0.5).expect("depolarizing channel"),
    }
}

/// Random full-rank qubit pair and a random qubit channel with two to four
/// Kraus operators.
pub fn random_qubit_fixture(rng: &mut impl Rng) -> Fixture {
    let env = rng.gen_range(2..=4);
    Fixture {
        name: "random-qubit".into(),
        rho: random_state(rng, 2),
        sigma: random_state(rng, 2),
        channel: random_channel(rng, 2, 2, env),
    }
}

/// Transposition mixed with complete depolarization,
/// `X ↦ (1 − p)Xᵀ + p Tr[X] I/d`: positive and trace preserving, not
/// completely positive for `p < d/(d + 1)`.
pub fn transpose_depolarize(x: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    let d = x.ensure_square()?;
    let tr = x.trace();
    Ok(&x.transpose().scale_real(1.0 - p) + &ComplexMatrix::identity(d).scale(tr * (p / d as f64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isometry_and_unitary_are_orthonormal() {
        let mut r = rng(7);
        let v = random_isometry(&mut r, 6, 3);
        assert!((&v.adjoint() * &v).distance_frobenius(&ComplexMatrix::identity(3)) < 1e-13);
        let u = random_unitary(&mut r, 4);
        assert!((&u * &u.adjoint()).distance_frobenius(&ComplexMatrix::identity(4)) < 1e-13);
    }

    #[test]
    fn same_seed_same_fixture() {
        let a = random_qubit_fixture(&mut rng(3));
        let b = random_qubit_fixture(&mut rng(3));
        assert_eq!(a.rho.matrix().data(), b.rho.matrix().data());
        assert_eq!(a.channel.kraus().len(), b.channel.kraus().len());
    }

    #[test]
    fn fixture_states_are_full_rank() {
        let mut r = rng(11);
        assert!(random_state(&mut r, 4).is_full_rank());
        assert_eq!(random_state_with_rank(&mut r, 4, 2).rank(), 2);
        let f = pinching_fixture(&mut r, 2, 2);
        assert!(f.rho.is_full_rank() && f.sigma.is_full_rank());
    }
}
