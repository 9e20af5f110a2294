//! Petz recovery, rotated Petz maps, the β₀-averaged universal recovery
//! channel, Connes cocycles, and reports that check sufficiency and
//! recoverability numerically.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::divergences::{d_max, relative_entropy_spectral, support_leak, SUPPORT_LEAK_TOL};
use crate::error::{Error, Result};
use crate::hypothesis::{check_dpi_pointwise, deficiency_epsilon_from_images};
use crate::linalg::{trace_norm, ComplexMatrix, SupportProjection};
use crate::quantum::{
    apply_channel, apply_kraus, apply_kraus_adjoint, apply_via_choi, choi_of_kraus,
    ensure_same_dim, fidelity, kraus_gram, l1_distance, ChoiMatrix, DensityMatrix, QuantumChannel,
};

/// Tolerance for trace preservation of constructed recovery maps.
pub const RECOVERY_TOLERANCE: f64 = 1e-7;
pub const DEFAULT_TRUNCATION: f64 = 4.0;
pub const DEFAULT_NODES: usize = 801;
pub const MIN_TRUNCATION: f64 = 3.0;
pub const MIN_NODES: usize = 101;
pub const DEFAULT_VERDICT_THRESHOLD: f64 = 1e-6;
/// Upper edge of the borderline verdict band.
pub const BORDERLINE_THRESHOLD: f64 = 1e-4;
/// Rotation parameters probed by default in sufficiency reports.
pub const DEFAULT_T_SAMPLES: [f64; 3] = [-1.0, 0.3, 2.0];

/// `β₀(t) = π/(cosh(2πt) + 1)`, a probability density on the real line.
pub fn rotation_density(t: f64) -> f64 {
    PI / ((2.0 * PI * t).cosh() + 1.0)
}

/// `∫_{−T}^{T} β₀ = tanh(πT)`.
pub fn rotation_density_mass(truncation: f64) -> f64 {
    (PI * truncation).tanh()
}

/// `1 − tanh(πT) = 2/(e^{2πT} + 1)`, without cancellation.
pub fn rotation_density_tail(truncation: f64) -> f64 {
    let e = (-2.0 * PI * truncation).exp();
    2.0 * e / (1.0 + e)
}

/// Composite Simpson nodes `(t, w)` on `[−T, T]` with `w ∝ β₀(t)`, scaled
/// so that the weights sum to `∫_{−T}^{T} β₀`.
pub fn rotation_density_nodes(truncation: f64, nodes: usize) -> Result<Vec<(f64, f64)>> {
    if !(truncation.is_finite() && truncation >= MIN_TRUNCATION) {
        return Err(Error::InvalidTruncation(truncation));
    }
    if nodes < MIN_NODES || nodes % 2 == 0 {
        return Err(Error::EvenNodeCount(nodes));
    }
    let half = (nodes - 1) / 2;
    let h = truncation / half as f64;
    let mut out: Vec<(f64, f64)> = (0..nodes)
        .map(|k| {
            let t = truncation * (k as f64 - half as f64) / half as f64;
            let c = if k == 0 || k == nodes - 1 {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            (t, c * h / 3.0 * rotation_density(t))
        })
        .collect();
    let total: f64 = out.iter().map(|&(_, w)| w).sum();
    let scale = rotation_density_mass(truncation) / total;
    for node in &mut out {
        node.1 *= scale;
    }
    Ok(out)
}

fn check_input(phi: &QuantumChannel, sigma: &DensityMatrix) -> Result<()> {
    if sigma.dim() != phi.dim_in() {
        return Err(Error::DimensionMismatch(format!(
            "state has dimension {}, channel input {}",
            sigma.dim(),
            phi.dim_in()
        )));
    }
    Ok(())
}

/// Kraus operators `√p_a |v_a⟩⟨w_k|` of `X ↦ Tr[(I − P)X] σ`, where
/// `σ = Σ p_a |v_a⟩⟨v_a|` and `{w_k}` spans `ker Φ(σ)`.
fn kernel_branch_kraus(sigma: &DensityMatrix, phi_sigma: &DensityMatrix) -> Vec<ComplexMatrix> {
    let kernel = phi_sigma.spectrum().kernel_vectors();
    let spec = sigma.spectrum();
    let mut out = Vec::new();
    for (a, &p) in spec.eig.eigenvalues.iter().enumerate() {
        if !spec.in_support(p) {
            continue;
        }
        let v: Vec<Complex64> = spec
            .eig
            .eigenvector(a)
            .into_iter()
            .map(|z| z * p.sqrt())
            .collect();
        out.extend(kernel.iter().map(|w| ComplexMatrix::outer(&v, w)));
    }
    out
}

/// Rotated Petz map `Φ_{σ,t}` with Kraus operators
/// `σ^{1/2 − it} K_i† Φ(σ)^{−1/2 + it}`; the Petz map itself at `t = 0`.
///
/// The Kraus family acts on `supp Φ(σ)`. The attached channel extends it to
/// the whole output space by `X ↦ Tr[(I − P)X] σ` with `P = supp Φ(σ)`.
#[derive(Debug, Clone)]
pub struct PetzMap {
    t: f64,
    kraus: Vec<ComplexMatrix>,
    channel: QuantumChannel,
    sigma: DensityMatrix,
    phi_sigma: DensityMatrix,
}

pub type RotatedPetzMap = PetzMap;

impl PetzMap {
    pub fn t(&self) -> f64 {
        self.t
    }

    /// Support-restricted Kraus family.
    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// Completed channel on the full output space of `Φ`.
    pub fn channel(&self) -> &QuantumChannel {
        &self.channel
    }

    pub fn sigma(&self) -> &DensityMatrix {
        &self.sigma
    }

    /// `Φ(σ)`.
    pub fn phi_sigma(&self) -> &DensityMatrix {
        &self.phi_sigma
    }

    pub fn apply(&self, omega: &DensityMatrix) -> Result<DensityMatrix> {
        apply_channel(&self.channel, omega)
    }

    /// Support-restricted map on an arbitrary operator.
    pub fn apply_on_support(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.shape() != (self.phi_sigma.dim(), self.phi_sigma.dim()) {
            return Err(Error::DimensionMismatch(
                "operator does not match the recovery input".into(),
            ));
        }
        Ok(apply_kraus(&self.kraus, x))
    }

    /// Heisenberg-picture dual `Φ_σ*(A) = Σ L_i† A L_i`.
    pub fn dual(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if a.shape() != (self.sigma.dim(), self.sigma.dim()) {
            return Err(Error::DimensionMismatch(
                "operator does not match the recovery output".into(),
            ));
        }
        Ok(apply_kraus_adjoint(&self.kraus, a))
    }

    /// `‖Σ L_i†L_i − P‖_F` with `P = supp Φ(σ)`.
    pub fn support_gram_residual(&self) -> f64 {
        kraus_gram(&self.kraus).distance_frobenius(&self.phi_sigma.support().projector)
    }
}

pub fn petz_map(phi: &QuantumChannel, sigma: &DensityMatrix) -> Result<PetzMap> {
    rotated_petz(phi, sigma, 0.0)
}

pub fn rotated_petz(phi: &QuantumChannel, sigma: &DensityMatrix, t: f64) -> Result<RotatedPetzMap> {
    check_input(phi, sigma)?;
    if !t.is_finite() {
        return Err(Error::InvalidChannel(format!(
            "rotation parameter {t} is not finite"
        )));
    }
    let phi_sigma = apply_channel(phi, sigma)?;
    let left = sigma.power(Complex64::new(0.5, -t));
    let right = phi_sigma.power(Complex64::new(-0.5, t));
    let kraus: Vec<ComplexMatrix> = phi
        .kraus()
        .iter()
        .map(|k| &(&left * &k.adjoint()) * &right)
        .collect();
    let residual = kraus_gram(&kraus).distance_frobenius(&phi_sigma.support().projector);
    if residual > RECOVERY_TOLERANCE {
        return Err(Error::InvalidChannel(format!(
            "recovery map is not trace preserving on the support ({residual:.3e})"
        )));
    }
    let mut full = kraus.clone();
    full.extend(kernel_branch_kraus(sigma, &phi_sigma));
    let channel =
        QuantumChannel::with_tolerance(phi.dim_out(), phi.dim_in(), full, RECOVERY_TOLERANCE)?;
    Ok(PetzMap {
        t,
        kraus,
        channel,
        sigma: sigma.clone(),
        phi_sigma,
    })
}

/// `Φ^u_σ(X) = ∫ β₀(t) Φ_{σ,t}(PXP) dt + Tr[(I − P)X] σ`, with the integral
/// replaced by composite Simpson on `[−T, T]`.
#[derive(Debug, Clone)]
pub struct AveragedRecoveryChannel {
    choi: ChoiMatrix,
    measure_nodes: Vec<(f64, f64)>,
    truncation: f64,
    p_support: SupportProjection,
    kernel_state: DensityMatrix,
}

impl AveragedRecoveryChannel {
    pub fn choi(&self) -> &ChoiMatrix {
        &self.choi
    }

    pub fn measure_nodes(&self) -> &[(f64, f64)] {
        &self.measure_nodes
    }

    pub fn truncation(&self) -> f64 {
        self.truncation
    }

    pub fn weight_sum(&self) -> f64 {
        self.measure_nodes.iter().map(|&(_, w)| w).sum()
    }

    /// `1 − ∫_{−T}^{T} β₀`, the measure discarded by truncation.
    pub fn tail_mass(&self) -> f64 {
        rotation_density_tail(self.truncation)
    }

    /// `P = supp Φ(σ)`.
    pub fn p_support(&self) -> &SupportProjection {
        &self.p_support
    }

    /// State emitted on the `Tr[(I − P)·]` branch.
    pub fn kernel_state(&self) -> &DensityMatrix {
        &self.kernel_state
    }

    pub fn apply(&self, omega: &DensityMatrix) -> Result<DensityMatrix> {
        apply_via_choi(&self.choi, omega)
    }

    pub fn apply_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.choi.apply_operator(x)
    }

    /// Kraus form, rebuilt from the Choi matrix.
    pub fn to_channel(&self) -> Result<QuantumChannel> {
        QuantumChannel::from_choi(&self.choi)
    }
}

/// Builds `Φ^u_σ` with `nodes` Simpson points on `[−T, T]`.
///
/// In the eigenbases of `σ` and `Φ(σ)` every rotated Petz Kraus operator is
/// the `t = 0` one with entries multiplied by `e^{−it(ln p_a − ln q_b)}`, so
/// the node sum collapses to one cosine sum per pair of entries.
pub fn universal_recovery(
    phi: &QuantumChannel,
    sigma: &DensityMatrix,
    truncation: f64,
    nodes: usize,
) -> Result<AveragedRecoveryChannel> {
    check_input(phi, sigma)?;
    let measure_nodes = rotation_density_nodes(truncation, nodes)?;
    let phi_sigma = apply_channel(phi, sigma)?;
    let (din, dout) = (phi.dim_in(), phi.dim_out());
    let (se, oe) = (sigma.spectrum(), phi_sigma.spectrum());
    let (v, w) = (&se.eig.eigenvectors, &oe.eig.eigenvectors);

    // (index a·dout + b, coefficient scale, log ratio) over supported pairs
    let mut entries: Vec<(usize, f64, f64)> = Vec::new();
    for (a, &p) in se.eig.eigenvalues.iter().enumerate() {
        for (b, &q) in oe.eig.eigenvalues.iter().enumerate() {
            if se.in_support(p) && oe.in_support(q) {
                entries.push((a * dout + b, (p / q).sqrt(), p.ln() - q.ln()));
            }
        }
    }
    let rotated: Vec<ComplexMatrix> = phi
        .kraus()
        .iter()
        .map(|k| &(&v.adjoint() * &k.adjoint()) * w)
        .collect();
    let coeff: Vec<Vec<Complex64>> = rotated
        .iter()
        .map(|c| {
            entries
                .iter()
                .map(|&(r, scale, _)| c.data()[r] * scale)
                .collect()
        })
        .collect();

    let n = din * dout;
    let mut inner = ComplexMatrix::zeros(n, n);
    for (x, &(rx, _, thx)) in entries.iter().enumerate() {
        for (y, &(ry, _, thy)) in entries.iter().enumerate().skip(x) {
            let omega = thx - thy;
            let chi: f64 = measure_nodes
                .iter()
                .map(|&(t, wt)| wt * (omega * t).cos())
                .sum();
            let gram: Complex64 = coeff.iter().map(|c| c[x] * c[y].conj()).sum();
            inner[(rx, ry)] = gram * chi;
            inner[(ry, rx)] = (gram * chi).conj();
        }
    }
    let basis = v.kron(&w.conj());
    let averaged = &(&basis * &inner) * &basis.adjoint();
    let kernel = choi_of_kraus(dout, din, &kernel_branch_kraus(sigma, &phi_sigma));
    let choi = ChoiMatrix::with_tolerance(dout, din, &averaged + &kernel, RECOVERY_TOLERANCE)?;
    Ok(AveragedRecoveryChannel {
        choi,
        measure_nodes,
        truncation,
        p_support: phi_sigma.support(),
        kernel_state: sigma.clone(),
    })
}

/// Connes cocycles `u_t = ρ^{it}σ^{−it}` and `v_t = Φ(ρ)^{it}Φ(σ)^{−it}`.
///
/// `ρ^{it}` is the identity on `ker ρ` and `σ^{−it}` vanishes on `ker σ`, so
/// `u_0 = P_σ`.
#[derive(Debug, Clone)]
pub struct CocyclePair {
    pub t: f64,
    pub u_t: ComplexMatrix,
    pub v_t: ComplexMatrix,
}

impl CocyclePair {
    /// `‖Φ*(v_t) − u_t‖_F`, zero when `Φ` is sufficient for the pair.
    pub fn intertwining_residual(&self, phi: &QuantumChannel) -> Result<f64> {
        Ok(phi.adjoint(&self.v_t)?.distance_frobenius(&self.u_t))
    }
}

fn cocycle(rho: &DensityMatrix, sigma: &DensityMatrix, t: f64) -> ComplexMatrix {
    &rho.imaginary_power(t) * &sigma.power(Complex64::new(0.0, -t))
}

fn check_support(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    let leak = support_leak(rho, sigma)?;
    if leak > SUPPORT_LEAK_TOL {
        return Err(Error::SupportViolation(leak));
    }
    Ok(())
}

pub fn cocycles(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    phi: &QuantumChannel,
    t: f64,
) -> Result<CocyclePair> {
    ensure_same_dim(rho, sigma)?;
    check_input(phi, sigma)?;
    check_support(rho, sigma)?;
    let (rho_out, sigma_out) = (apply_channel(phi, rho)?, apply_channel(phi, sigma)?);
    Ok(CocyclePair {
        t,
        u_t: cocycle(rho, sigma, t),
        v_t: cocycle(&rho_out, &sigma_out, t),
    })
}

/// `‖σ^{is} u_t σ^{−is} − u_s* u_{t+s}‖_F`.
pub fn cocycle_identity_residual(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    s: f64,
    t: f64,
) -> Result<f64> {
    ensure_same_dim(rho, sigma)?;
    check_support(rho, sigma)?;
    let lhs = &(&sigma.power(Complex64::new(0.0, s)) * &cocycle(rho, sigma, t))
        * &sigma.power(Complex64::new(0.0, -s));
    let rhs = &cocycle(rho, sigma, s).adjoint() * &cocycle(rho, sigma, t + s);
    Ok(lhs.distance_frobenius(&rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Sufficient,
    Borderline,
    NotSufficient,
}

/// State with respect to which the recovery maps in a report were built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceState {
    /// `σ` itself.
    Sigma,
    /// `½(ρ + σ)`, used when `supp ρ ⊄ supp σ`.
    Midpoint,
}

#[derive(Debug, Clone)]
pub struct SufficiencyReport {
    pub max_l1_gap: f64,
    pub max_pe_gap: f64,
    pub max_trpos_gap: f64,
    pub max_trneg_gap: f64,
    /// Smallest DPI slack over the grid before clamping; `≥ 0` up to noise.
    pub min_dpi_slack: f64,
    /// `D(ρ‖σ) − D(Φρ‖Φσ)`; `None` when both are infinite.
    pub entropy_gap: Option<f64>,
    pub petz_recovery_error: f64,
    pub rotated_recovery_errors: Vec<(f64, f64)>,
    pub cocycle_residuals: Vec<(f64, f64)>,
    pub reference_state: ReferenceState,
    pub verdict: Verdict,
    pub threshold: f64,
}

impl SufficiencyReport {
    /// Largest residual entering the verdict.
    pub fn worst_residual(&self) -> f64 {
        let gaps = [
            self.max_l1_gap,
            self.max_pe_gap,
            self.max_trpos_gap,
            self.max_trneg_gap,
            self.petz_recovery_error,
        ];
        gaps.into_iter()
            .chain(self.entropy_gap.map(f64::abs))
            .chain(self.rotated_recovery_errors.iter().map(|&(_, e)| e))
            .fold(0.0, f64::max)
    }
}

fn entropy_gap(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    rho_out: &DensityMatrix,
    sigma_out: &DensityMatrix,
) -> Result<Option<f64>> {
    let before = relative_entropy_spectral(rho, sigma)?;
    let after = relative_entropy_spectral(rho_out, sigma_out)?;
    Ok(match (before.is_finite(), after.is_finite()) {
        (false, false) => None,
        (false, true) => Some(f64::INFINITY),
        _ => Some(before - after),
    })
}

pub fn sufficiency_report(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    phi: &QuantumChannel,
    grid: &[f64],
    t_samples: &[f64],
    threshold: f64,
) -> Result<SufficiencyReport> {
    ensure_same_dim(rho, sigma)?;
    check_input(phi, sigma)?;
    let dpi = check_dpi_pointwise(rho, sigma, phi, grid)?;
    let (max_l1_gap, max_trpos_gap, max_trneg_gap, max_pe_gap) = dpi.max_gaps();
    let rho_out = apply_channel(phi, rho)?;
    let sigma_out = apply_channel(phi, sigma)?;
    let gap = entropy_gap(rho, sigma, &rho_out, &sigma_out)?;

    let (reference, reference_state) = if support_leak(rho, sigma)? > SUPPORT_LEAK_TOL {
        (rho.mix(sigma, 0.5)?, ReferenceState::Midpoint)
    } else {
        (sigma.clone(), ReferenceState::Sigma)
    };
    let recovery_error = |t: f64| -> Result<f64> {
        let map = rotated_petz(phi, &reference, t)?;
        l1_distance(&map.apply(&rho_out)?, rho)
    };
    let petz_recovery_error = recovery_error(0.0)?;
    let rotated_recovery_errors = t_samples
        .iter()
        .map(|&t| Ok((t, recovery_error(t)?)))
        .collect::<Result<Vec<_>>>()?;
    let cocycle_residuals = t_samples
        .iter()
        .map(|&t| {
            Ok((
                t,
                cocycles(rho, &reference, phi, t)?.intertwining_residual(phi)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = SufficiencyReport {
        max_l1_gap,
        max_pe_gap,
        max_trpos_gap,
        max_trneg_gap,
        min_dpi_slack: dpi.min_slack(),
        entropy_gap: gap,
        petz_recovery_error,
        rotated_recovery_errors,
        cocycle_residuals,
        reference_state,
        verdict: Verdict::NotSufficient,
        threshold,
    };
    let worst = report.worst_residual();
    report.verdict = if worst <= threshold {
        Verdict::Sufficient
    } else if worst <= BORDERLINE_THRESHOLD.max(threshold) {
        Verdict::Borderline
    } else {
        Verdict::NotSufficient
    };
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct RecoveryReport {
    /// `D(ρ‖σ) − D(Φρ‖Φσ)`; `+∞` when `D(ρ‖σ)` is infinite.
    pub entropy_gap: f64,
    /// `−2 ln F(ρ, Φ^u_σ∘Φ(ρ))`.
    pub minus_2log_f: f64,
    /// `¼‖ρ − Φ^u_σ∘Φ(ρ)‖₁²`.
    pub quarter_l1_sq: f64,
    /// `‖ρ − Φ^u_σ∘Φ(ρ)‖₁`.
    pub recovered_trace_distance: f64,
    /// `‖σ − Φ^u_σ∘Φ(σ)‖₁`.
    pub sigma_recovery_error: f64,
    pub epsilon: f64,
    pub d_omega: f64,
    /// `√(2ε) D_Ω^{1/2}`; `+∞` when `D_Ω` is.
    pub deficiency_bound: f64,
    /// `(entropy_gap − minus_2log_f, minus_2log_f − quarter_l1_sq)`.
    pub chain_slacks: (f64, f64),
    /// Smallest `‖Φρ − sΦσ‖₁ + ‖Φ^u_σ∘Φ(ρ) − ρ‖₁ + s‖Φ^u_σ∘Φ(σ) − σ‖₁ − ‖ρ − sσ‖₁`
    /// over the grid.
    pub forward_min_slack: f64,
    pub truncation: f64,
    pub nodes: usize,
    pub tail_mass: f64,
}

impl RecoveryReport {
    /// Both links of the fidelity chain, with slack `1e−7` and `2e−7`.
    pub fn chain_holds(&self) -> bool {
        self.chain_slacks.0 >= -1e-7 && self.chain_slacks.1 >= -2e-7
    }

    /// Trace-distance bound in terms of `ε` and `D_Ω`, with slack `1e−6`.
    pub fn bound_holds(&self) -> bool {
        !self.d_omega.is_finite() || self.recovered_trace_distance <= self.deficiency_bound + 1e-6
    }
}

pub fn recovery_report(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    phi: &QuantumChannel,
    grid: &[f64],
    truncation: f64,
    nodes: usize,
) -> Result<RecoveryReport> {
    ensure_same_dim(rho, sigma)?;
    check_input(phi, sigma)?;
    let universal = universal_recovery(phi, sigma, truncation, nodes)?;
    let rho_out = apply_channel(phi, rho)?;
    let sigma_out = apply_channel(phi, sigma)?;
    let recovered = universal.apply(&rho_out)?;
    let sigma_back = universal.apply(&sigma_out)?;

    let gap = entropy_gap(rho, sigma, &rho_out, &sigma_out)?.unwrap_or(f64::INFINITY);
    let minus_2log_f = -2.0 * fidelity(rho, &recovered)?.ln();
    let recovered_trace_distance = l1_distance(rho, &recovered)?;
    let quarter_l1_sq = 0.25 * recovered_trace_distance * recovered_trace_distance;
    let sigma_recovery_error = l1_distance(sigma, &sigma_back)?;

    let dpi = check_dpi_pointwise(rho, sigma, phi, grid)?;
    let epsilon = deficiency_epsilon_from_images(rho, sigma, &rho_out, &sigma_out, grid)?;
    let forward_min_slack = dpi
        .input
        .iter()
        .zip(&dpi.image)
        .map(|(a, b)| b.l1 + recovered_trace_distance + a.s * sigma_recovery_error - a.l1)
        .fold(f64::INFINITY, f64::min);
    let d_omega = d_max(rho, sigma)? + d_max(sigma, rho)?;
    let deficiency_bound = if d_omega.is_finite() {
        (2.0 * epsilon * d_omega).sqrt()
    } else {
        f64::INFINITY
    };
    let chain_slacks = (
        if gap.is_finite() {
            gap - minus_2log_f
        } else {
            f64::INFINITY
        },
        minus_2log_f - quarter_l1_sq,
    );
    Ok(RecoveryReport {
        entropy_gap: gap,
        minus_2log_f,
        quarter_l1_sq,
        recovered_trace_distance,
        sigma_recovery_error,
        epsilon,
        d_omega,
        deficiency_bound,
        chain_slacks,
        forward_min_slack,
        truncation,
        nodes,
        tail_mass: universal.tail_mass(),
    })
}

/// `Tr[A† σ^{1/2} B σ^{1/2}]`.
pub fn weighted_inner(sigma: &DensityMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let root = sigma.sqrt();
    (&(&a.adjoint() * &root) * &(b * &root)).trace()
}

/// `‖ρ − Λ(Φ(ρ))‖₁` for a recovery channel `Λ`.
pub fn recovery_error(
    rho: &DensityMatrix,
    phi: &QuantumChannel,
    lambda: &QuantumChannel,
) -> Result<f64> {
    let back = apply_channel(lambda, &apply_channel(phi, rho)?)?;
    trace_norm(&(rho.matrix() - back.matrix()))
}
