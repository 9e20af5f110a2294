//! Command-line front end: parses state and channel documents, runs the
//! divergence, sweep, verification and recovery commands, and renders JSON
//! reports or CSV curves.

pub mod documents;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::divergences::{
    d_max, divergence_report, relative_entropy_integral, relative_entropy_spectral,
    QuadratureScheme, QuadratureSpec,
};
use crate::error::Error;
use crate::fixtures;
use crate::hypothesis::{
    default_grid, dpi_slacks, sweep_curves, GridSpec, Spacing, DEFAULT_GRID_POINTS, GRID_CAP,
};
use crate::quantum::{apply_channel, DensityMatrix, QuantumChannel};
use crate::recovery::{
    petz_map, recovery_report, rotated_petz, sufficiency_report, universal_recovery,
    RecoveryReport, ReferenceState, SufficiencyReport, Verdict, DEFAULT_NODES, DEFAULT_TRUNCATION,
    DEFAULT_T_SAMPLES, DEFAULT_VERDICT_THRESHOLD,
};
use documents::{
    channel_document, choi_document, kraus_document, parse_channel, parse_state, state_document,
};
use output::{csv_row, to_json, Real};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("infinite divergence with --finite-required")]
    FiniteRequired,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::FiniteRequired => 3,
            CliError::Core(Error::QuadratureBudgetExceeded { .. }) => 4,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qsuff",
    version,
    about = "Relative entropy, hypothesis testing and recovery maps for quantum channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relative entropy by the spectral and integral routes, plus D_max.
    Entropy(EntropyArgs),
    /// Hypothesis-testing curves over a threshold grid, as CSV.
    Sweep(SweepArgs),
    /// Sufficiency and recoverability report for a state pair and a channel.
    Verify(VerifyArgs),
    /// Emits a Petz, rotated Petz or universal recovery map.
    Petz(PetzArgs),
    /// Writes a seeded fixture (rho.json, sigma.json, channel.json).
    Fixture(FixtureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Spectral,
    Integral,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Geometric,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    AdaptiveSimpson,
    FixedGaussLegendre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Unitary,
    AttachAncilla,
    Pinching,
    Depolarizing,
    RandomQubit,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub s_min: Option<f64>,
    #[arg(long)]
    pub s_max: Option<f64>,
    #[arg(long)]
    pub s_count: Option<usize>,
    #[arg(long, value_enum)]
    pub s_spacing: Option<SpacingArg>,
}

#[derive(Debug, Clone, Args)]
pub struct QuadArgs {
    #[arg(long, default_value_t = 1e-8)]
    pub quad_tol: f64,
    #[arg(long, value_enum, default_value = "adaptive-simpson")]
    pub quad_scheme: SchemeArg,
    #[arg(long, default_value_t = 200_000)]
    pub quad_max_nodes: usize,
}

#[derive(Debug, Clone, Args)]
pub struct RecoveryArgs {
    /// Truncation T of the β₀ average.
    #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
    pub t_max: f64,
    /// Odd number of Simpson nodes on [−T, T].
    #[arg(long, default_value_t = DEFAULT_NODES)]
    pub t_nodes: usize,
}

#[derive(Debug, Clone, Args)]
pub struct EntropyArgs {
    #[arg(long)]
    pub rho: PathBuf,
    #[arg(long)]
    pub sigma: PathBuf,
    #[arg(long, value_enum, default_value = "both")]
    pub method: Method,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exit with status 3 when a divergence is infinite.
    #[arg(long)]
    pub finite_required: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub rho: PathBuf,
    #[arg(long)]
    pub sigma: PathBuf,
    #[arg(long)]
    pub channel: Option<PathBuf>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub rho: PathBuf,
    #[arg(long)]
    pub sigma: PathBuf,
    #[arg(long)]
    pub channel: PathBuf,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub recovery: RecoveryArgs,
    #[arg(long, default_value_t = DEFAULT_VERDICT_THRESHOLD)]
    pub threshold: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PetzArgs {
    #[arg(long)]
    pub sigma: PathBuf,
    #[arg(long)]
    pub channel: PathBuf,
    /// `petz`, `rotated:<t>` or `universal`.
    #[arg(long, default_value = "petz")]
    pub variant: String,
    #[command(flatten)]
    pub recovery: RecoveryArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FixtureArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long)]
    pub out_dir: PathBuf,
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qsuff: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Entropy(a) => {
            let out = cmd_entropy(a)?;
            emit(a.out.as_deref(), &out.text)?;
            if a.finite_required && !out.finite {
                return Err(CliError::FiniteRequired);
            }
            Ok(())
        }
        Command::Sweep(a) => emit(a.out.as_deref(), &cmd_sweep(a)?),
        Command::Verify(a) => emit(a.out.as_deref(), &cmd_verify(a)?),
        Command::Petz(a) => emit(a.out.as_deref(), &cmd_petz(a)?),
        Command::Fixture(a) => {
            let written = cmd_fixture(a, fixtures::seed_from_env())?;
            let listing: String = written
                .iter()
                .map(|p| format!("{}\n", p.display()))
                .collect();
            emit(None, &listing)
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<(String, String), CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Parse(format!("{}: not UTF-8", path.display())))?;
    Ok((text, digest))
}

fn load_state(path: &Path) -> Result<(DensityMatrix, String), CliError> {
    let (text, digest) = read(path)?;
    Ok((parse_state(&text)?, digest))
}

fn load_channel(path: &Path) -> Result<(QuantumChannel, String), CliError> {
    let (text, digest) = read(path)?;
    Ok((parse_channel(&text)?, digest))
}

impl QuadArgs {
    fn spec(&self) -> Result<QuadratureSpec, CliError> {
        let spec = QuadratureSpec {
            scheme: match self.quad_scheme {
                SchemeArg::AdaptiveSimpson => QuadratureScheme::AdaptiveSimpson,
                SchemeArg::FixedGaussLegendre => QuadratureScheme::FixedGaussLegendre,
            },
            max_nodes: self.quad_max_nodes,
            rel_tol: self.quad_tol,
            ..Default::default()
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl GridArgs {
    fn is_default(&self) -> bool {
        self.s_min.is_none()
            && self.s_max.is_none()
            && self.s_count.is_none()
            && self.s_spacing.is_none()
    }

    fn resolve(&self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Vec<f64>, CliError> {
        if self.is_default() {
            return Ok(default_grid(rho, sigma, DEFAULT_GRID_POINTS)?);
        }
        let max = match self.s_max {
            Some(m) => m,
            None => d_max(rho, sigma)?.exp().min(GRID_CAP),
        };
        let spec = GridSpec {
            min: self.s_min.unwrap_or(0.0),
            max,
            count: self.s_count.unwrap_or(DEFAULT_GRID_POINTS),
            spacing: match self.s_spacing.unwrap_or(SpacingArg::Geometric) {
                SpacingArg::Geometric => Spacing::Geometric,
                SpacingArg::Linear => Spacing::Linear,
            },
        };
        Ok(spec.build()?)
    }

    fn echo(&self) -> GridEcho {
        GridEcho {
            kind: if self.is_default() {
                "default"
            } else {
                "explicit"
            },
            min: self.s_min.map(Real),
            max: self.s_max.map(Real),
            count: self.s_count,
            spacing: self.s_spacing.map(|s| match s {
                SpacingArg::Geometric => "geometric",
                SpacingArg::Linear => "linear",
            }),
        }
    }
}

#[derive(Serialize)]
struct GridEcho {
    kind: &'static str,
    min: Option<Real>,
    max: Option<Real>,
    count: Option<usize>,
    spacing: Option<&'static str>,
}

#[derive(Serialize)]
struct QuadEcho {
    scheme: QuadratureScheme,
    rel_tol: Real,
    max_nodes: usize,
    substitution: &'static str,
}

impl From<&QuadratureSpec> for QuadEcho {
    fn from(q: &QuadratureSpec) -> Self {
        QuadEcho {
            scheme: q.scheme,
            rel_tol: Real(q.rel_tol),
            max_nodes: q.max_nodes,
            substitution: "log-domain",
        }
    }
}

#[derive(Serialize)]
struct Provenance<C: Serialize> {
    tool: &'static str,
    version: &'static str,
    inputs: Vec<InputHash>,
    config: C,
}

#[derive(Serialize)]
struct InputHash {
    role: &'static str,
    sha256: String,
}

fn provenance<C: Serialize>(inputs: Vec<(&'static str, String)>, config: C) -> Provenance<C> {
    Provenance {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        inputs: inputs
            .into_iter()
            .map(|(role, sha256)| InputHash { role, sha256 })
            .collect(),
        config,
    }
}

#[derive(Serialize)]
struct EntropyConfig {
    method: &'static str,
    quadrature: QuadEcho,
}

#[derive(Serialize)]
struct EntropyResult {
    d_spectral: Option<Real>,
    d_integral: Option<Real>,
    quad_error_estimate: Option<Real>,
    quad_evaluations: Option<usize>,
    d_max_rho_sigma: Real,
    d_max_sigma_rho: Real,
    d_omega: Real,
}

#[derive(Serialize)]
struct EntropyDocument {
    command: &'static str,
    provenance: Provenance<EntropyConfig>,
    result: EntropyResult,
}

pub struct EntropyOutput {
    pub text: String,
    /// Whether every computed divergence is finite.
    pub finite: bool,
}

pub fn cmd_entropy(args: &EntropyArgs) -> Result<EntropyOutput, CliError> {
    let (rho, h_rho) = load_state(&args.rho)?;
    let (sigma, h_sigma) = load_state(&args.sigma)?;
    let spec = args.quad.spec()?;
    let spectral = match args.method {
        Method::Spectral | Method::Both => Some(relative_entropy_spectral(&rho, &sigma)?),
        Method::Integral => None,
    };
    let integral = match args.method {
        Method::Integral | Method::Both => Some(relative_entropy_integral(&rho, &sigma, &spec)?),
        Method::Spectral => None,
    };
    let (dm_rs, dm_sr) = (d_max(&rho, &sigma)?, d_max(&sigma, &rho)?);
    let finite =
        spectral.map_or(true, f64::is_finite) && integral.map_or(true, |i| i.value.is_finite());
    let method = match args.method {
        Method::Spectral => "spectral",
        Method::Integral => "integral",
        Method::Both => "both",
    };
    let doc = EntropyDocument {
        command: "entropy",
        provenance: provenance(
            vec![("rho", h_rho), ("sigma", h_sigma)],
            EntropyConfig {
                method,
                quadrature: (&spec).into(),
            },
        ),
        result: EntropyResult {
            d_spectral: spectral.map(Real),
            d_integral: integral.map(|i| Real(i.value)),
            quad_error_estimate: integral.map(|i| Real(i.error_estimate)),
            quad_evaluations: integral.map(|i| i.evaluations),
            d_max_rho_sigma: Real(dm_rs),
            d_max_sigma_rho: Real(dm_sr),
            d_omega: Real(dm_rs + dm_sr),
        },
    };
    Ok(EntropyOutput {
        text: to_json(&doc),
        finite,
    })
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<String, CliError> {
    let (rho, _) = load_state(&args.rho)?;
    let (sigma, _) = load_state(&args.sigma)?;
    let grid = args.grid.resolve(&rho, &sigma)?;
    let mut out = String::new();
    match &args.channel {
        None => {
            out.push_str("s,l1,tr_pos,tr_neg,pe\n");
            for p in sweep_curves(&rho, &sigma, &grid)? {
                out.push_str(&csv_row(&[p.s, p.l1, p.tr_pos, p.tr_neg, p.pe]));
                out.push('\n');
            }
        }
        Some(path) => {
            let (phi, _) = load_channel(path)?;
            let rho_img = apply_channel(&phi, &rho)?;
            let sigma_img = apply_channel(&phi, &sigma)?;
            let rep = dpi_slacks(&rho, &sigma, &rho_img, &sigma_img, &grid)?;
            out.push_str("s,l1,tr_pos,tr_neg,pe,l1_img,tr_neg_img,gap_l1\n");
            for ((p, q), gap) in rep.input.iter().zip(&rep.image).zip(&rep.points) {
                out.push_str(&csv_row(&[
                    p.s, p.l1, p.tr_pos, p.tr_neg, p.pe, q.l1, q.tr_neg, gap.l1,
                ]));
                out.push('\n');
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct VerifyConfig {
    grid: GridEcho,
    grid_points: usize,
    quadrature: QuadEcho,
    truncation_t: Real,
    rotation_density_nodes: usize,
    verdict_threshold: Real,
    t_samples: Vec<Real>,
    kernel_output: &'static str,
}

#[derive(Serialize)]
struct Sample {
    t: Real,
    value: Real,
}

fn samples(v: &[(f64, f64)]) -> Vec<Sample> {
    v.iter()
        .map(|&(t, value)| Sample {
            t: Real(t),
            value: Real(value),
        })
        .collect()
}

#[derive(Serialize)]
struct SufficiencyJson {
    verdict: Verdict,
    threshold: Real,
    reference_state: ReferenceState,
    max_l1_gap: Real,
    max_pe_gap: Real,
    max_trpos_gap: Real,
    max_trneg_gap: Real,
    min_dpi_slack: Real,
    entropy_gap: Option<Real>,
    petz_recovery_error: Real,
    rotated_recovery_errors: Vec<Sample>,
    cocycle_residuals: Vec<Sample>,
}

impl From<&SufficiencyReport> for SufficiencyJson {
    fn from(r: &SufficiencyReport) -> Self {
        SufficiencyJson {
            verdict: r.verdict,
            threshold: Real(r.threshold),
            reference_state: r.reference_state,
            max_l1_gap: Real(r.max_l1_gap),
            max_pe_gap: Real(r.max_pe_gap),
            max_trpos_gap: Real(r.max_trpos_gap),
            max_trneg_gap: Real(r.max_trneg_gap),
            min_dpi_slack: Real(r.min_dpi_slack),
            entropy_gap: r.entropy_gap.map(Real),
            petz_recovery_error: Real(r.petz_recovery_error),
            rotated_recovery_errors: samples(&r.rotated_recovery_errors),
            cocycle_residuals: samples(&r.cocycle_residuals),
        }
    }
}

#[derive(Serialize)]
struct RecoveryJson {
    entropy_gap: Real,
    minus_2log_f: Real,
    quarter_l1_sq: Real,
    recovered_trace_distance: Real,
    sigma_recovery_error: Real,
    epsilon: Real,
    d_omega: Real,
    deficiency_bound: Real,
    chain_slacks: [Real; 2],
    forward_min_slack: Real,
    chain_holds: bool,
    bound_holds: bool,
    tail_mass: Real,
}

impl From<&RecoveryReport> for RecoveryJson {
    fn from(r: &RecoveryReport) -> Self {
        RecoveryJson {
            entropy_gap: Real(r.entropy_gap),
            minus_2log_f: Real(r.minus_2log_f),
            quarter_l1_sq: Real(r.quarter_l1_sq),
            recovered_trace_distance: Real(r.recovered_trace_distance),
            sigma_recovery_error: Real(r.sigma_recovery_error),
            epsilon: Real(r.epsilon),
            d_omega: Real(r.d_omega),
            deficiency_bound: Real(r.deficiency_bound),
            chain_slacks: [Real(r.chain_slacks.0), Real(r.chain_slacks.1)],
            forward_min_slack: Real(r.forward_min_slack),
            chain_holds: r.chain_holds(),
            bound_holds: r.bound_holds(),
            tail_mass: Real(r.tail_mass),
        }
    }
}

#[derive(Serialize)]
struct DivergenceJson {
    d_spectral: Real,
    d_integral: Real,
    quad_error_estimate: Real,
    d_max_rho_sigma: Real,
    d_max_sigma_rho: Real,
    d_omega: Real,
}

#[derive(Serialize)]
struct VerifyDocument {
    command: &'static str,
    provenance: Provenance<VerifyConfig>,
    divergences: DivergenceJson,
    sufficiency: SufficiencyJson,
    recovery: RecoveryJson,
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<String, CliError> {
    let (rho, h_rho) = load_state(&args.rho)?;
    let (sigma, h_sigma) = load_state(&args.sigma)?;
    let (phi, h_phi) = load_channel(&args.channel)?;
    let spec = args.quad.spec()?;
    let grid = args.grid.resolve(&rho, &sigma)?;
    let (t_max, nodes) = (args.recovery.t_max, args.recovery.t_nodes);

    let div = divergence_report(&rho, &sigma, &spec)?;
    let suff = sufficiency_report(
        &rho,
        &sigma,
        &phi,
        &grid,
        &DEFAULT_T_SAMPLES,
        args.threshold,
    )?;
    let rec = recovery_report(&rho, &sigma, &phi, &grid, t_max, nodes)?;

    let doc = VerifyDocument {
        command: "verify",
        provenance: provenance(
            vec![("rho", h_rho), ("sigma", h_sigma), ("channel", h_phi)],
            VerifyConfig {
                grid: args.grid.echo(),
                grid_points: grid.len(),
                quadrature: (&spec).into(),
                truncation_t: Real(t_max),
                rotation_density_nodes: nodes,
                verdict_threshold: Real(args.threshold),
                t_samples: DEFAULT_T_SAMPLES.iter().copied().map(Real).collect(),
                kernel_output: "sigma",
            },
        ),
        divergences: DivergenceJson {
            d_spectral: Real(div.d_spectral),
            d_integral: Real(div.d_integral),
            quad_error_estimate: Real(div.quad_error_estimate),
            d_max_rho_sigma: Real(div.d_max_rho_sigma),
            d_max_sigma_rho: Real(div.d_max_sigma_rho),
            d_omega: Real(div.d_omega),
        },
        sufficiency: (&suff).into(),
        recovery: (&rec).into(),
    };
    Ok(to_json(&doc))
}

/// Recovery map selector for [`cmd_petz`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    Petz,
    Rotated(f64),
    Universal,
}

impl std::str::FromStr for Variant {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "petz" => Ok(Variant::Petz),
            "universal" => Ok(Variant::Universal),
            _ => match s.strip_prefix("rotated:").map(str::parse::<f64>) {
                Some(Ok(t)) if t.is_finite() => Ok(Variant::Rotated(t)),
                _ => Err(CliError::Parse(format!(
                    "unknown variant {s:?}; use petz, rotated:<t> or universal"
                ))),
            },
        }
    }
}

/// Channel document for the requested recovery map: the completed Kraus
/// family for `petz` and `rotated:<t>`, the Choi matrix for `universal`.
pub fn cmd_petz(args: &PetzArgs) -> Result<String, CliError> {
    let (sigma, _) = load_state(&args.sigma)?;
    let (phi, _) = load_channel(&args.channel)?;
    let doc = match args.variant.parse::<Variant>()? {
        Variant::Petz => channel_document(petz_map(&phi, &sigma)?.channel()),
        Variant::Rotated(t) => channel_document(rotated_petz(&phi, &sigma, t)?.channel()),
        Variant::Universal => choi_document(
            universal_recovery(&phi, &sigma, args.recovery.t_max, args.recovery.t_nodes)?.choi(),
        ),
    };
    Ok(to_json(&doc))
}

/// Writes `rho.json`, `sigma.json` and `channel.json` for a fixture family
/// and returns the paths written.
pub fn cmd_fixture(args: &FixtureArgs, seed: u64) -> Result<Vec<PathBuf>, CliError> {
    let mut rng = fixtures::rng(seed);
    let d = args.dim;
    if d < 2 {
        return Err(CliError::Parse(
            "fixture dimension must be at least 2".into(),
        ));
    }
    let f = match args.family {
        Family::Unitary => fixtures::unitary_fixture(&mut rng, d),
        Family::AttachAncilla => fixtures::ancilla_fixture(&mut rng, d, 2),
        Family::Pinching => fixtures::pinching_fixture(&mut rng, d / 2 + d % 2, d / 2),
        Family::Depolarizing => fixtures::depolarizing_fixture(),
        Family::RandomQubit => fixtures::random_qubit_fixture(&mut rng),
    };
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.out_dir.display())))?;
    let files = [
        ("rho.json", to_json(&state_document(&f.rho))),
        ("sigma.json", to_json(&state_document(&f.sigma))),
        (
            "channel.json",
            to_json(&kraus_document(
                f.channel.dim_in(),
                f.channel.dim_out(),
                f.channel.kraus(),
            )),
        ),
    ];
    let mut written = Vec::new();
    for (name, text) in files {
        let path = args.out_dir.join(name);
        fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variant_parsing() {
        assert_eq!("petz".parse::<Variant>().unwrap(), Variant::Petz);
        assert_eq!(
            "rotated:0.3".parse::<Variant>().unwrap(),
            Variant::Rotated(0.3)
        );
        assert_eq!("universal".parse::<Variant>().unwrap(), Variant::Universal);
        assert!("rotated:x".parse::<Variant>().is_err());
        assert!("rotated:inf".parse::<Variant>().is_err());
        assert!("other".parse::<Variant>().is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::FiniteRequired.exit_code(), 3);
        assert_eq!(
            CliError::Core(Error::QuadratureBudgetExceeded { max_nodes: 17 }).exit_code(),
            4
        );
        assert_eq!(CliError::Parse("x".into()).exit_code(), 2);
        assert_eq!(run(["qsuff", "entropy"]), 2);
    }
}
