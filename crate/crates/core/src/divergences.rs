//! Relative entropy (spectral definition and the integral of negative parts
//! over thresholds), max-relative entropy and the Hilbert projective metric.
//!
//! All values are in nats. `f64::INFINITY` marks support violations.

use crate::error::{Error, Result};
use crate::linalg::{eigh, eigvalsh, part_traces, ComplexMatrix};
use crate::quantum::{ensure_same_dim, DensityMatrix};

/// Mass of `ρ` outside `supp σ` above which a divergence is infinite.
pub const SUPPORT_LEAK_TOL: f64 = 1e-9;

/// Lower integration limit used when `σ ≤ cρ` fails for every `c`.
pub const S_FLOOR: f64 = 1e-9;

const SIMPSON_INITIAL_PANELS: usize = 16;
const SIMPSON_MAX_DEPTH: u32 = 30;
const GAUSS_ORDER: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureScheme {
    AdaptiveSimpson,
    FixedGaussLegendre,
}

/// Integration variable. Only `x = ln s` is offered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Substitution {
    #[default]
    LogDomain,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadratureSpec {
    pub scheme: QuadratureScheme,
    pub max_nodes: usize,
    pub rel_tol: f64,
    #[serde(default)]
    pub substitution: Substitution,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            scheme: QuadratureScheme::AdaptiveSimpson,
            max_nodes: 200_000,
            rel_tol: 1e-8,
            substitution: Substitution::LogDomain,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.max_nodes < 17 {
            return Err(Error::InvalidQuadrature(format!(
                "max_nodes {} < 17",
                self.max_nodes
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(Error::InvalidQuadrature(format!(
                "rel_tol {} outside (0, 1e-2]",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

/// Integral-route result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// `Tr[ρ(I − P_σ)]`, summed over an orthonormal basis of `ker σ`.
pub fn support_leak(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    ensure_same_dim(rho, sigma)?;
    Ok(sigma
        .spectrum()
        .kernel_vectors()
        .iter()
        .map(|v| quadratic_form(rho.matrix(), v))
        .sum())
}

fn quadratic_form(a: &ComplexMatrix, v: &[num_complex::Complex64]) -> f64 {
    let n = v.len();
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for i in 0..n {
        let mut row = num_complex::Complex64::new(0.0, 0.0);
        for j in 0..n {
            row += a[(i, j)] * v[j];
        }
        acc += v[i].conj() * row;
    }
    acc.re
}

/// Whether `supp ρ ⊆ supp σ` up to [`SUPPORT_LEAK_TOL`].
pub fn support_contained(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<bool> {
    Ok(support_leak(rho, sigma)? <= SUPPORT_LEAK_TOL)
}

/// `D(ρ‖σ) = Tr[ρ log ρ] − Tr[ρ log σ]`, logs restricted to supports.
pub fn relative_entropy_spectral(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if !support_contained(rho, sigma)? {
        return Ok(f64::INFINITY);
    }
    let spec = sigma.spectrum();
    let cross: f64 = spec
        .eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &p)| spec.in_support(p))
        .map(|(k, &p)| p.ln() * quadratic_form(rho.matrix(), &spec.eig.eigenvector(k)))
        .sum();
    Ok(rho.neg_entropy() - cross)
}

/// `Tr[((1 − t)ρ + tσ)₋]`.
pub fn mixture_negative_trace(rho: &DensityMatrix, sigma: &DensityMatrix, t: f64) -> Result<f64> {
    ensure_same_dim(rho, sigma)?;
    let m = rho
        .matrix()
        .scale_real(1.0 - t)
        .add_scaled(sigma.matrix(), t);
    negative_trace(&m)
}

fn negative_trace(a: &ComplexMatrix) -> Result<f64> {
    Ok(-eigvalsh(a)?.iter().filter(|&&l| l < 0.0).sum::<f64>())
}

/// Eigenvalues of `σ^{−1/2} ρ σ^{−1/2}` restricted to `supp σ`, ascending.
/// `None` when `supp ρ ⊄ supp σ`.
pub fn generalized_spectrum(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
) -> Result<Option<Vec<f64>>> {
    if !support_contained(rho, sigma)? {
        return Ok(None);
    }
    let spec = sigma.spectrum();
    let support: Vec<usize> = (0..sigma.dim())
        .filter(|&k| spec.in_support(spec.eig.eigenvalues[k]))
        .collect();
    let r = support.len();
    let vecs: Vec<Vec<num_complex::Complex64>> =
        support.iter().map(|&k| spec.eig.eigenvector(k)).collect();
    let scale: Vec<f64> = support
        .iter()
        .map(|&k| spec.eig.eigenvalues[k].powf(-0.5))
        .collect();
    let rv: Vec<Vec<num_complex::Complex64>> = vecs
        .iter()
        .map(|v| {
            (0..v.len())
                .map(|i| (0..v.len()).map(|j| rho.matrix()[(i, j)] * v[j]).sum())
                .collect()
        })
        .collect();
    let m = ComplexMatrix::from_fn(r, r, |a, b| {
        let inner: num_complex::Complex64 =
            vecs[a].iter().zip(&rv[b]).map(|(x, y)| x.conj() * y).sum();
        inner * scale[a] * scale[b]
    });
    Ok(Some(eigh(&m)?.eigenvalues))
}

/// `D_max(ρ‖σ) = ln min{λ : ρ ≤ λσ}`.
pub fn d_max(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(match generalized_spectrum(rho, sigma)? {
        None => f64::INFINITY,
        Some(g) => g.last().copied().unwrap_or(0.0).max(f64::MIN_POSITIVE).ln(),
    })
}

/// `D_Ω(ρ‖σ) = D_max(ρ‖σ) + D_max(σ‖ρ)`.
pub fn hilbert_projective_metric(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(d_max(rho, sigma)? + d_max(sigma, rho)?)
}

/// `D(ρ‖σ) = ∫_μ^λ (ds/s) Tr[(ρ − sσ)₋] + ln λ + 1 − λ` with
/// `λ = e^{D_max(ρ‖σ)}`, `μ = e^{−D_max(σ‖ρ)}` (or [`S_FLOOR`]).
///
/// Evaluated as `∫_μ^1 (ds/s) Tr[(ρ − sσ)₋] + ∫_1^λ (ds/s) Tr[(ρ − sσ)₊]`,
/// which is the same number because `Tr[(ρ − sσ)₋] = Tr[(ρ − sσ)₊] + s − 1`;
/// the boundary term cancels and both integrands stay in `[0, 1]`. The
/// integral runs over `x = ln s`, split at `x = 0` and at the logarithms of
/// the generalized eigenvalues where the integrand has kinks.
pub fn relative_entropy_integral(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate> {
    ensure_same_dim(rho, sigma)?;
    spec.validate()?;
    let Some(gen) = generalized_spectrum(rho, sigma)? else {
        return Ok(IntegralEstimate {
            value: f64::INFINITY,
            error_estimate: 0.0,
            evaluations: 0,
        });
    };
    let lambda = gen.last().copied().unwrap_or(1.0).max(1.0);
    let mu = match d_max(sigma, rho)? {
        d if d.is_finite() => (-d).exp().min(1.0),
        _ => S_FLOOR,
    };
    let (lo, hi) = (mu.ln(), lambda.ln());
    if hi - lo <= 0.0 {
        return Ok(IntegralEstimate {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let mut breaks = vec![lo, 0.0];
    breaks.extend(
        gen.iter()
            .filter(|&&g| g > 0.0)
            .map(|g| g.ln())
            .filter(|&x| x > lo + 1e-12 * (hi - lo) && x < hi - 1e-12 * (hi - lo)),
    );
    breaks.push(hi);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (hi - lo));

    let integrand = |x: f64| {
        let (pos, neg) = part_traces(&rho.matrix().add_scaled(sigma.matrix(), -x.exp()))?;
        Ok(if x < 0.0 { neg } else { pos })
    };
    let mut q = Quadrature::new(integrand, spec.max_nodes);
    let coarse = q.coarse(&breaks)?;
    let tol = spec.rel_tol * coarse.abs().max(1.0);
    let width = hi - lo;
    let mut value = 0.0;
    let mut error = 0.0;
    for w in breaks.windows(2) {
        let piece_tol = tol * (w[1] - w[0]) / width;
        let (v, e) = match spec.scheme {
            QuadratureScheme::AdaptiveSimpson => q.simpson(w[0], w[1], piece_tol)?,
            QuadratureScheme::FixedGaussLegendre => q.gauss(w[0], w[1], piece_tol)?,
        };
        value += v;
        error += e;
    }
    Ok(IntegralEstimate {
        value,
        error_estimate: error,
        evaluations: q.evaluations,
    })
}

struct Quadrature<F> {
    f: F,
    max_nodes: usize,
    evaluations: usize,
}

impl<F: Fn(f64) -> Result<f64>> Quadrature<F> {
    fn new(f: F, max_nodes: usize) -> Self {
        Self {
            f,
            max_nodes,
            evaluations: 0,
        }
    }

    fn eval(&mut self, x: f64) -> Result<f64> {
        if self.evaluations >= self.max_nodes {
            return Err(Error::QuadratureBudgetExceeded {
                max_nodes: self.max_nodes,
            });
        }
        self.evaluations += 1;
        (self.f)(x)
    }

    /// Trapezoid over the breakpoints; only sets the tolerance scale.
    fn coarse(&mut self, breaks: &[f64]) -> Result<f64> {
        let vals = breaks
            .iter()
            .map(|&x| self.eval(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(breaks
            .windows(2)
            .zip(vals.windows(2))
            .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
            .sum())
    }

    fn simpson(&mut self, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
        let n = SIMPSON_INITIAL_PANELS;
        let h = (b - a) / n as f64;
        let xs: Vec<f64> = (0..=n)
            .map(|k| if k == n { b } else { a + h * k as f64 })
            .collect();
        let fs = xs
            .iter()
            .map(|&x| self.eval(x))
            .collect::<Result<Vec<_>>>()?;
        let mut value = 0.0;
        let mut error = 0.0;
        for k in 0..n {
            let (x0, x1) = (xs[k], xs[k + 1]);
            let xm = 0.5 * (x0 + x1);
            let fm = self.eval(xm)?;
            let whole = (x1 - x0) / 6.0 * (fs[k] + 4.0 * fm + fs[k + 1]);
            let (v, e) = self.refine(x0, x1, fs[k], fm, fs[k + 1], whole, tol / n as f64, 0)?;
            value += v;
            error += e;
        }
        Ok((value, error))
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<(f64, f64)> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (self.eval(lm)?, self.eval(rm)?);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth >= SIMPSON_MAX_DEPTH || delta.abs() <= 15.0 * tol {
            return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
        }
        let (v1, e1) = self.refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?;
        let (v2, e2) = self.refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?;
        Ok((v1 + v2, e1 + e2))
    }

    /// Composite Gauss–Legendre, doubling the panel count until two
    /// successive estimates agree.
    fn gauss(&mut self, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
        let (nodes, weights) = gauss_legendre(GAUSS_ORDER);
        let mut panels = 1;
        let mut prev = self.composite_gauss(a, b, panels, &nodes, &weights)?;
        loop {
            panels *= 2;
            let next = self.composite_gauss(a, b, panels, &nodes, &weights)?;
            let diff = (next - prev).abs();
            if diff <= tol {
                return Ok((next, diff));
            }
            prev = next;
        }
    }

    fn composite_gauss(
        &mut self,
        a: f64,
        b: f64,
        panels: usize,
        nodes: &[f64],
        weights: &[f64],
    ) -> Result<f64> {
        let h = (b - a) / panels as f64;
        let mut total = 0.0;
        for p in 0..panels {
            let c = a + h * (p as f64 + 0.5);
            for (x, w) in nodes.iter().zip(weights) {
                total += 0.5 * h * w * self.eval(c + 0.5 * h * x)?;
            }
        }
        Ok(total)
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let dp = legendre(n, x).1;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceReport {
    pub d_spectral: f64,
    pub d_integral: f64,
    pub quad_error_estimate: f64,
    pub d_max_rho_sigma: f64,
    pub d_max_sigma_rho: f64,
    pub d_omega: f64,
}

impl DivergenceReport {
    /// Whether the spectral and integral routes agree within
    /// `max(1e−6, 10 × error estimate)`, or are both infinite.
    pub fn routes_agree(&self) -> bool {
        match (self.d_spectral.is_finite(), self.d_integral.is_finite()) {
            (true, true) => {
                (self.d_spectral - self.d_integral).abs()
                    <= (10.0 * self.quad_error_estimate).max(1e-6)
            }
            (false, false) => true,
            _ => false,
        }
    }
}

pub fn divergence_report(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    spec: &QuadratureSpec,
) -> Result<DivergenceReport> {
    let d_spectral = relative_entropy_spectral(rho, sigma)?;
    let integral = relative_entropy_integral(rho, sigma, spec)?;
    let d_max_rho_sigma = d_max(rho, sigma)?;
    let d_max_sigma_rho = d_max(sigma, rho)?;
    Ok(DivergenceReport {
        d_spectral,
        d_integral: integral.value,
        quad_error_estimate: integral.error_estimate,
        d_max_rho_sigma,
        d_max_sigma_rho,
        d_omega: d_max_rho_sigma + d_max_sigma_rho,
    })
}
