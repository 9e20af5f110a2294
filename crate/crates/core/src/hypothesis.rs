//! Binary quantum hypothesis testing: Bayes errors, optimal tests, and
//! threshold sweeps of `‖ρ − sσ‖₁` and its positive/negative parts.
//!
//! The null hypothesis is σ, the alternative ρ. A threshold `s ≥ 0` and a
//! prior weight `λ ∈ [0, 1]` are related by `s = λ/(1 − λ)`.

use num_complex::Complex64;

use crate::divergences::{d_max, generalized_spectrum};
use crate::error::{Error, Result};
use crate::linalg::{eigh, eigvalsh, ComplexMatrix, SupportProjection};
use crate::quantum::{apply_channel, ensure_same_dim, DensityMatrix, Effect, QuantumChannel};

/// Eigenvalues of `ρ − sσ` within this distance of zero go to `P_{s,0}`.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-12;

/// Number of geometric points in the default threshold grid.
pub const DEFAULT_GRID_POINTS: usize = 513;

/// Smallest positive threshold in default and geometric grids.
pub const GRID_FLOOR: f64 = 1e-6;

/// Upper end of the default grid when `D_max(ρ‖σ)` is infinite.
pub const GRID_CAP: f64 = 1e6;

/// `s = λ/(1 − λ)`; `None` at `λ = 1`.
pub fn lambda_to_s(lambda: f64) -> Result<Option<f64>> {
    check_lambda(lambda)?;
    Ok((lambda < 1.0).then(|| lambda / (1.0 - lambda)))
}

/// `λ = s/(1 + s)`.
pub fn s_to_lambda(s: f64) -> f64 {
    if s.is_infinite() {
        1.0
    } else {
        s / (1.0 + s)
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::InvalidLambda(lambda))
    }
}

fn check_threshold(s: f64) -> Result<()> {
    if s.is_finite() && s >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidGrid(format!(
            "threshold {s} must be finite and nonnegative"
        )))
    }
}

/// `P_e(λ, M) = λ Tr[σM] + (1 − λ) Tr[ρ(I − M)]`.
pub fn bayes_error_of_test(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    test: &Effect,
    lambda: f64,
) -> Result<f64> {
    let d = ensure_same_dim(rho, sigma)?;
    if test.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "effect has dimension {}, states {d}",
            test.dim()
        )));
    }
    check_lambda(lambda)?;
    let alpha = sigma.expectation(test.matrix()).re;
    let beta = 1.0 - rho.expectation(test.matrix()).re;
    Ok(lambda * alpha + (1.0 - lambda) * beta)
}

/// Optimal Bayes error `½(1 − (1 − λ)‖ρ − sσ‖₁)`; zero at `λ = 1`.
pub fn optimal_bayes_error(rho: &DensityMatrix, sigma: &DensityMatrix, lambda: f64) -> Result<f64> {
    ensure_same_dim(rho, sigma)?;
    match lambda_to_s(lambda)? {
        None => Ok(0.0),
        Some(s) => {
            let l1 = crate::linalg::trace_norm(&rho.matrix().add_scaled(sigma.matrix(), -s))?;
            Ok(0.5 * (1.0 - (1.0 - lambda) * l1))
        }
    }
}

/// Three-way spectral split of `ρ − sσ` and the traces of its parts.
#[derive(Debug, Clone)]
pub struct OptimalTestDecomposition {
    pub s: f64,
    pub p_plus: SupportProjection,
    pub p_minus: SupportProjection,
    pub p_zero: SupportProjection,
    pub tr_pos: f64,
    pub tr_neg: f64,
}

impl OptimalTestDecomposition {
    pub fn lambda(&self) -> f64 {
        s_to_lambda(self.s)
    }

    pub fn l1(&self) -> f64 {
        self.tr_pos + self.tr_neg
    }

    /// The canonical optimal test `M = P_{s,+}`.
    pub fn test(&self) -> Effect {
        Effect::new(self.p_plus.projector.clone()).expect("a projector is an effect")
    }

    /// `(1 − λ)(1 − Tr[(ρ − sσ)₊])`.
    pub fn error_from_positive_part(&self) -> f64 {
        (1.0 - self.lambda()) * (1.0 - self.tr_pos)
    }

    /// `(1 − λ)(s − Tr[(ρ − sσ)₋])`.
    pub fn error_from_negative_part(&self) -> f64 {
        (1.0 - self.lambda()) * (self.s - self.tr_neg)
    }

    /// `½(1 − (1 − λ)‖ρ − sσ‖₁)`.
    pub fn optimal_error(&self) -> f64 {
        0.5 * (1.0 - (1.0 - self.lambda()) * self.l1())
    }
}

/// Neyman–Pearson decomposition at threshold `s`.
pub fn optimal_test(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    s: f64,
) -> Result<OptimalTestDecomposition> {
    ensure_same_dim(rho, sigma)?;
    check_threshold(s)?;
    let eig = eigh(&rho.matrix().add_scaled(sigma.matrix(), -s))?;
    let tol = ZERO_EIGENVALUE_TOL;
    let count = |pred: &dyn Fn(f64) -> bool| eig.eigenvalues.iter().filter(|&&l| pred(l)).count();
    let projection = |pred: &dyn Fn(f64) -> bool| SupportProjection {
        projector: eig.reconstruct_with(|l| Complex64::new(if pred(l) { 1.0 } else { 0.0 }, 0.0)),
        rank: count(pred),
        threshold: tol,
    };
    let plus = |l: f64| l > tol;
    let minus = |l: f64| l < -tol;
    let zero = |l: f64| l.abs() <= tol;
    let tr_pos = eig.eigenvalues.iter().filter(|&&l| l > 0.0).sum();
    let tr_neg = -eig.eigenvalues.iter().filter(|&&l| l < 0.0).sum::<f64>();
    Ok(OptimalTestDecomposition {
        s,
        p_plus: projection(&plus),
        p_minus: projection(&minus),
        p_zero: projection(&zero),
        tr_pos,
        tr_neg,
    })
}

/// One point of the hypothesis-testing curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub s: f64,
    /// `‖ρ − sσ‖₁`
    pub l1: f64,
    pub tr_pos: f64,
    pub tr_neg: f64,
    /// Optimal Bayes error at `λ = s/(1 + s)`.
    pub pe: f64,
}

pub(crate) fn curve_point_of(
    rho: &ComplexMatrix,
    sigma: &ComplexMatrix,
    s: f64,
) -> Result<CurvePoint> {
    let vals = eigvalsh(&rho.add_scaled(sigma, -s))?;
    let tr_pos: f64 = vals.iter().filter(|&&l| l > 0.0).sum();
    let tr_neg: f64 = -vals.iter().filter(|&&l| l < 0.0).sum::<f64>();
    let l1 = tr_pos + tr_neg;
    Ok(CurvePoint {
        s,
        l1,
        tr_pos,
        tr_neg,
        pe: 0.5 * (1.0 - l1 / (1.0 + s)),
    })
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    grid.iter().try_for_each(|&s| check_threshold(s))
}

/// Curve values at every grid point, in grid order.
pub fn sweep_curves(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    grid: &[f64],
) -> Result<Vec<CurvePoint>> {
    ensure_same_dim(rho, sigma)?;
    validate_grid(grid)?;
    grid.iter()
        .map(|&s| curve_point_of(rho.matrix(), sigma.matrix(), s))
        .collect()
}

/// Per-threshold DPI slacks, each nonnegative when monotonicity holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DpiSlack {
    pub s: f64,
    /// `‖ρ − sσ‖₁ − ‖Φρ − sΦσ‖₁`
    pub l1: f64,
    /// `Tr[(ρ − sσ)₋] − Tr[(Φρ − sΦσ)₋]`
    pub tr_neg: f64,
    /// `Tr[(ρ − sσ)₊] − Tr[(Φρ − sΦσ)₊]`
    pub tr_pos: f64,
    /// `P_e(Φρ, Φσ) − P_e(ρ, σ)`
    pub pe: f64,
}

#[derive(Debug, Clone)]
pub struct DpiReport {
    pub points: Vec<DpiSlack>,
    pub input: Vec<CurvePoint>,
    pub image: Vec<CurvePoint>,
}

impl DpiReport {
    /// Smallest slack over all points and quantities.
    pub fn min_slack(&self) -> f64 {
        self.points
            .iter()
            .flat_map(|p| [p.l1, p.tr_neg, p.tr_pos, p.pe])
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest slack of each kind: `(l1, tr_pos, tr_neg, pe)`.
    pub fn max_gaps(&self) -> (f64, f64, f64, f64) {
        self.points
            .iter()
            .fold((0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64), |acc, p| {
                (
                    acc.0.max(p.l1),
                    acc.1.max(p.tr_pos),
                    acc.2.max(p.tr_neg),
                    acc.3.max(p.pe),
                )
            })
    }
}

/// DPI slacks between an input pair and any image pair, e.g. under a map
/// that is positive and trace preserving but not completely positive.
pub fn dpi_slacks(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    rho_img: &DensityMatrix,
    sigma_img: &DensityMatrix,
    grid: &[f64],
) -> Result<DpiReport> {
    ensure_same_dim(rho, sigma)?;
    ensure_same_dim(rho_img, sigma_img)?;
    let input = sweep_curves(rho, sigma, grid)?;
    let image = sweep_curves(rho_img, sigma_img, grid)?;
    let points = input
        .iter()
        .zip(&image)
        .map(|(a, b)| DpiSlack {
            s: a.s,
            l1: a.l1 - b.l1,
            tr_neg: a.tr_neg - b.tr_neg,
            tr_pos: a.tr_pos - b.tr_pos,
            pe: b.pe - a.pe,
        })
        .collect();
    Ok(DpiReport {
        points,
        input,
        image,
    })
}

/// DPI slacks of the hypothesis-testing curves under a channel.
pub fn check_dpi_pointwise(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    phi: &QuantumChannel,
    grid: &[f64],
) -> Result<DpiReport> {
    ensure_same_dim(rho, sigma)?;
    let rho_img = apply_channel(phi, rho)?;
    let sigma_img = apply_channel(phi, sigma)?;
    dpi_slacks(rho, sigma, &rho_img, &sigma_img, grid)
}

/// `max_s (‖ρ − sσ‖₁ − ‖Φρ − sΦσ‖₁)` over the grid, clamped below at zero.
///
/// The grid is augmented with the generalized eigenvalues of both pairs that
/// fall inside its range: the gap is only piecewise smooth and its maximum
/// often sits on one of those kinks.
pub fn deficiency_epsilon(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    phi: &QuantumChannel,
    grid: &[f64],
) -> Result<f64> {
    ensure_same_dim(rho, sigma)?;
    let rho_img = apply_channel(phi, rho)?;
    let sigma_img = apply_channel(phi, sigma)?;
    deficiency_epsilon_from_images(rho, sigma, &rho_img, &sigma_img, grid)
}

/// [`deficiency_epsilon`] for precomputed images.
pub fn deficiency_epsilon_from_images(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    rho_img: &DensityMatrix,
    sigma_img: &DensityMatrix,
    grid: &[f64],
) -> Result<f64> {
    let grid = with_kinks(grid, &[(rho, sigma), (rho_img, sigma_img)])?;
    Ok(dpi_slacks(rho, sigma, rho_img, sigma_img, &grid)?
        .max_gaps()
        .0)
}

/// `grid` plus every generalized eigenvalue of the given pairs lying within
/// the grid's range, sorted and deduplicated.
pub fn with_kinks(grid: &[f64], pairs: &[(&DensityMatrix, &DensityMatrix)]) -> Result<Vec<f64>> {
    let (lo, hi) = grid
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &s| {
            (lo.min(s), hi.max(s))
        });
    let mut out = grid.to_vec();
    for (rho, sigma) in pairs {
        if let Some(gen) = generalized_spectrum(rho, sigma)? {
            out.extend(gen.into_iter().filter(|&g| g >= lo && g <= hi));
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Geometric,
    Linear,
}

/// Explicit threshold grid on `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    /// Geometric grids start at `max(min, GRID_FLOOR)` and prepend `s = 0`
    /// when `min` is zero.
    pub fn build(&self) -> Result<Vec<f64>> {
        let GridSpec {
            min,
            max,
            count,
            spacing,
        } = *self;
        if count < 2 {
            return Err(Error::InvalidGrid(format!(
                "count must be at least 2, got {count}"
            )));
        }
        if !(min.is_finite() && max.is_finite()) || min < 0.0 || max <= min {
            return Err(Error::InvalidGrid(format!(
                "need 0 <= min < max, got [{min}, {max}]"
            )));
        }
        let grid = match spacing {
            Spacing::Linear => (0..count)
                .map(|k| min + (max - min) * k as f64 / (count - 1) as f64)
                .collect(),
            Spacing::Geometric => {
                let lo = min.max(GRID_FLOOR);
                if lo >= max {
                    return Err(Error::InvalidGrid(format!(
                        "geometric grid needs max > {lo}"
                    )));
                }
                let mut g: Vec<f64> = Vec::with_capacity(count + 1);
                if min == 0.0 {
                    g.push(0.0);
                }
                g.extend(geometric(lo, max, count));
                g
            }
        };
        Ok(grid)
    }
}

fn geometric(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    let ratio = (hi / lo).ln();
    (0..count).map(move |k| {
        if k + 1 == count {
            hi
        } else {
            lo * (ratio * k as f64 / (count - 1) as f64).exp()
        }
    })
}

/// Geometric grid on `[max(1e−6, e^{−D_max(σ‖ρ)}), e^{D_max(ρ‖σ)}]` with
/// `s = 0` and `s = 1` added, sorted and deduplicated.
pub fn default_grid(rho: &DensityMatrix, sigma: &DensityMatrix, points: usize) -> Result<Vec<f64>> {
    ensure_same_dim(rho, sigma)?;
    let upper = d_max(rho, sigma)?.exp().min(GRID_CAP);
    let lower = (-d_max(sigma, rho)?).exp().clamp(GRID_FLOOR, 1.0);
    let mut grid = vec![0.0, 1.0];
    if upper > lower {
        grid.extend(geometric(lower, upper, points.max(2)));
    } else {
        grid.push(lower);
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    Ok(grid)
}

/// [`default_grid`] refined by an integer factor in the number of geometric
/// points.
pub fn refined_grid(rho: &DensityMatrix, sigma: &DensityMatrix, factor: usize) -> Result<Vec<f64>> {
    default_grid(rho, sigma, (DEFAULT_GRID_POINTS - 1) * factor.max(1) + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_pair() -> (DensityMatrix, DensityMatrix) {
        (
            DensityMatrix::from_diag(&[0.75, 0.25]).unwrap(),
            DensityMatrix::from_diag(&[0.5, 0.5]).unwrap(),
        )
    }

    #[test]
    fn bayes_error_trivial_tests() {
        let (rho, sigma) = diag_pair();
        let lambda = 0.3;
        let zero = bayes_error_of_test(&rho, &sigma, &Effect::zero(2), lambda).unwrap();
        assert!((zero - (1.0 - lambda)).abs() < 1e-15);
        let one = bayes_error_of_test(&rho, &sigma, &Effect::identity(2), lambda).unwrap();
        assert!((one - lambda).abs() < 1e-15);
        let m = Effect::new(ComplexMatrix::from_diag(&[0.3, 0.9])).unwrap();
        let same = bayes_error_of_test(&rho, &rho, &m, 0.5).unwrap();
        assert!((same - 0.5).abs() < 1e-15);
        assert!(matches!(
            bayes_error_of_test(&rho, &sigma, &m, 1.5),
            Err(Error::InvalidLambda(_))
        ));
    }

    #[test]
    fn optimal_test_on_diagonal_pair() {
        let (rho, sigma) = diag_pair();
        let dec = optimal_test(&rho, &sigma, 1.0).unwrap();
        assert!((dec.tr_neg - 0.25).abs() < 1e-15);
        assert!((dec.optimal_error() - 0.375).abs() < 1e-15);
        assert_eq!(dec.p_plus.rank, 1);
        assert_eq!(dec.p_minus.rank, 1);
        assert_eq!(dec.p_zero.rank, 0);
        let attained = bayes_error_of_test(&rho, &sigma, &dec.test(), 0.5).unwrap();
        assert!((attained - 0.375).abs() < 1e-15);
    }

    #[test]
    fn identical_states_at_unit_threshold() {
        let (rho, _) = diag_pair();
        let dec = optimal_test(&rho, &rho, 1.0).unwrap();
        assert!(dec.l1() < 1e-15);
        assert!((dec.optimal_error() - 0.5).abs() < 1e-15);
        assert_eq!(dec.p_zero.rank, 2);
    }

    #[test]
    fn error_expressions_agree() {
        let (rho, sigma) = diag_pair();
        for &s in &[0.0, 0.2, 1.0, 1.7, 4.0] {
            let dec = optimal_test(&rho, &sigma, s).unwrap();
            assert!((dec.error_from_positive_part() - dec.optimal_error()).abs() < 1e-12);
            assert!((dec.error_from_negative_part() - dec.optimal_error()).abs() < 1e-12);
            assert!((dec.tr_pos - dec.tr_neg - (1.0 - s)).abs() < 1e-12);
        }
    }

    #[test]
    fn sweep_examples() {
        let (rho, sigma) = diag_pair();
        let pts = sweep_curves(&rho, &sigma, &[0.5, 1.0, 2.0]).unwrap();
        let got: Vec<f64> = pts.iter().map(|p| p.tr_neg).collect();
        for (g, e) in got.iter().zip([0.0, 0.25, 1.0]) {
            assert!((g - e).abs() < 1e-15);
        }
        let zero = sweep_curves(&rho, &sigma, &[0.0]).unwrap()[0];
        assert!((zero.l1 - 1.0).abs() < 1e-15 && zero.tr_neg == 0.0);
        for p in sweep_curves(&rho, &rho, &[0.0, 0.3, 1.0, 2.5]).unwrap() {
            assert!((p.l1 - (1.0 - p.s).abs()).abs() < 1e-15);
        }
        assert!(matches!(
            sweep_curves(&rho, &sigma, &[]),
            Err(Error::EmptyGrid)
        ));
        assert!(sweep_curves(&rho, &sigma, &[-1.0]).is_err());
    }

    #[test]
    fn lambda_endpoint() {
        let (rho, sigma) = diag_pair();
        assert_eq!(lambda_to_s(1.0).unwrap(), None);
        assert_eq!(optimal_bayes_error(&rho, &sigma, 1.0).unwrap(), 0.0);
        assert!((optimal_bayes_error(&rho, &sigma, 0.5).unwrap() - 0.375).abs() < 1e-15);
        assert!((optimal_bayes_error(&rho, &sigma, 0.0).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn identity_channel_has_zero_slack() {
        let (rho, sigma) = diag_pair();
        let rep = check_dpi_pointwise(
            &rho,
            &sigma,
            &QuantumChannel::identity(2),
            &[0.0, 0.5, 1.0, 3.0],
        )
        .unwrap();
        assert_eq!(rep.min_slack(), 0.0);
        assert_eq!(
            deficiency_epsilon(&rho, &sigma, &QuantumChannel::identity(2), &[0.0, 1.0]).unwrap(),
            0.0
        );
    }

    #[test]
    fn grid_builders() {
        let g = GridSpec {
            min: 0.0,
            max: 10.0,
            count: 5,
            spacing: Spacing::Geometric,
        }
        .build()
        .unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[1], GRID_FLOOR);
        assert_eq!(*g.last().unwrap(), 10.0);
        let l = GridSpec {
            min: 1.0,
            max: 2.0,
            count: 3,
            spacing: Spacing::Linear,
        }
        .build()
        .unwrap();
        assert_eq!(l, vec![1.0, 1.5, 2.0]);
        assert!(GridSpec {
            min: 1.0,
            max: 2.0,
            count: 1,
            spacing: Spacing::Linear
        }
        .build()
        .is_err());

        let (rho, sigma) = diag_pair();
        let d = default_grid(&rho, &sigma, DEFAULT_GRID_POINTS).unwrap();
        assert_eq!(d[0], 0.0);
        assert!((d[1] - 0.5).abs() < 1e-12);
        assert!((d.last().unwrap() - 1.5).abs() < 1e-12);
        assert!(d.contains(&1.0));
        assert!(d.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(default_grid(&rho, &rho, 513).unwrap(), vec![0.0, 1.0]);
    }
}
