//! Residual functionals of the median property.
//!
//! Each functional below is identically zero over `t` exactly when every tilt
//! `P_t` has median `t`:
//!
//! * median gap `Δ(t) = median(P_t) - t`;
//! * sign-kernel integral `S(t) = ∫ sign(t-x) φ(t-x) g(x) dx`;
//! * convolution residual `R(t) = g(t) - ∫ q(t-x) g(x) dx` with
//!   `q(y) = |y| e^{-y²/2} / 2`.
//!
//! The mean-median gap `Γ(t) = median(P_t) - mean(P_t)` vanishes for every
//! Gaussian base and is provided for exploration only.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::BaseMeasure;
use crate::numerics::{integrate_with_breaks, QuadratureConfig, LN_SQRT_2PI};
use crate::tilting::{log_partition_detailed, Estimate, Settings, TiltedView};

/// Intervals carrying less mass than this are reported as gaps.
pub const ZERO_MASS_THRESHOLD: f64 = 1e-12;

/// Number of `u` nodes used to bound `|L'(u)|` on `[-A, A]`.
pub const LIPSCHITZ_GRID_POINTS: usize = 101;

pub fn median_gap_estimate(m: &BaseMeasure, t: f64, settings: &Settings) -> Result<Estimate> {
    let median = TiltedView::new(m, t, settings)?.median_estimate()?;
    Ok(Estimate {
        value: median.value - t,
        abs_error: median.abs_error,
    })
}

/// `Δ(t) = median(P_t) - t`.
pub fn median_gap(m: &BaseMeasure, t: f64, settings: &Settings) -> Result<f64> {
    median_gap_estimate(m, t, settings).map(|e| e.value)
}

/// Sign-kernel integral for an arbitrary factor given as `ln g`, integrated
/// over the break points `pts` (which must bracket `t` for a two-sided
/// result).
pub fn sign_kernel_of<G>(log_g: G, pts: &[f64], t: f64, cfg: &QuadratureConfig) -> Result<Estimate>
where
    G: Fn(f64) -> f64,
{
    let integrand = |x: f64| (log_g(x) - 0.5 * (t - x) * (t - x) - LN_SQRT_2PI).exp();
    let (left, right) = split_at(pts, t);
    let below = integrate_with_breaks(integrand, &left, cfg)?;
    let above = integrate_with_breaks(integrand, &right, cfg)?;
    Ok(Estimate {
        value: below.value - above.value,
        abs_error: below.abs_error_estimate + above.abs_error_estimate,
    })
}

pub fn sign_kernel_estimate(m: &BaseMeasure, t: f64, settings: &Settings) -> Result<Estimate> {
    settings.check_t(t)?;
    let (lo, hi) = m.tilted_window(t, &settings.quadrature);
    sign_kernel_of(
        |x| m.log_g(x),
        &m.breakpoints(lo, hi),
        t,
        &settings.quadrature,
    )
}

/// `S(t) = ∫ sign(t-x) φ(t-x) g(x) dx`, as two half-line integrals meeting
/// at `x = t`.
pub fn sign_kernel_residual(m: &BaseMeasure, t: f64, settings: &Settings) -> Result<f64> {
    sign_kernel_estimate(m, t, settings).map(|e| e.value)
}

/// Convolution residual `g(t) - ∫ q(t-x) g(x) dx` for a factor given as
/// `ln g`.
pub fn deriva_residual_of<G>(
    log_g: G,
    pts: &[f64],
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate>
where
    G: Fn(f64) -> f64,
{
    let integrand = |x: f64| {
        let y = t - x;
        0.5 * y.abs() * (log_g(x) - 0.5 * y * y).exp()
    };
    let (left, right) = split_at(pts, t);
    let below = integrate_with_breaks(integrand, &left, cfg)?;
    let above = integrate_with_breaks(integrand, &right, cfg)?;
    Ok(Estimate {
        value: log_g(t).exp() - (below.value + above.value),
        abs_error: below.abs_error_estimate + above.abs_error_estimate,
    })
}

pub fn deriva_estimate(m: &BaseMeasure, t: f64, settings: &Settings) -> Result<Estimate> {
    settings.check_t(t)?;
    let (lo, hi) = m.tilted_window(t, &settings.quadrature);
    deriva_residual_of(
        |x| m.log_g(x),
        &m.breakpoints(lo, hi),
        t,
        &settings.quadrature,
    )
}

/// `R(t) = g(t) - ∫ q(t-x) g(x) dx`.
pub fn deriva_residual(m: &BaseMeasure, t: f64, settings: &Settings) -> Result<f64> {
    deriva_estimate(m, t, settings).map(|e| e.value)
}

// Splits increasing break points into the parts left and right of `t`. A side
// that is empty collapses to a degenerate interval.
fn split_at(pts: &[f64], t: f64) -> (Vec<f64>, Vec<f64>) {
    let (a, b) = (pts[0], pts[pts.len() - 1]);
    let c = t.clamp(a, b);
    let mut left: Vec<f64> = pts.iter().copied().filter(|&x| x < c).collect();
    left.push(c);
    let mut right = vec![c];
    right.extend(pts.iter().copied().filter(|&x| x > c));
    if left.len() == 1 {
        left.push(c);
    }
    if right.len() == 1 {
        right.push(c);
    }
    (left, right)
}

pub fn mean_median_estimate(m: &BaseMeasure, t: f64, settings: &Settings) -> Result<Estimate> {
    let view = TiltedView::new(m, t, settings)?;
    let median = view.median_estimate()?;
    let mean = view.mean_estimate()?;
    Ok(Estimate {
        value: median.value - mean.value,
        abs_error: median.abs_error + mean.abs_error,
    })
}

/// `Γ(t) = median(P_t) - mean(P_t)`.
pub fn mean_median_gap(m: &BaseMeasure, t: f64, settings: &Settings) -> Result<f64> {
    mean_median_estimate(m, t, settings).map(|e| e.value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LipschitzBound {
    pub halfwidth: f64,
    /// The constant `c_A`.
    pub constant: f64,
    /// `max |L'(u)|` over the `u` grid on `[-A, A]`.
    pub max_abs_l_prime: f64,
    /// `∫ |x| e^{A|x|} P(dx)`.
    pub weighted_abs_moment: f64,
}

/// `c_A = e^{A²} (max_{|u| ≤ A} |L'(u)| / 2 + ∫ |x| e^{A|x|} P(dx))`, a
/// constant with `P((s, t)) ≤ c_A (t - s)` for `-A ≤ s < t ≤ A` whenever the
/// median property holds.
pub fn lipschitz_bound(m: &BaseMeasure, a: f64, settings: &Settings) -> Result<LipschitzBound> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "halfwidth A must be positive, got {a}"
        )));
    }
    settings.check_t(a)?;
    let cfg = &settings.quadrature;

    let n = LIPSCHITZ_GRID_POINTS;
    let us: Vec<f64> = (0..n)
        .map(|k| -a + 2.0 * a * k as f64 / (n - 1) as f64)
        .collect();
    let max_abs_l_prime = us
        .iter()
        .map(|&u| {
            let (lo, hi) = m.tilted_window(u, cfg);
            integrate_with_breaks(
                |x| x * (u * x + m.log_density(x)).exp(),
                &m.breakpoints(lo, hi),
                cfg,
            )
            .map(|r| r.value.abs())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    // e^{A|x|} equals e^{Ax} on the right half-line and e^{-Ax} on the left;
    // each half is integrated over the window of the matching tilt.
    let (_, hi) = m.tilted_window(a, cfg);
    let right = if hi > 0.0 {
        let (lo, _) = m.tilted_window(a, cfg);
        integrate_with_breaks(
            |x| x * (a * x + m.log_density(x)).exp(),
            &m.breakpoints(lo.max(0.0), hi),
            cfg,
        )?
        .value
    } else {
        0.0
    };
    let (lo, _) = m.tilted_window(-a, cfg);
    let left = if lo < 0.0 {
        let (_, hi) = m.tilted_window(-a, cfg);
        integrate_with_breaks(
            |x| -x * (-a * x + m.log_density(x)).exp(),
            &m.breakpoints(lo, hi.min(0.0)),
            cfg,
        )?
        .value
    } else {
        0.0
    };
    let weighted_abs_moment = right + left;

    Ok(LipschitzBound {
        halfwidth: a,
        constant: (a * a).exp() * (0.5 * max_abs_l_prime + weighted_abs_moment),
        max_abs_l_prime,
        weighted_abs_moment,
    })
}

/// Adjacent grid intervals that carry (numerically) no mass.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MonotonicityReport {
    pub flagged: Vec<(f64, f64)>,
}

impl MonotonicityReport {
    pub fn is_strictly_increasing(&self) -> bool {
        self.flagged.is_empty()
    }

    /// Flagged intervals with touching neighbours joined.
    pub fn merged(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for &(a, b) in &self.flagged {
            match out.last_mut() {
                Some(last) if last.1 >= a => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        out
    }
}

/// Flags every adjacent pair `(a, b)` of `x_grid` with `P((a, b)) < 1e-12`.
pub fn monotonicity_check(
    m: &BaseMeasure,
    x_grid: &[f64],
    settings: &Settings,
) -> Result<MonotonicityReport> {
    if x_grid.len() < 2 || x_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidGrid { min_len: 2 });
    }
    let mut flagged = Vec::new();
    for w in x_grid.windows(2) {
        let mass = m.mass_between(w[0], w[1], &settings.quadrature)?.value;
        if mass < ZERO_MASS_THRESHOLD {
            flagged.push((w[0], w[1]));
        }
    }
    Ok(MonotonicityReport { flagged })
}

/// The pointwise functionals available to [`scan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Diagnostic {
    MedianGap,
    SignKernel,
    Deriva,
    MeanMedian,
}

impl Diagnostic {
    pub const ALL: [Diagnostic; 4] = [
        Diagnostic::MedianGap,
        Diagnostic::SignKernel,
        Diagnostic::Deriva,
        Diagnostic::MeanMedian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Diagnostic::MedianGap => "median_gap",
            Diagnostic::SignKernel => "sign_kernel",
            Diagnostic::Deriva => "deriva",
            Diagnostic::MeanMedian => "mean_median",
        }
    }

    pub fn evaluate(self, m: &BaseMeasure, t: f64, settings: &Settings) -> Result<Estimate> {
        match self {
            Diagnostic::MedianGap => median_gap_estimate(m, t, settings),
            Diagnostic::SignKernel => sign_kernel_estimate(m, t, settings),
            Diagnostic::Deriva => deriva_estimate(m, t, settings),
            Diagnostic::MeanMedian => mean_median_estimate(m, t, settings),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Diagnostic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().replace('-', "_");
        Diagnostic::ALL
            .into_iter()
            .find(|d| d.name() == key)
            .ok_or_else(|| Error::UnknownDiagnostic(s.to_string()))
    }
}

/// Residual values of one functional over a grid of `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticReport {
    pub name: String,
    pub t_grid: Vec<f64>,
    pub residuals: Vec<f64>,
    pub error_estimates: Vec<f64>,
    pub max_abs_residual: f64,
    /// `None` for an empty grid.
    pub argmax_t: Option<f64>,
}

impl DiagnosticReport {
    /// Assembles a report and fills in the summary. An empty grid has
    /// `max_abs_residual = 0`.
    pub fn new(name: impl Into<String>, t_grid: Vec<f64>, estimates: Vec<Estimate>) -> Self {
        assert_eq!(
            t_grid.len(),
            estimates.len(),
            "grid and residuals differ in length"
        );
        let residuals: Vec<f64> = estimates.iter().map(|e| e.value).collect();
        let error_estimates = estimates.iter().map(|e| e.abs_error).collect();
        let (max_abs_residual, argmax_t) = summarize(&t_grid, &residuals);
        Self {
            name: name.into(),
            t_grid,
            residuals,
            error_estimates,
            max_abs_residual,
            argmax_t,
        }
    }

    pub fn len(&self) -> usize {
        self.t_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_grid.is_empty()
    }
}

fn summarize(t_grid: &[f64], residuals: &[f64]) -> (f64, Option<f64>) {
    let mut best: Option<(f64, f64)> = None;
    for (&t, &r) in t_grid.iter().zip(residuals) {
        if best.is_none_or(|(m, _)| r.abs() > m) {
            best = Some((r.abs(), t));
        }
    }
    match best {
        Some((m, t)) => (m, Some(t)),
        None => (0.0, None),
    }
}

/// Evaluates `which` at every grid point. Points are computed in parallel
/// and reported in grid order.
pub fn scan(
    m: &BaseMeasure,
    which: Diagnostic,
    t_grid: &[f64],
    settings: &Settings,
) -> Result<DiagnosticReport> {
    let estimates = t_grid
        .par_iter()
        .map(|&t| which.evaluate(m, t, settings))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiagnosticReport::new(
        which.name(),
        t_grid.to_vec(),
        estimates,
    ))
}

/// Scan by diagnostic name; unknown names give [`Error::UnknownDiagnostic`].
pub fn scan_named(
    m: &BaseMeasure,
    which: &str,
    t_grid: &[f64],
    settings: &Settings,
) -> Result<DiagnosticReport> {
    scan(m, which.parse()?, t_grid, settings)
}

/// `ln L` cross-check helper: the tilted mean as `d/dt ln L` by central
/// differences with step `step`.
pub fn log_partition_slope(m: &BaseMeasure, t: f64, step: f64, settings: &Settings) -> Result<f64> {
    let up = log_partition_detailed(m, t + step, settings)?.log_value;
    let down = log_partition_detailed(m, t - step, settings)?.log_value;
    Ok((up - down) / (2.0 * step))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{MeasureSpec, TabulatedDensity};
    use crate::numerics::uniform_grid;

    fn build(spec: MeasureSpec) -> BaseMeasure {
        BaseMeasure::build(&spec).unwrap()
    }

    fn s() -> Settings {
        Settings::default()
    }

    #[test]
    fn standard_normal_has_zero_median_gap() {
        let g = build(MeasureSpec::standard_normal());
        for t in uniform_grid(-6.0, 6.0, 7) {
            assert!(median_gap(&g, t, &s()).unwrap().abs() <= 1e-8, "t = {t}");
        }
    }

    #[test]
    fn shifted_gaussian_median_gap() {
        let g = build(MeasureSpec::gaussian(0.5, 1.0));
        assert!((median_gap(&g, 0.0, &s()).unwrap() - 0.5).abs() <= 1e-8);
    }

    #[test]
    fn sign_kernel_examples() {
        let g = build(MeasureSpec::standard_normal());
        for t in [-5.0, -1.0, 0.0, 2.5] {
            assert!(sign_kernel_residual(&g, t, &s()).unwrap().abs() <= 1e-9);
        }
        let q = build(MeasureSpec::perturbed_quadratic(1.0));
        assert!(sign_kernel_residual(&q, 0.0, &s()).unwrap().abs() <= 1e-9);
        assert!(sign_kernel_residual(&q, 1.0, &s()).unwrap().abs() > 1e-4);
    }

    #[test]
    fn deriva_examples() {
        let g = build(MeasureSpec::standard_normal());
        for t in [-5.0, 0.0, 3.0] {
            assert!(deriva_residual(&g, t, &s()).unwrap().abs() <= 1e-9);
        }
        let c = build(MeasureSpec::perturbed_cosine(0.5));
        assert!(deriva_residual(&c, 0.0, &s()).unwrap().abs() > 1e-4);
    }

    #[test]
    fn deriva_vanishes_for_any_constant_factor() {
        let c: f64 = 3.7;
        for t in [-4.0, 0.0, 1.3] {
            let r =
                deriva_residual_of(|_| c.ln(), &[t - 14.0, t + 14.0], t, &s().quadrature).unwrap();
            assert!(r.value.abs() <= 1e-9 * c);
        }
    }

    #[test]
    fn split_handles_points_outside() {
        let (l, r) = split_at(&[0.0, 1.0, 2.0], 5.0);
        assert_eq!(l, vec![0.0, 1.0, 2.0]);
        assert_eq!(r, vec![2.0, 2.0]);
        let (l, r) = split_at(&[0.0, 1.0, 2.0], 0.5);
        assert_eq!(l, vec![0.0, 0.5]);
        assert_eq!(r, vec![0.5, 1.0, 2.0]);
    }

    #[test]
    fn mean_median_examples() {
        let g = build(MeasureSpec::gaussian(2.0, 3.0));
        for t in [-1.0, 0.0, 0.7] {
            assert!(mean_median_gap(&g, t, &s()).unwrap().abs() <= 1e-7);
        }
        let c = build(MeasureSpec::perturbed_cosine(0.5));
        assert!(mean_median_gap(&c, 0.0, &s()).unwrap().abs() <= 1e-8);
    }

    #[test]
    fn lipschitz_small_halfwidth_limit() {
        let g = build(MeasureSpec::standard_normal());
        let b = lipschitz_bound(&g, 1e-3, &s()).unwrap();
        let expect = (2.0 / std::f64::consts::PI).sqrt();
        assert!((b.constant - expect).abs() <= 0.01 * expect);
        assert!(lipschitz_bound(&g, 0.0, &s()).is_err());
        assert!(lipschitz_bound(&g, 9.0, &s()).is_err());
    }

    #[test]
    fn monotonicity_examples() {
        let g = build(MeasureSpec::standard_normal());
        let grid = uniform_grid(-6.0, 6.0, 1000);
        assert!(monotonicity_check(&g, &grid, &s())
            .unwrap()
            .is_strictly_increasing());

        let xs = vec![-6.0, 0.0, 1.0, 2.0, 3.0, 6.0];
        let gs = vec![1.0, 1.0, 0.0, 0.0, 1.0, 1.0];
        let m = BaseMeasure::tabulated(TabulatedDensity::new(xs, gs).unwrap()).unwrap();
        let grid = uniform_grid(-3.0, 5.0, 81);
        let report = monotonicity_check(&m, &grid, &s()).unwrap();
        let merged = report.merged();
        assert_eq!(merged.len(), 1);
        assert!((merged[0].0 - 1.0).abs() < 1e-12 && (merged[0].1 - 2.0).abs() < 1e-12);
        assert!(monotonicity_check(&m, &[1.0, 1.0], &s()).is_err());
    }

    #[test]
    fn diagnostic_names() {
        for d in Diagnostic::ALL {
            assert_eq!(d.name().parse::<Diagnostic>().unwrap(), d);
        }
        assert_eq!(
            "median-gap".parse::<Diagnostic>().unwrap(),
            Diagnostic::MedianGap
        );
        assert!(matches!(
            "bogus".parse::<Diagnostic>().unwrap_err(),
            Error::UnknownDiagnostic(_)
        ));
    }

    #[test]
    fn empty_scan_has_zero_summary() {
        let g = build(MeasureSpec::standard_normal());
        for d in Diagnostic::ALL {
            let r = scan(&g, d, &[], &s()).unwrap();
            assert!(r.is_empty());
            assert_eq!(r.max_abs_residual, 0.0);
            assert_eq!(r.argmax_t, None);
        }
        assert!(scan_named(&g, "nope", &[0.0], &s()).is_err());
    }

    #[test]
    fn report_summary_is_recomputable() {
        let r = DiagnosticReport::new(
            "x",
            vec![0.0, 1.0, 2.0],
            [0.1, -0.3, 0.2]
                .iter()
                .map(|&v| Estimate {
                    value: v,
                    abs_error: 0.0,
                })
                .collect(),
        );
        assert_eq!(r.max_abs_residual, 0.3);
        assert_eq!(r.argmax_t, Some(1.0));
    }
}
