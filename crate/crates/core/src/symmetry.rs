//! Symmetry of the tilts in one dimension.
//!
//! If every tilt `P_t` is symmetric about its mean `m(t)`, then
//! `2 m(t) = m(t + s) + m(t - s)`, so `m` is affine and `ln L` is a quadratic
//! polynomial: the base measure is Gaussian. The functions here measure how
//! far a base measure is from each link of that chain.

use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::BaseMeasure;
use crate::tilting::{log_partition, Settings, TiltedView};

pub const DEFAULT_OFFSET_COUNT: usize = 50;
pub const DEFAULT_OFFSET_MIN: f64 = 0.05;
pub const DEFAULT_OFFSET_MAX: f64 = 6.0;

/// Logarithmically spaced offsets `[0.05, 6]`, 50 of them.
pub fn default_offsets() -> Vec<f64> {
    log_spaced(DEFAULT_OFFSET_MIN, DEFAULT_OFFSET_MAX, DEFAULT_OFFSET_COUNT)
}

pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub t: f64,
    /// Tilted mean, used as the symmetry centre.
    pub center: f64,
    /// Error estimate of `center`.
    pub center_error: f64,
    /// `max_u |p_t(center + u) - p_t(center - u)|`.
    pub asymmetry_score: f64,
    pub offsets_tested: usize,
}

/// Compares the tilted density on both sides of the tilted mean.
pub fn asymmetry_score(
    m: &BaseMeasure,
    t: f64,
    offsets: &[f64],
    settings: &Settings,
) -> Result<SymmetryReport> {
    if offsets.iter().any(|&u| !(u > 0.0 && u.is_finite())) {
        return Err(Error::InvalidParameter("offsets must be positive".into()));
    }
    let view = TiltedView::new(m, t, settings)?;
    let mean = view.mean_estimate()?;
    let c = mean.value;
    let score = offsets
        .iter()
        .map(|&u| (view.pdf(c + u) - view.pdf(c - u)).abs())
        .fold(0.0, f64::max);
    Ok(SymmetryReport {
        t,
        center: c,
        center_error: mean.abs_error,
        asymmetry_score: score,
        offsets_tested: offsets.len(),
    })
}

/// Asymmetry scores over a grid of `t`, in grid order.
pub fn asymmetry_sweep(
    m: &BaseMeasure,
    t_grid: &[f64],
    offsets: &[f64],
    settings: &Settings,
) -> Result<Vec<SymmetryReport>> {
    t_grid
        .par_iter()
        .map(|&t| asymmetry_score(m, t, offsets, settings))
        .collect()
}

/// `m(t + s) + m(t - s) - 2 m(t)` with `m` the tilted mean.
pub fn midpoint_residual(m: &BaseMeasure, t: f64, s: f64, settings: &Settings) -> Result<f64> {
    settings.check_t(t + s)?;
    settings.check_t(t - s)?;
    let mean = |x: f64| TiltedView::new(m, x, settings)?.mean();
    if s == 0.0 {
        let c = mean(t)?;
        return Ok(c + c - 2.0 * c);
    }
    Ok(mean(t + s)? + mean(t - s)? - 2.0 * mean(t)?)
}

/// Least-squares fit `ln L(t) ≈ a + b t + c t²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub max_fit_residual: f64,
}

impl QuadraticFit {
    pub fn eval(&self, t: f64) -> f64 {
        self.a + t * (self.b + t * self.c)
    }
}

pub const MIN_FIT_POINTS: usize = 5;

/// Fits a quadratic to `(t, ln L(t))` pairs by the normal equations.
pub fn fit_quadratic(ts: &[f64], ys: &[f64]) -> Result<QuadraticFit> {
    if ts.len() != ys.len() || ts.len() < MIN_FIT_POINTS {
        return Err(Error::InvalidGrid {
            min_len: MIN_FIT_POINTS,
        });
    }
    let mut gram = Matrix3::zeros();
    let mut rhs = Vector3::zeros();
    for (&t, &y) in ts.iter().zip(ys) {
        let row = Vector3::new(1.0, t, t * t);
        gram += row * row.transpose();
        rhs += row * y;
    }
    let coef = gram
        .cholesky()
        .ok_or(Error::InvalidGrid {
            min_len: MIN_FIT_POINTS,
        })?
        .solve(&rhs);
    let mut fit = QuadraticFit {
        a: coef[0],
        b: coef[1],
        c: coef[2],
        max_fit_residual: 0.0,
    };
    fit.max_fit_residual = ts
        .iter()
        .zip(ys)
        .map(|(&t, &y)| (y - fit.eval(t)).abs())
        .fold(0.0, f64::max);
    Ok(fit)
}

/// Evaluates `ln L` on `t_grid` and fits a quadratic to it.
pub fn quadratic_log_l_fit(
    m: &BaseMeasure,
    t_grid: &[f64],
    settings: &Settings,
) -> Result<QuadraticFit> {
    if t_grid.len() < MIN_FIT_POINTS || t_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidGrid {
            min_len: MIN_FIT_POINTS,
        });
    }
    let ys = t_grid
        .par_iter()
        .map(|&t| log_partition(m, t, settings))
        .collect::<Result<Vec<_>>>()?;
    fit_quadratic(t_grid, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasureSpec;
    use crate::numerics::uniform_grid;

    fn build(spec: MeasureSpec) -> BaseMeasure {
        BaseMeasure::build(&spec).unwrap()
    }

    fn s() -> Settings {
        Settings::default()
    }

    #[test]
    fn offsets_are_log_spaced() {
        let u = default_offsets();
        assert_eq!(u.len(), 50);
        assert!((u[0] - 0.05).abs() < 1e-15 && (u[49] - 6.0).abs() < 1e-12);
        assert!((u[1] / u[0] - u[2] / u[1]).abs() < 1e-12);
    }

    #[test]
    fn gaussian_tilts_are_symmetric() {
        let g = build(MeasureSpec::gaussian(1.0, 2.0));
        let offsets = log_spaced(0.12, 6.0, 50);
        let r = asymmetry_score(&g, 0.7, &offsets, &s()).unwrap();
        assert!(r.asymmetry_score <= 1e-10, "{r:?}");
        assert!((r.center - (1.0 + 4.0 * 0.7)).abs() < 1e-9);
        assert_eq!(r.offsets_tested, 50);
    }

    #[test]
    fn quadratic_perturbation_symmetry() {
        let q = build(MeasureSpec::perturbed_quadratic(1.0));
        let r0 = asymmetry_score(&q, 0.0, &default_offsets(), &s()).unwrap();
        assert!(r0.asymmetry_score <= 1e-10);
        let r1 = asymmetry_score(&q, 1.0, &default_offsets(), &s()).unwrap();
        assert!(r1.asymmetry_score > 1e-4);
        assert!(asymmetry_score(&q, 1.0, &[0.0], &s()).is_err());
    }

    #[test]
    fn midpoint_examples() {
        let g = build(MeasureSpec::gaussian(-2.0, 0.5));
        assert!(midpoint_residual(&g, 0.5, 1.5, &s()).unwrap().abs() <= 1e-7);
        let c = build(MeasureSpec::perturbed_cosine(0.5));
        assert_eq!(midpoint_residual(&c, 1.0, 0.0, &s()).unwrap(), 0.0);
        assert!(midpoint_residual(&c, 7.0, 2.0, &s()).is_err());
    }

    #[test]
    fn fit_recovers_gaussian_log_l() {
        let g = build(MeasureSpec::standard_normal());
        let fit = quadratic_log_l_fit(&g, &uniform_grid(-4.0, 4.0, 21), &s()).unwrap();
        assert!(fit.a.abs() < 1e-8 && fit.b.abs() < 1e-8 && (fit.c - 0.5).abs() < 1e-8);
        assert!(fit.max_fit_residual <= 1e-8);
    }

    #[test]
    fn fit_detects_cosine_term() {
        let c = build(MeasureSpec::perturbed_cosine(0.5));
        let fit = quadratic_log_l_fit(&c, &uniform_grid(-4.0, 4.0, 21), &s()).unwrap();
        assert!(fit.max_fit_residual > 1e-3);
    }

    #[test]
    fn fit_needs_five_points() {
        let g = build(MeasureSpec::standard_normal());
        assert!(quadratic_log_l_fit(&g, &[0.0, 1.0, 2.0, 3.0], &s()).is_err());
        assert!(fit_quadratic(&[0.0; 5], &[1.0; 5]).is_err());
    }
}
