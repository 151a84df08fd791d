//! The convolution equation `g = q * g` with `q(y) = |y| e^{-y²/2} / 2`.
//!
//! `q` is a probability density whose Laplace transform
//! `Λ(s) = ∫ e^{sy} q(y) dy` is even, strictly convex and equal to one only
//! at `s = 0`; bounded positive solutions of `g = q * g` are therefore
//! constant. This module evaluates `Λ` and iterates the discrete convolution
//! on a [`GridFunction`] to watch non-constant inputs flatten out. The
//! flattening is an observed property of the iteration, not a theorem about
//! it.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::measures::GridFunction;
use crate::numerics::{find_root_monotone, integrate_with_breaks, std_normal_cdf};
use crate::tilting::{Estimate, Settings};

pub const DEFAULT_KERNEL_TOL: f64 = 1e-10;
pub const DEFAULT_GRID_STEP: f64 = 0.01;

/// `q(y) = |y| e^{-y²/2} / 2`.
pub fn kernel_q(y: f64) -> f64 {
    0.5 * y.abs() * (-0.5 * y * y).exp()
}

/// `Λ(s) = ∫ e^{sy} q(y) dy` by quadrature, split at the kink `y = 0`.
pub fn sigma_laplace_estimate(s: f64, settings: &Settings) -> Result<Estimate> {
    settings.check_t(s)?;
    let cfg = &settings.quadrature;
    // e^{sy} q(y) = |y| e^{s²/2} e^{-(y-s)²/2} / 2 is centred at y = s.
    let reach = cfg.truncation_halfwidth + 2.0;
    let pts = [s.min(0.0) - reach, 0.0, s.max(0.0) + reach];
    let r = integrate_with_breaks(|y| 0.5 * y.abs() * (s * y - 0.5 * y * y).exp(), &pts, cfg)?;
    Ok(Estimate {
        value: r.value,
        abs_error: r.abs_error_estimate,
    })
}

pub fn sigma_laplace(s: f64, settings: &Settings) -> Result<f64> {
    sigma_laplace_estimate(s, settings).map(|e| e.value)
}

/// `Λ(s) = 1 + (s/2) sqrt(2π) e^{s²/2} (2Φ(s) - 1)`, obtained by completing
/// the square.
pub fn sigma_laplace_closed_form(s: f64) -> f64 {
    1.0 + 0.5 * s * (2.0 * PI).sqrt() * (0.5 * s * s).exp() * (2.0 * std_normal_cdf(s) - 1.0)
}

/// Discretized, truncated and renormalized kernel on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionSetup {
    kernel_halfwidth: f64,
    kernel_tol: f64,
    step: f64,
    half_points: usize,
    weights: Vec<f64>,
}

impl ConvolutionSetup {
    /// Truncates `q` where it drops below `kernel_tol`, rounds the radius up
    /// to a whole number of grid steps and builds trapezoid weights summing
    /// to one.
    pub fn new(step: f64, kernel_tol: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "grid step must be positive, got {step}"
            )));
        }
        if !(kernel_tol > 0.0 && kernel_tol < kernel_q(1.0)) {
            return Err(Error::InvalidParameter(format!(
                "kernel_tol must lie in (0, q(1)), got {kernel_tol}"
            )));
        }
        // q decreases on [1, inf).
        let radius = find_root_monotone(|y| -kernel_q(y), -kernel_tol, 1.0, 64.0, 1e-12)?;
        let half_points = (radius / step).ceil() as usize;
        let kernel_halfwidth = half_points as f64 * step;

        let n = 2 * half_points + 1;
        let mut weights: Vec<f64> = (0..n)
            .map(|k| {
                let j = k as f64 - half_points as f64;
                let end = if k == 0 || k + 1 == n { 0.5 } else { 1.0 };
                end * kernel_q(j * step)
            })
            .collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);

        Ok(Self {
            kernel_halfwidth,
            kernel_tol,
            step,
            half_points,
            weights,
        })
    }

    pub fn with_step(step: f64) -> Result<Self> {
        Self::new(step, DEFAULT_KERNEL_TOL)
    }

    /// Truncation radius `K`, a whole multiple of the step.
    pub fn kernel_halfwidth(&self) -> f64 {
        self.kernel_halfwidth
    }

    pub fn kernel_tol(&self) -> f64 {
        self.kernel_tol
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// `K / h`.
    pub fn half_points(&self) -> usize {
        self.half_points
    }

    /// Weights for offsets `-K, ..., K`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl Default for ConvolutionSetup {
    fn default() -> Self {
        Self::with_step(DEFAULT_GRID_STEP).expect("default kernel setup is valid")
    }
}

/// `(q * g)(x_i) ≈ Σ_j w_j g(x_{i-j})` on the grid of `g`. The valid window
/// shrinks by `K/h` points on each side; nothing is extrapolated.
pub fn convolve_q(g: &GridFunction, setup: &ConvolutionSetup) -> Result<GridFunction> {
    if (g.step() - setup.step()).abs() > 1e-9 * setup.step() {
        return Err(Error::InvalidParameter(format!(
            "grid step {} does not match kernel step {}",
            g.step(),
            setup.step()
        )));
    }
    let m = setup.half_points();
    let (lo, hi) = g.valid_window();
    if g.valid_len() < 2 * m + 1 {
        return Err(Error::WindowTooNarrow {
            available: g.valid_len(),
            required: 2 * m + 1,
        });
    }
    let (new_lo, new_hi) = (lo + m, hi - m);
    let src = g.values();
    let w = setup.weights();
    let mut out = vec![f64::NAN; g.len()];
    for (i, slot) in out.iter_mut().enumerate().take(new_hi + 1).skip(new_lo) {
        // w[k] belongs to offset k - m, i.e. sample i - (k - m).
        let window = &src[i - m..=i + m];
        *slot = w.iter().zip(window.iter().rev()).map(|(a, b)| a * b).sum();
    }
    GridFunction::with_window(g.x_min(), g.step(), out, (new_lo, new_hi))
}

/// Record of repeated convolution.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    /// `sup - inf` over the valid window, for the input (index 0) and after
    /// each step.
    pub oscillations: Vec<f64>,
    /// Valid window `(x_lo, x_hi)` matching each entry of `oscillations`.
    pub windows: Vec<(f64, f64)>,
    /// Grid points lost per step, `2 K / h`.
    pub window_shrink_per_step: usize,
    pub final_iterate: GridFunction,
}

impl IterationTrace {
    pub fn steps(&self) -> usize {
        self.oscillations.len() - 1
    }

    /// `oscillation[k + 1] / oscillation[k]` for each step.
    pub fn ratios(&self) -> Vec<f64> {
        self.oscillations.windows(2).map(|w| w[1] / w[0]).collect()
    }
}

/// Applies [`convolve_q`] `steps` times, recording the oscillation after each
/// application.
pub fn iterate_fixed_point(
    g0: &GridFunction,
    steps: usize,
    setup: &ConvolutionSetup,
) -> Result<IterationTrace> {
    let shrink = 2 * setup.half_points();
    let required = shrink * steps + 1;
    if g0.valid_len() < required {
        return Err(Error::WindowTooNarrow {
            available: g0.valid_len(),
            required,
        });
    }
    let mut oscillations = vec![g0.oscillation()];
    let mut windows = vec![g0.valid_range()];
    let mut current = g0.clone();
    for _ in 0..steps {
        current = convolve_q(&current, setup)?;
        oscillations.push(current.oscillation());
        windows.push(current.valid_range());
    }
    Ok(IterationTrace {
        oscillations,
        windows,
        window_shrink_per_step: shrink,
        final_iterate: current,
    })
}
