//! Medians of exponentially tilted distributions.
//!
//! Given a base probability `P(dx) = g(x) φ(x) dx` on the real line, the
//! crate builds the natural exponential family `P_t ∝ e^{tx} P` and evaluates
//! functionals that all vanish identically when, and only when, `P` is the
//! standard normal law: the median gap `median(P_t) - t`, the sign-kernel
//! integral, and the convolution residual `g - q * g` with
//! `q(y) = |y| e^{-y²/2} / 2`. Companion modules iterate the convolution on a
//! grid, bound the local Lipschitz constant of the distribution function,
//! and test symmetry of the tilts.

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod choquet;
pub mod cli;
pub mod error;
pub mod measures;
pub mod medianlaw;
pub mod numerics;
pub mod symmetry;
pub mod tilting;

pub use error::{Error, Result};
pub use measures::{BaseMeasure, GridFunction, MeasureSpec, TabulatedDensity};
pub use numerics::{QuadratureConfig, QuadratureResult};
pub use tilting::{Estimate, Settings, TiltedView};
