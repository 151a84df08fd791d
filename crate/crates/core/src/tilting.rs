//! The natural exponential family generated by a base measure.
//!
//! For a base measure `P` with Laplace transform `L(t) = ∫ e^{tx} P(dx)`, the
//! tilt `P_t(dx) = e^{tx} P(dx) / L(t)`. A [`TiltedView`] caches `ln L(t)` and
//! the integration window of `P_t`, and exposes its pdf, cdf, mean and median.

use crate::error::{Error, Result};
use crate::measures::BaseMeasure;
use crate::numerics::{
    find_root_monotone, integrate_with_breaks, log_integrate_exp_detailed, LogQuadrature,
    QuadratureConfig, DEFAULT_X_TOL,
};

/// Default bound on `|t|`.
pub const DEFAULT_T_MAX: f64 = 8.0;

/// Numerical settings shared by every tilted computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub quadrature: QuadratureConfig,
    /// Absolute tolerance on roots (medians).
    pub x_tol: f64,
    /// Working range `[-t_max, t_max]` for the natural parameter.
    pub t_max: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            quadrature: QuadratureConfig::default(),
            x_tol: DEFAULT_X_TOL,
            t_max: DEFAULT_T_MAX,
        }
    }
}

impl Settings {
    pub fn validate(&self) -> Result<()> {
        self.quadrature.validate()?;
        if !(self.x_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "x_tol must be positive, got {}",
                self.x_tol
            )));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "t_max must be positive, got {}",
                self.t_max
            )));
        }
        Ok(())
    }

    pub fn check_t(&self, t: f64) -> Result<()> {
        if t.is_finite() && t.abs() <= self.t_max {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                t,
                t_max: self.t_max,
            })
        }
    }
}

/// A value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
}

/// `ln L(t)` with its quadrature details.
pub fn log_partition_detailed(
    m: &BaseMeasure,
    t: f64,
    settings: &Settings,
) -> Result<LogQuadrature> {
    settings.check_t(t)?;
    let (lo, hi) = m.tilted_window(t, &settings.quadrature);
    log_integrate_exp_detailed(
        |x| t * x + m.log_density(x),
        &m.breakpoints(lo, hi),
        &settings.quadrature,
    )
}

/// `ln L(t) = ln ∫ e^{tx} g(x) φ(x) dx`, evaluated in the log domain.
pub fn log_partition(m: &BaseMeasure, t: f64, settings: &Settings) -> Result<f64> {
    log_partition_detailed(m, t, settings).map(|r| r.log_value)
}

/// The tilted probability `P_t`.
#[derive(Debug, Clone)]
pub struct TiltedView<'a> {
    base: &'a BaseMeasure,
    t: f64,
    log_l: f64,
    log_l_error: f64,
    window: (f64, f64),
    settings: Settings,
}

impl<'a> TiltedView<'a> {
    pub fn new(base: &'a BaseMeasure, t: f64, settings: &Settings) -> Result<Self> {
        let lq = log_partition_detailed(base, t, settings)?;
        if !lq.log_value.is_finite() {
            return Err(Error::NotNormalizable(format!(
                "ln L({t}) = {}",
                lq.log_value
            )));
        }
        Ok(Self {
            base,
            t,
            log_l: lq.log_value,
            log_l_error: lq.rel_error_estimate(),
            window: base.tilted_window(t, &settings.quadrature),
            settings: *settings,
        })
    }

    pub fn base(&self) -> &BaseMeasure {
        self.base
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn log_l(&self) -> f64 {
        self.log_l
    }

    /// Error estimate of [`Self::log_l`].
    pub fn log_l_error(&self) -> f64 {
        self.log_l_error
    }

    /// Truncation window `[lo, hi]` of `P_t`.
    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn log_pdf(&self, x: f64) -> f64 {
        self.t * x + self.base.log_density(x) - self.log_l
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.log_pdf(x).exp()
    }

    /// `∫_{lo}^{x} p_t` with its error estimate, clamped to `[0, 1]`.
    pub fn cdf_estimate(&self, x: f64) -> Result<Estimate> {
        let (lo, hi) = self.window;
        if x <= lo {
            return Ok(Estimate {
                value: 0.0,
                abs_error: 0.0,
            });
        }
        let upper = x.min(hi);
        let r = integrate_with_breaks(
            |y| self.pdf(y),
            &self.base.breakpoints(lo, upper),
            &self.settings.quadrature,
        )?;
        let value = if x >= hi {
            1.0
        } else {
            r.value.clamp(0.0, 1.0)
        };
        Ok(Estimate {
            value,
            abs_error: r.abs_error_estimate + self.log_l_error * r.value.abs(),
        })
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        self.cdf_estimate(x).map(|e| e.value)
    }

    /// `∫ x p_t(x) dx` by direct quadrature.
    pub fn mean_estimate(&self) -> Result<Estimate> {
        let (lo, hi) = self.window;
        let r = integrate_with_breaks(
            |x| x * self.pdf(x),
            &self.base.breakpoints(lo, hi),
            &self.settings.quadrature,
        )?;
        Ok(Estimate {
            value: r.value,
            abs_error: r.abs_error_estimate + self.log_l_error * r.value.abs(),
        })
    }

    pub fn mean(&self) -> Result<f64> {
        self.mean_estimate().map(|e| e.value)
    }

    /// Solution of `F_t(x) = 1/2` by bisection over the tilted window.
    pub fn median_estimate(&self) -> Result<Estimate> {
        let (lo, hi) = self.window;
        // The closure cannot propagate errors; a failing evaluation turns
        // into NaN, which is caught below.
        let failed = std::cell::Cell::new(None);
        let cdf = |x: f64| match self.cdf(x) {
            Ok(v) => v,
            Err(e) => {
                failed.set(Some(e));
                f64::NAN
            }
        };
        let root = find_root_monotone(cdf, 0.5, lo, hi, self.settings.x_tol);
        if let Some(e) = failed.take() {
            return Err(e);
        }
        let root = root?;
        let at_root = self.cdf_estimate(root)?;
        let density = self.pdf(root);
        let cdf_err = at_root.abs_error;
        let abs_error = if density > 0.0 {
            self.settings.x_tol + cdf_err / density
        } else {
            self.settings.x_tol
        };
        Ok(Estimate {
            value: root,
            abs_error,
        })
    }

    pub fn median(&self) -> Result<f64> {
        self.median_estimate().map(|e| e.value)
    }
}

pub fn tilted_mean(m: &BaseMeasure, t: f64, settings: &Settings) -> Result<f64> {
    TiltedView::new(m, t, settings)?.mean()
}

pub fn tilted_median(m: &BaseMeasure, t: f64, settings: &Settings) -> Result<f64> {
    TiltedView::new(m, t, settings)?.median()
}

/// `h(t) = ∫_{(-∞, t]} e^{tx} P(dx)` and its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HDerivative {
    pub h: f64,
    pub h_prime: f64,
    pub h_error: f64,
    pub h_prime_error: f64,
}

/// Evaluates `h(t)` by quadrature and `h'(t)` through
/// `h'(t) = e^{t^2} f(t) + ∫_{-∞}^{t} x e^{tx} f(x) dx`.
pub fn h_value_and_derivative(m: &BaseMeasure, t: f64, settings: &Settings) -> Result<HDerivative> {
    settings.check_t(t)?;
    let cfg = &settings.quadrature;
    let (lo, _) = m.tilted_window(t, cfg);
    let boundary = (t * t + m.log_density(t)).exp();
    if t <= lo {
        return Ok(HDerivative {
            h: 0.0,
            h_prime: boundary,
            h_error: 0.0,
            h_prime_error: 0.0,
        });
    }
    let pts = m.breakpoints(lo, t);
    let h = integrate_with_breaks(|x| (t * x + m.log_density(x)).exp(), &pts, cfg)?;
    let first = integrate_with_breaks(|x| x * (t * x + m.log_density(x)).exp(), &pts, cfg)?;
    Ok(HDerivative {
        h: h.value,
        h_prime: boundary + first.value,
        h_error: h.abs_error_estimate,
        h_prime_error: first.abs_error_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasureSpec;

    fn build(spec: MeasureSpec) -> BaseMeasure {
        BaseMeasure::build(&spec).unwrap()
    }

    fn s() -> Settings {
        Settings::default()
    }

    #[test]
    fn log_partition_examples() {
        let g = build(MeasureSpec::standard_normal());
        assert!((log_partition(&g, 3.0, &s()).unwrap() - 4.5).abs() < 1e-10);
        let q = build(MeasureSpec::perturbed_quadratic(1.0));
        for m in [&g, &q] {
            assert!(log_partition(m, 0.0, &s()).unwrap().abs() < 1e-12);
        }
        // Oracle: ∫ x^2 e^{tx} φ = (1 + t^2) e^{t^2/2}, so L(1) = e^{1/2} * 3/2.
        let expect = 0.5 + 3f64.ln() - 2f64.ln();
        assert!((log_partition(&q, 1.0, &s()).unwrap() - expect).abs() < 1e-10);
    }

    #[test]
    fn out_of_range_parameter() {
        let g = build(MeasureSpec::standard_normal());
        assert!(matches!(
            log_partition(&g, 9.0, &s()).unwrap_err(),
            Error::OutOfRange { .. }
        ));
        assert!(log_partition(&g, f64::NAN, &s()).is_err());
    }

    #[test]
    fn pdf_examples() {
        let g = build(MeasureSpec::standard_normal());
        let v = TiltedView::new(&g, 2.0, &s()).unwrap();
        let phi0 = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        assert!((v.pdf(2.0) - phi0).abs() < 1e-12);

        let c = build(MeasureSpec::perturbed_cosine(0.5));
        let v = TiltedView::new(&c, 0.0, &s()).unwrap();
        let expect = 1.5 / (1.0 + 0.5 * (-0.5f64).exp()) * phi0;
        assert!((v.pdf(0.0) - expect).abs() < 1e-12);

        let table =
            crate::measures::TabulatedDensity::new(vec![-1.0, 1.0], vec![1.0, 1.0]).unwrap();
        let tab = BaseMeasure::tabulated(table).unwrap();
        let v = TiltedView::new(&tab, 0.5, &s()).unwrap();
        assert_eq!(v.pdf(3.0), 0.0);
        assert_eq!(v.log_pdf(3.0), f64::NEG_INFINITY);
    }

    #[test]
    fn cdf_examples() {
        let g = build(MeasureSpec::standard_normal());
        let v = TiltedView::new(&g, 1.7, &s()).unwrap();
        assert!((v.cdf(1.7).unwrap() - 0.5).abs() < 1e-9);
        assert!(v.cdf(v.window().0).unwrap().abs() < 1e-12);
        let q = build(MeasureSpec::perturbed_quadratic(1.0));
        let v = TiltedView::new(&q, 0.0, &s()).unwrap();
        assert!((v.cdf(0.0).unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn mean_examples() {
        let g = build(MeasureSpec::standard_normal());
        assert!((tilted_mean(&g, 2.5, &s()).unwrap() - 2.5).abs() < 1e-10);
        let c = build(MeasureSpec::perturbed_cosine(0.5));
        assert!(tilted_mean(&c, 0.0, &s()).unwrap().abs() < 1e-10);
        let mix = build(MeasureSpec::gaussian_mixture(0.5, -1.0, 1.0, 1.0, 1.0));
        assert!(tilted_mean(&mix, 0.0, &s()).unwrap().abs() < 1e-10);
    }

    #[test]
    fn median_examples() {
        let g = build(MeasureSpec::standard_normal());
        assert!((tilted_median(&g, -3.0, &s()).unwrap() + 3.0).abs() < 1e-8);
        let q = build(MeasureSpec::perturbed_quadratic(1.0));
        assert!(tilted_median(&q, 0.0, &s()).unwrap().abs() < 1e-8);
    }

    #[test]
    fn h_at_zero_for_standard_normal() {
        let g = build(MeasureSpec::standard_normal());
        let hd = h_value_and_derivative(&g, 0.0, &s()).unwrap();
        assert!((hd.h - 0.5).abs() < 1e-12);
        assert!(hd.h_prime.abs() < 1e-12);
    }

    #[test]
    fn h_is_bounded_by_l() {
        for spec in [
            MeasureSpec::standard_normal(),
            MeasureSpec::perturbed_cosine(0.5),
            MeasureSpec::perturbed_quadratic(1.0),
        ] {
            let m = build(spec);
            let t = -s().t_max;
            let hd = h_value_and_derivative(&m, t, &s()).unwrap();
            let l = log_partition(&m, t, &s()).unwrap().exp();
            assert!(hd.h <= l * (1.0 + 1e-12));
        }
    }
}
