//! Quadrature, log-domain integration and monotone root finding.
//!
//! Every integral in this crate goes through [`integrate`]: an adaptive
//! Gauss-Kronrod (7/15) scheme with global error control. Integrands are
//! expected to be smooth on the subintervals they are given and to decay at
//! least like a Gaussian, so truncating the real line to a finite window is
//! harmless.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// `ln(sqrt(2 pi))`
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

pub const DEFAULT_TRUNCATION_HALFWIDTH: f64 = 12.0;
pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const DEFAULT_ABS_TOL: f64 = 1e-12;
pub const DEFAULT_X_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 2000;

// Initial subintervals are at most this wide, so that a narrow peak cannot
// slip between the nodes of a single 15-point rule.
const MAX_INITIAL_WIDTH: f64 = 4.0;
const MAX_INITIAL_PIECES: usize = 64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Half-width of the truncation window, in units of the scale of the
    /// integrand (one standard deviation for the catalog densities).
    pub truncation_halfwidth: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            truncation_halfwidth: DEFAULT_TRUNCATION_HALFWIDTH,
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.truncation_halfwidth > 0.0 && self.truncation_halfwidth.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "truncation_halfwidth must be positive, got {}",
                self.truncation_halfwidth
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidConfig(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    /// `false` when `max_subdivisions` ran out before the tolerance was met.
    /// The value is still the best available estimate.
    pub converged: bool,
}

impl QuadratureResult {
    pub fn tolerance_not_met(&self) -> bool {
        !self.converged
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    // Largest error first; ties broken by position so the refinement order
    // never depends on anything but the inputs.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn checked<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFiniteIntegrand { x, value: y })
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = checked(f, center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.abs() * WGK[7];

    for (j, (&node, &wk)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * node;
        let lo = checked(f, center - dx)?;
        let hi = checked(f, center + dx)?;
        kronrod += wk * (lo + hi);
        abs_sum += wk * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo + hi);
        }
    }

    let value = kronrod * half;
    let roundoff = 50.0 * f64::EPSILON * abs_sum * half.abs();
    let error = ((kronrod - gauss) * half).abs().max(roundoff);
    Ok(Segment { a, b, value, error })
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// Refines the worst subinterval until the summed error estimate drops below
/// `max(abs_tol, rel_tol * |value|)`. Exhausting `max_subdivisions` is not an
/// error; it is reported through [`QuadratureResult::converged`].
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    integrate_with_breaks(f, &[a, b], cfg)
}

/// Like [`integrate`], but the interval is given as an increasing list of
/// break points `[x0, x1, ..., xn]`. Kinks of the integrand should sit on a
/// break point.
pub fn integrate_with_breaks<F>(
    f: F,
    points: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if points.len() < 2 {
        return Err(Error::InvalidConfig(
            "need at least two break points".into(),
        ));
    }
    for w in points.windows(2) {
        if !(w[0] <= w[1]) || !w[0].is_finite() || !w[1].is_finite() {
            return Err(Error::InvalidInterval { a: w[0], b: w[1] });
        }
    }

    let (a, b) = (points[0], points[points.len() - 1]);
    if a == b {
        checked(&f, a)?;
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 1,
            converged: true,
        });
    }

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if lo == hi {
            continue;
        }
        let pieces = (((hi - lo) / MAX_INITIAL_WIDTH).ceil() as usize).clamp(1, MAX_INITIAL_PIECES);
        let step = (hi - lo) / pieces as f64;
        for k in 0..pieces {
            let sa = lo + step * k as f64;
            let sb = if k + 1 == pieces {
                hi
            } else {
                lo + step * (k + 1) as f64
            };
            heap.push(kronrod15(&f, sa, sb)?);
            evaluations += 15;
        }
    }

    let mut converged = false;
    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if error <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
            converged = true;
            break;
        }
        if heap.len() >= cfg.max_subdivisions {
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Cannot split any further in floating point.
            heap.push(worst);
            break;
        }
        heap.push(kronrod15(&f, worst.a, mid)?);
        heap.push(kronrod15(&f, mid, worst.b)?);
        evaluations += 30;
    }

    let mut segments = heap.into_vec();
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = segments.iter().map(|s| s.value).sum();
    let abs_error_estimate = segments.iter().map(|s| s.error).sum();
    Ok(QuadratureResult {
        value,
        abs_error_estimate,
        evaluations,
        converged,
    })
}

/// Result of a log-domain integral: `log_value = shift + ln(scaled.value)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogQuadrature {
    pub log_value: f64,
    pub shift: f64,
    pub scaled: QuadratureResult,
}

impl LogQuadrature {
    /// Relative error of `exp(log_value)`, which is also the absolute error of
    /// `log_value` to first order.
    pub fn rel_error_estimate(&self) -> f64 {
        if self.scaled.value > 0.0 {
            self.scaled.abs_error_estimate / self.scaled.value
        } else {
            f64::INFINITY
        }
    }
}

const LOG_SCAN_POINTS: usize = 257;

/// `ln ∫ exp(logf(x)) dx` over the break points, computed by subtracting the
/// largest sampled value of `logf` before exponentiating.
///
/// `logf` may return `-inf` where the integrand vanishes; `NaN` and `+inf` are
/// rejected.
pub fn log_integrate_exp_detailed<F>(
    logf: F,
    points: &[f64],
    cfg: &QuadratureConfig,
) -> Result<LogQuadrature>
where
    F: Fn(f64) -> f64,
{
    let (a, b) = match (points.first(), points.last()) {
        (Some(&a), Some(&b)) if points.len() >= 2 => (a, b),
        _ => {
            return Err(Error::InvalidConfig(
                "need at least two break points".into(),
            ))
        }
    };
    if !(a <= b) {
        return Err(Error::InvalidInterval { a, b });
    }

    let mut shift = f64::NEG_INFINITY;
    let samples = (0..LOG_SCAN_POINTS)
        .map(|k| a + (b - a) * k as f64 / (LOG_SCAN_POINTS - 1) as f64)
        .chain(points.iter().copied());
    for x in samples {
        let y = logf(x);
        if y.is_nan() || y == f64::INFINITY {
            return Err(Error::NonFiniteIntegrand { x, value: y });
        }
        shift = shift.max(y);
    }

    if shift == f64::NEG_INFINITY {
        let scaled = QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: LOG_SCAN_POINTS,
            converged: true,
        };
        return Ok(LogQuadrature {
            log_value: f64::NEG_INFINITY,
            shift,
            scaled,
        });
    }

    let scaled = integrate_with_breaks(
        |x| {
            let y = logf(x);
            if y.is_nan() || y == f64::INFINITY {
                y
            } else {
                (y - shift).exp()
            }
        },
        points,
        cfg,
    )?;
    Ok(LogQuadrature {
        log_value: shift + scaled.value.ln(),
        shift,
        scaled,
    })
}

/// `ln ∫_a^b exp(logf(x)) dx`.
pub fn log_integrate_exp<F>(logf: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    log_integrate_exp_detailed(logf, &[a, b], cfg).map(|r| r.log_value)
}

/// Solves `F(x) = target` for a nondecreasing `F` by bisection on `[lo, hi]`.
///
/// If the bisection lands on a point where `F` equals the target exactly, the
/// flat level set is located on both sides and its midpoint returned.
pub fn find_root_monotone<F>(f: F, target: f64, lo: f64, hi: f64, x_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(x_tol > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "x_tol must be positive, got {x_tol}"
        )));
    }
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidInterval { a: lo, b: hi });
    }
    let (f_lo, f_hi) = (f(lo), f(hi));
    if !(f_lo <= target && target <= f_hi) {
        return Err(Error::BracketInvalid {
            lo,
            hi,
            f_lo,
            f_hi,
            target,
        });
    }

    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > x_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let y = f(mid);
        if y < target {
            lo = mid;
        } else if y > target {
            hi = mid;
        } else {
            let left = bisect_edge(&f, lo, mid, x_tol, |v| v < target);
            let right = bisect_edge(&f, mid, hi, x_tol, |v| v <= target);
            return Ok(0.5 * (left + right));
        }
    }
    Ok(0.5 * (lo + hi))
}

// Boundary between the region where `below` holds (left) and where it fails.
fn bisect_edge<F, P>(f: &F, mut lo: f64, mut hi: f64, x_tol: f64, below: P) -> f64
where
    F: Fn(f64) -> f64,
    P: Fn(f64) -> bool,
{
    while hi - lo > x_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(f(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `n` equally spaced points from `lo` to `hi` inclusive; `[lo]` for `n = 1`.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|k| if k + 1 == n { hi } else { lo + step * k as f64 })
                .collect()
        }
    }
}

pub fn std_normal_log_pdf(x: f64) -> f64 {
    -0.5 * x * x - LN_SQRT_2PI
}

pub fn std_normal_pdf(x: f64) -> f64 {
    std_normal_log_pdf(x).exp()
}

pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// `ln(exp(a) + exp(b))` without overflow; `-inf` arguments are allowed.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}
