//! Brute-force reference values on a dense uniform grid (trapezoid rule with
//! 10^6 intervals). Written from the defining formulas only; nothing here
//! calls the library.

use std::f64::consts::PI;

pub const INTERVALS: usize = 1_000_000;
const REACH: f64 = 14.0;

fn phi(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

fn normal_pdf(x: f64, mu: f64, sigma: f64) -> f64 {
    phi((x - mu) / sigma) / sigma
}

/// Normalized `g` for the closed-form families.
#[derive(Debug, Clone, Copy)]
pub enum Family {
    Cosine(f64),
    Quadratic(f64),
    Gaussian(f64, f64),
    Mixture(f64, f64, f64, f64, f64),
}

impl Family {
    pub fn g(self, x: f64) -> f64 {
        match self {
            Family::Cosine(e) => (1.0 + e * x.cos()) / (1.0 + e * (-0.5f64).exp()),
            Family::Quadratic(e) => (1.0 + e * x * x) / (1.0 + e),
            Family::Gaussian(mu, s) => normal_pdf(x, mu, s) / phi(x),
            Family::Mixture(w, m1, s1, m2, s2) => {
                (w * normal_pdf(x, m1, s1) + (1.0 - w) * normal_pdf(x, m2, s2)) / phi(x)
            }
        }
    }

    /// Interval that carries the tilt at `t`.
    fn window(self, t: f64) -> (f64, f64) {
        match self {
            Family::Gaussian(mu, s) => (mu + s * s * t - REACH * s, mu + s * s * t + REACH * s),
            Family::Mixture(_, m1, s1, m2, s2) => (
                (m1 + s1 * s1 * t - REACH * s1).min(m2 + s2 * s2 * t - REACH * s2),
                (m1 + s1 * s1 * t + REACH * s1).max(m2 + s2 * s2 * t + REACH * s2),
            ),
            _ => (t - REACH, t + REACH),
        }
    }
}

fn trapezoid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let h = (b - a) / INTERVALS as f64;
    let mut s = 0.5 * (f(a) + f(b));
    for i in 1..INTERVALS {
        s += f(a + h * i as f64);
    }
    s * h
}

/// Unnormalized tilted density, scaled by `e^{-shift}` to stay finite.
fn tilted(fam: Family, t: f64) -> impl Fn(f64) -> f64 {
    let peak = fam.window(t);
    let shift = t * 0.5 * (peak.0 + peak.1);
    move |x| fam.g(x) * phi(x) * (t * x - shift).exp()
}

pub fn log_l(fam: Family, t: f64) -> f64 {
    let (a, b) = fam.window(t);
    let shift = t * 0.5 * (a + b);
    trapezoid(tilted(fam, t), a, b).ln() + shift
}

pub fn mean(fam: Family, t: f64) -> f64 {
    let (a, b) = fam.window(t);
    let p = tilted(fam, t);
    trapezoid(|x| x * p(x), a, b) / trapezoid(&p, a, b)
}

/// Median from the cumulative trapezoid sum, linear inside the crossing cell.
pub fn median(fam: Family, t: f64) -> f64 {
    let (a, b) = fam.window(t);
    let p = tilted(fam, t);
    let h = (b - a) / INTERVALS as f64;
    let mut cum = Vec::with_capacity(INTERVALS + 1);
    cum.push(0.0);
    let mut prev = p(a);
    for i in 1..=INTERVALS {
        let cur = p(a + h * i as f64);
        cum.push(cum[i - 1] + 0.5 * h * (prev + cur));
        prev = cur;
    }
    let half = 0.5 * cum[INTERVALS];
    let k = cum.partition_point(|&c| c < half);
    let (c0, c1) = (cum[k - 1], cum[k]);
    a + h * ((k - 1) as f64 + (half - c0) / (c1 - c0))
}

pub fn median_gap(fam: Family, t: f64) -> f64 {
    median(fam, t) - t
}

/// `∫ sign(t - x) φ(t - x) g(x) dx`; `t` is a grid node.
pub fn sign_kernel(fam: Family, t: f64) -> f64 {
    let sgn = |x: f64| {
        if x < t {
            1.0
        } else if x > t {
            -1.0
        } else {
            0.0
        }
    };
    trapezoid(|x| sgn(x) * phi(t - x) * fam.g(x), t - REACH, t + REACH)
}

fn q(y: f64) -> f64 {
    0.5 * y.abs() * (-0.5 * y * y).exp()
}

/// `g(t) - ∫ q(t - x) g(x) dx`; `t` is a grid node.
pub fn deriva(fam: Family, t: f64) -> f64 {
    fam.g(t) - trapezoid(|x| q(t - x) * fam.g(x), t - REACH, t + REACH)
}

/// `∫ q(y) cos(ω y) dy`, the factor by which one convolution with `q` scales
/// a cosine of frequency `ω`.
pub fn q_cos_multiplier(omega: f64) -> f64 {
    trapezoid(|y| q(y) * (omega * y).cos(), -REACH, REACH)
}
