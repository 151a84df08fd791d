//! Base probability measures `P(dx) = g(x) φ(x) dx`.
//!
//! A [`MeasureSpec`] names a catalog family (or a tabulated factor `g`), and
//! [`BaseMeasure::build`] validates it: parameters are checked, `g` is probed
//! for negativity and `∫ g φ = 1` is confirmed by quadrature. Every catalog
//! member is dominated by a Gaussian, so its Laplace transform is finite on
//! the whole line.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::{self, log_add_exp, std_normal_log_pdf, QuadratureConfig, LN_SQRT_2PI};

/// `exp(-1/2)`, the integral of `cos(x) φ(x)`.
const EXP_MINUS_HALF: f64 = 0.606_530_659_712_633_4;

const NORMALIZATION_TOL: f64 = 1e-10;

/// Declarative description of a base measure.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpec {
    /// `N(mu, sigma^2)`.
    Gaussian { mu: f64, sigma: f64 },
    /// `g(x) = (1 + eps cos x) / (1 + eps e^{-1/2})`.
    PerturbedCosine { eps: f64 },
    /// `g(x) = (1 + eps x^2) / (1 + eps)`.
    PerturbedQuadratic { eps: f64 },
    /// `weight N(mu1, sigma1^2) + (1 - weight) N(mu2, sigma2^2)`.
    GaussianMixture {
        weight: f64,
        mu1: f64,
        sigma1: f64,
        mu2: f64,
        sigma2: f64,
    },
    /// `g` read from a two-column text file.
    Tabulated { path: PathBuf },
}

impl MeasureSpec {
    pub fn gaussian(mu: f64, sigma: f64) -> Self {
        Self::Gaussian { mu, sigma }
    }

    pub fn standard_normal() -> Self {
        Self::gaussian(0.0, 1.0)
    }

    pub fn perturbed_cosine(eps: f64) -> Self {
        Self::PerturbedCosine { eps }
    }

    pub fn perturbed_quadratic(eps: f64) -> Self {
        Self::PerturbedQuadratic { eps }
    }

    pub fn gaussian_mixture(weight: f64, mu1: f64, sigma1: f64, mu2: f64, sigma2: f64) -> Self {
        Self::GaussianMixture {
            weight,
            mu1,
            sigma1,
            mu2,
            sigma2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Gaussian { .. } => "gaussian",
            Self::PerturbedCosine { .. } => "perturbed_cosine",
            Self::PerturbedQuadratic { .. } => "perturbed_quadratic",
            Self::GaussianMixture { .. } => "gaussian_mixture",
            Self::Tabulated { .. } => "tabulated",
        }
    }

    pub fn has_closed_form_log_l(&self) -> bool {
        !matches!(self, Self::Tabulated { .. })
    }

    fn check_parameters(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} must be finite, got {v}"
                )))
            }
        };
        let positive = |name: &str, v: f64| {
            finite(name, v)?;
            if v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        match *self {
            Self::Gaussian { mu, sigma } => {
                finite("mu", mu)?;
                positive("sigma", sigma)
            }
            Self::PerturbedCosine { eps } => {
                finite("eps", eps)?;
                if eps.abs() > 1.0 {
                    return Err(Error::NegativeDensity(format!(
                        "1 + {eps} cos(x) takes negative values"
                    )));
                }
                Ok(())
            }
            Self::PerturbedQuadratic { eps } => {
                finite("eps", eps)?;
                if eps < 0.0 {
                    return Err(Error::NegativeDensity(format!(
                        "1 + {eps} x^2 takes negative values"
                    )));
                }
                Ok(())
            }
            Self::GaussianMixture {
                weight,
                mu1,
                sigma1,
                mu2,
                sigma2,
            } => {
                finite("weight", weight)?;
                if !(0.0..=1.0).contains(&weight) {
                    return Err(Error::InvalidParameter(format!(
                        "mixture weight must lie in [0, 1], got {weight}"
                    )));
                }
                finite("mu1", mu1)?;
                finite("mu2", mu2)?;
                positive("sigma1", sigma1)?;
                positive("sigma2", sigma2)
            }
            Self::Tabulated { .. } => Ok(()),
        }
    }
}

fn fmt_params(f: &mut fmt::Formatter<'_>, name: &str, params: &[f64]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, p) in params.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    f.write_str(")")
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Gaussian { mu, sigma } => fmt_params(f, self.kind(), &[mu, sigma]),
            Self::PerturbedCosine { eps } | Self::PerturbedQuadratic { eps } => {
                fmt_params(f, self.kind(), &[eps])
            }
            Self::GaussianMixture {
                weight,
                mu1,
                sigma1,
                mu2,
                sigma2,
            } => fmt_params(f, self.kind(), &[weight, mu1, sigma1, mu2, sigma2]),
            Self::Tabulated { ref path } => write!(f, "tabulated({})", path.display()),
        }
    }
}

impl FromStr for MeasureSpec {
    type Err = Error;

    /// Parses `name(p1,p2,...)`, e.g. `gaussian(0,1)` or `tabulated(g.txt)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MeasureParse(s.to_string());
        let s_trim = s.trim();
        let open = s_trim.find('(').ok_or_else(bad)?;
        if !s_trim.ends_with(')') {
            return Err(bad());
        }
        let name = s_trim[..open].trim().to_ascii_lowercase().replace('-', "_");
        let inner = &s_trim[open + 1..s_trim.len() - 1];

        if name == "tabulated" {
            let path = inner.trim();
            if path.is_empty() {
                return Err(bad());
            }
            return Ok(Self::Tabulated { path: path.into() });
        }

        let params = inner
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        match (name.as_str(), params.as_slice()) {
            ("gaussian", &[mu, sigma]) => Ok(Self::gaussian(mu, sigma)),
            ("perturbed_cosine", &[eps]) => Ok(Self::perturbed_cosine(eps)),
            ("perturbed_quadratic", &[eps]) => Ok(Self::perturbed_quadratic(eps)),
            ("gaussian_mixture", &[w, m1, s1, m2, s2]) => {
                Ok(Self::gaussian_mixture(w, m1, s1, m2, s2))
            }
            _ => Err(bad()),
        }
    }
}

impl Serialize for MeasureSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MeasureSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Piecewise-linear `g` sampled at strictly increasing nodes, zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedDensity {
    xs: Vec<f64>,
    gs: Vec<f64>,
}

impl TabulatedDensity {
    pub fn new(xs: Vec<f64>, gs: Vec<f64>) -> Result<Self> {
        if xs.len() != gs.len() || xs.len() < 2 {
            return Err(Error::InvalidGrid { min_len: 2 });
        }
        if xs.iter().chain(&gs).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "tabulated values must be finite".into(),
            ));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidGrid { min_len: 2 });
        }
        if let Some((x, g)) = xs.iter().zip(&gs).find(|(_, g)| **g < 0.0) {
            return Err(Error::NegativeDensity(format!("g({x}) = {g}")));
        }
        Ok(Self { xs, gs })
    }

    /// Parses the two-column text format: `x g(x)` per line, whitespace
    /// separated, `#` starts a comment line, blank lines are skipped.
    pub fn parse(text: &str, path: Option<&Path>) -> Result<Self> {
        let err = |line: usize, reason: String| Error::TableParse {
            path: path.map(Path::to_path_buf),
            line,
            reason,
        };
        let mut xs = Vec::new();
        let mut gs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols.len() != 2 {
                return Err(err(
                    i + 1,
                    format!("expected 2 columns, found {}", cols.len()),
                ));
            }
            let parse = |c: &str| {
                c.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| err(i + 1, format!("not a finite number: '{c}'")))
            };
            let (x, g) = (parse(cols[0])?, parse(cols[1])?);
            if let Some(&prev) = xs.last() {
                if !(x > prev) {
                    return Err(err(i + 1, format!("x = {x} does not increase")));
                }
            }
            xs.push(x);
            gs.push(g);
        }
        if xs.len() < 2 {
            return Err(err(0, "need at least two data lines".into()));
        }
        Self::new(xs, gs)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        Self::parse(&text, Some(path))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.gs
    }

    pub fn range(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (lo, hi) = self.range();
        if !(x >= lo && x <= hi) {
            return 0.0;
        }
        let k = self.xs.partition_point(|&xi| xi <= x);
        if k >= self.xs.len() {
            return self.gs[self.gs.len() - 1];
        }
        let (x0, x1) = (self.xs[k - 1], self.xs[k]);
        let (g0, g1) = (self.gs[k - 1], self.gs[k]);
        let w = (x - x0) / (x1 - x0);
        (g0 + w * (g1 - g0)).max(0.0)
    }

    // f = g φ rising toward an end of the table means g outgrows the Gaussian
    // weight there, i.e. the data describe a heavier-than-Gaussian tail.
    fn check_tails(&self) -> Result<()> {
        let n = self.xs.len();
        let log_f = |k: usize| self.gs[k].ln() + std_normal_log_pdf(self.xs[k]);
        if self.gs[0] > 0.0 && self.gs[1] > 0.0 && log_f(0) > log_f(1) {
            return Err(Error::TailViolation {
                edge: "left",
                x: self.xs[0],
            });
        }
        if self.gs[n - 1] > 0.0 && self.gs[n - 2] > 0.0 && log_f(n - 1) > log_f(n - 2) {
            return Err(Error::TailViolation {
                edge: "right",
                x: self.xs[n - 1],
            });
        }
        Ok(())
    }

    fn scaled(&self, factor: f64) -> Self {
        Self {
            xs: self.xs.clone(),
            gs: self.gs.iter().map(|g| g * factor).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Factor {
    Gaussian { mu: f64, sigma: f64 },
    Cosine { eps: f64, norm: f64 },
    Quadratic { eps: f64 },
    Mixture { components: Vec<(f64, f64, f64)> },
    Table(TabulatedDensity),
}

/// A validated base measure with density `f = g φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseMeasure {
    spec: MeasureSpec,
    factor: Factor,
    support_halfwidth: f64,
}

impl BaseMeasure {
    /// Validates `spec` and builds the measure. Tabulated specs read their
    /// file here.
    pub fn build(spec: &MeasureSpec) -> Result<Self> {
        Self::build_with(spec, &QuadratureConfig::default())
    }

    pub fn build_with(spec: &MeasureSpec, cfg: &QuadratureConfig) -> Result<Self> {
        cfg.validate()?;
        spec.check_parameters()?;
        let factor = match *spec {
            MeasureSpec::Gaussian { mu, sigma } => Factor::Gaussian { mu, sigma },
            MeasureSpec::PerturbedCosine { eps } => Factor::Cosine {
                eps,
                norm: 1.0 + eps * EXP_MINUS_HALF,
            },
            MeasureSpec::PerturbedQuadratic { eps } => Factor::Quadratic { eps },
            MeasureSpec::GaussianMixture {
                weight,
                mu1,
                sigma1,
                mu2,
                sigma2,
            } => Factor::Mixture {
                components: [(weight, mu1, sigma1), (1.0 - weight, mu2, sigma2)]
                    .into_iter()
                    .filter(|c| c.0 > 0.0)
                    .collect(),
            },
            MeasureSpec::Tabulated { ref path } => {
                return Self::from_table(TabulatedDensity::from_file(path)?, spec.clone(), cfg)
            }
        };
        let mut measure = Self {
            spec: spec.clone(),
            factor,
            support_halfwidth: 0.0,
        };
        measure.support_halfwidth = measure.untilted_radius(cfg);

        let mass = measure.total_mass(cfg)?;
        if !((mass - 1.0).abs() <= NORMALIZATION_TOL) {
            return Err(Error::NotNormalizable(format!(
                "{spec}: integral of g phi is {mass}"
            )));
        }
        Ok(measure)
    }

    /// Builds a measure from in-memory tabulated `g`, renormalizing so that
    /// `∫ g φ = 1`.
    pub fn tabulated(table: TabulatedDensity) -> Result<Self> {
        Self::from_table(
            table,
            MeasureSpec::Tabulated {
                path: PathBuf::from("<memory>"),
            },
            &QuadratureConfig::default(),
        )
    }

    fn from_table(
        table: TabulatedDensity,
        spec: MeasureSpec,
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        table.check_tails()?;
        let raw = Self {
            spec: spec.clone(),
            factor: Factor::Table(table.clone()),
            support_halfwidth: 0.0,
        };
        let mass = raw.total_mass(cfg)?;
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::NotNormalizable(format!(
                "{spec}: integral of g phi is {mass}"
            )));
        }
        let (lo, hi) = table.range();
        let measure = Self {
            spec,
            factor: Factor::Table(table.scaled(1.0 / mass)),
            support_halfwidth: lo.abs().max(hi.abs()),
        };
        let check = measure.total_mass(cfg)?;
        if (check - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalizable(format!(
                "renormalized mass is {check}"
            )));
        }
        Ok(measure)
    }

    pub fn spec(&self) -> &MeasureSpec {
        &self.spec
    }

    /// Radius beyond which the untilted tail mass is negligible (< 1e-14).
    pub fn support_halfwidth(&self) -> f64 {
        self.support_halfwidth
    }

    pub fn has_closed_form_log_l(&self) -> bool {
        self.spec.has_closed_form_log_l()
    }

    /// `ln g(x)`, `-inf` where `g` vanishes.
    pub fn log_g(&self, x: f64) -> f64 {
        match self.factor {
            Factor::Gaussian { mu, sigma } => {
                let z = (x - mu) / sigma;
                -0.5 * z * z - sigma.ln() + 0.5 * x * x
            }
            Factor::Cosine { eps, norm } => (1.0 + eps * x.cos()).max(0.0).ln() - norm.ln(),
            Factor::Quadratic { eps } => (eps * x).mul_add(x, 1.0).ln() - eps.ln_1p(),
            Factor::Mixture { .. } | Factor::Table(_) => {
                self.log_density(x) - std_normal_log_pdf(x)
            }
        }
    }

    pub fn g(&self, x: f64) -> f64 {
        match self.factor {
            Factor::Table(ref table) => table.eval(x),
            Factor::Cosine { eps, norm } => (1.0 + eps * x.cos()).max(0.0) / norm,
            Factor::Quadratic { eps } => (eps * x).mul_add(x, 1.0) / (1.0 + eps),
            _ => self.log_g(x).exp(),
        }
    }

    /// `ln f(x) = ln g(x) + ln φ(x)`.
    pub fn log_density(&self, x: f64) -> f64 {
        match &self.factor {
            Factor::Gaussian { mu, sigma } => {
                let z = (x - mu) / sigma;
                -0.5 * z * z - sigma.ln() - LN_SQRT_2PI
            }
            Factor::Mixture { components } => components
                .iter()
                .map(|&(w, mu, sigma)| {
                    let z = (x - mu) / sigma;
                    w.ln() - 0.5 * z * z - sigma.ln() - LN_SQRT_2PI
                })
                .fold(f64::NEG_INFINITY, log_add_exp),
            Factor::Table(table) => table.eval(x).ln() + std_normal_log_pdf(x),
            _ => self.log_g(x) + std_normal_log_pdf(x),
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        self.log_density(x).exp()
    }

    /// Integration window that carries all but a negligible part of the mass
    /// of the tilted measure `P_t`. For the catalog families this is
    /// `truncation_halfwidth` standard deviations around the tilted centre;
    /// tabulated measures use their table range.
    pub fn tilted_window(&self, t: f64, cfg: &QuadratureConfig) -> (f64, f64) {
        let x = cfg.truncation_halfwidth;
        match &self.factor {
            Factor::Gaussian { mu, sigma } => {
                let c = mu + sigma * sigma * t;
                (c - x * sigma, c + x * sigma)
            }
            Factor::Cosine { .. } | Factor::Quadratic { .. } => (t - x, t + x),
            Factor::Mixture { components } => components.iter().fold(
                (f64::INFINITY, f64::NEG_INFINITY),
                |(lo, hi), &(_, mu, sigma)| {
                    let c = mu + sigma * sigma * t;
                    (lo.min(c - x * sigma), hi.max(c + x * sigma))
                },
            ),
            Factor::Table(table) => table.range(),
        }
    }

    /// Break points for integrating over `[a, b]`: the endpoints plus every
    /// kink of `g` strictly inside.
    pub fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        let mut pts = vec![a];
        if let Factor::Table(table) = &self.factor {
            pts.extend(table.nodes().iter().copied().filter(|&x| x > a && x < b));
        }
        if b > a {
            pts.push(b);
        }
        pts
    }

    /// Breakpoints with an extra kink at `at` (clamped to the interval).
    pub fn breakpoints_with(&self, a: f64, b: f64, at: f64) -> Vec<f64> {
        let mut pts = self.breakpoints(a, b);
        if at > a && at < b && !pts.contains(&at) {
            let k = pts.partition_point(|&x| x < at);
            pts.insert(k, at);
        }
        pts
    }

    /// `P((a, b))` by quadrature of the density.
    pub fn mass_between(
        &self,
        a: f64,
        b: f64,
        cfg: &QuadratureConfig,
    ) -> Result<numerics::QuadratureResult> {
        if !(a < b) {
            return Ok(numerics::QuadratureResult {
                value: 0.0,
                abs_error_estimate: 0.0,
                evaluations: 1,
                converged: true,
            });
        }
        numerics::integrate_with_breaks(|x| self.density(x), &self.breakpoints(a, b), cfg)
    }

    fn untilted_radius(&self, cfg: &QuadratureConfig) -> f64 {
        let (lo, hi) = self.tilted_window(0.0, cfg);
        lo.abs().max(hi.abs())
    }

    fn total_mass(&self, cfg: &QuadratureConfig) -> Result<f64> {
        let (lo, hi) = self.tilted_window(0.0, cfg);
        Ok(self.mass_between(lo, hi, cfg)?.value)
    }

    pub fn closed_form_log_l(&self, t: f64) -> Option<f64> {
        closed_form_log_l(&self.spec, t)
    }
}

/// Exact `ln L(t)` for the catalog families; `None` for tabulated input.
pub fn closed_form_log_l(spec: &MeasureSpec, t: f64) -> Option<f64> {
    let gaussian = |mu: f64, sigma: f64| mu * t + 0.5 * sigma * sigma * t * t;
    match *spec {
        MeasureSpec::Gaussian { mu, sigma } => Some(gaussian(mu, sigma)),
        MeasureSpec::PerturbedCosine { eps } => {
            let c = eps * EXP_MINUS_HALF;
            Some(0.5 * t * t + (c * t.cos()).ln_1p() - c.ln_1p())
        }
        MeasureSpec::PerturbedQuadratic { eps } => {
            Some(0.5 * t * t + (eps * (1.0 + t * t)).ln_1p() - eps.ln_1p())
        }
        MeasureSpec::GaussianMixture {
            weight,
            mu1,
            sigma1,
            mu2,
            sigma2,
        } => Some(log_add_exp(
            weight.ln() + gaussian(mu1, sigma1),
            (1.0 - weight).ln() + gaussian(mu2, sigma2),
        )),
        MeasureSpec::Tabulated { .. } => None,
    }
}

/// Samples of a function on a uniform grid, together with the index range
/// (inclusive) on which the samples are trustworthy.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    x_min: f64,
    step: f64,
    values: Vec<f64>,
    valid: (usize, usize),
}

impl GridFunction {
    pub fn new(x_min: f64, step: f64, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidGrid { min_len: 1 });
        }
        let hi = values.len() - 1;
        Self::with_window(x_min, step, values, (0, hi))
    }

    pub fn with_window(
        x_min: f64,
        step: f64,
        values: Vec<f64>,
        valid: (usize, usize),
    ) -> Result<Self> {
        if !(step > 0.0 && step.is_finite() && x_min.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "grid step must be positive, got {step}"
            )));
        }
        if valid.0 > valid.1 || valid.1 >= values.len() {
            return Err(Error::InvalidParameter(format!(
                "valid window {valid:?} outside {} samples",
                values.len()
            )));
        }
        if values[valid.0..=valid.1].iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "non-finite value inside valid window".into(),
            ));
        }
        Ok(Self {
            x_min,
            step,
            values,
            valid,
        })
    }

    /// Samples `f` at `n` uniformly spaced nodes of `[x_min, x_max]`.
    pub fn sample<F: Fn(f64) -> f64>(f: F, x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if n < 2 || !(x_min < x_max) {
            return Err(Error::InvalidGrid { min_len: 2 });
        }
        let step = (x_max - x_min) / (n - 1) as f64;
        let values = (0..n).map(|i| f(x_min + step * i as f64)).collect();
        Self::new(x_min, step, values)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + self.step * i as f64
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn valid_window(&self) -> (usize, usize) {
        self.valid
    }

    pub fn valid_len(&self) -> usize {
        self.valid.1 - self.valid.0 + 1
    }

    pub fn valid_values(&self) -> &[f64] {
        &self.values[self.valid.0..=self.valid.1]
    }

    /// `(x_lo, x_hi)` of the valid window.
    pub fn valid_range(&self) -> (f64, f64) {
        (self.x(self.valid.0), self.x(self.valid.1))
    }

    /// `sup - inf` over the valid window.
    pub fn oscillation(&self) -> f64 {
        let (lo, hi) = self
            .valid_values()
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        hi - lo
    }
}

/// Samples `g` (not `f`) of `m` at `n` uniform nodes on `[x_min, x_max]`.
pub fn sample_to_grid(m: &BaseMeasure, x_min: f64, x_max: f64, n: usize) -> Result<GridFunction> {
    GridFunction::sample(|x| m.g(x), x_min, x_max, n)
}
