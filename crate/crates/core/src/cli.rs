//! Configuration-driven front end.
//!
//! An [`ExperimentConfig`] names a measure, a command and a `t` grid. It can
//! come from a JSON file, from command-line flags, or both (flags win).
//! [`run`] executes the command, writes one report file and returns the
//! summary that the binary prints.
//!
//! Exit codes: 0 success, 2 configuration error, 3 measure construction
//! failed, 4 I/O error, 5 numerical failure.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::choquet::{iterate_fixed_point, ConvolutionSetup, IterationTrace};
use crate::error::Error;
use crate::measures::{sample_to_grid, BaseMeasure, MeasureSpec};
use crate::medianlaw::{lipschitz_bound, scan, Diagnostic, DiagnosticReport, LipschitzBound};
use crate::numerics::uniform_grid;
use crate::symmetry::{
    asymmetry_sweep, default_offsets, quadratic_log_l_fit, QuadraticFit, MIN_FIT_POINTS,
};
use crate::tilting::{Estimate, Settings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_MEASURE: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_COMPUTE: i32 = 5;

pub const DEFAULT_T_RANGE: [f64; 2] = [-6.0, 6.0];
pub const DEFAULT_T_POINTS: usize = 49;
pub const DEFAULT_STEPS: usize = 8;
pub const DEFAULT_HALFWIDTH: f64 = 2.0;
pub const DEFAULT_GRID_HALFWIDTH: f64 = 60.0;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    ConfigParse(String),
    #[error("cannot build measure: {0}")]
    MeasureBuild(Error),
    #[error("i/o error on {path:?}: {reason}")]
    Io { path: PathBuf, reason: String },
    #[error("computation failed: {0}")]
    Compute(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ConfigParse(_) => EXIT_CONFIG,
            CliError::MeasureBuild(_) => EXIT_MEASURE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Compute(_) => EXIT_COMPUTE,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    MedianGap,
    SignKernel,
    Deriva,
    MeanMedian,
    ChoquetIterate,
    SymmetrySweep,
    Lipschitz,
    FullReport,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::MedianGap => "median-gap",
            Command::SignKernel => "sign-kernel",
            Command::Deriva => "deriva",
            Command::MeanMedian => "mean-median",
            Command::ChoquetIterate => "choquet-iterate",
            Command::SymmetrySweep => "symmetry-sweep",
            Command::Lipschitz => "lipschitz",
            Command::FullReport => "full-report",
        }
    }

    fn diagnostic(self) -> Option<Diagnostic> {
        match self {
            Command::MedianGap => Some(Diagnostic::MedianGap),
            Command::SignKernel => Some(Diagnostic::SignKernel),
            Command::Deriva => Some(Diagnostic::Deriva),
            Command::MeanMedian => Some(Diagnostic::MeanMedian),
            _ => None,
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Optional overrides of the numerical settings.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureOverrides {
    pub truncation_halfwidth: Option<f64>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
    pub x_tol: Option<f64>,
}

impl QuadratureOverrides {
    pub fn apply(&self, mut s: Settings) -> Settings {
        let q = &mut s.quadrature;
        q.truncation_halfwidth = self.truncation_halfwidth.unwrap_or(q.truncation_halfwidth);
        q.rel_tol = self.rel_tol.unwrap_or(q.rel_tol);
        q.abs_tol = self.abs_tol.unwrap_or(q.abs_tol);
        q.max_subdivisions = self.max_subdivisions.unwrap_or(q.max_subdivisions);
        s.x_tol = self.x_tol.unwrap_or(s.x_tol);
        s
    }
}

/// Grid on which `choquet-iterate` samples `g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOptions {
    pub halfwidth: f64,
    pub step: f64,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            halfwidth: DEFAULT_GRID_HALFWIDTH,
            step: crate::choquet::DEFAULT_GRID_STEP,
        }
    }
}

/// A complete, validated experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub measure: MeasureSpec,
    pub command: Command,
    pub t_range: [f64; 2],
    pub t_points: usize,
    pub quadrature: QuadratureOverrides,
    pub output_path: PathBuf,
    pub output_format: OutputFormat,
    pub steps: usize,
    pub halfwidth: f64,
    pub grid: GridOptions,
}

/// The on-disk form: every field optional so flags can fill the gaps.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub measure: Option<MeasureSpec>,
    pub command: Option<Command>,
    pub t_range: Option<[f64; 2]>,
    pub t_points: Option<usize>,
    pub quadrature: Option<QuadratureOverrides>,
    pub output_path: Option<PathBuf>,
    pub output_format: Option<OutputFormat>,
    pub steps: Option<usize>,
    pub halfwidth: Option<f64>,
    pub grid: Option<GridOptions>,
}

impl PartialConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::ConfigParse(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merge(self, over: PartialConfig) -> PartialConfig {
        PartialConfig {
            measure: over.measure.or(self.measure),
            command: over.command.or(self.command),
            t_range: over.t_range.or(self.t_range),
            t_points: over.t_points.or(self.t_points),
            quadrature: over.quadrature.or(self.quadrature),
            output_path: over.output_path.or(self.output_path),
            output_format: over.output_format.or(self.output_format),
            steps: over.steps.or(self.steps),
            halfwidth: over.halfwidth.or(self.halfwidth),
            grid: over.grid.or(self.grid),
        }
    }

    pub fn finalize(self) -> Result<ExperimentConfig, CliError> {
        let missing = |what: &str| CliError::ConfigParse(format!("missing {what}"));
        let config = ExperimentConfig {
            measure: self.measure.ok_or_else(|| missing("measure"))?,
            command: self.command.ok_or_else(|| missing("command"))?,
            t_range: self.t_range.unwrap_or(DEFAULT_T_RANGE),
            t_points: self.t_points.unwrap_or(DEFAULT_T_POINTS),
            quadrature: self.quadrature.unwrap_or_default(),
            output_path: self.output_path.ok_or_else(|| missing("output path"))?,
            output_format: self.output_format.unwrap_or_default(),
            steps: self.steps.unwrap_or(DEFAULT_STEPS),
            halfwidth: self.halfwidth.unwrap_or(DEFAULT_HALFWIDTH),
            grid: self.grid.unwrap_or_default(),
        };
        config.validate()?;
        Ok(config)
    }
}

impl ExperimentConfig {
    pub fn settings(&self) -> Settings {
        self.quadrature.apply(Settings::default())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::ConfigParse(msg));
        let [lo, hi] = self.t_range;
        if !(lo.is_finite() && hi.is_finite()) {
            return bad(format!("t range [{lo}, {hi}] is not finite"));
        }
        if self.t_points == 0 {
            return bad("t_points must be at least 1".into());
        }
        if self.t_points > 1 && !(lo < hi) {
            return bad(format!("t range needs lo < hi, got [{lo}, {hi}]"));
        }
        if self.t_points == 1 && lo > hi {
            return bad(format!("t range needs lo <= hi, got [{lo}, {hi}]"));
        }
        let settings = self.settings();
        settings
            .validate()
            .map_err(|e| CliError::ConfigParse(e.to_string()))?;
        if lo.abs() > settings.t_max || hi.abs() > settings.t_max {
            return bad(format!(
                "t range [{lo}, {hi}] exceeds the working range [-{0}, {0}]",
                settings.t_max
            ));
        }
        if !(self.halfwidth > 0.0 && self.halfwidth <= settings.t_max) {
            return bad(format!(
                "halfwidth must lie in (0, {}], got {}",
                settings.t_max, self.halfwidth
            ));
        }
        if !(self.grid.step > 0.0 && self.grid.halfwidth > 0.0) {
            return bad("grid step and halfwidth must be positive".into());
        }
        Ok(())
    }

    pub fn t_grid(&self) -> Vec<f64> {
        uniform_grid(self.t_range[0], self.t_range[1], self.t_points)
    }
}

/// What the binary prints after a successful run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub max_abs_residual: f64,
    /// Where the maximum is attained (a `t` value, or the step index for
    /// `choquet-iterate`).
    pub at: Option<f64>,
    pub output_path: PathBuf,
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = self.at.map_or_else(|| "none".to_string(), fmt_num);
        write!(
            f,
            "max|residual| = {} at t = {}",
            fmt_num(self.max_abs_residual),
            at
        )
    }
}

/// Decimal with 17 significant digits, so that every `f64` round-trips.
pub fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// JSON number with 17 significant digits (`null` when not finite).
#[derive(Debug, Clone, Copy, PartialEq)]
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(fmt_num(self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(serializer)
        } else {
            serializer.serialize_none()
        }
    }
}

fn nums(v: &[f64]) -> Vec<Num> {
    v.iter().copied().map(Num).collect()
}

#[derive(Serialize)]
struct SummaryJson {
    max_abs_residual: Num,
    argmax_t: Option<Num>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    diagnostic: &'a str,
    t_grid: Vec<Num>,
    residuals: Vec<Num>,
    error_estimates: Vec<Num>,
    summary: SummaryJson,
}

impl<'a> From<&'a DiagnosticReport> for ReportJson<'a> {
    fn from(r: &'a DiagnosticReport) -> Self {
        ReportJson {
            diagnostic: &r.name,
            t_grid: nums(&r.t_grid),
            residuals: nums(&r.residuals),
            error_estimates: nums(&r.error_estimates),
            summary: SummaryJson {
                max_abs_residual: Num(r.max_abs_residual),
                argmax_t: r.argmax_t.map(Num),
            },
        }
    }
}

#[derive(Serialize)]
struct DiagnosticFile<'a> {
    command: &'a str,
    measure: String,
    #[serde(flatten)]
    report: ReportJson<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    symmetry_centers: Option<Vec<Num>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quadratic_fit: Option<FitJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lipschitz: Option<LipschitzJson>,
}

#[derive(Serialize)]
struct FitJson {
    a: Num,
    b: Num,
    c: Num,
    max_fit_residual: Num,
}

impl From<&QuadraticFit> for FitJson {
    fn from(f: &QuadraticFit) -> Self {
        FitJson {
            a: Num(f.a),
            b: Num(f.b),
            c: Num(f.c),
            max_fit_residual: Num(f.max_fit_residual),
        }
    }
}

#[derive(Serialize)]
struct LipschitzJson {
    halfwidth: Num,
    constant: Num,
    max_abs_l_prime: Num,
    weighted_abs_moment: Num,
}

impl From<&LipschitzBound> for LipschitzJson {
    fn from(b: &LipschitzBound) -> Self {
        LipschitzJson {
            halfwidth: Num(b.halfwidth),
            constant: Num(b.constant),
            max_abs_l_prime: Num(b.max_abs_l_prime),
            weighted_abs_moment: Num(b.weighted_abs_moment),
        }
    }
}

#[derive(Serialize)]
struct ChoquetFile<'a> {
    command: &'a str,
    measure: String,
    grid_x_min: Num,
    grid_x_max: Num,
    grid_step: Num,
    kernel_halfwidth: Num,
    window_shrink_per_step: usize,
    step: Vec<usize>,
    oscillation: Vec<Num>,
    window_lo: Vec<Num>,
    window_hi: Vec<Num>,
    summary: SummaryJson,
}

#[derive(Serialize)]
struct FullReportFile<'a> {
    command: &'a str,
    measure: String,
    median_gap: ReportJson<'a>,
    sign_kernel: ReportJson<'a>,
    deriva: ReportJson<'a>,
    mean_median: ReportJson<'a>,
    asymmetry: ReportJson<'a>,
    quadratic_fit: Option<FitJson>,
    lipschitz: LipschitzJson,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

fn diagnostic_csv(r: &DiagnosticReport) -> String {
    let mut out = String::from("t,residual,error_estimate\n");
    for i in 0..r.len() {
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_num(r.t_grid[i]),
            fmt_num(r.residuals[i]),
            fmt_num(r.error_estimates[i])
        );
    }
    out
}

fn choquet_csv(trace: &IterationTrace) -> String {
    let mut out = String::from("step,oscillation,window_lo,window_hi\n");
    for (k, (osc, (lo, hi))) in trace.oscillations.iter().zip(&trace.windows).enumerate() {
        let _ = writeln!(
            out,
            "{k},{},{},{}",
            fmt_num(*osc),
            fmt_num(*lo),
            fmt_num(*hi)
        );
    }
    out
}

fn summary_of(r: &DiagnosticReport, path: &Path) -> RunSummary {
    RunSummary {
        max_abs_residual: r.max_abs_residual,
        at: r.argmax_t,
        output_path: path.to_path_buf(),
    }
}

fn symmetry_report(
    m: &BaseMeasure,
    t_grid: &[f64],
    settings: &Settings,
) -> Result<(DiagnosticReport, Vec<f64>, Option<QuadraticFit>), CliError> {
    let sweep = asymmetry_sweep(m, t_grid, &default_offsets(), settings)?;
    let estimates = sweep
        .iter()
        .map(|r| Estimate {
            value: r.asymmetry_score,
            abs_error: r.center_error,
        })
        .collect();
    let centers = sweep.iter().map(|r| r.center).collect();
    let distinct = t_grid.windows(2).all(|w| w[0] < w[1]);
    let fit = if t_grid.len() >= MIN_FIT_POINTS && distinct {
        Some(quadratic_log_l_fit(m, t_grid, settings)?)
    } else {
        None
    };
    Ok((
        DiagnosticReport::new("asymmetry", t_grid.to_vec(), estimates),
        centers,
        fit,
    ))
}

/// `P((-A, t)) / (c_A (t + A))` for grid points in `(-A, A]`; at most one
/// whenever the Lipschitz bound holds.
fn lipschitz_report(
    m: &BaseMeasure,
    t_grid: &[f64],
    a: f64,
    settings: &Settings,
) -> Result<(DiagnosticReport, LipschitzBound), CliError> {
    let bound = lipschitz_bound(m, a, settings)?;
    let ts: Vec<f64> = t_grid
        .iter()
        .copied()
        .filter(|&t| t > -a && t <= a)
        .collect();
    let estimates = ts
        .iter()
        .map(|&t| {
            let mass = m.mass_between(-a, t, &settings.quadrature)?;
            let scale = bound.constant * (t + a);
            Ok(Estimate {
                value: mass.value / scale,
                abs_error: mass.abs_error_estimate / scale,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok((
        DiagnosticReport::new("lipschitz_ratio", ts, estimates),
        bound,
    ))
}

fn render(config: &ExperimentConfig, m: &BaseMeasure) -> Result<(String, RunSummary), CliError> {
    let settings = config.settings();
    let t_grid = config.t_grid();
    let path = &config.output_path;
    let command = config.command.name();
    let measure = config.measure.to_string();
    let json = config.output_format == OutputFormat::Json;

    let plain = |report: &DiagnosticReport,
                 centers: Option<Vec<f64>>,
                 fit: Option<&QuadraticFit>,
                 lip: Option<&LipschitzBound>| {
        if json {
            to_json(&DiagnosticFile {
                command,
                measure: measure.clone(),
                report: report.into(),
                symmetry_centers: centers.as_deref().map(nums),
                quadratic_fit: fit.map(FitJson::from),
                lipschitz: lip.map(LipschitzJson::from),
            })
        } else {
            diagnostic_csv(report)
        }
    };

    match config.command {
        Command::MedianGap | Command::SignKernel | Command::Deriva | Command::MeanMedian => {
            let which = config.command.diagnostic().expect("diagnostic command");
            let report = scan(m, which, &t_grid, &settings)?;
            Ok((plain(&report, None, None, None), summary_of(&report, path)))
        }
        Command::SymmetrySweep => {
            let (report, centers, fit) = symmetry_report(m, &t_grid, &settings)?;
            Ok((
                plain(&report, Some(centers), fit.as_ref(), None),
                summary_of(&report, path),
            ))
        }
        Command::Lipschitz => {
            let (report, bound) = lipschitz_report(m, &t_grid, config.halfwidth, &settings)?;
            Ok((
                plain(&report, None, None, Some(&bound)),
                summary_of(&report, path),
            ))
        }
        Command::ChoquetIterate => {
            let GridOptions { halfwidth, step } = config.grid;
            let n = (2.0 * halfwidth / step).round() as usize + 1;
            let g0 = sample_to_grid(m, -halfwidth, halfwidth, n)?;
            let setup = ConvolutionSetup::with_step(g0.step())?;
            let trace = iterate_fixed_point(&g0, config.steps, &setup)?;
            let last = trace.steps();
            let summary = RunSummary {
                max_abs_residual: trace.oscillations[last],
                at: Some(last as f64),
                output_path: path.clone(),
            };
            let text = if json {
                to_json(&ChoquetFile {
                    command,
                    measure,
                    grid_x_min: Num(g0.x_min()),
                    grid_x_max: Num(g0.x(g0.len() - 1)),
                    grid_step: Num(g0.step()),
                    kernel_halfwidth: Num(setup.kernel_halfwidth()),
                    window_shrink_per_step: trace.window_shrink_per_step,
                    step: (0..=last).collect(),
                    oscillation: nums(&trace.oscillations),
                    window_lo: trace.windows.iter().map(|w| Num(w.0)).collect(),
                    window_hi: trace.windows.iter().map(|w| Num(w.1)).collect(),
                    summary: SummaryJson {
                        max_abs_residual: Num(summary.max_abs_residual),
                        argmax_t: summary.at.map(Num),
                    },
                })
            } else {
                choquet_csv(&trace)
            };
            Ok((text, summary))
        }
        Command::FullReport => {
            let reports = Diagnostic::ALL
                .iter()
                .map(|&d| scan(m, d, &t_grid, &settings))
                .collect::<Result<Vec<_>, Error>>()?;
            let (asym, _, fit) = symmetry_report(m, &t_grid, &settings)?;
            let (lip_report, bound) = lipschitz_report(m, &t_grid, config.halfwidth, &settings)?;
            let worst = reports
                .iter()
                .max_by(|a, b| a.max_abs_residual.total_cmp(&b.max_abs_residual))
                .expect("four reports");
            let summary = summary_of(worst, path);
            let text = if json {
                to_json(&FullReportFile {
                    command,
                    measure,
                    median_gap: (&reports[0]).into(),
                    sign_kernel: (&reports[1]).into(),
                    deriva: (&reports[2]).into(),
                    mean_median: (&reports[3]).into(),
                    asymmetry: (&asym).into(),
                    quadratic_fit: fit.as_ref().map(FitJson::from),
                    lipschitz: (&bound).into(),
                })
            } else {
                let mut out = String::from("diagnostic,t,residual,error_estimate\n");
                for r in reports.iter().chain([&asym, &lip_report]) {
                    for i in 0..r.len() {
                        let _ = writeln!(
                            out,
                            "{},{},{},{}",
                            r.name,
                            fmt_num(r.t_grid[i]),
                            fmt_num(r.residuals[i]),
                            fmt_num(r.error_estimates[i])
                        );
                    }
                }
                out
            };
            Ok((text, summary))
        }
    }
}

/// Builds the measure, runs the command and writes the report file.
pub fn run(config: &ExperimentConfig) -> Result<RunSummary, CliError> {
    config.validate()?;
    let measure = BaseMeasure::build_with(&config.measure, &config.settings().quadrature)
        .map_err(CliError::MeasureBuild)?;
    let (text, summary) = render(config, &measure)?;
    std::fs::write(&config.output_path, text).map_err(|e| CliError::Io {
        path: config.output_path.clone(),
        reason: e.to_string(),
    })?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(command: Command) -> PartialConfig {
        PartialConfig {
            measure: Some(MeasureSpec::standard_normal()),
            command: Some(command),
            output_path: Some("out.csv".into()),
            ..Default::default()
        }
    }

    #[test]
    fn defaults_fill_in() {
        let c = base(Command::MedianGap).finalize().unwrap();
        assert_eq!(c.t_range, DEFAULT_T_RANGE);
        assert_eq!(c.t_points, 49);
        assert_eq!(c.output_format, OutputFormat::Csv);
        assert_eq!(c.t_grid().len(), 49);
    }

    #[test]
    fn flags_override_file() {
        let file = PartialConfig::from_json(
            r#"{"measure": "perturbed_cosine(0.5)", "command": "deriva", "t_points": 5,
                "output_path": "a.json", "output_format": "json"}"#,
        )
        .unwrap();
        let flags = PartialConfig {
            t_points: Some(7),
            measure: Some(MeasureSpec::perturbed_quadratic(1.0)),
            ..Default::default()
        };
        let c = file.merge(flags).finalize().unwrap();
        assert_eq!(c.t_points, 7);
        assert_eq!(c.measure, MeasureSpec::perturbed_quadratic(1.0));
        assert_eq!(c.command, Command::Deriva);
        assert_eq!(c.output_format, OutputFormat::Json);
    }

    #[test]
    fn invalid_configs() {
        assert!(PartialConfig::from_json("{").is_err());
        assert!(PartialConfig::from_json(r#"{"bogus": 1}"#).is_err());
        assert!(PartialConfig::from_json(r#"{"command": "nope"}"#).is_err());
        assert!(PartialConfig::from_json(r#"{"measure": "gaussian(1)"}"#).is_err());
        let mut p = base(Command::MedianGap);
        p.t_range = Some([1.0, -1.0]);
        assert_eq!(p.finalize().unwrap_err().exit_code(), EXIT_CONFIG);
        let mut p = base(Command::MedianGap);
        p.t_points = Some(0);
        assert!(p.finalize().is_err());
        let mut p = base(Command::MedianGap);
        p.t_range = Some([-10.0, 10.0]);
        assert!(p.finalize().is_err());
        let mut p = base(Command::MedianGap);
        p.measure = None;
        assert!(p.finalize().is_err());
        let mut p = base(Command::MedianGap);
        p.t_range = Some([0.0, 0.0]);
        p.t_points = Some(1);
        assert!(p.finalize().is_ok());
    }

    #[test]
    fn number_format_round_trips() {
        for v in [0.0, -0.0, 1.0, 0.1, -2.5e-300, std::f64::consts::PI, 1e300] {
            let s = fmt_num(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
        assert_eq!(fmt_num(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn summary_line_format() {
        let s = RunSummary {
            max_abs_residual: 0.5,
            at: Some(-1.0),
            output_path: "x".into(),
        };
        assert_eq!(
            s.to_string(),
            "max|residual| = 5.0000000000000000e-1 at t = -1.0000000000000000e0"
        );
    }
}
