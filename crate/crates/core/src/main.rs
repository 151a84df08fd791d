use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tiltmedian::cli::{run, CliError, Command, OutputFormat, PartialConfig};
use tiltmedian::MeasureSpec;

/// Medians of exponentially tilted distributions: residual scans,
/// convolution iteration and symmetry sweeps.
#[derive(Parser, Debug)]
#[command(name = "tiltmedian", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Median gap: median of P_t minus t.
    MedianGap(Common),
    /// Sign-kernel integral of g.
    SignKernel(Common),
    /// Convolution residual g - q * g.
    Deriva(Common),
    /// Median of P_t minus mean of P_t.
    MeanMedian(Common),
    /// Iterate g -> q * g on a grid and record the oscillation.
    ChoquetIterate {
        #[command(flatten)]
        common: Common,
        /// Number of convolution steps.
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Asymmetry of every tilt around its mean, plus a quadratic fit of ln L.
    SymmetrySweep(Common),
    /// Local Lipschitz constant of the distribution function on [-A, A].
    Lipschitz {
        #[command(flatten)]
        common: Common,
        /// Half-width A.
        #[arg(long)]
        halfwidth: Option<f64>,
    },
    /// All diagnostics in one document.
    FullReport(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Base measure, e.g. gaussian(0,1), perturbed_cosine(0.5),
    /// gaussian_mixture(0.5,-1,1,1,1) or tabulated(path).
    #[arg(long)]
    measure: Option<MeasureSpec>,
    #[arg(long, allow_hyphen_values = true)]
    t_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<f64>,
    #[arg(long)]
    t_points: Option<usize>,
    /// Report file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// JSON experiment file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn flags(
    command: Command,
    common: &Common,
    base_range: Option<[f64; 2]>,
) -> Result<PartialConfig, CliError> {
    let t_range = match (common.t_min, common.t_max) {
        (None, None) => None,
        (lo, hi) => {
            let [dlo, dhi] = base_range.unwrap_or(tiltmedian::cli::DEFAULT_T_RANGE);
            Some([lo.unwrap_or(dlo), hi.unwrap_or(dhi)])
        }
    };
    Ok(PartialConfig {
        measure: common.measure.clone(),
        command: Some(command),
        t_range,
        t_points: common.t_points,
        output_path: common.out.clone(),
        output_format: common.format,
        ..Default::default()
    })
}

fn execute(cli: Cli) -> Result<String, CliError> {
    let (command, common, steps, halfwidth) = match &cli.command {
        Sub::MedianGap(c) => (Command::MedianGap, c, None, None),
        Sub::SignKernel(c) => (Command::SignKernel, c, None, None),
        Sub::Deriva(c) => (Command::Deriva, c, None, None),
        Sub::MeanMedian(c) => (Command::MeanMedian, c, None, None),
        Sub::ChoquetIterate { common, steps } => (Command::ChoquetIterate, common, *steps, None),
        Sub::SymmetrySweep(c) => (Command::SymmetrySweep, c, None, None),
        Sub::Lipschitz { common, halfwidth } => (Command::Lipschitz, common, None, *halfwidth),
        Sub::FullReport(c) => (Command::FullReport, c, None, None),
    };
    let file = match &common.config {
        Some(path) => PartialConfig::from_file(path)?,
        None => PartialConfig::default(),
    };
    let mut over = flags(command, common, file.t_range)?;
    over.steps = steps;
    over.halfwidth = halfwidth;
    let config = file.merge(over).finalize()?;
    let summary = run(&config)?;
    Ok(summary.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(line) => {
            println!("{line}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
