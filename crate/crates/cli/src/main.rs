mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hermcode::cayley_spectrum::{default_basis, isomorphism_report, spectrum_of_cayley};
use hermcode::code_construct::{
    brute_force_weight_distribution, build_code, closed_form_weight_distribution, WeightDistribution,
};
use hermcode::enumerate::{EnumConfig, DEFAULT_ENUM_CAP};
use hermcode::exp_sums::{t_value_distribution, weights_from_spectrum};
use hermcode::hermitian_graph::{closed_form_spectrum, gaussian_binomial, spectrum_multiset};
use hermcode::{build_field, CodeParams, Error, FieldCtx};

#[derive(Parser)]
#[command(
    name = "hermcode",
    version,
    about = "Weight distributions of a family of cyclic codes and the Hermitian forms graph behind them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Largest number of items an exhaustive enumeration may visit.
    #[arg(long, env = "HERMCODE_ENUM_CAP", default_value_t = DEFAULT_ENUM_CAP)]
    cap: u64,
    /// Worker threads for enumerations (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl Common {
    fn enum_config(&self) -> EnumConfig {
        EnumConfig { cap: self.cap, workers: self.workers }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Weight distribution of C(p, m).
    Weights {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = WeightMethod::Closed)]
        method: WeightMethod,
        #[arg(long, value_enum, default_value_t = WeightFormat::Json)]
        format: WeightFormat,
        /// Also run every other method within the cap and require agreement.
        #[arg(long)]
        cross_check: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvalues and multiplicities of the Hermitian forms graph on GF(r^2)^d.
    Spectrum {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u64,
        #[arg(long, value_enum, default_value_t = SpectrumMethod::Closed)]
        method: SpectrumMethod,
        #[arg(long, value_enum, default_value_t = SpectrumFormat::Table)]
        format: SpectrumFormat,
        #[command(flatten)]
        common: Common,
    },
    /// Check that the Hermitian forms graph is isomorphic to the Cayley graph Cay(G, S).
    VerifyIso {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[command(flatten)]
        common: Common,
    },
    /// Gaussian binomial coefficient [j, i]_b.
    GaussBinom {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        i: u32,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Distribution of the exponential sum T over all coefficient tuples.
    TDist {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightMethod {
    Closed,
    Brute,
    Spectrum,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightFormat {
    Json,
    Csv,
    Enumerator,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumMethod {
    Closed,
    Direct,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumFormat {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

/// A failure with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn mismatch(message: String) -> Self {
        Self { code: 1, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CompositeP(_)
            | Error::EvenM(_)
            | Error::InvalidParams(_)
            | Error::TooLarge { .. }
            | Error::TooLargeToEnumerate { .. }
            | Error::InvalidBasis(_)
            | Error::NotInSubfield { .. }
            | Error::NotADivisor { .. } => 2,
            _ => 1,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self { code: 2, message: format!("cannot write output: {e}") }
    }
}

type Outcome = Result<String, Failure>;

fn field(p: u32, m: u32) -> Result<FieldCtx, Failure> {
    Ok(build_field(CodeParams::new(p, m)?)?)
}

fn weights_by(method: WeightMethod, params: &CodeParams, cfg: &EnumConfig) -> Result<WeightDistribution, Error> {
    match method {
        WeightMethod::Closed => closed_form_weight_distribution(params),
        WeightMethod::Brute => {
            let ctx = build_field(*params)?;
            let spec = build_code(&ctx)?;
            brute_force_weight_distribution(&spec, &ctx, cfg)
        }
        WeightMethod::Spectrum => {
            let ctx = build_field(*params)?;
            weights_from_spectrum(params, &spectrum_of_cayley(&ctx, cfg)?)
        }
    }
}

fn method_name(method: WeightMethod) -> &'static str {
    match method {
        WeightMethod::Closed => "closed",
        WeightMethod::Brute => "brute",
        WeightMethod::Spectrum => "spectrum",
    }
}

fn cmd_weights(
    p: u32,
    m: u32,
    method: WeightMethod,
    format: WeightFormat,
    cross_check: bool,
    cfg: &EnumConfig,
) -> Outcome {
    let params = CodeParams::new(p, m)?;
    let dist = weights_by(method, &params, cfg)?;
    if cross_check {
        for other in [WeightMethod::Closed, WeightMethod::Brute, WeightMethod::Spectrum] {
            if other == method {
                continue;
            }
            match weights_by(other, &params, cfg) {
                Ok(d) if d.lines == dist.lines => {
                    log::info!("{} agrees with {}", method_name(other), method_name(method))
                }
                Ok(d) => {
                    return Err(Failure::mismatch(format!(
                        "cross-check failed: {} gives {:?}, {} gives {:?}",
                        method_name(method),
                        dist.lines,
                        method_name(other),
                        d.lines
                    )))
                }
                Err(e @ (Error::TooLarge { .. } | Error::TooLargeToEnumerate { .. })) => {
                    log::warn!("skipping {} cross-check: {e}", method_name(other))
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(match format {
        WeightFormat::Json => render::weights_json(&params, &dist),
        WeightFormat::Csv => render::weights_csv(&dist),
        WeightFormat::Enumerator => render::weights_enumerator(&dist),
    })
}

fn cmd_spectrum(d: u32, r: u64, method: SpectrumMethod, format: SpectrumFormat, cfg: &EnumConfig) -> Outcome {
    let lines = closed_form_spectrum(d, r)?;
    let name = match method {
        SpectrumMethod::Closed => "closed",
        SpectrumMethod::Direct => {
            let p = u32::try_from(r).map_err(|_| Error::InvalidParams(format!("r = {r} too large")))?;
            let ctx = field(p, d)?;
            let direct = spectrum_of_cayley(&ctx, cfg)?;
            let closed = spectrum_multiset(&lines);
            if direct != closed {
                return Err(Failure::mismatch(format!(
                    "direct spectrum {direct:?} differs from closed form {closed:?}"
                )));
            }
            "direct"
        }
    };
    Ok(match format {
        SpectrumFormat::Json => render::spectrum_json(d, r, name, &lines),
        SpectrumFormat::Csv => render::spectrum_csv(&lines),
        SpectrumFormat::Table => render::spectrum_table(&lines),
    })
}

fn cmd_verify_iso(p: u32, m: u32, format: ReportFormat, cfg: &EnumConfig) -> Result<(String, bool), Failure> {
    let ctx = field(p, m)?;
    let basis = default_basis(&ctx)?;
    let report = isomorphism_report(&ctx, &basis, cfg)?;
    let text = match format {
        ReportFormat::Text => render::iso_text(ctx.params(), &report),
        ReportFormat::Json => render::iso_json(ctx.params(), &report),
    };
    if let Some(c) = report.first_failure() {
        log::error!("clause {} failed: {}", c.name, c.detail);
    }
    Ok((text, report.passed()))
}

fn cmd_t_dist(p: u32, m: u32, format: TableFormat, cfg: &EnumConfig) -> Outcome {
    let ctx = field(p, m)?;
    let values = t_value_distribution(&ctx, cfg)?;
    Ok(match format {
        TableFormat::Json => render::t_values_json(ctx.params(), &values),
        TableFormat::Csv => render::t_values_csv(&values),
    })
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.output {
        Some(path) => std::fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Weights { p, m, method, format, cross_check, common } => {
            let text = cmd_weights(p, m, method, format, cross_check, &common.enum_config())?;
            emit(&common, &text)
        }
        Command::Spectrum { d, r, method, format, common } => {
            let text = cmd_spectrum(d, r, method, format, &common.enum_config())?;
            emit(&common, &text)
        }
        Command::VerifyIso { p, m, format, common } => {
            let (text, passed) = cmd_verify_iso(p, m, format, &common.enum_config())?;
            emit(&common, &text)?;
            if passed {
                Ok(())
            } else {
                Err(Failure::mismatch("isomorphism verification failed".into()))
            }
        }
        Command::GaussBinom { j, i, b, common } => emit(&common, &gaussian_binomial(j, i, b)?.to_string()),
        Command::TDist { p, m, format, common } => {
            let text = cmd_t_dist(p, m, format, &common.enum_config())?;
            emit(&common, &text)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
