//! Command line front end: classification queries, identity verification
//! suites, and spectrum/degeneracy reports, all emitted as JSON on stdout.
//!
//! Exit codes: 0 success, 2 usage error, 3 negative classifier verdict,
//! 4 dimension cap exceeded, 5 identity or computation failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use susychain::chain::ChainModel;
use susychain::classifier::{
    classify, AlgebraSignature, ClassifierVerdict, Deformation, Direction, InsertionQuery,
    ModelSpec,
};
use susychain::error::Error;
use susychain::scalar::Scalar;
use susychain::spectrum::{degeneracy_match, sector_name, spectrum_report};
use susychain::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(
    name = "susychain",
    version,
    about = "Graded spin chains with length-changing supersymmetry: \
             classification, identity verification, and spectra"
)]
struct Cli {
    /// JSON file whose keys mirror the long option names; explicit options win
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a weight and deformation admit a length-changing charge
    Classify(ClassifyArgs),
    /// Run a named identity suite against a chain model
    Verify(VerifyArgs),
    /// Eigenvalues of the chain Hamiltonian in the supersymmetric sector
    Spectrum(SpectrumArgs),
    /// Match sector spectra across lengths L and L+1
    Degeneracy(DegeneracyArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Parity of each weight component, comma-separated, e.g. 0,0,1
    #[arg(long)]
    signature: Option<String>,
    /// Dynkin labels, one rational number per node, e.g. 1,0
    #[arg(long)]
    dynkin: Option<String>,
    /// Nesting level of the inserted Bethe root, 1-based
    #[arg(long)]
    level: Option<usize>,
    /// "down" shortens the chain, "up" lengthens it
    #[arg(long)]
    direction: Option<String>,
    /// Undeformed chain: every constraint must vanish exactly
    #[arg(long)]
    rational: bool,
    /// Unspecified deformation: report the root-of-unity condition
    #[arg(long = "q-generic")]
    q_generic: bool,
    /// Fixed deformation q = exp(2 pi i / zeta) for this rational zeta
    #[arg(long)]
    zeta: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Chain model: sl21, sln1:N, or heisenberg
    #[arg(long)]
    model: Option<String>,
    /// Deformation parameter for sl21, e.g. 0.5+0.1i; switches to float mode
    #[arg(long)]
    q: Option<String>,
    /// Largest chain length the suite walks
    #[arg(long = "Lmax")]
    l_max: Option<usize>,
    /// nilpotency, invariance, three-form, gl11, ham-equality, ybe,
    /// regularity, local, or all
    #[arg(long)]
    suite: Option<String>,
    /// Spectral unit of the R-matrix checks, a nonzero rational
    #[arg(long)]
    p: Option<String>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Chain model: sl21, sln1:N, or heisenberg
    #[arg(long)]
    model: Option<String>,
    /// Chain length
    #[arg(long = "L")]
    l: Option<usize>,
    /// Optional sector name; must match the model's supersymmetric sector
    #[arg(long)]
    sector: Option<String>,
}

#[derive(Args)]
struct DegeneracyArgs {
    /// Chain model: sl21, sln1:N, or heisenberg
    #[arg(long)]
    model: Option<String>,
    /// Shorter of the two lengths compared (L against L+1)
    #[arg(long = "L")]
    l: Option<usize>,
    /// Optional sector name; must match the model's supersymmetric sector
    #[arg(long)]
    sector: Option<String>,
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        let code = match &err {
            Error::InvalidModel(_) => 2,
            Error::NoSolution(_) => 3,
            Error::DimensionCap { .. } => 4,
            _ => 5,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

/// Key/value options loaded from `--config`; lookups feed option defaults,
/// so explicitly passed flags always win.
struct Config(serde_json::Map<String, serde_json::Value>);

impl Config {
    fn load(path: Option<&PathBuf>) -> CliResult<Config> {
        let Some(path) = path else {
            return Ok(Config(serde_json::Map::new()));
        };
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| usage(format!("config {} is not valid JSON: {e}", path.display())))?;
        match value {
            serde_json::Value::Object(map) => Ok(Config(map)),
            _ => Err(usage(format!(
                "config {} must hold a JSON object",
                path.display()
            ))),
        }
    }

    fn string(&self, key: &str) -> Option<String> {
        self.0.get(key).map(|v| match v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        })
    }

    fn usize(&self, key: &str) -> Option<usize> {
        self.0
            .get(key)
            .and_then(|v| v.as_u64())
            .map(|n| n as usize)
    }

    fn flag(&self, key: &str) -> bool {
        self.0.get(key).and_then(|v| v.as_bool()).unwrap_or(false)
    }
}

fn require<T>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn parse_rational(text: &str, what: &str) -> CliResult<BigRational> {
    BigRational::from_str(text.trim())
        .map_err(|_| usage(format!("cannot parse {what} {text:?} as a rational number")))
}

fn parse_rational_list(text: &str, what: &str) -> CliResult<Vec<BigRational>> {
    text.split(',')
        .map(|part| parse_rational(part, what))
        .collect()
}

/// Parses "a", "a+bi", "a-bi", "bi", or "i" into a complex number.
fn parse_complex(text: &str) -> CliResult<Complex64> {
    let bad = || usage(format!("cannot parse {text:?} as a complex number"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| {
        matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E')
    });
    let (re_text, im_text) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re: f64 = if re_text.is_empty() {
        0.0
    } else {
        re_text.parse().map_err(|_| bad())?
    };
    let im: f64 = match im_text {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

fn load_model(name: &str, q_text: Option<&str>) -> CliResult<ChainModel> {
    let q = q_text
        .map(|t| parse_complex(t).map(Scalar::from_complex))
        .transpose()?;
    Ok(ChainModel::by_name(name, q.as_ref())?)
}

fn check_sector(model: &ChainModel, requested: Option<&str>) -> CliResult<()> {
    let own = sector_name(model.omega);
    match requested {
        None => Ok(()),
        Some(s) if s == own => Ok(()),
        Some(s) => Err(usage(format!(
            "model {} pairs states in its {own} sector, not {s:?}",
            model.name
        ))),
    }
}

fn print_json<T: Serialize>(report: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("report serializes")
    );
}

/// Envelope around the classifier verdict carrying the full model spec.
#[derive(Serialize)]
struct ClassifyReport {
    version: String,
    signature: String,
    dynkin: Vec<String>,
    weights: Vec<String>,
    deformation: String,
    level: usize,
    direction: String,
    admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<ClassifierVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn cmd_classify(args: ClassifyArgs, config: &Config) -> CliResult<ExitCode> {
    let signature_text = require(args.signature.or(config.string("signature")), "signature")?;
    let dynkin_text = require(args.dynkin.or(config.string("dynkin")), "dynkin")?;
    let level = require(args.level.or(config.usize("level")), "level")?;
    let direction_text = require(args.direction.or(config.string("direction")), "direction")?;

    let cli_chose = args.rational || args.q_generic || args.zeta.is_some();
    let (rational, q_generic, zeta_text) = if cli_chose {
        (args.rational, args.q_generic, args.zeta)
    } else {
        (
            config.flag("rational"),
            config.flag("q-generic"),
            config.string("zeta"),
        )
    };
    let chosen = usize::from(rational) + usize::from(q_generic) + usize::from(zeta_text.is_some());
    if chosen != 1 {
        return Err(usage(
            "choose exactly one of --rational, --q-generic, --zeta",
        ));
    }
    let deformation = if rational {
        Deformation::Rational
    } else if q_generic {
        Deformation::GenericQ
    } else {
        let zeta = parse_rational(zeta_text.as_deref().unwrap(), "zeta")?;
        if zeta.is_zero() {
            return Err(usage("zeta must be nonzero"));
        }
        Deformation::Zeta(zeta)
    };
    let deformation_text = match &deformation {
        Deformation::Rational => "rational".to_string(),
        Deformation::GenericQ => "generic q".to_string(),
        Deformation::Zeta(z) => format!("zeta = {z}"),
    };

    let signature = AlgebraSignature::parse(&signature_text)?;
    let labels = parse_rational_list(&dynkin_text, "Dynkin label")?;
    if labels.len() != signature.rank() {
        return Err(usage(format!(
            "signature {signature_text} has {} Dynkin nodes but {} labels were given",
            signature.rank(),
            labels.len()
        )));
    }
    if level < 1 || level > signature.rank() {
        return Err(usage(format!(
            "level must lie in 1..={}",
            signature.rank()
        )));
    }
    let direction = Direction::parse(&direction_text)?;
    let spec = ModelSpec::from_dynkin(signature, &labels, deformation);
    let query = InsertionQuery { level, direction };

    let mut report = ClassifyReport {
        version: env!("CARGO_PKG_VERSION").into(),
        signature: signature_text,
        dynkin: labels.iter().map(|a| a.to_string()).collect(),
        weights: spec.weights().iter().map(|w| w.to_string()).collect(),
        deformation: deformation_text,
        level,
        direction: direction.as_str().into(),
        admissible: false,
        verdict: None,
        reason: None,
    };
    match classify(&spec, &query) {
        Ok(verdict) => {
            report.admissible = verdict.admissible;
            report.verdict = Some(verdict);
        }
        Err(Error::NoSolution(msg)) => report.reason = Some(msg),
        Err(e) => return Err(e.into()),
    }
    print_json(&report);
    Ok(if report.admissible {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn cmd_verify(args: VerifyArgs, config: &Config) -> CliResult<ExitCode> {
    let model_name = require(args.model.or(config.string("model")), "model")?;
    let q_text = args.q.or(config.string("q"));
    let l_max = args.l_max.or(config.usize("Lmax")).unwrap_or(3);
    let suite_text = args
        .suite
        .or(config.string("suite"))
        .unwrap_or_else(|| "all".into());
    let p_text = args.p.or(config.string("p")).unwrap_or_else(|| "1".into());

    if l_max < 1 {
        return Err(usage("Lmax must be at least 1"));
    }
    let suite = Suite::parse(&suite_text)?;
    let p = parse_rational(&p_text, "p")?;
    if p.is_zero() {
        return Err(usage("p must be nonzero"));
    }
    let model = load_model(&model_name, q_text.as_deref())?;
    let report = run_suite(&model, suite, l_max, &Scalar::from_rational(p))?;
    print_json(&report);
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(5)
    })
}

fn cmd_spectrum(args: SpectrumArgs, config: &Config) -> CliResult<ExitCode> {
    let model_name = require(args.model.or(config.string("model")), "model")?;
    let l = require(args.l.or(config.usize("L")), "L")?;
    if l < 2 {
        return Err(usage("L must be at least 2"));
    }
    let model = load_model(&model_name, None)?;
    check_sector(&model, args.sector.or(config.string("sector")).as_deref())?;
    let report = spectrum_report(&model, l)?;
    print_json(&report);
    Ok(ExitCode::SUCCESS)
}

fn cmd_degeneracy(args: DegeneracyArgs, config: &Config) -> CliResult<ExitCode> {
    let model_name = require(args.model.or(config.string("model")), "model")?;
    let l = require(args.l.or(config.usize("L")), "L")?;
    if l < 2 {
        return Err(usage("L must be at least 2"));
    }
    let model = load_model(&model_name, None)?;
    check_sector(&model, args.sector.or(config.string("sector")).as_deref())?;
    let report = degeneracy_match(&model, l)?;
    print_json(&report);
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let config = Config::load(cli.config.as_ref())?;
    match cli.command {
        Command::Classify(args) => cmd_classify(args, &config),
        Command::Verify(args) => cmd_verify(args, &config),
        Command::Spectrum(args) => cmd_spectrum(args, &config),
        Command::Degeneracy(args) => cmd_degeneracy(args, &config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
