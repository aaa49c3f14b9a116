use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use deduce::distortion::{estimate, ArgKind, DistortionSpec, Mode, Prefix};
use deduce::normal_form::{HamiltonianSpec, Quantity};
use deduce::numeric::{parse_rat, BigRat};
use deduce::pade::{DegreeWindow, GrowthPolicy};
use deduce::pipeline::{
    evaluate_parallel, load_dataset, parameter_points, run, ClosedForm, Evaluator, NormalFormEvaluator,
    PipelineConfig, PipelineError, RestoreMode, Transform, XMode,
};

/// Deduce closed-form expressions from exact evaluations.
#[derive(Parser)]
#[command(name = "deduce", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Restore an expression from a dataset file.
    Restore(RestoreArgs),
    /// Evaluate at exact parameter values and write a dataset file.
    Generate(GenerateArgs),
    /// Estimate how often sqrt/cbrt prefix forms simplify.
    CheckDistortion(DistortionArgs),
}

#[derive(Args)]
struct RestoreArgs {
    #[arg(long)]
    input: PathBuf,
    /// Fixed degree window `k,l,m,n`.
    #[arg(long, conflicts_with = "adaptive")]
    window: Option<String>,
    /// Grow the window until the result stabilizes.
    #[arg(long)]
    adaptive: bool,
    /// With --adaptive: only monomial denominators `s^n`.
    #[arg(long, requires = "adaptive")]
    monomial_denominator: bool,
    /// With --adaptive: largest degree tried.
    #[arg(long, default_value_t = 32)]
    cap: usize,
    /// Points reserved for verification (default: a third).
    #[arg(long)]
    holdout: Option<usize>,
    /// Square x(i) and the numeric coefficients (the default).
    #[arg(long, overrides_with_all = ["no_square", "square_values"])]
    square: bool,
    /// Use x(i) and the coefficients as they are.
    #[arg(long, overrides_with_all = ["square", "square_values"])]
    no_square: bool,
    /// Square the coefficients only.
    #[arg(long, overrides_with_all = ["square", "no_square"])]
    square_values: bool,
    /// Name of the restoration variable.
    #[arg(long)]
    var: Option<String>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalKind {
    ClosedForm,
    NormalForm,
}

#[derive(Clone, Copy, ValueEnum)]
enum XArg {
    Sqrt,
    Value,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    eval: EvalKind,
    /// Closed-form expression in the parameter variable.
    #[arg(long)]
    expr: Option<String>,
    /// Hamiltonian file.
    #[arg(long)]
    hamiltonian: Option<PathBuf>,
    /// Normal-form coefficient, e.g. `A:1,-5:cos` or `c:2,0`.
    #[arg(long)]
    quantity: Option<String>,
    /// Comma-separated exact parameter values.
    #[arg(long, conflicts_with = "range")]
    points: Option<String>,
    /// `lo,hi`: pick --count small rationals inside the interval.
    #[arg(long)]
    range: Option<String>,
    #[arg(long, default_value_t = 23)]
    count: usize,
    /// Parameter name in --expr.
    #[arg(long, default_value = "s")]
    var: String,
    /// How x(i) is written: sqrt of the parameter, or the parameter itself.
    #[arg(long, value_enum)]
    x: Option<XArg>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrefixArg {
    Sqrt,
    Cbrt,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Integer,
    Rational,
}

#[derive(Args)]
struct DistortionArgs {
    #[arg(long, value_enum)]
    prefix: PrefixArg,
    #[arg(long, value_enum, default_value = "integer")]
    kind: KindArg,
    #[arg(long)]
    bound: u64,
    /// Sample this many arguments instead of enumerating.
    #[arg(long)]
    sample: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn config_err(msg: impl Into<String>) -> PipelineError {
    PipelineError::Config(msg.into())
}

fn parse_window(text: &str) -> Result<DegreeWindow, PipelineError> {
    let v: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| config_err(format!("bad window `{text}`")))?;
    let [k, l, m, n] = v[..] else {
        return Err(config_err(format!("window `{text}` needs four entries")));
    };
    DegreeWindow::new(k, l, m, n).map_err(|e| config_err(e.to_string()))
}

fn parse_list(text: &str) -> Result<Vec<BigRat>, PipelineError> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_rat(t.trim()).map_err(|e| config_err(format!("bad value `{t}`: {e}"))))
        .collect()
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), PipelineError> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| PipelineError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn restore(a: RestoreArgs) -> Result<(), PipelineError> {
    let data = load_dataset(&a.input)?;
    let transform = if a.no_square {
        Transform::None
    } else if a.square_values {
        Transform::SquareValues
    } else {
        Transform::Square
    };
    let mode = match (&a.window, a.adaptive) {
        (Some(w), false) => RestoreMode::Fixed(parse_window(w)?),
        (None, true) => RestoreMode::Adaptive(GrowthPolicy {
            monomial_denominator: a.monomial_denominator,
            cap: a.cap,
        }),
        _ => return Err(config_err("give either --window or --adaptive")),
    };
    let mut config = PipelineConfig::new(transform, mode);
    config.holdout = a.holdout;
    config.variable = a.var;
    let report = run(&data, &config)?;
    emit(&report.summary(), a.output.as_ref())
}

fn generate(a: GenerateArgs) -> Result<(), PipelineError> {
    let x = a.x.map(|x| match x {
        XArg::Sqrt => XMode::Sqrt,
        XArg::Value => XMode::Value,
    });
    let evaluator: Box<dyn Evaluator> = match a.eval {
        EvalKind::ClosedForm => {
            let expr = a.expr.as_deref().ok_or_else(|| config_err("--expr is required"))?;
            Box::new(ClosedForm::parse(expr, &a.var, x.unwrap_or(XMode::Sqrt))?)
        }
        EvalKind::NormalForm => {
            let path = a.hamiltonian.as_ref().ok_or_else(|| config_err("--hamiltonian is required"))?;
            let text =
                std::fs::read_to_string(path).map_err(|e| PipelineError::Io(format!("{}: {e}", path.display())))?;
            let spec = HamiltonianSpec::parse(&text)?;
            let q: Quantity = a.quantity.as_deref().ok_or_else(|| config_err("--quantity is required"))?.parse()?;
            Box::new(NormalFormEvaluator::new(spec, q, x.unwrap_or(XMode::Value))?)
        }
    };
    let params = match (&a.points, &a.range) {
        (Some(p), None) => parse_list(p)?,
        (None, Some(r)) => {
            let ends = parse_list(r)?;
            let [lo, hi] = &ends[..] else {
                return Err(config_err("--range needs `lo,hi`"));
            };
            parameter_points(lo, hi, a.count, false)?
        }
        _ => return Err(config_err("give either --points or --range")),
    };
    let (data, times) = evaluate_parallel(&params, evaluator.as_ref(), a.workers)?;
    if let (Some(lo), Some(hi)) = (times.iter().min(), times.iter().max()) {
        eprintln!(
            "{} points, per-point time {:.3}..{:.3} s",
            times.len(),
            lo.as_secs_f64(),
            hi.as_secs_f64()
        );
    }
    emit(&data.to_text(), a.output.as_ref())
}

fn check_distortion(a: DistortionArgs) -> Result<(), PipelineError> {
    let spec = DistortionSpec {
        prefix: match a.prefix {
            PrefixArg::Sqrt => Prefix::Sqrt,
            PrefixArg::Cbrt => Prefix::Cbrt,
        },
        kind: match a.kind {
            KindArg::Integer => ArgKind::Integer,
            KindArg::Rational => ArgKind::Rational,
        },
        bound: a.bound,
        mode: match a.sample {
            Some(size) => Mode::Sample { size, seed: a.seed },
            None => Mode::Exhaustive,
        },
    };
    let e = estimate(&spec).map_err(|e| config_err(e.to_string()))?;
    let model = match spec.kind {
        ArgKind::Integer => format!("integers 1..={}", spec.bound),
        ArgKind::Rational => format!("coprime p/q with 1 <= p, q <= {}", spec.bound),
    };
    let how = if e.exact { "exhaustive" } else { "sampled" };
    println!("arguments: {model} ({how})");
    println!("distorted: {} of {}", e.distorted, e.total);
    if e.exact {
        println!("probability: {} = {:.6}", e.fraction(), e.value());
    } else {
        println!("probability: {:.6}", e.value());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(4);
        }
    };
    let result = match cli.command {
        Command::Restore(a) => restore(a),
        Command::Generate(a) => generate(a),
        Command::CheckDistortion(a) => check_distortion(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
