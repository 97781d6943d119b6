//! Command-line front end: classify, evaluate, lift and run the self-checks.
//!
//! Exit codes: 0 success, 1 input or domain error, 2 configuration error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use valring::check::{self, GlSizes, RunConfig, SuiteReport};
use valring::classify::{classify_formula, find_witness};
use valring::coeff::Tower;
use valring::formula::{evaluate, parse, Formula};
use valring::realize::fresh_point;
use valring::series::{hensel_lift, nth_root};
use valring::{parse_kpoly, parse_residue, parse_series};

#[derive(Parser)]
#[command(name = "valring", version, about = "Definable sets over C((t)), decided exactly")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a one-variable formula as res-finite or res-cofinite.
    Classify { formula: String },
    /// Decide membership in p_trans by the classifier and by a fresh point.
    Member { formula: String },
    /// Evaluate a formula at an exact point; repeat --x for each variable.
    Eval {
        formula: String,
        #[arg(long = "x", required = true, allow_hyphen_values = true)]
        x: Vec<String>,
    },
    /// n-th root of a unit with prescribed residue.
    Root {
        series: String,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
        #[arg(long, default_value_t = 32)]
        prec: i64,
    },
    /// Lift an approximate simple root of a one-variable polynomial.
    Lift {
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 32)]
        prec: i64,
    },
    /// Run the seeded self-check suites.
    Check {
        #[command(flatten)]
        config: ConfigArgs,
        /// Run only the named suite; may be repeated.
        #[arg(long)]
        suite: Vec<String>,
    },
    /// Run the GL(n, O) suite at one dimension.
    Gl {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// A rational point satisfying a res-cofinite formula.
    Witness { formula: String },
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long, env = "VALRING_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 32)]
    prec: i64,
    #[arg(long, default_value_t = 200)]
    corpus_size: usize,
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    /// Coefficient valuation range, written `lo,hi`.
    #[arg(long, default_value = "-3,3", allow_hyphen_values = true)]
    val_range: String,
}

/// A failed command and the exit code it maps to.
enum Failure {
    Input(String),
    Config(String),
}

impl From<valring::Error> for Failure {
    fn from(e: valring::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<valring::ParseError> for Failure {
    fn from(e: valring::ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(Value, String, bool), Failure>;

impl ConfigArgs {
    fn to_config(&self) -> Result<RunConfig, Failure> {
        let bad = || Failure::Config(format!("val-range must be `lo,hi`, got {:?}", self.val_range));
        let (lo, hi) = self.val_range.split_once(',').ok_or_else(bad)?;
        let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
        let cfg = RunConfig {
            seed: self.seed,
            samples: self.samples,
            prec: self.prec,
            corpus_size: self.corpus_size,
            max_degree: self.max_degree,
            val_range: (parse(lo)?, parse(hi)?),
        };
        cfg.validate().map_err(|e| Failure::Config(e.to_string()))?;
        Ok(cfg)
    }
}

fn formula(text: &str) -> Result<Formula, Failure> {
    Ok(parse(text)?)
}

fn classify(text: &str) -> CmdResult {
    let c = classify_formula(&formula(text)?)?;
    let line = format!(
        "{} (witness {}), in p_trans: {}",
        c.kind.as_str(),
        c.witness,
        c.is_cofinite()
    );
    Ok((c.to_json(), line, true))
}

fn member(text: &str) -> CmdResult {
    let phi = formula(text)?;
    let by_class = classify_formula(&phi)?.is_cofinite();
    let tower = Tower::with_len(phi.max_tower_var());
    let (_, point) = fresh_point(&tower);
    let by_point = evaluate(&phi, &[point])?;
    let agree = by_point.to_bool() == Some(by_class);
    let v = json!({"classifier": by_class, "realization": by_point.to_string(), "agree": agree});
    let line = format!("classifier: {by_class}, realization: {by_point}, agree: {agree}");
    Ok((v, line, agree))
}

fn eval(text: &str, xs: &[String]) -> CmdResult {
    let point = xs
        .iter()
        .map(|x| parse_series(x))
        .collect::<Result<Vec<_>, _>>()?;
    let truth = evaluate(&formula(text)?, &point)?;
    Ok((json!({"value": truth.to_string()}), truth.to_string(), true))
}

fn series_out(s: valring::series::Series) -> CmdResult {
    let text = s.to_string();
    Ok((json!({"value": text}), text, true))
}

fn suites_out(cfg: &RunConfig, reports: Vec<SuiteReport>) -> CmdResult {
    let pass = reports.iter().all(|r| r.pass);
    let mut text = String::new();
    for r in &reports {
        let status = if r.pass { "PASS" } else { "FAIL" };
        text.push_str(&format!("{}: {status} ({} checks, {} failures)\n", r.suite, r.checked, r.failures));
        for d in &r.details {
            text.push_str(&format!("    {d}\n"));
        }
    }
    text.push_str(if pass { "all suites pass" } else { "some suites failed" });
    let v = json!({"config": cfg, "pass": pass, "suites": reports});
    Ok((v, text, pass))
}

fn run_check(config: &ConfigArgs, names: &[String]) -> CmdResult {
    let cfg = config.to_config()?;
    let reports = if names.is_empty() {
        check::run_all(&cfg)
    } else {
        let mut names = names.to_vec();
        names.sort();
        names.dedup();
        names
            .iter()
            .map(|n| check::run_suite(&cfg, n).ok_or_else(|| Failure::Config(format!("unknown suite {n:?}"))))
            .collect::<Result<_, _>>()?
    };
    suites_out(&cfg, reports)
}

fn run_gl(n: usize, config: &ConfigArgs) -> CmdResult {
    if !(1..=3).contains(&n) {
        return Err(Failure::Config(format!("unsupported dimension {n}: n must be 1, 2 or 3")));
    }
    let cfg = config.to_config()?;
    let sizes = GlSizes {
        translations: cfg.samples.min(GlSizes::default().translations),
        perturbations: cfg.samples.min(GlSizes::default().perturbations),
        ..GlSizes::default()
    };
    suites_out(&cfg, vec![check::gl(&cfg, n, sizes)])
}

fn run(command: &Command) -> CmdResult {
    match command {
        Command::Classify { formula } => classify(formula),
        Command::Member { formula } => member(formula),
        Command::Eval { formula, x } => eval(formula, x),
        Command::Root { series, n, rho, prec } => {
            series_out(nth_root(&parse_series(series)?, *n, &parse_residue(rho)?, *prec)?)
        }
        Command::Lift { poly, alpha, prec } => {
            series_out(hensel_lift(&parse_kpoly(poly)?, &parse_series(alpha)?, *prec)?)
        }
        Command::Check { config, suite } => run_check(config, suite),
        Command::Gl { n, config } => run_gl(*n, config),
        Command::Witness { formula: text } => series_out(find_witness(&formula(text)?)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((v, text, ok)) => {
            match cli.output {
                Output::Json => println!("{v}"),
                Output::Text => println!("{text}"),
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
    }
}
