//! `wittx`: exact windowed computations for the Witt algebra and its
//! intermediate-series semi-direct sums.
//!
//! Exit codes: `0` success, `1` verification or table mismatch, `2` usage or
//! configuration error.

mod expected;
mod grid;
mod solve;
mod tables;
mod verify;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use grid::GridSelection;
use wittx::rat::{parse_lambda, parse_rational};
use wittx::Algebra;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Markdown,
    Json,
    Csv,
}

impl Format {
    fn parse(text: &str) -> Result<Self, String> {
        match text {
            "md" => Ok(Format::Markdown),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?}; expected md|json|csv")),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "wittx",
    version,
    about = "Exact cohomology, derivations, and automorphisms \
of the Witt algebra's intermediate-series semi-direct sums"
)]
struct Cli {
    /// Flat key=value configuration file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default, Clone)]
struct CommonArgs {
    /// Algebra family: witt|wab|wa|wb (default: the whole grid)
    #[arg(long)]
    algebra: Option<String>,
    /// Lambda value or comma-separated list (rationals or `inf`)
    #[arg(long)]
    lambda: Option<String>,
    /// Tensor-density parameter a (requires --b)
    #[arg(long)]
    a: Option<String>,
    /// Tensor-density parameter b (requires --a)
    #[arg(long)]
    b: Option<String>,
    /// Index window half-width N (default 8)
    #[arg(long)]
    window: Option<i64>,
    /// Output format: md|json|csv (default md)
    #[arg(long)]
    format: Option<String>,
    /// Seed for the randomized group-law checks (default 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Run a single verification suite by name
    #[arg(long)]
    suite: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the cohomology dimension table and compare to expected values
    Tables(CommonArgs),
    /// Run the verification suites over the algebra grid
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Corrupt one structure constant to exercise the failure path
        #[arg(long, hide = true)]
        inject_jacobi_fault: bool,
    },
    /// Solve one windowed problem: h2|hl2|inv|h1|abelian|mixing
    Solve {
        what: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

/// Flat `key = value` configuration: same keys as the long flags.
fn read_config(path: &PathBuf) -> Result<BTreeMap<String, String>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{path:?}:{}: expected key = value", lineno + 1))?;
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

fn merge_config(args: &mut CommonArgs, config: &BTreeMap<String, String>) -> Result<(), String> {
    let pick = |flag: &mut Option<String>, key: &str| {
        if flag.is_none() {
            if let Some(v) = config.get(key) {
                *flag = Some(v.clone());
            }
        }
    };
    pick(&mut args.algebra, "algebra");
    pick(&mut args.lambda, "lambda");
    pick(&mut args.a, "a");
    pick(&mut args.b, "b");
    pick(&mut args.format, "format");
    pick(&mut args.suite, "suite");
    if args.window.is_none() {
        if let Some(v) = config.get("window") {
            args.window = Some(v.parse().map_err(|_| format!("bad window value {v:?}"))?);
        }
    }
    if args.seed.is_none() {
        if let Some(v) = config.get("seed") {
            args.seed = Some(v.parse().map_err(|_| format!("bad seed value {v:?}"))?);
        }
    }
    Ok(())
}

fn selection_of(args: &CommonArgs) -> Result<GridSelection, String> {
    GridSelection::resolve(
        args.algebra.as_deref(),
        args.lambda.as_deref(),
        args.a.as_deref(),
        args.b.as_deref(),
    )
}

/// A solve needs exactly one algebra instance.
fn single_algebra(args: &CommonArgs) -> Result<Algebra, String> {
    let family = args.algebra.as_deref().ok_or("solve needs --algebra")?;
    match family {
        "witt" => Ok(Algebra::witt()),
        "wab" => {
            let a = args.a.as_deref().ok_or("wab needs --a and --b")?;
            let b = args.b.as_deref().ok_or("wab needs --a and --b")?;
            Ok(Algebra::tensor_density(
                parse_rational(a).map_err(|e| e.to_string())?,
                parse_rational(b).map_err(|e| e.to_string())?,
            ))
        }
        "wa" | "wb" => {
            let lambda = args.lambda.as_deref().ok_or("wa/wb need --lambda")?;
            if lambda.contains(',') {
                return Err("solve needs a single lambda, not a grid".into());
            }
            let l = parse_lambda(lambda).map_err(|e| e.to_string())?;
            Ok(if family == "wa" {
                Algebra::series_a(l)
            } else {
                Algebra::series_b(l)
            })
        }
        other => Err(format!(
            "unknown algebra {other:?}; expected witt|wab|wa|wb"
        )),
    }
}

fn window_of(args: &CommonArgs) -> Result<i64, String> {
    let n = args.window.unwrap_or(8);
    if n < 1 {
        return Err(format!("window must be positive, got {n}"));
    }
    Ok(n)
}

fn run(cli: Cli) -> Result<bool, String> {
    let config = match &cli.config {
        Some(path) => read_config(path)?,
        None => BTreeMap::new(),
    };
    match cli.command {
        Command::Tables(mut args) => {
            merge_config(&mut args, &config)?;
            let format = args.format.as_deref().map(Format::parse).transpose()?;
            tables::run(
                &selection_of(&args)?,
                window_of(&args)?,
                format.unwrap_or(Format::Markdown),
            )
        }
        Command::Verify {
            mut common,
            inject_jacobi_fault,
        } => {
            merge_config(&mut common, &config)?;
            let report = verify::run(
                &selection_of(&common)?,
                window_of(&common)?,
                common.seed.unwrap_or(0),
                common.suite.as_deref(),
                inject_jacobi_fault,
            )?;
            for warning in &report.warnings {
                eprintln!("warning: {warning}");
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
            Ok(report.pass)
        }
        Command::Solve { what, mut common } => {
            merge_config(&mut common, &config)?;
            solve::run(&what, &single_algebra(&common)?, window_of(&common)?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
