use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nctorus::exact::ExactCoeff;
use nctorus::expr::{parse_laurent, parse_word, Letter};
use nctorus::param::ParamFile;
use nctorus::render;
use nctorus::suites::{self, fm_demo, Grid, Options, Scope, Summary};
use nctorus::CliError;
use nctorus_core::laurent::{star_mul, LaurentPoly};
use nctorus_core::lattice::{analyze, Splitting};
use nctorus_core::qweyl::{mul_monomial, QMonomial, Side};
use serde::Serialize;
use serde_json::json;

/// Noncommutative complex tori at roots of unity: algebra evaluation and
/// verification of the finite deformed Fourier-Mukai model.
#[derive(Parser)]
#[command(name = "nctorus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice data of a parameter file.
    Param {
        #[command(subcommand)]
        op: ParamOp,
    },
    /// Star product of two Laurent polynomials.
    Star {
        #[command(subcommand)]
        op: StarOp,
    },
    /// Product of two q-Weyl words.
    Qweyl {
        #[command(subcommand)]
        op: QweylOp,
    },
    /// Finite Fourier-Mukai model of a parameter.
    Fm {
        #[command(subcommand)]
        op: FmOp,
    },
    /// Run the property suites.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum ParamOp {
    Analyze {
        #[arg(long)]
        param: PathBuf,
    },
}

#[derive(Subcommand)]
enum StarOp {
    Mul {
        #[arg(long)]
        param: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Nc,
    Gerby,
}

#[derive(Subcommand)]
enum QweylOp {
    Mul {
        #[arg(long)]
        param: PathBuf,
        #[arg(long, value_enum, default_value = "nc")]
        side: SideArg,
        #[arg(long)]
        json: bool,
        left: String,
        right: String,
    },
}

#[derive(Subcommand)]
enum FmOp {
    Demo {
        #[arg(long)]
        param: PathBuf,
        /// Invariant factors of the character group B, e.g. "4" or "2,4".
        #[arg(long = "B")]
        b: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_grid, default_value = "full")]
        grid: Grid,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mutation {
    /// Corrupt one entry of a sampled group cocycle.
    Phi,
}

#[derive(Args)]
struct VerifyArgs {
    /// `all` or a module name.
    scope_arg: Option<String>,
    #[arg(long)]
    scope: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = parse_grid, default_value = "full")]
    grid: Grid,
    #[arg(long)]
    json: bool,
    #[arg(long, value_enum)]
    mutate: Option<Mutation>,
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.parse()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn param_analyze(path: &Path) -> Result<String, CliError> {
    let p = ParamFile::load(path)?;
    let lambda = p.cocycle()?;
    let a = analyze(&lambda, Splitting::UnitDiagonal)?;
    Ok(to_json(&json!({
        "g": p.g,
        "N": p.n,
        "H_hat_basis": a.h_hat.columns(),
        "K_hat_invariant_factors": a.k_hat.group().factors(),
        "sharp_bijective": a.dual.is_ok(),
    })))
}

fn star(path: &Path, left: &str, right: &str, json: bool) -> Result<String, CliError> {
    let p = ParamFile::load(path)?;
    let lambda = p.cocycle()?;
    let poly = |s: &str| -> Result<LaurentPoly<ExactCoeff>, CliError> {
        Ok(LaurentPoly::from_terms(p.g, parse_laurent(s, p.g)?)?)
    };
    let out = render::laurent(&star_mul(&poly(left)?, &poly(right)?, &lambda)?);
    Ok(if json { to_json(&json!({ "product": out })) } else { out })
}

fn word_monomial(letters: &[Letter], g: usize) -> Vec<QMonomial> {
    letters
        .iter()
        .map(|&(gamma, i, e)| {
            let mut m = QMonomial::one(g);
            if gamma {
                m.b[i] = e;
            } else {
                m.a[i] = e;
            }
            m
        })
        .collect()
}

fn qweyl(path: &Path, side: SideArg, left: &str, right: &str, json: bool) -> Result<String, CliError> {
    let p = ParamFile::load(path)?;
    let (lambda, q) = (p.cocycle()?, p.period_matrix()?);
    let side = match side {
        SideArg::Nc => Side::Nc,
        SideArg::Gerby => Side::Gerby,
    };
    let mut letters = parse_word(left, p.g, side)?;
    letters.extend(parse_word(right, p.g, side)?);
    let mut acc = QMonomial::one(p.g);
    for m in word_monomial(&letters, p.g) {
        acc = mul_monomial(&acc, &m, &lambda, &q, side)?;
    }
    let out = render::qmonomial(&acc, side);
    Ok(if json {
        to_json(&json!({
            "product": out,
            "t": acc.a,
            "g": acc.b,
            "phase": acc.phase.to_string(),
            "scalar": [acc.scalar.re, acc.scalar.im],
        }))
    } else {
        out
    })
}

fn parse_factors(s: &str) -> Result<Vec<u64>, CliError> {
    let s = s.trim();
    if s.is_empty() || s == "1" {
        return Ok(Vec::new());
    }
    s.split([',', 'x', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|e| CliError::Usage(format!("invalid factor '{t}' in --B: {e}"))))
        .collect()
}

fn text_summary(summary: &Summary) -> String {
    let mut out = format!("seed {} grid {:?}\n", summary.seed, summary.grid).to_lowercase();
    for s in &summary.scopes {
        for p in &s.properties {
            let status = if p.holds { "ok" } else { "FAIL" };
            out.push_str(&format!(
                "{status:4} {}/{}: {} checks, max deviation {:e}\n",
                s.scope, p.name, p.checks, p.max_deviation
            ));
            if let Some(w) = &p.witness {
                out.push_str(&format!("     witness: {w}\n"));
            }
        }
    }
    out.push_str(if summary.holds { "all properties hold" } else { "property failure" });
    out
}

fn verify(args: &VerifyArgs) -> Result<(String, bool), CliError> {
    let name = match (&args.scope_arg, &args.scope) {
        (Some(a), Some(b)) if a != b => {
            return Err(CliError::Usage(format!("conflicting scopes '{a}' and '{b}'")));
        }
        (Some(a), _) => a.as_str(),
        (None, Some(b)) => b.as_str(),
        (None, None) => "all",
    };
    let scopes = Scope::parse_list(name).map_err(CliError::Usage)?;
    let opts = Options {
        seed: args.seed,
        grid: args.grid,
        mutate_phi: args.mutate.is_some(),
    };
    let summary = suites::run(&scopes, &opts);
    if let Some((scope, prop)) = summary.first_failure() {
        eprintln!(
            "first failure: {}/{}: {}",
            scope.scope,
            prop.name,
            prop.witness.as_deref().unwrap_or("no witness")
        );
    }
    let out = if args.json { to_json(&summary) } else { text_summary(&summary) };
    Ok((out, summary.holds))
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    match cli.command {
        Command::Param { op: ParamOp::Analyze { param } } => Ok((param_analyze(&param)?, true)),
        Command::Star { op: StarOp::Mul { param, json, left, right } } => Ok((star(&param, &left, &right, json)?, true)),
        Command::Qweyl { op: QweylOp::Mul { param, side, json, left, right } } => {
            Ok((qweyl(&param, side, &left, &right, json)?, true))
        }
        Command::Fm { op: FmOp::Demo { param, b, seed, grid } } => {
            let p = ParamFile::load(&param)?;
            let report = fm_demo(&p.cocycle()?, &parse_factors(&b)?, seed, grid)?;
            Ok((to_json(&report), report.holds))
        }
        Command::Verify(args) => verify(&args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, holds)) => {
            println!("{out}");
            if holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
