use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use nulam_core::harness::{selftest, SelftestConfig};
use nulam_core::nbe::norm;
use nulam_core::staged::{staged_norm, staged_trace, StagedError, DEFAULT_FUEL};
use nulam_core::surface::{pretty_nf, pretty_term, pretty_wh, read_term, Scope, SurfaceError};
use nulam_core::syntax::{nf_eq, Nf, Term, Ty, DEFAULT_BASES};

#[derive(Parser, Debug)]
#[command(name = "nulam", version, about = "Normalizer and equality checker for lambda terms with lists")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the type of an expression.
    Check(Input),
    /// Print the normal form of an expression.
    Norm(Input),
    /// Decide whether two expressions are equal.
    Eq(Input),
    /// Show each stage of the staged normalizer next to the NbE result.
    Trace(Input),
    /// Run the built-in test suites.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct Input {
    /// Expression (may be repeated).
    #[arg(short = 'e', long = "expr", value_name = "EXPR")]
    exprs: Vec<String>,
    /// Expressions, after any given with -e.
    #[arg(value_name = "EXPR")]
    positional: Vec<String>,
    /// Typing context, e.g. "f : '0 -> Unit, xs : ['0]".
    #[arg(short = 'c', long = "context", value_name = "CTX", default_value = "")]
    context: String,
    /// Fuel for the staged engine.
    #[arg(long, default_value_t = DEFAULT_FUEL)]
    fuel: u64,
    #[arg(long, value_enum, default_value_t = Engine::Nbe)]
    engine: Engine,
    /// Number of base types '0, '1, ...
    #[arg(long, default_value_t = DEFAULT_BASES)]
    bases: u32,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Size bound of the enumerated corpus.
    #[arg(long, default_value_t = SelftestConfig::default().size_bound)]
    size: usize,
    /// Number of random terms.
    #[arg(long, default_value_t = SelftestConfig::default().random_count)]
    random: usize,
    #[arg(long, default_value_t = DEFAULT_FUEL)]
    fuel: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Nbe,
    Staged,
    Both,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Surface(#[from] SurfaceError),
    #[error("expected {expected} expression(s), got {got}")]
    Arity { expected: usize, got: usize },
    #[error("the expressions have different types: {left} and {right}")]
    SideTypes { left: Ty, right: Ty },
    #[error("staged engine ran out of fuel ({fuel} steps)")]
    OutOfFuel { fuel: u64 },
    #[error("staged engine failed: {0}")]
    Staged(StagedError),
    #[error("engines disagree on {term}: nbe gives {nbe}, staged gives {staged}")]
    Disagree { term: String, nbe: String, staged: String },
    #[error("{0} suite(s) failed")]
    Selftest(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Surface(_) | CliError::Arity { .. } | CliError::SideTypes { .. } | CliError::OutOfFuel { .. } => {
                2
            }
            CliError::Staged(_) | CliError::Disagree { .. } | CliError::Selftest(_) => 3,
        }
    }
}

/// What a successful command reports.
enum Outcome {
    Done,
    Distinct,
}

struct Parsed {
    scope: Scope,
    terms: Vec<(Term, Ty)>,
}

impl Input {
    fn read(&self, expected: usize) -> Result<Parsed, CliError> {
        let sources: Vec<&String> = self.exprs.iter().chain(&self.positional).collect();
        if sources.len() != expected {
            return Err(CliError::Arity { expected, got: sources.len() });
        }
        let mut scope = None;
        let mut terms = Vec::new();
        for src in sources {
            let (s, t, ty) = read_term(self.bases, &self.context, src)?;
            scope = Some(s);
            terms.push((t, ty));
        }
        let scope = match scope {
            Some(s) => s,
            None => read_term(self.bases, &self.context, "()")?.0,
        };
        Ok(Parsed { scope, terms })
    }

    fn normalize(&self, scope: &Scope, t: &Term) -> Result<Nf, CliError> {
        let ctx = scope.ctx();
        let staged = || staged_norm(ctx, t, self.fuel).map_err(|e| staged_error(e, self.fuel));
        let nbe = || norm(ctx, t).map_err(|e| CliError::Staged(StagedError::IllTyped(e)));
        match self.engine {
            Engine::Nbe => nbe(),
            Engine::Staged => staged(),
            Engine::Both => {
                let (a, b) = (nbe()?, staged()?);
                if nf_eq(&a, &b) {
                    Ok(a)
                } else {
                    Err(disagree(scope, t, &a, &b))
                }
            }
        }
    }
}

fn staged_error(e: StagedError, fuel: u64) -> CliError {
    match e {
        StagedError::FuelExhausted => CliError::OutOfFuel { fuel },
        other => CliError::Staged(other),
    }
}

fn disagree(scope: &Scope, t: &Term, nbe: &Nf, staged: &Nf) -> CliError {
    let names = scope.names();
    CliError::Disagree { term: pretty_term(names, t), nbe: pretty_nf(names, nbe), staged: pretty_nf(names, staged) }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Check(input) => {
            let p = input.read(1)?;
            emit(out, &p.terms[0].1.to_string());
        }
        Command::Norm(input) => {
            let p = input.read(1)?;
            let nf = input.normalize(&p.scope, &p.terms[0].0)?;
            emit(out, &pretty_nf(p.scope.names(), &nf));
        }
        Command::Eq(input) => {
            let p = input.read(2)?;
            let [(t, left), (u, right)] = &p.terms[..] else { unreachable!("arity checked") };
            if left != right {
                return Err(CliError::SideTypes { left: left.clone(), right: right.clone() });
            }
            let (a, b) = (input.normalize(&p.scope, t)?, input.normalize(&p.scope, u)?);
            let names = p.scope.names();
            if nf_eq(&a, &b) {
                emit(out, "convertible");
                emit(out, &pretty_nf(names, &a));
            } else {
                emit(out, "distinct");
                emit(out, &pretty_nf(names, &a));
                emit(out, &pretty_nf(names, &b));
                return Ok(Outcome::Distinct);
            }
        }
        Command::Trace(input) => {
            let p = input.read(1)?;
            let (t, ty) = &p.terms[0];
            let ctx = p.scope.ctx();
            let names = p.scope.names();
            let tr = staged_trace(ctx, t, input.fuel).map_err(|e| staged_error(e, input.fuel))?;
            let nbe = norm(ctx, t).map_err(|e| CliError::Staged(StagedError::IllTyped(e)))?;
            let agree = nf_eq(&tr.nf, &nbe);
            emit(out, &format!("type:     {ty}"));
            emit(out, &format!("whnf:     {}", pretty_wh(names, &tr.wh)));
            emit(out, &format!("eta-long: {}", pretty_term(names, &tr.eta.embed())));
            emit(out, &format!("standard: {}", pretty_nf(names, &tr.nf)));
            emit(out, &format!("nbe:      {}", pretty_nf(names, &nbe)));
            emit(out, &format!("fuel:     {}", tr.fuel_used));
            emit(out, &format!("agree:    {}", if agree { "yes" } else { "no" }));
            if !agree {
                return Err(disagree(&p.scope, t, &nbe, &tr.nf));
            }
        }
        Command::Selftest(args) => {
            let cfg = SelftestConfig {
                size_bound: args.size,
                random_count: args.random,
                seed: args.seed,
                fuel: args.fuel,
                ..SelftestConfig::default()
            };
            let reports = selftest(&cfg);
            let failed = reports.iter().filter(|r| !r.passed()).count();
            for r in &reports {
                emit(out, &r.to_string());
                for f in &r.failures {
                    emit(out, &format!("  FAIL {f}"));
                }
            }
            if failed == 0 {
                emit(out, &format!("PASS {}/{}", reports.len(), reports.len()));
            } else {
                emit(out, &format!("FAIL {failed}/{}", reports.len()));
                return Err(CliError::Selftest(failed));
            }
        }
    }
    Ok(Outcome::Done)
}

fn emit(out: &mut impl Write, line: &str) {
    let _ = writeln!(out, "{line}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    match run(cli, &mut out) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Distinct) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
