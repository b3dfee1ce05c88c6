//! `linrec`: guess linear recurrence relations of multidimensional tables.

mod source;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linrec::bench::{to_csv, Algorithm, SweepSpec, DEFAULT_PRIME};
use linrec::{
    abms, abms_reduced, abms_traced, asfglm, asfglm_tweaked, bms, bms_with, no_bound_mode, stopping_bound, BmsConfig,
    Error, FamilyKind, Field, GuessResult, MonomialOrder,
};
use rayon::prelude::*;

const EXIT_USAGE: u8 = 2;
const EXIT_RUN_SFGLM: u8 = 3;
const EXIT_INCONSISTENT: u8 = 4;
const EXIT_FAMILY: u8 = 5;

#[derive(Parser)]
#[command(name = "linrec", version, about = "Guess linear recurrence relations of multidimensional tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an algorithm and print the relations as JSON.
    Guess(RunArgs),
    /// Run an algorithm and print its step log.
    Trace(RunArgs),
    /// Sweep benchmark families and write CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Bms,
    Abms,
    AbmsReduced,
    Asfglm,
    AsfglmTweaked,
    AsfglmNobound,
}

#[derive(Args)]
struct RunArgs {
    /// JSON file, `builtin:<name>` or `family:<name>:<dim>:<d>[:<seed>]`.
    #[arg(long)]
    table: String,
    /// Ordering such as `drl:y<x`, `lex:z<y<x` or `weight:1,2:y<x`.
    #[arg(long)]
    order: Option<String>,
    /// `q` or `fp:<p>`.
    #[arg(long)]
    field: Option<String>,
    #[arg(long, value_enum, default_value = "bms")]
    algo: Algo,
    /// Staircase bound d.
    #[arg(long)]
    bound: Option<usize>,
    /// Last monomial visited by BMS, or `auto` for the stopping bound of a table with known relations.
    #[arg(long)]
    stop: Option<String>,
    /// Degree cap when enumerating under an ordering that is not degree-compatible.
    #[arg(long)]
    degree_cap: Option<u32>,
    /// Staircase safeguard for asfglm-nobound.
    #[arg(long, default_value_t = 10_000)]
    max_size: usize,
    /// Output path, `-` for stdout.
    #[arg(long, default_value = "-")]
    out: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated families, or `all`.
    #[arg(long, default_value = "all")]
    family: String,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 2)]
    dmin: u32,
    #[arg(long)]
    dmax: u32,
    /// Comma-separated subset of bms, abms, asfglm.
    #[arg(long, default_value = "asfglm,abms")]
    algos: String,
    #[arg(long)]
    field: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "-")]
    out: String,
}

/// A failure with its exit code; `partial` is still written when present.
struct Failure {
    code: u8,
    message: String,
    partial: Option<Box<GuessResult>>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, message: message.into(), partial: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let message = e.to_string();
        match e {
            Error::RunSfglm(partial) => Failure { code: EXIT_RUN_SFGLM, message, partial: Some(partial) },
            Error::Inconsistent { .. } => Failure { code: EXIT_INCONSISTENT, message, partial: None },
            Error::FamilyExhausted { .. } => Failure { code: EXIT_FAMILY, message, partial: None },
            Error::Parse(_)
            | Error::UnknownBuiltin(_)
            | Error::VariableCount { .. }
            | Error::NeedsDegreeCap
            | Error::NotDegreeCompatible => Failure::usage(message),
            _ => Failure { code: 1, message, partial: None },
        }
    }
}

fn write_out(path: &str, text: &str) -> Result<(), Failure> {
    let res = if path == "-" { io::stdout().write_all(text.as_bytes()) } else { fs::write(path, text) };
    res.map_err(|e| Failure { code: 1, message: format!("cannot write {path}: {e}"), partial: None })
}

fn parse_field(s: Option<&str>) -> Result<Option<Field>, Failure> {
    s.map(|s| s.parse::<Field>().map_err(Failure::from)).transpose()
}

fn run(args: &RunArgs, traced: bool) -> Result<GuessResult, Failure> {
    let needs_bound = matches!(args.algo, Algo::Abms | Algo::AbmsReduced | Algo::Asfglm | Algo::AsfglmTweaked);
    if needs_bound && args.bound.is_none() {
        return Err(Failure::usage("this algorithm needs --bound"));
    }
    let uses_stop = matches!(args.algo, Algo::Bms | Algo::Abms | Algo::AbmsReduced);
    if uses_stop && args.stop.is_none() {
        return Err(Failure::usage("this algorithm needs --stop"));
    }
    let field = parse_field(args.field.as_deref())?;
    let loaded = source::load(&args.table, field.as_ref(), args.seed)?;
    let nvars = loaded.table.nvars();
    let ord = match (&args.order, &loaded.order) {
        (Some(s), _) => MonomialOrder::parse(s)?,
        (None, Some(o)) => o.clone(),
        (None, None) => MonomialOrder::drl(nvars),
    };
    if ord.nvars() != nvars {
        return Err(Failure::usage(format!("the ordering has {} variables but the table has {nvars}", ord.nvars())));
    }
    if args.algo == Algo::Bms && !ord.is_degree_compatible() {
        return Err(Failure::usage("bms needs a degree-compatible ordering; use abms with --bound for LEX"));
    }
    let stop = match (uses_stop, args.stop.as_deref()) {
        (false, _) | (true, None) => None,
        (true, Some("auto")) => match &loaded.known {
            Some((stair, lms)) => Some(stopping_bound(stair, lms, &ord)),
            None => return Err(Failure::usage("--stop auto needs a table with known relations (GB file or family)")),
        },
        (true, Some(s)) => Some(ord.parse_monomial(s)?),
    };
    let mut table = loaded.table;
    let d = args.bound.unwrap_or(0);
    let cap = args.degree_cap;
    let res = match args.algo {
        Algo::Bms => {
            let cfg = BmsConfig { trace: traced, degree_cap: cap, ..BmsConfig::default() };
            let stop = stop.expect("checked");
            if traced {
                bms_with(&mut table, &ord, &stop, &cfg)
            } else {
                bms(&mut table, &ord, &stop)
            }
        }
        Algo::Abms if traced => abms_traced(&mut table, &ord, d, &stop.expect("checked"), cap),
        Algo::Abms => abms(&mut table, &ord, d, &stop.expect("checked"), cap),
        Algo::AbmsReduced if traced => {
            let cfg = BmsConfig { bound: Some(d), degree_cap: cap, reduce_each_step: true, trace: true };
            bms_with(&mut table, &ord, &stop.expect("checked"), &cfg)
        }
        Algo::AbmsReduced => abms_reduced(&mut table, &ord, d, &stop.expect("checked"), cap),
        Algo::Asfglm => asfglm(&mut table, &ord, d),
        Algo::AsfglmTweaked => asfglm_tweaked(&mut table, &ord, d),
        Algo::AsfglmNobound => no_bound_mode(&mut table, &ord, args.max_size),
    };
    Ok(res?)
}

fn cmd_guess(args: &RunArgs) -> Result<(), Failure> {
    match run(args, false) {
        Ok(res) => write_out(&args.out, &format!("{:#}\n", res.to_json(None))),
        Err(f) => {
            if let Some(partial) = &f.partial {
                write_out(&args.out, &format!("{:#}\n", partial.to_json(Some("RunSfglm"))))?;
            }
            Err(f)
        }
    }
}

fn trace_text(res: &GuessResult) -> String {
    let mut out = String::new();
    for line in &res.trace {
        out.push_str(line);
        out.push('\n');
    }
    out
}

fn cmd_trace(args: &RunArgs) -> Result<(), Failure> {
    match run(args, true) {
        Ok(res) => write_out(&args.out, &trace_text(&res)),
        Err(f) => {
            if let Some(partial) = &f.partial {
                write_out(&args.out, &format!("{}Run sFGLM\n", trace_text(partial)))?;
            }
            Err(f)
        }
    }
}

fn split_list<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<Vec<T>, Failure> {
    s.split(',').map(|x| x.trim().parse::<T>().map_err(Failure::from)).collect()
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    let families = if args.family == "all" { FamilyKind::ALL.to_vec() } else { split_list(&args.family)? };
    let algorithms: Vec<Algorithm> = split_list(&args.algos)?;
    if args.dmin > args.dmax {
        return Err(Failure::usage("--dmin exceeds --dmax"));
    }
    let field = parse_field(args.field.as_deref())?.unwrap_or(Field::Prime(DEFAULT_PRIME));
    let spec =
        SweepSpec { families, nvars: args.dim, dmin: args.dmin, dmax: args.dmax, algorithms, field, seed: args.seed };
    let outcomes: Vec<_> = spec.cells().into_par_iter().map(|c| spec.run_one(c)).collect();
    let mut records = Vec::new();
    let mut first: Option<Failure> = None;
    for o in outcomes {
        match o {
            Ok(r) => {
                if !r.lms_ok {
                    eprintln!(
                        "warning: {} d={} {}: leading monomials differ from the family's",
                        r.family, r.d, r.algorithm
                    );
                }
                records.push(r);
            }
            Err((kind, d, algo, e)) => {
                eprintln!("error: {kind} d={d} {algo}: {e}");
                first.get_or_insert(Failure::from(e));
            }
        }
    }
    write_out(&args.out, &to_csv(&records))?;
    match first {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Guess(a) => cmd_guess(a),
        Command::Trace(a) => cmd_trace(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
