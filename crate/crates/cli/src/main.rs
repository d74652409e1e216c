//! `wppsg`: solve, classify, generate and benchmark WPPSG instances.
//!
//! Exit codes: 0 YES (or success), 1 NO (or a negative answer), 2
//! unsupported, 3 input error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use wppsg::format::{self, parse_permutation, parse_set};
use wppsg::generate::{generate, GenOptions, InstanceClass};
use wppsg::solve::{solve, Details, SolveOptions, SolveReport, Verdict};
use wppsg::{check_witness, classify, oracle, scaling, Instance, PqTree};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "wppsg", version, about = "Word problem for products of symmetric groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance and print YES, NO or UNSUPPORTED.
    Solve(SolveArgs),
    /// Print the tightest class: interval, c1p, wc1p or not-nice.
    Classify {
        /// Instance file, or `-` for stdin.
        file: PathBuf,
    },
    /// Generate a random instance.
    Gen(GenArgs),
    /// Check a witness file against an instance.
    Verify { instance: PathBuf, witness: PathBuf },
    /// Time the weak-C1P pipeline and print CSV.
    Bench(BenchArgs),
    /// PQ-tree operations on trees in canonical text form.
    #[command(subcommand)]
    Pq(PqCommand),
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file, or `-` for stdin.
    file: PathBuf,
    /// Emit the witness on YES: to PATH if given, else to stdout.
    #[arg(long, num_args = 0..=1, value_name = "PATH")]
    witness: Option<Option<PathBuf>>,
    /// Print the sorting trace, and for renumbered or chained instances the
    /// renumbering, PQ-trees and chain.
    #[arg(long)]
    trace: bool,
    /// Decide with the brute-force oracle.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// interval, c1p, wc1p or any.
    #[arg(long, default_value = "any")]
    class: String,
    /// Make the instance a YES-instance.
    #[arg(long)]
    yes: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated degrees.
    #[arg(long, default_value = "200,400,800,1600,3200")]
    n_range: String,
    /// Comma-separated set counts.
    #[arg(long, default_value = "32")]
    m_range: String,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum PqCommand {
    /// Restrict a tree to frontiers keeping SET contiguous.
    Reduce { tree: String, set: String },
    /// Find the equivalent tree with frontier PERM.
    Consistent { tree: String, perm: String },
    /// Collapse the X-tree or X-forest of SET into one P-node.
    Flatten { tree: String, set: String },
}

/// An error that maps to the input-error exit code.
fn input<T>(r: wppsg::Result<T>) -> Result<T> {
    r.map_err(|e| anyhow!(e))
}

fn read_source(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = read_source(path)?;
    format::parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn oracle_cap() -> Result<usize> {
    match std::env::var("WPPSG_ORACLE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("WPPSG_ORACLE_CAP must be a non-negative integer, got `{v}`")),
        Err(_) => Ok(oracle::MEMBERSHIP_CAP),
    }
}

fn print_trace(out: &mut impl Write, instance: &Instance, report: &SolveReport) -> io::Result<()> {
    let Some(details) = &report.details else {
        return Ok(());
    };
    if !matches!(details, Details::Sorting { .. }) {
        writeln!(out, "# sorting strategy on the input")?;
        out.write_all(wppsg::interval::run_sorting_strategy(instance).to_text().as_bytes())?;
    }
    match details {
        Details::Sorting { trace } => {
            writeln!(out, "# sorting strategy")?;
            out.write_all(trace.to_text().as_bytes())?;
        }
        Details::Renumber { pi, trace } => {
            out.write_all(format::perm_line("pi", pi).as_bytes())?;
            writeln!(out, "# sorting strategy on the renumbered instance")?;
            out.write_all(trace.to_text().as_bytes())?;
        }
        Details::Chain {
            reduce_expand,
            chain,
            trace,
        } => {
            writeln!(out, "# reduce-expand")?;
            out.write_all(reduce_expand.to_text().as_bytes())?;
            writeln!(out, "# chain")?;
            out.write_all(chain.to_text().as_bytes())?;
            writeln!(out, "# sorting strategy at the end of the chain")?;
            out.write_all(trace.to_text().as_bytes())?;
        }
        Details::Oracle => {
            writeln!(out, "# decided by exhaustive search")?;
            if let Some(w) = &report.witness {
                writeln!(out, "# transitions of the witness")?;
                for (j, t) in w.transitions(instance.tau()).iter().enumerate() {
                    out.write_all(format::perm_line(&format!("tau_{j}"), t).as_bytes())?;
                }
            }
        }
    }
    Ok(())
}

fn cmd_solve(args: &SolveArgs) -> Result<u8> {
    let instance = read_instance(&args.file)?;
    let options = SolveOptions {
        oracle_cap: oracle_cap()?,
        force_oracle: args.oracle,
        keep_trace: args.trace,
    };
    let report = input(solve(&instance, &options))?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "{}", report.verdict)?;
    eprintln!("classification: {}", report.classification);
    if let Some(method) = report.method {
        eprintln!("method: {method}");
    } else {
        eprintln!(
            "instance not nice and n = {} exceeds the oracle cap {}",
            instance.n(),
            options.oracle_cap
        );
    }
    for (phase, d) in &report.timings {
        eprintln!("time {phase}: {:.3} ms", d.as_secs_f64() * 1e3);
    }
    if let (Some(target), Some(w)) = (&args.witness, &report.witness) {
        let text = format::write_witness(w);
        match target {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
            None => out.write_all(text.as_bytes())?,
        }
    }
    if args.trace {
        print_trace(&mut out, &instance, &report)?;
    }
    Ok(match report.verdict {
        Verdict::Yes => EXIT_YES,
        Verdict::No => EXIT_NO,
        Verdict::Unsupported => EXIT_UNSUPPORTED,
    })
}

fn cmd_gen(args: &GenArgs) -> Result<u8> {
    let class: InstanceClass = input(args.class.parse())?;
    let instance = input(generate(&GenOptions {
        n: args.n,
        m: args.m,
        class,
        yes: args.yes,
        seed: args.seed,
    }))?;
    let text = format::write_instance(&instance);
    match &args.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(EXIT_YES)
}

fn cmd_verify(instance: &Path, witness: &Path) -> Result<u8> {
    let instance = read_instance(instance)?;
    let text = read_source(witness)?;
    let w = format::parse_witness(&text, instance.n()).with_context(|| format!("parsing {}", witness.display()))?;
    match check_witness(&instance, &w) {
        Ok(()) => {
            println!("VALID");
            Ok(EXIT_YES)
        }
        Err(v) => {
            println!("INVALID: {v}");
            Ok(EXIT_NO)
        }
    }
}

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| t.trim().parse().with_context(|| format!("bad {what} entry `{t}`")))
        .collect()
}

fn cmd_bench(args: &BenchArgs) -> Result<u8> {
    let ns = parse_list(&args.n_range, "--n-range")?;
    let ms = parse_list(&args.m_range, "--m-range")?;
    let rows = input(scaling::bench_grid(&ns, &ms, args.reps, args.seed))?;
    print!("{}", scaling::to_csv(&rows));
    Ok(EXIT_YES)
}

fn cmd_pq(cmd: &PqCommand) -> Result<u8> {
    let parse_tree = |s: &str| -> Result<PqTree> { s.parse().with_context(|| format!("parsing tree `{s}`")) };
    match cmd {
        PqCommand::Reduce { tree, set } => {
            let t = parse_tree(tree)?;
            let x = input(parse_set(set, t.degree()))?;
            match t.reduce(&x) {
                Some(r) => {
                    println!("{r}");
                    Ok(EXIT_YES)
                }
                None => {
                    println!("none");
                    Ok(EXIT_NO)
                }
            }
        }
        PqCommand::Consistent { tree, perm } => {
            let t = parse_tree(tree)?;
            let pi = input(parse_permutation(perm))?;
            if pi.degree() != t.degree() {
                return Err(anyhow!(wppsg::Error::IncompatibleDegree {
                    left: t.degree(),
                    right: pi.degree()
                }));
            }
            match t.solve_consistency(&pi) {
                Some(r) => {
                    println!("{r}");
                    Ok(EXIT_YES)
                }
                None => {
                    println!("none");
                    Ok(EXIT_NO)
                }
            }
        }
        PqCommand::Flatten { tree, set } => {
            let t = parse_tree(tree)?;
            let x = input(parse_set(set, t.degree()))?;
            println!("{}", input(t.flatten(&x))?);
            Ok(EXIT_YES)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Classify { file } => {
            println!("{}", classify(&read_instance(file)?));
            Ok(EXIT_YES)
        }
        Command::Gen(args) => cmd_gen(args),
        Command::Verify { instance, witness } => cmd_verify(instance, witness),
        Command::Bench(args) => cmd_bench(args),
        Command::Pq(cmd) => cmd_pq(cmd),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
