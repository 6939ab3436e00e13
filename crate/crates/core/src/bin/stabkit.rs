//! Command-line front end. Exit codes: 0 ok, 1 infeasible or bound
//! violated, 2 bad parameters or input, 3 search budget exhausted.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use stabkit::bench::{run_bench, Suite};
use stabkit::decompose::decompose;
use stabkit::gen::{generate, GenKind, UniformConfig};
use stabkit::oracle::DEFAULT_ORACLE_LIMIT;
use stabkit::{parallel, solve, verify, Algo, Error, Instance, Result, Scalar, Solution, SolveParams};

#[derive(Parser)]
#[command(name = "stabkit", version, about = "Stab rectangles with horizontal segments of minimum total length")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and write the solution as JSON.
    Solve {
        #[arg(long, value_parser = parse_algo)]
        algo: Algo,
        #[arg(short, long)]
        input: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = "1/2")]
        eps: Scalar,
        /// Width ratio for ptas; defaults to the instance's min/max width.
        #[arg(long)]
        delta: Option<Scalar>,
        #[arg(long)]
        mu: Option<Scalar>,
        #[arg(long)]
        klong: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        oracle_limit: usize,
        #[arg(long)]
        node_budget: Option<u64>,
        /// Shrink approx8 segments to what they actually need.
        #[arg(long)]
        shrink: bool,
    },
    /// Check a solution against an instance.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
    },
    /// Print the strip/cut decomposition of an instance as JSON.
    Decompose {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        eps: Scalar,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a seeded instance.
    Gen {
        #[arg(long, value_parser = parse_kind)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        delta: Option<Scalar>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a benchmark suite and write a CSV report.
    Bench {
        #[arg(short = 'c', long)]
        config: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the markdown summary here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

fn parse_algo(s: &str) -> Result<Algo> {
    s.parse()
}

fn parse_kind(s: &str) -> Result<GenKind> {
    s.parse()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let file = File::open(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_reader(io::BufReader::new(file)).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut out: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve { algo, input, output, eps, delta, mu, klong, oracle_limit, node_budget, shrink } => {
            let inst: Instance = read_json(&input)?;
            let params = SolveParams { eps, delta, mu, klong, oracle_limit, node_budget, shrink };
            match solve(&inst, algo, &params) {
                Ok(sol) => {
                    write_json(output.as_deref(), &sol)?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(Error::Budget { budget, best: Some(best) }) => {
                    write_json(output.as_deref(), &*best)?;
                    Err(Error::Budget { budget, best: Some(best) })
                }
                Err(e) => Err(e),
            }
        }
        Command::Verify { input, solution } => {
            let inst: Instance = read_json(&input)?;
            let sol: Solution = read_json(&solution)?;
            let report = verify(&inst, &sol);
            write_json(None, &report)?;
            Ok(if report.feasible { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Decompose { input, eps, output } => {
            let inst: Instance = read_json(&input)?;
            write_json(output.as_deref(), &decompose(&inst, &eps)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { kind, n, seed, delta, output } => {
            let inst = generate(kind, n, seed, delta.as_ref(), &UniformConfig::default())?;
            write_json(output.as_deref(), &inst)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { config, output, summary } => {
            let suite: Suite = read_json(&config)?;
            let report = run_bench(&suite)?;
            report.write_csv(BufWriter::new(File::create(&output)?))?;
            let md = report.summary_markdown();
            match summary {
                Some(p) => std::fs::write(p, &md)?,
                None => print!("{md}"),
            }
            let bad = report.violations();
            for r in &bad {
                eprintln!("bound violated: {} {} {} cost {} opt {:?}", r.instance_id, r.algo, r.params, r.cost, r.opt);
            }
            Ok(if bad.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = parallel::init_from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
