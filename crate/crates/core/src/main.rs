use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sp_gauge::chdata::tables_json;
use sp_gauge::cli::{
    classify_grid, classify_pair, emit_table, retractible_table, verify_sweep, with_jobs, Format,
    Group, Query, Report,
};
use sp_gauge::gauge::LieFamily;
use sp_gauge::{Backend, Error};

#[derive(Parser)]
#[command(name = "sp-gauge", version, about = "Samelson orders and gauge-group invariants for Sp(n) over S^4")]
struct Cli {
    /// Output format: json, csv or markdown.
    #[arg(long, global = true, default_value = "markdown")]
    format: Format,

    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order of <epsilon, iota_n> for one rank or a range of ranks.
    Order {
        #[arg(long, conflicts_with = "max_n")]
        n: Option<u32>,
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Chern-character tops and Phi values of the generating set.
    PhiGens {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "series")]
        backend: Backend,
    },
    /// p-local classification of gauge groups.
    Classify {
        #[command(subcommand)]
        group: ClassifyGroup,
    },
    /// Homotopy invariants of G_{k,n}.
    Invariant {
        #[arg(long)]
        n: u32,
        /// One or more values, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        k: Vec<i64>,
    },
    /// Whether a Lie group is retractible at p.
    Retractible {
        /// su, sp, spinodd, g2, f4, e6, e7 or e8.
        #[arg(long)]
        family: LieFamily,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long)]
        p: u64,
    },
    /// Run every self-check up to the given rank.
    Verify {
        #[arg(long, default_value_t = 20)]
        max_n: u32,
    },
    /// Export the generator tables as JSON.
    Tables {
        #[arg(long)]
        n: Option<u32>,
    },
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    p: u64,
    /// With --l, decide one pair; without both, print the whole grid.
    #[arg(long, requires = "l", allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(long, requires = "k", allow_hyphen_values = true)]
    l: Option<i64>,
    /// Upper end of the grid; defaults to 4n(2n+1).
    #[arg(long, conflicts_with = "k")]
    max_k: Option<i64>,
}

#[derive(Subcommand)]
enum ClassifyGroup {
    /// Gauge groups of Sp(n).
    Sp {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Gauge groups of Spin(2n + epsilon).
    Spin {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
        epsilon: u32,
        #[command(flatten)]
        pair: PairArgs,
    },
}

fn run(command: Command) -> Result<Report, Error> {
    match command {
        Command::Order { n, max_n } => {
            let (lo, hi) = match (n, max_n) {
                (Some(n), _) => (n, n),
                (None, Some(m)) => (1, m),
                (None, None) => (1, 10),
            };
            emit_table(&Query::Orders { n_min: lo, n_max: hi })
        }
        Command::PhiGens { n, backend } => emit_table(&Query::PhiGens { n, backend }),
        Command::Classify { group } => {
            let (group, pair) = match group {
                ClassifyGroup::Sp { n, pair } => (Group::Sp { n }, pair),
                ClassifyGroup::Spin { n, epsilon, pair } => (Group::Spin { n, epsilon }, pair),
            };
            match (pair.k, pair.l) {
                (Some(k), Some(l)) => classify_pair(group, k, l, pair.p),
                _ => classify_grid(group, pair.p, pair.max_k),
            }
        }
        Command::Invariant { n, k } => emit_table(&Query::Invariants { n, ks: k }),
        Command::Retractible { family, n, p } => Ok(retractible_table(family, n, p)),
        Command::Verify { max_n } => verify_sweep(max_n),
        Command::Tables { .. } => unreachable!("handled before dispatch"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();

    if let Command::Tables { n } = cli.command {
        return match tables_json(n) {
            Ok(v) => {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }

    let format = cli.format;
    match with_jobs(cli.jobs, || run(cli.command)) {
        Ok(report) => {
            let _ = out.write_all(report.render(format).as_bytes());
            if report.is_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
