use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use cartan_cli::commands::{self, Check, Outcome, ALL_CHECKS, DEFAULT_GRID, DEFAULT_SEED, EXIT_USAGE};
use cartan_core::cohomology::{CohomologyOptions, Mode, DEFAULT_BLOCK_CAP};
use cartan_core::families::Family;

#[derive(Parser)]
#[command(name = "cartan", version, about = "Cartan-type Lie algebras and H^2(L, L) over GF(p)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// W, S, H, K, M, sl or psl.
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: u32,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    #[arg(long, default_value = "graded")]
    mode: Mode,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Largest block, in C^2 coordinates.
    #[arg(long, default_value_t = DEFAULT_BLOCK_CAP)]
    block_cap: usize,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    time_cap: Option<f64>,
    /// Include wall times in the output (breaks byte-identical reruns).
    #[arg(long)]
    timing: bool,
}

impl BudgetArgs {
    fn options(&self) -> CohomologyOptions {
        let base = match self.mode {
            Mode::Dense => CohomologyOptions::dense(),
            Mode::Graded => CohomologyOptions::default(),
        };
        CohomologyOptions {
            jobs: self.jobs,
            block_cap: self.block_cap,
            time_cap: self.time_cap.map(Duration::from_secs_f64),
            ..base
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an algebra and write it as JSON.
    Construct {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run invariant suites on an algebra file.
    Verify {
        file: String,
        /// Comma-separated subset of jacobi,grading,pmap,simple.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<Check>>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Compute H^q(L, L) of an algebra file.
    Cohomology {
        file: String,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Print every block, not only those with classes.
        #[arg(long)]
        all_blocks: bool,
        #[arg(long)]
        representatives: bool,
    },
    /// Check the H^2 theorem for one family.
    Theorem {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Append the row to this table file.
        #[arg(long)]
        out: Option<String>,
    },
    /// Check the theorem on every row of a grid file.
    Sweep {
        /// Lines of `family n p`; the built-in acceptance grid when absent.
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<String>,
    },
}

fn write_out(path: &str, text: &str, append: bool) -> Result<(), Outcome> {
    let res = if append {
        let exists = std::path::Path::new(path).exists();
        std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .and_then(|mut f| {
                // header only for a fresh file
                let body = if exists { text.split_once('\n').map_or("", |x| x.1) } else { text };
                f.write_all(body.as_bytes())
            })
    } else {
        std::fs::write(path, text)
    };
    res.map_err(|e| Outcome {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: cannot write {path}: {e}"),
    })
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Construct { spec, out } => match commands::supported_spec(spec.family, spec.n, spec.p) {
            Ok(s) => commands::cmd_construct(s, out.as_deref()),
            Err(o) => o,
        },
        Cmd::Verify { file, checks, seed } => match commands::load(&file) {
            Ok(l) => commands::cmd_verify(&l, checks.as_deref().unwrap_or(&ALL_CHECKS), seed),
            Err(o) => o,
        },
        Cmd::Cohomology {
            file,
            q,
            budget,
            all_blocks,
            representatives,
        } => match commands::load(&file) {
            Ok(l) => {
                let mut opts = budget.options();
                opts.representatives = representatives;
                commands::cmd_cohomology(&l, q, &opts, all_blocks, budget.timing)
            }
            Err(o) => o,
        },
        Cmd::Theorem { spec, budget, out } => match commands::supported_spec(spec.family, spec.n, spec.p) {
            Ok(s) => {
                let (_, o) = commands::cmd_theorem(s, &budget.options(), budget.timing);
                match out.map(|p| write_out(&p, &o.stdout, true)) {
                    Some(Err(e)) => e,
                    _ => o,
                }
            }
            Err(o) => o,
        },
        Cmd::Sweep { grid, budget, out } => {
            let text = match grid {
                None => DEFAULT_GRID.to_string(),
                Some(p) => match std::fs::read_to_string(&p) {
                    Ok(t) => t,
                    Err(e) => {
                        return Outcome {
                            code: EXIT_USAGE,
                            stdout: String::new(),
                            stderr: format!("error: cannot read {p}: {e}"),
                        }
                    }
                },
            };
            let (_, o) = commands::cmd_sweep(&text, &budget.options(), budget.timing);
            match out.map(|p| write_out(&p, &o.stdout, false)) {
                Some(Err(e)) => e,
                _ => o,
            }
        }
    }
}

fn main() -> ExitCode {
    let o = run(Cli::parse());
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    if !o.stderr.is_empty() && !o.stderr.ends_with('\n') {
        eprintln!();
    }
    ExitCode::from(o.code as u8)
}
