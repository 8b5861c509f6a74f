use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use modlie::ceco::cache::Cache;
use modlie::ceco::{Module, DEFAULT_NNZ_BUDGET};
use modlie::cli::{self, claims, Builtin, CohomologyQuery, VerifyOptions};
use modlie::liealg::LieAlgebra;
use modlie::{Error, Result};

#[derive(Parser)]
#[command(name = "modlie", version, about = "Exact cohomology of modular Lie algebras over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Args)]
struct CacheArgs {
    /// Cache directory (default: $MODLIE_CACHE, then the platform cache dir).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long)]
    no_cache: bool,
}

impl CacheArgs {
    fn open(&self) -> Option<Cache> {
        if self.no_cache {
            return None;
        }
        match Cache::open(self.cache_dir.as_deref()) {
            Ok(c) => Some(c),
            Err(e) => {
                log::warn!("running without a cache: {e}");
                None
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run claim checks and report expected against computed values.
    Verify {
        /// Claim id, or `all`.
        claim: Option<String>,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        weight_reduction: bool,
        /// Nonzero budget for differential matrices.
        #[arg(long)]
        budget: Option<u64>,
        /// Lift all budgets.
        #[arg(long)]
        force: bool,
        /// Record wall time in the report.
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value_t = Output::Table)]
        output: Output,
        /// Also write the JSON report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Compute one cohomology group of a builtin or JSON-defined algebra.
    Cohomology {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        builtin: Option<String>,
        /// Algebra JSON: {p, dim, basis, bracket: [[i, j, k, value]], ...}.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value = "adjoint")]
        module: String,
        #[arg(long)]
        weight: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        degree_shift: Option<i64>,
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        weight_reduction: bool,
        #[arg(long, default_value_t = DEFAULT_NNZ_BUDGET)]
        budget: u64,
        /// Include representative cochains.
        #[arg(long)]
        dump: bool,
        #[arg(long, value_enum, default_value_t = Output::Table)]
        output: Output,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Inspect or clear the result cache.
    Cache {
        #[arg(value_parser = ["list", "clear", "path"])]
        action: String,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { claim, list, p, n, m, seed, weight_reduction, budget, force, timings, output, report, cache } => {
            if list {
                for c in claims::registry() {
                    println!("{:22} {}", c.id, c.reference);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let id = claim.ok_or_else(|| Error::Precondition("give a claim id or `all` (see --list)".into()))?;
            let opts = VerifyOptions { p, n, m, seed, weight_reduction, budget, force, timings };
            let reports = cli::verify(&id, &opts, cache.open().as_ref())?;
            let json = cli::reports_json(&reports);
            if let Some(path) = report {
                std::fs::write(path, &json)?;
            }
            match output {
                Output::Json => println!("{json}"),
                Output::Table => print!("{}", cli::reports_table(&reports)),
            }
            Ok(if reports.iter().all(|r| r.passed()) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Cohomology {
            builtin,
            file,
            p,
            n,
            m,
            degree,
            module,
            weight,
            degree_shift,
            weight_reduction,
            budget,
            dump,
            output,
            cache,
        } => {
            let (l, name) = match (builtin, file) {
                (Some(b), _) => cli::builtin_algebra(b.parse::<Builtin>()?, p, n, m)?,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path)?;
                    (LieAlgebra::from_json(&text)?, path.display().to_string())
                }
                (None, None) => unreachable!("clap requires one of --builtin and --file"),
            };
            let module: Module = module.parse()?;
            let q = CohomologyQuery { degree, module, weight, degree_shift, weight_reduction, budget, dump };
            let r = cli::cohomology_report(&l, &name, &q, cache.open().as_ref())?;
            match output {
                Output::Json => println!("{}", serde_json::to_string_pretty(&r)?),
                Output::Table => {
                    let cached = if r.cached { " (cached)" } else { "" };
                    println!("dim H^{}({}, {}) on slice {} = {}{cached}", r.degree, r.algebra, r.module, r.slice, r.dim);
                    println!("cochains {}, cocycles {}, coboundaries {}", r.cochain_dim, r.cocycle_dim, r.coboundary_dim);
                    if let Some(reps) = &r.representatives {
                        for c in reps {
                            println!("{}", serde_json::to_string(c)?);
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cache { action, cache_dir } => {
            let c = Cache::open(cache_dir.as_deref())?;
            match action.as_str() {
                "path" => println!("{}", c.dir().display()),
                "list" => {
                    for e in c.list()? {
                        println!("{} {}", e.id, e.key);
                    }
                }
                _ => println!("removed {} entries from {}", c.clear()?, c.dir().display()),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
