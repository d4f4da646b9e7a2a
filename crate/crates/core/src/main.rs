use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use tseq::error::{Error, Result};
use tseq::job::{error_json, run, JobSpec};
use tseq::sequence::Catalog;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Run one job file against a sequence catalog.
#[derive(Debug, Parser)]
#[command(name = "tseq", version)]
struct Args {
    /// Sequence catalog (JSON).
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Job file (JSON).
    #[arg(long)]
    job: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Overrides the job's node budget.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Overrides the job's tail depth.
    #[arg(long)]
    tail_depth: Option<u64>,
    /// Fail instead of reporting a bounded negative answer.
    #[arg(long)]
    strict: bool,
}

fn load(args: &Args) -> Result<String> {
    let catalog = match &args.catalog {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            let v = serde_json::from_str(&text).map_err(|e| Error::Parse {
                location: format!("{} line {} column {}", path.display(), e.line(), e.column()),
                message: e.to_string(),
            })?;
            Catalog::from_json(&v)?
        }
        None => Catalog::new(),
    };
    let mut job = JobSpec::parse(&fs::read_to_string(&args.job)?, &catalog)?;
    if let Some(n) = args.budget_nodes {
        job.budgets.node_cap = n.max(1);
    }
    if let Some(d) = args.tail_depth {
        job.budgets.tail_depth = d;
    }
    job.strict |= args.strict;
    let report = run(&job)?;
    Ok(match args.format {
        Format::Json => format!("{:#}\n", report.json),
        Format::Text => report.text,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match load(&args) {
        Ok(out) => {
            let written = match &args.out {
                Some(path) => fs::write(path, out),
                None => {
                    print!("{out}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    println!("{:#}", error_json(&Error::Io(e)));
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            println!("{:#}", error_json(&e));
            ExitCode::FAILURE
        }
    }
}
