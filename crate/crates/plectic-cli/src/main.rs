//! Batch verification runner.
//!
//! ```text
//! plectic check <scenario.json>...   run scenario files
//! plectic builtin <name>...          run builtin scenarios
//! plectic list                       list the builtin registry
//! plectic all                        run every builtin scenario
//! plectic report                     like `all`, JSON by default
//! ```
//!
//! Flags: `--format json|text`, `--jobs N`, `--seed N` (or PLECTIC_SEED).
//! Exit code 0 iff every check of every scenario passes.

use plectic_cli::report::{reports_to_json, reports_to_text, Report};
use plectic_cli::{builtins, run_batch, scenario};
use std::process::ExitCode;

struct Args {
    verb: String,
    names: Vec<String>,
    format: String,
    jobs: usize,
}

fn parse_args() -> Result<Args, String> {
    let mut argv = std::env::args().skip(1);
    let verb = argv.next().ok_or_else(usage)?;
    let mut names = Vec::new();
    let mut format = if verb == "report" { "json" } else { "text" }.to_string();
    let mut jobs = 1usize;
    while let Some(a) = argv.next() {
        match a.as_str() {
            "--format" => {
                format = argv.next().ok_or("missing value for --format")?;
                if format != "json" && format != "text" {
                    return Err(format!("unknown format {format:?}"));
                }
            }
            "--jobs" => {
                jobs = argv
                    .next()
                    .ok_or("missing value for --jobs")?
                    .parse()
                    .map_err(|_| "bad --jobs value".to_string())?;
                if jobs == 0 {
                    return Err("--jobs must be positive".into());
                }
            }
            "--seed" => {
                let seed = argv.next().ok_or("missing value for --seed")?;
                std::env::set_var("PLECTIC_SEED", seed);
            }
            other => names.push(other.to_string()),
        }
    }
    Ok(Args {
        verb,
        names,
        format,
        jobs,
    })
}

fn usage() -> String {
    "usage: plectic <check|builtin|list|all|report> [names...] [--format json|text] [--jobs N] [--seed N]"
        .to_string()
}

fn main() -> ExitCode {
    let args = match parse_args() {
        Ok(a) => a,
        Err(e) => {
            eprintln!("{e}");
            eprintln!("{}", usage());
            return ExitCode::from(2);
        }
    };
    let scenarios: Result<Vec<scenario::Scenario>, String> = match args.verb.as_str() {
        "list" => {
            for (name, description) in builtins::REGISTRY {
                println!("{name:<24}  {description}");
            }
            return ExitCode::SUCCESS;
        }
        "check" => {
            if args.names.is_empty() {
                Err("check needs at least one scenario file".into())
            } else {
                args.names
                    .iter()
                    .map(|p| scenario::load_file(std::path::Path::new(p)))
                    .collect()
            }
        }
        "builtin" => {
            if args.names.is_empty() {
                Err("builtin needs at least one name; see `plectic list`".into())
            } else {
                args.names.iter().map(|n| builtins::builtin(n)).collect()
            }
        }
        "all" | "report" => builtins::list_builtins()
            .iter()
            .map(|n| builtins::builtin(n))
            .collect(),
        _ => Err(usage()),
    };
    let scenarios = match scenarios {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let reports: Vec<Report> = run_batch(scenarios, args.jobs);
    let ok = reports.iter().all(Report::passed);
    if args.format == "json" {
        println!("{}", reports_to_json(&reports));
    } else {
        print!("{}", reports_to_text(&reports));
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
