//! Command-line front end: compute ψ, evaluate the criterion, scan
//! corpora, run verification suites.
//!
//! Exit codes: 0 success, 2 parse error, 3 table cap exceeded,
//! 4 criterion counterexample from `check`, 5 verification violations.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ordsum::corpus::{build_group, builtin_corpus, load_group_file, parse_spec, CorpusEntry};
use ordsum::group::DEFAULT_CAP;
use ordsum::psi::{criterion_verdict, psi_cyclic, psi_group, Comparison};
use ordsum::verify::{run_suite, scan_rows, write_reports, CheckReport, Suite, SuiteConfig};
use ordsum::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "ordsum", version, about = "Sum-of-element-orders solvability analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print ψ(G) for a group spec, or ψ(C_n) for a bare integer n
    Psi {
        /// Group spec such as "a 5", or an integer for the cyclic formula
        target: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate the solvability criterion against ground truth
    Check {
        /// Group spec such as "sl2 5"
        spec: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run verification suites over the builtin corpus
    Verify {
        /// One of: all, main, lemmas, family, sylow
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 360)]
        max_order: u64,
        /// Rayon worker threads; defaults to the core count
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Comma-separated coprime companions for the equality family
        #[arg(long, value_delimiter = ',')]
        m_list: Option<Vec<u64>>,
        /// Directory for per-check JSON reports
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print one criterion row per corpus group
    Scan {
        #[arg(long, default_value_t = 60)]
        max_order: u64,
        /// Load groups from a file instead of the builtin corpus
        #[arg(long)]
        file: Option<PathBuf>,
        /// Rayon worker threads; defaults to the core count
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write rows here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. }
        | Error::Arity { .. }
        | Error::Param(_)
        | Error::GcdViolation(_)
        | Error::Format(_)
        | Error::Validation(_) => 2,
        Error::CapExceeded { .. } => 3,
        _ => 1,
    }
}

fn configure_workers(workers: Option<usize>) {
    if let Some(n) = workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool configured before any parallel work");
    }
}

fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Format(format!("json: {e}")))
}

#[derive(Serialize)]
struct PsiOutput {
    target: String,
    psi: String,
}

fn cmd_psi(target: &str, cap: usize, format: Format) -> Result<u8> {
    let trimmed = target.trim();
    let (canonical, psi) = if let Ok(n) = trimmed.parse::<u64>() {
        (format!("c {n}"), psi_cyclic(n)?)
    } else {
        let spec = parse_spec(trimmed)?;
        let group = build_group(&spec, cap)?;
        (spec.to_string(), psi_group(&group))
    };
    let output = PsiOutput {
        target: canonical,
        psi: psi.to_string(),
    };
    match format {
        Format::Text => println!("{}", output.psi),
        Format::Json => println!("{}", to_json_pretty(&output)?),
        Format::Csv => {
            println!("target,psi");
            println!("\"{}\",{}", output.target, output.psi);
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct CheckOutput {
    spec: String,
    n: u64,
    psi_g: String,
    psi_cn: String,
    comparison: String,
    conclusion: String,
    solvable: bool,
}

fn cmd_check(spec_text: &str, cap: usize, format: Format) -> Result<u8> {
    let spec = parse_spec(spec_text)?;
    let group = build_group(&spec, cap)?;
    let verdict = criterion_verdict(&group);
    let solvable = group.is_solvable();
    let counterexample = verdict.comparison == Comparison::Greater && !solvable;
    let output = CheckOutput {
        spec: spec.to_string(),
        n: verdict.n,
        psi_g: verdict.psi_g.to_string(),
        psi_cn: verdict.psi_cn.to_string(),
        comparison: verdict.comparison.to_string(),
        conclusion: verdict.conclusion.to_string(),
        solvable,
    };
    match format {
        Format::Text => {
            println!("spec: {}", output.spec);
            println!("n: {}", output.n);
            println!("psi_g: {}", output.psi_g);
            println!("psi_cn: {}", output.psi_cn);
            println!("comparison: {}", output.comparison);
            println!("conclusion: {}", output.conclusion);
            println!("solvable: {}", output.solvable);
        }
        Format::Json => println!("{}", to_json_pretty(&output)?),
        Format::Csv => {
            println!("spec,n,psi_g,psi_cn,comparison,conclusion,solvable");
            println!(
                "\"{}\",{},{},{},{},{},{}",
                output.spec,
                output.n,
                output.psi_g,
                output.psi_cn,
                output.comparison,
                output.conclusion,
                output.solvable
            );
        }
    }
    if counterexample {
        eprintln!("counterexample: criterion GREATER on a non-solvable group");
        return Ok(4);
    }
    Ok(0)
}

fn print_report_text(report: &CheckReport) {
    let status = if report.pass { "PASS" } else { "FAIL" };
    println!(
        "{status} {} population={} violations={}",
        report.name,
        report.population,
        report.violations.len()
    );
    for v in &report.violations {
        println!("  {}: {}", v.spec, v.details);
    }
}

fn cmd_verify(
    suite: &str,
    max_order: u64,
    cap: usize,
    m_list: Option<Vec<u64>>,
    out: Option<PathBuf>,
    format: Format,
) -> Result<u8> {
    let suite: Suite = suite.parse()?;
    let config = SuiteConfig {
        cap,
        m_list: m_list.unwrap_or_else(|| ordsum::verify::DEFAULT_FAMILY_MS.to_vec()),
    };
    // The family identity never reads the corpus; skip the build.
    let corpus: Vec<CorpusEntry> = if suite == Suite::Family {
        Vec::new()
    } else {
        builtin_corpus(max_order, cap)?
    };
    let reports = run_suite(suite, &corpus, &config)?;
    if let Some(dir) = out {
        write_reports(&reports, &dir)?;
    }
    match format {
        Format::Text => {
            for report in &reports {
                print_report_text(report);
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            if failed == 0 {
                println!("all {} checks passed", reports.len());
            } else {
                println!("{failed} of {} checks failed", reports.len());
            }
        }
        Format::Json => println!("{}", to_json_pretty(&reports)?),
        Format::Csv => {
            println!("name,population,pass,violations,elapsed_ms");
            for r in &reports {
                println!(
                    "{},{},{},{},{}",
                    r.name,
                    r.population,
                    r.pass,
                    r.violations.len(),
                    r.elapsed_ms
                );
            }
        }
    }
    if reports.iter().all(|r| r.pass) {
        Ok(0)
    } else {
        Ok(5)
    }
}

fn cmd_scan(
    max_order: u64,
    file: Option<PathBuf>,
    cap: usize,
    format: Format,
    out: Option<PathBuf>,
) -> Result<u8> {
    let entries = match file {
        Some(path) => load_group_file(&path, cap)?,
        None => builtin_corpus(max_order, cap)?,
    };
    let rows = scan_rows(&entries);
    let mut rendered = Vec::new();
    match format {
        Format::Text => {
            for row in &rows {
                writeln!(
                    rendered,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    row.spec,
                    row.order,
                    row.psi_g,
                    row.psi_cn,
                    row.ratio,
                    row.ratio_approx,
                    row.comparison,
                    row.solvable
                )?;
            }
        }
        Format::Json => {
            rendered = to_json_pretty(&rows)?.into_bytes();
            rendered.push(b'\n');
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(rendered);
            for row in &rows {
                writer
                    .serialize(row)
                    .map_err(|e| Error::Format(format!("csv row: {e}")))?;
            }
            rendered = writer
                .into_inner()
                .map_err(|e| Error::Format(format!("csv flush: {e}")))?;
        }
    }
    match out {
        Some(path) => std::fs::write(path, rendered)?,
        None => std::io::stdout().write_all(&rendered)?,
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Psi {
            target,
            cap,
            format,
        } => cmd_psi(&target, cap, format),
        Command::Check { spec, cap, format } => cmd_check(&spec, cap, format),
        Command::Verify {
            suite,
            max_order,
            workers,
            cap,
            m_list,
            out,
            format,
        } => {
            configure_workers(workers);
            cmd_verify(&suite, max_order, cap, m_list, out, format)
        }
        Command::Scan {
            max_order,
            file,
            workers,
            cap,
            format,
            out,
        } => {
            configure_workers(workers);
            cmd_scan(max_order, file, cap, format, out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
