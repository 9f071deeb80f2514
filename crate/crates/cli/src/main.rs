//! Command-line front end: ingest a complex (file or catalog key), run the
//! full pipeline, and emit a structured invariant report with the
//! reducibility verdict.
//!
//! Exit codes: 0 success, 1 malformed input, 2 not a Z/2 duality complex,
//! 3 resource bound exceeded. Batch runs always exit 0 and record per-file
//! failures in the summary instead of aborting.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use spivak_core::complex::{ComplexDoc, ComplexFlag, SimplicialComplex};
use spivak_core::report::{analyze, AnalyzeOptions, Report};
use spivak_core::{catalog, Error};

#[derive(Parser)]
#[command(
    name = "spivak",
    about = "Homological invariants and reducibility verdicts for triangulated Poincare duality complexes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one complex: a JSON file path or a catalog key.
    Analyze {
        /// Path to a complex document, or a built-in catalog key.
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Assert the input is a closed manifold (adds the manifold flag).
        #[arg(long)]
        manifold: bool,
        /// Skip the dimension-4 d2 stage.
        #[arg(long)]
        skip_d2: bool,
        /// Include wall-clock stage timings (breaks byte-reproducibility).
        #[arg(long)]
        timings: bool,
    },
    /// Analyze every .json complex in a directory; reports are ordered by
    /// name and per-file failures never abort the batch.
    Batch {
        dir: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Worker threads for independent files (0 = one per core).
        #[arg(long, default_value = "0")]
        jobs: usize,
        #[arg(long)]
        manifold: bool,
        #[arg(long)]
        skip_d2: bool,
        /// Also write each full report to this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write every catalog entry to a directory in the JSON input format.
    Export { dir: PathBuf },
    /// List the built-in catalog keys.
    Keys,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::MalformedInput(_) | Error::UnknownKey(_) => 1,
        Error::SizeBoundExceeded(_) | Error::EnumerationBoundExceeded { .. } | Error::Overflow => 3,
        _ => 2,
    }
}

fn load_input(input: &str, manifold: bool) -> Result<SimplicialComplex, Error> {
    let complex = if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input)
            .map_err(|e| Error::MalformedInput(format!("cannot read {input}: {e}")))?;
        ComplexDoc::parse(&text)?.build()?
    } else {
        catalog::get(input)?.complex.clone()
    };
    Ok(if manifold {
        complex.with_flag(ComplexFlag::Manifold)
    } else {
        complex
    })
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
}

fn run_analyze(
    input: &str,
    format: Format,
    manifold: bool,
    skip_d2: bool,
    timings: bool,
) -> ExitCode {
    let complex = match load_input(input, manifold) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    let opts = AnalyzeOptions { skip_d2, timings };
    match analyze(&complex, &opts) {
        Ok(analysis) => {
            emit(&analysis.report, format);
            match analysis.pd_failure {
                Some(e) => {
                    eprintln!("not a Z/2 duality complex: {e}");
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

struct BatchRow {
    file: String,
    report: Option<Report>,
    error: Option<String>,
}

fn run_batch(
    dir: &Path,
    format: Format,
    jobs: usize,
    manifold: bool,
    skip_d2: bool,
    out: Option<&Path>,
) -> ExitCode {
    let mut files: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
            .collect(),
        Err(e) => {
            eprintln!("error: cannot read directory {}: {e}", dir.display());
            return ExitCode::from(1);
        }
    };
    files.sort();
    if let Some(out_dir) = out {
        if let Err(e) = std::fs::create_dir_all(out_dir) {
            eprintln!("error: cannot create {}: {e}", out_dir.display());
            return ExitCode::from(1);
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let opts = AnalyzeOptions {
        skip_d2,
        timings: false,
    };
    let mut rows: Vec<BatchRow> = pool.install(|| {
        files
            .par_iter()
            .map(|path| {
                let file = path
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default();
                let result = (|| -> Result<(Report, Option<Error>), Error> {
                    let complex = load_input(&path.to_string_lossy(), manifold)?;
                    let analysis = analyze(&complex, &opts)?;
                    Ok((analysis.report, analysis.pd_failure))
                })();
                match result {
                    Ok((report, pd_failure)) => BatchRow {
                        file,
                        report: Some(report),
                        error: pd_failure.map(|e| e.to_string()),
                    },
                    Err(e) => BatchRow {
                        file,
                        report: None,
                        error: Some(e.to_string()),
                    },
                }
            })
            .collect()
    });
    // output order is by report name then file, independent of completion
    rows.sort_by(|a, b| {
        let key = |r: &BatchRow| {
            (
                r.report.as_ref().map(|rep| rep.name.clone()),
                r.file.clone(),
            )
        };
        key(a).cmp(&key(b))
    });

    if let Some(out_dir) = out {
        for row in &rows {
            let Some(report) = &row.report else { continue };
            let stem = row.file.trim_end_matches(".json");
            let (name, body) = match format {
                Format::Json => (format!("{stem}.report.json"), report.to_json()),
                Format::Text => (format!("{stem}.report.txt"), report.to_text()),
            };
            if let Err(e) = std::fs::write(out_dir.join(&name), body) {
                eprintln!("error: cannot write {name}: {e}");
                return ExitCode::from(1);
            }
        }
    }

    match format {
        Format::Json => {
            let rows_json: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "file": r.file,
                        "error": r.error,
                        "report": r.report,
                    })
                })
                .collect();
            let failed = rows.iter().filter(|r| r.error.is_some()).count();
            let doc = serde_json::json!({
                "schema": 1,
                "reports": rows_json,
                "summary": {
                    "total": rows.len(),
                    "ok": rows.len() - failed,
                    "failed": failed,
                },
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
        Format::Text => {
            // CSV summary, one row per file
            println!("file,name,dim,pd_verified,orientable,outcome,rule,error");
            for r in &rows {
                let (name, dim, pd, orientable, outcome, rule) = match &r.report {
                    Some(rep) => (
                        rep.name.clone(),
                        rep.dim.to_string(),
                        rep.pd_verified.to_string(),
                        rep.orientable
                            .map_or_else(|| "n/a".to_string(), |b| b.to_string()),
                        rep.verdict.as_ref().map_or_else(
                            || "n/a".to_string(),
                            |v| match v.outcome {
                                spivak_core::verdict::Outcome::Reducible => "reducible".to_string(),
                                spivak_core::verdict::Outcome::Undetermined => {
                                    "undetermined".to_string()
                                }
                            },
                        ),
                        rep.verdict
                            .as_ref()
                            .and_then(|v| v.rule)
                            .map_or_else(|| "-".to_string(), |r| r.as_str().to_string()),
                    ),
                    None => (
                        String::new(),
                        "-".into(),
                        "-".into(),
                        "-".into(),
                        "-".into(),
                        "-".into(),
                    ),
                };
                let error = r.error.clone().unwrap_or_default();
                println!(
                    "{},{},{},{},{},{},{},{}",
                    r.file,
                    name,
                    dim,
                    pd,
                    orientable,
                    outcome,
                    rule,
                    error.replace(',', ";")
                );
            }
        }
    }
    ExitCode::SUCCESS
}

fn run_export(dir: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    for key in catalog::list() {
        let entry = catalog::get(key).expect("listed key exists");
        let doc = ComplexDoc::from_complex(&entry.complex);
        let path = dir.join(format!("{key}.json"));
        let mut json = serde_json::to_string_pretty(&doc)?;
        json.push('\n');
        std::fs::write(&path, json).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    // usage errors are malformed input (exit 1), never exit 2
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Analyze {
            input,
            format,
            manifold,
            skip_d2,
            timings,
        } => run_analyze(&input, format, manifold, skip_d2, timings),
        Command::Batch {
            dir,
            format,
            jobs,
            manifold,
            skip_d2,
            out,
        } => run_batch(&dir, format, jobs, manifold, skip_d2, out.as_deref()),
        Command::Export { dir } => match run_export(&dir) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Command::Keys => {
            for key in catalog::list() {
                println!("{key}");
            }
            ExitCode::SUCCESS
        }
    }
}
