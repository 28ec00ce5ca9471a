use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use fusioncheck::fusion::{fusion_system, FusionReport};
use fusioncheck::verify::{
    check, load_source, run_corpus, run_suites, CorpusOptions, Manifest, Source, Suite, TheoremId,
    VerificationReport,
};
use fusioncheck::Error;

#[derive(Parser)]
#[command(
    name = "fusioncheck",
    version,
    about = "Sylow fusion systems and supersolvability criteria"
)]
struct Cli {
    /// Directory searched for fixtures before the built-in ones.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fusion report and every applicable check for one group.
    Analyze {
        /// `fixture:<name>` or `builder:<expr>`; a bare expression is read as a builder.
        source: String,
        #[arg(long)]
        prime: u64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run theorem checks over a manifest.
    Verify {
        /// Repeatable; defaults to A, B, C and D.
        #[arg(long = "theorem", value_name = "ID")]
        theorems: Vec<String>,
        /// Defaults to the bundled corpus.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Record wall time per report.
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Collect evidence on an open question.
    Explore {
        /// 1 (odd p) or 2 (p = 2).
        #[arg(long)]
        question: u8,
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run property suites.
    Lemmas {
        /// Comma-separated suite names, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Input(Error),
    Red,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

#[derive(Serialize)]
struct Analysis {
    fusion: FusionReport,
    checks: Vec<VerificationReport>,
}

fn manifest(path: Option<&Path>) -> Result<Manifest, Error> {
    match path {
        Some(p) => Manifest::load(p),
        None => Ok(Manifest::default_corpus()),
    }
}

fn emit(json: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(p) => Ok(std::fs::write(p, format!("{json}\n"))?),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let dir = cli.fixtures.as_deref();
    match cli.command {
        Command::Analyze {
            source,
            prime,
            report,
        } => {
            let g = if source.starts_with("fixture:") || source.starts_with("builder:") {
                load_source(&source, dir)?
            } else {
                Source::Builder(fusioncheck::verify::parse_builder(&source)?).build(dir)?
            };
            let f = fusion_system(&g, prime)?;
            let mut checks = Vec::new();
            for t in TheoremId::ALL.into_iter().filter(|t| t.admits_prime(prime)) {
                checks.push(check(t, &g, prime, &[])?);
            }
            let violated = checks.iter().any(|r| r.is_violation());
            let a = Analysis {
                fusion: f.report()?,
                checks,
            };
            emit(
                &serde_json::to_string_pretty(&a).expect("serializable"),
                report.as_deref(),
            )?;
            if violated {
                return Err(Failure::Red);
            }
        }
        Command::Verify {
            theorems,
            manifest: m,
            jobs,
            timings,
            output,
        } => {
            let checks = if theorems.is_empty() {
                vec![TheoremId::A, TheoremId::B, TheoremId::C, TheoremId::D]
            } else {
                theorems
                    .iter()
                    .map(|t| t.parse())
                    .collect::<Result<Vec<TheoremId>, _>>()?
            };
            let opts = CorpusOptions {
                jobs,
                timings,
                fixture_dir: cli.fixtures.clone(),
            };
            let r = run_corpus(&manifest(m.as_deref())?, &checks, &opts)?;
            emit(&r.to_json(), output.as_deref())?;
            eprintln!(
                "{} reports, {} item errors, {} violations",
                r.reports, r.errors, r.violations
            );
            if r.violations > 0 {
                return Err(Failure::Red);
            }
        }
        Command::Explore {
            question,
            manifest: m,
            jobs,
            output,
        } => {
            let q = match question {
                1 => TheoremId::Q1,
                2 => TheoremId::Q2,
                _ => return Err(Error::UnknownSource(format!("question {question}")).into()),
            };
            let opts = CorpusOptions {
                jobs,
                timings: false,
                fixture_dir: cli.fixtures.clone(),
            };
            let r = run_corpus(&manifest(m.as_deref())?, &[q], &opts)?;
            emit(&r.to_json(), output.as_deref())?;
            eprintln!(
                "{} reports, {} candidate counterexamples",
                r.reports, r.candidate_counterexamples
            );
        }
        Command::Lemmas {
            suite,
            manifest: m,
            output,
        } => {
            let suites = Suite::parse_list(&suite)?;
            let reports = run_suites(&suites, &manifest(m.as_deref())?, dir);
            emit(
                &serde_json::to_string_pretty(&reports).expect("serializable"),
                output.as_deref(),
            )?;
            for r in &reports {
                eprintln!(
                    "{:<9} {} instances, {} counterexamples, {}",
                    r.suite,
                    r.instances,
                    r.counterexamples(),
                    if r.passed { "ok" } else { "FAILED" }
                );
            }
            if reports.iter().any(|r| !r.passed) {
                return Err(Failure::Red);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Red) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
