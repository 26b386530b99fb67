//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a validation, inversion or round-trip
//! check fails, 2 on usage, I/O or resource/corpus syntax errors.
//! `--resources` takes a file path, or `bundled:PAIR` for a shipped fragment.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::batch::{self, Execution};
use crate::bundled;
use crate::corpus::{CorpusError, GoldCorpus};
use crate::pipeline::{generate_sentence, Engine, GenerateError};
use crate::resources::{validate_filters, validate_injectivity, ResourceError, ResourceSet};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "anusaaraka",
    version,
    about = "Reversible transduction driven by resource files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Io {
    /// Input file (default: standard input).
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output file (default: standard output).
    #[arg(long = "out", value_name = "FILE")]
    output: Option<PathBuf>,
    /// Read all input first and process lines in parallel.
    #[arg(long)]
    batch: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transduce text, one sentence per line.
    Transduce {
        #[arg(long, value_name = "F")]
        resources: String,
        #[command(flatten)]
        io: Io,
        /// Also write the interlinear trace to standard error.
        #[arg(long)]
        trace: bool,
    },
    /// Recover source text from transduced output.
    Invert {
        #[arg(long, value_name = "F")]
        resources: String,
        #[command(flatten)]
        io: Io,
    },
    /// Check injectivity, and filter rules against a gold corpus.
    Validate {
        #[arg(long, value_name = "F")]
        resources: String,
        #[arg(long, value_name = "C")]
        corpus: Option<String>,
    },
    /// Print the interlinear trace of each input line.
    Trace {
        #[arg(long, value_name = "F")]
        resources: String,
        #[command(flatten)]
        io: Io,
    },
    /// Check that corpus and generated sentences survive transduce + invert.
    Roundtrip {
        #[arg(long, value_name = "F")]
        resources: String,
        #[arg(long, value_name = "C")]
        corpus: String,
        /// Number of generated sentences to add.
        #[arg(long, value_name = "N", default_value_t = 0)]
        random: usize,
        #[arg(long, value_name = "S", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "L", default_value_t = 12)]
        max_len: usize,
    },
    /// Emit random sentences over the resourced vocabulary.
    Gen {
        #[arg(long, value_name = "F")]
        resources: String,
        #[arg(long, value_name = "S", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "N", default_value_t = 10)]
        count: usize,
        #[arg(long, value_name = "L", default_value_t = 12)]
        max_len: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Resource(#[from] ResourceError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error("unknown bundled pair {0:?}")]
    UnknownBundle(String),
    #[error("{}: {source}", path.display())]
    File { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
    /// A check failed; diagnostics are already written.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => EXIT_FAILED,
            _ => EXIT_ERROR,
        }
    }
}

fn load_resources(arg: &str) -> Result<ResourceSet, CliError> {
    match arg.strip_prefix("bundled:") {
        Some(pair) => bundled::resources(pair).ok_or_else(|| CliError::UnknownBundle(pair.into())),
        None => Ok(ResourceSet::load(arg)?),
    }
}

fn load_corpus(arg: &str) -> Result<GoldCorpus, CliError> {
    match arg.strip_prefix("bundled:") {
        Some(pair) => bundled::corpus(pair).ok_or_else(|| CliError::UnknownBundle(pair.into())),
        None => Ok(GoldCorpus::load(arg)?),
    }
}

fn engine(arg: &str) -> Result<Engine, CliError> {
    Engine::new(load_resources(arg)?).map_err(|e| CliError::Failed(e.to_string()))
}

/// Runs the tool; returns the process exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = dispatch(cli.command, stdin, stdout, stderr).and_then(|()| Ok(stdout.flush()?));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "anusaaraka: {e}");
            e.code()
        }
    }
}

fn open_in<'a>(
    path: &Option<PathBuf>,
    stdin: &'a mut dyn BufRead,
) -> Result<Box<dyn BufRead + 'a>, CliError> {
    match path {
        Some(p) => {
            let f = File::open(p).map_err(|source| CliError::File {
                path: p.clone(),
                source,
            })?;
            Ok(Box::new(BufReader::new(f)))
        }
        None => Ok(Box::new(stdin)),
    }
}

fn open_out<'a>(
    path: &Option<PathBuf>,
    stdout: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, CliError> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|source| CliError::File {
                path: p.clone(),
                source,
            })?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(stdout)),
    }
}

/// Per-line result: output text, optional diagnostic, success flag.
type LineResult = (String, Option<String>, bool);

/// Streams input line by line (flushing after each), or with `--batch`
/// reads everything and fans out over [`batch`]. Returns the number of
/// lines that failed.
fn process_lines(
    io: &Io,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    one: &(dyn Fn(&str) -> LineResult + Sync),
    many: &dyn Fn(&[String]) -> Vec<LineResult>,
) -> Result<usize, CliError> {
    let input = open_in(&io.input, stdin)?;
    let mut out = open_out(&io.output, stdout)?;
    let mut failed = 0;
    let mut emit = |(text, diag, ok): LineResult, out: &mut dyn Write| -> Result<(), CliError> {
        writeln!(out, "{text}")?;
        if let Some(d) = diag {
            write!(stderr, "{d}")?;
        }
        failed += usize::from(!ok);
        Ok(())
    };
    if io.batch {
        let lines: Vec<String> = input.lines().collect::<Result<_, _>>()?;
        for r in many(&lines) {
            emit(r, &mut out)?;
        }
    } else {
        for line in input.lines() {
            emit(one(&line?), &mut out)?;
            out.flush()?;
        }
    }
    out.flush()?;
    Ok(failed)
}

fn dispatch(
    command: Command,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Transduce {
            resources,
            io,
            trace,
        } => {
            let engine = engine(&resources)?;
            let finish = |t: crate::pipeline::Transduction| {
                let diag = trace.then(|| t.trace.to_string());
                (t.output, diag, true)
            };
            process_lines(
                &io,
                stdin,
                stdout,
                stderr,
                &|line| finish(engine.transduce(line)),
                &|lines| {
                    batch::transduce_lines(lines, &engine, Execution::Parallel)
                        .into_iter()
                        .map(finish)
                        .collect()
                },
            )?;
            Ok(())
        }
        Command::Invert { resources, io } => {
            let engine = engine(&resources)?;
            // failing lines stay as empty lines so output stays aligned with input
            let finish = |r: Result<String, _>| match r {
                Ok(s) => (s, None, true),
                Err(e) => (String::new(), Some(format!("invert: {e}\n")), false),
            };
            let failed = process_lines(
                &io,
                stdin,
                stdout,
                stderr,
                &|line| finish(engine.invert(line)),
                &|lines| {
                    batch::invert_lines(lines, &engine, Execution::Parallel)
                        .into_iter()
                        .map(finish)
                        .collect()
                },
            )?;
            match failed {
                0 => Ok(()),
                n => Err(CliError::Failed(format!(
                    "{n} line(s) could not be inverted"
                ))),
            }
        }
        Command::Trace { resources, io } => {
            let engine = engine(&resources)?;
            let finish = |t: crate::pipeline::Transduction| {
                (t.trace.to_string().trim_end().to_string(), None, true)
            };
            process_lines(
                &io,
                stdin,
                stdout,
                stderr,
                &|line| finish(engine.transduce(line)),
                &|lines| {
                    batch::transduce_lines(lines, &engine, Execution::Parallel)
                        .into_iter()
                        .map(finish)
                        .collect()
                },
            )?;
            Ok(())
        }
        Command::Validate { resources, corpus } => {
            let rs = load_resources(&resources)?;
            let corpus = corpus.as_deref().map(load_corpus).transpose()?;
            let injectivity = validate_injectivity(&rs);
            let filters = corpus
                .map(|c| validate_filters(&rs, &c))
                .unwrap_or_default();
            write!(stdout, "{injectivity}")?;
            for v in &filters.violations {
                writeln!(stdout, "filter violation: {v}")?;
            }
            let problems = injectivity.collisions.len()
                + injectivity.ambiguities.len()
                + filters.violations.len();
            if problems == 0 {
                writeln!(stdout, "{}: ok", rs.pair_id())?;
                Ok(())
            } else {
                Err(CliError::Failed(format!(
                    "{}: {problems} problem(s)",
                    rs.pair_id()
                )))
            }
        }
        Command::Roundtrip {
            resources,
            corpus,
            random,
            seed,
            max_len,
        } => {
            let engine = engine(&resources)?;
            let corpus = load_corpus(&corpus)?;
            let sources: Vec<&str> = corpus.entries.iter().map(|e| e.source.as_str()).collect();
            let gold = batch::roundtrip(&sources, &engine, Execution::Parallel);
            let generated = if random > 0 {
                batch::generate(&engine, seed, random, max_len, Execution::Parallel)?
            } else {
                Vec::new()
            };
            let gen = batch::roundtrip(&generated, &engine, Execution::Parallel);

            let mut mismatches = 0;
            for entry in &corpus.entries {
                let Some(expected) = &entry.expected else {
                    continue;
                };
                let got = engine.transduce(&entry.source).output;
                if &got != expected {
                    mismatches += 1;
                    writeln!(
                        stderr,
                        "corpus line {}: expected {expected:?}, got {got:?}",
                        entry.line
                    )?;
                }
            }
            for f in gold.failures.iter().chain(&gen.failures) {
                let recovered = match &f.recovered {
                    Ok(s) => format!("{s:?}"),
                    Err(e) => e.to_string(),
                };
                writeln!(
                    stderr,
                    "round trip: {:?} -> {:?} -> {recovered}",
                    f.source, f.output
                )?;
            }
            writeln!(
                stdout,
                "corpus: {}/{} round-trip",
                gold.passed(),
                gold.total
            )?;
            writeln!(
                stdout,
                "generated: {}/{} round-trip",
                gen.passed(),
                gen.total
            )?;
            let checked = corpus
                .entries
                .iter()
                .filter(|e| e.expected.is_some())
                .count();
            writeln!(
                stdout,
                "expected output: {}/{checked} exact",
                checked - mismatches
            )?;
            if gold.is_clean() && gen.is_clean() && mismatches == 0 {
                Ok(())
            } else {
                Err(CliError::Failed("round trip failed".into()))
            }
        }
        Command::Gen {
            resources,
            seed,
            count,
            max_len,
        } => {
            let rs = load_resources(&resources)?;
            for i in 0..count as u64 {
                writeln!(
                    stdout,
                    "{}",
                    generate_sentence(&rs, seed.wrapping_add(i), max_len)?
                )?;
            }
            Ok(())
        }
    }
}
