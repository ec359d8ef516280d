mod args;
mod output;

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use negassoc::pipeline::{load_matrix, IngestOptions, InputKind, PipelineError};
use negassoc::{mine_all_rules, sweep, ExactRuleSet, MiningParams, Pruning, Rational, RuleOptions};

use args::{Cli, Delimiter, FractionList, Kind};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_IO: u8 = 4;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    fn io(context: &str, err: io::Error) -> Self {
        Self::new(EXIT_IO, format!("{context}: {err}"))
    }
}

impl From<PipelineError> for Failure {
    fn from(err: PipelineError) -> Self {
        let code = if err.is_io() {
            EXIT_IO
        } else if err.is_degenerate() {
            EXIT_DEGENERATE
        } else if matches!(err, PipelineError::Parse(_)) {
            EXIT_PARSE
        } else {
            EXIT_USAGE
        };
        let prefix = match code {
            EXIT_DEGENERATE => "degenerate input",
            EXIT_PARSE => "parse error",
            EXIT_IO => "i/o error",
            _ => "error",
        };
        Failure::new(code, format!("{prefix}: {err}"))
    }
}

fn delimiter_for(path: &Path, choice: Delimiter) -> u8 {
    match choice {
        Delimiter::Comma => b',',
        Delimiter::Tab => b'\t',
        Delimiter::Auto => match path.extension().and_then(|e| e.to_str()) {
            Some("tsv" | "tab") => b'\t',
            _ => b',',
        },
    }
}

fn values_or(list: &Option<FractionList>, single: Rational) -> Vec<(String, Rational)> {
    match list {
        Some(FractionList(items)) => items.clone(),
        None => vec![(
            negassoc::render_rational(&single, 4).trim_end_matches('0').trim_end_matches('.').to_owned(),
            single,
        )],
    }
}

fn execute(cli: &Cli) -> Result<Vec<u8>, Failure> {
    let file = File::open(&cli.input).map_err(|e| Failure::io(&cli.input.display().to_string(), e))?;
    let ingest = IngestOptions {
        kind: match cli.input_kind {
            Kind::Similarity => InputKind::Similarity,
            Kind::Boolean => InputKind::Boolean,
        },
        delimiter: delimiter_for(&cli.input, cli.delimiter),
        transpose: cli.transpose,
        discretization: cli.discretize,
    };
    let matrix = load_matrix(BufReader::new(file), &ingest)?;
    let options = RuleOptions {
        emit_negative: !cli.no_negative,
        allow_unfiltered_parents: cli.allow_unfiltered_parents,
    };
    let mut buf = Vec::new();

    if cli.sweep_minsup.is_some() || cli.sweep_minconf.is_some() {
        let supports = values_or(&cli.sweep_minsup, cli.minsup);
        let confidences = values_or(&cli.sweep_minconf, cli.minconf);
        let s: Vec<Rational> = supports.iter().map(|p| p.1).collect();
        let c: Vec<Rational> = confidences.iter().map(|p| p.1).collect();
        let rows = sweep(&matrix, &s, &c, Pruning::default(), &options)
            .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
        let label = |list: &[(String, Rational)], v: &Rational| {
            list.iter().find(|p| &p.1 == v).map(|p| p.0.clone()).unwrap_or_else(|| v.to_string())
        };
        let labelled: Vec<_> = rows
            .into_iter()
            .map(|row| {
                let (ls, lc) = (label(&supports, &row.minsup), label(&confidences, &row.minconf));
                (row, ls, lc)
            })
            .collect();
        output::write_sweep(&mut buf, &labelled, cli.format).map_err(|e| Failure::io("output", e))?;
        eprintln!("sweep: {} grid points", labelled.len());
        return Ok(buf);
    }

    let params =
        MiningParams::new(cli.minsup, cli.minconf).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let rules: ExactRuleSet = mine_all_rules(&matrix, &params, &options)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("internal error: {e}")))?;
    for (candidate, why) in &rules.undefined {
        let text = candidate.describe(matrix.item_labels());
        eprintln!("skipped {text}: {why}");
    }
    output::write_rules(&mut buf, &matrix, &rules, cli.format).map_err(|e| Failure::io("output", e))?;
    eprintln!(
        "{} transactions, {} items, new_support {}: {} positive rules, {} negative rules",
        matrix.n_transactions(),
        matrix.n_items(),
        rules.frequent.new_support(),
        rules.positive_count(),
        rules.negative_count()
    );
    Ok(buf)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = execute(&cli).and_then(|bytes| match &cli.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| Failure::io(&path.display().to_string(), e)),
        None => io::stdout().lock().write_all(&bytes).map_err(|e| Failure::io("stdout", e)),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("negassoc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
