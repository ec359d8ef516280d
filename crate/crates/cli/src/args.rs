use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use negassoc::{parse_rational, DiscretizationSpec, Rational};

#[derive(Debug, Parser)]
#[command(
    name = "negassoc",
    version,
    about = "Mine positive and negative association rules from gene-expression matrices"
)]
pub struct Cli {
    /// Delimited matrix: header of gene names, one row per probe pattern.
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long, value_enum, default_value_t = Kind::Similarity)]
    pub input_kind: Kind,

    /// `max-minus-x:INT[:per-item]` or `threshold:FLOAT`.
    #[arg(long, default_value = "max-minus-x:25", value_parser = parse_discretization)]
    pub discretize: DiscretizationSpec,

    /// Input has genes as rows and probe patterns as columns.
    #[arg(long)]
    pub transpose: bool,

    #[arg(long, default_value = "0.03", value_parser = parse_fraction)]
    pub minsup: Rational,

    #[arg(long, default_value = "0.30", value_parser = parse_fraction)]
    pub minconf: Rational,

    /// Only emit positive rules.
    #[arg(long)]
    pub no_negative: bool,

    /// Seed negative candidates from every frequent (A, c) pair, not just
    /// from positive rules that passed minconf.
    #[arg(long)]
    pub allow_unfiltered_parents: bool,

    /// Comma-separated minsup values; enables sweep mode.
    #[arg(long, value_parser = parse_fraction_list)]
    pub sweep_minsup: Option<FractionList>,

    /// Comma-separated minconf values; enables sweep mode.
    #[arg(long, value_parser = parse_fraction_list)]
    pub sweep_minconf: Option<FractionList>,

    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Field delimiter of the input; `auto` picks tab for .tsv/.tab files.
    #[arg(long, value_enum, default_value_t = Delimiter::Auto)]
    pub delimiter: Delimiter,

    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Similarity,
    Boolean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Delimiter {
    Auto,
    Comma,
    Tab,
}

/// Sweep values with the text they were typed as, for echoing back.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionList(pub Vec<(String, Rational)>);

fn parse_fraction(s: &str) -> Result<Rational, String> {
    let v = parse_rational(s).ok_or_else(|| format!("{s:?} is not a decimal or ratio"))?;
    if v <= Rational::from_integer(0) || v > Rational::from_integer(1) {
        return Err(format!("{s} must lie in (0, 1]"));
    }
    Ok(v)
}

fn parse_fraction_list(s: &str) -> Result<FractionList, String> {
    let items = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| parse_fraction(p).map(|v| (p.to_owned(), v)))
        .collect::<Result<Vec<_>, _>>()?;
    if items.is_empty() {
        return Err("list is empty".into());
    }
    Ok(FractionList(items))
}

fn parse_discretization(s: &str) -> Result<DiscretizationSpec, String> {
    s.parse().map_err(|e: negassoc::ingest::SpecError| e.to_string())
}
