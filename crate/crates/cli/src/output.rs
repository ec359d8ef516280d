use std::io::{self, Write};

use negassoc::{render_rational, BooleanMatrix, ExactRuleSet, Polarity, Rational, Scalar, SweepRow};
use serde::Serialize;

use crate::args::Format;

const MACHINE_PLACES: u32 = 4;

fn percent(v: &Rational) -> String {
    format!("{}%", render_rational(&(v * Rational::from_integer(100)), 0))
}

#[derive(Serialize)]
struct RuleRecord<'a> {
    polarity: Polarity,
    antecedent: Vec<&'a str>,
    consequent: Vec<&'a str>,
    support: f64,
    confidence: f64,
    support_exact: String,
    confidence_exact: String,
}

fn labels<'a>(matrix: &'a BooleanMatrix, set: &negassoc::Itemset) -> Vec<&'a str> {
    set.items().iter().map(|&i| matrix.item_labels()[i].as_str()).collect()
}

pub fn write_rules<W: Write>(
    out: &mut W,
    matrix: &BooleanMatrix,
    rules: &ExactRuleSet,
    format: Format,
) -> io::Result<()> {
    let names = matrix.item_labels();
    match format {
        Format::Csv => {
            writeln!(out, "polarity,antecedent,consequent,support,confidence")?;
            for rule in &rules.rules {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    rule.polarity.as_str(),
                    rule.antecedent.display_with(names),
                    rule.consequent.display_with(names),
                    rule.support.to_decimal(MACHINE_PLACES),
                    rule.confidence.to_decimal(MACHINE_PLACES),
                )?;
            }
        }
        Format::Records => {
            for rule in &rules.rules {
                let record = RuleRecord {
                    polarity: rule.polarity,
                    antecedent: labels(matrix, &rule.antecedent),
                    consequent: labels(matrix, &rule.consequent),
                    support: rule.support.to_f64(),
                    confidence: rule.confidence.to_f64(),
                    support_exact: rule.support.to_string(),
                    confidence_exact: rule.confidence.to_string(),
                };
                serde_json::to_writer(&mut *out, &record)?;
                writeln!(out)?;
            }
        }
        Format::Table => {
            let described: Vec<String> = rules.rules.iter().map(|r| r.describe(names)).collect();
            let width = described.iter().map(|d| d.chars().count()).max().unwrap_or(0).max(4);
            writeln!(out, "{:<18}  {:<width$}  {:>7}  {:>10}", "polarity", "rule", "support", "confidence")?;
            for (rule, text) in rules.rules.iter().zip(&described) {
                let pad = width - text.chars().count();
                writeln!(
                    out,
                    "{:<18}  {}{}  {:>7}  {:>10}",
                    rule.polarity.as_str(),
                    text,
                    " ".repeat(pad),
                    percent(&rule.support),
                    percent(&rule.confidence),
                )?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepRecord<'a> {
    minsup: &'a str,
    minconf: &'a str,
    positive_count: usize,
    negative_count: usize,
}

/// `labels` pairs each row with the text the thresholds were given as.
pub fn write_sweep<W: Write>(
    out: &mut W,
    rows: &[(SweepRow, String, String)],
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "minsup,minconf,positive_count,negative_count")?;
            for (row, s, c) in rows {
                writeln!(out, "{s},{c},{},{}", row.positive_count, row.negative_count)?;
            }
        }
        Format::Table => {
            writeln!(
                out,
                "{:>8}  {:>8}  {:>14}  {:>14}",
                "minsup", "minconf", "positive_count", "negative_count"
            )?;
            for (row, s, c) in rows {
                writeln!(out, "{s:>8}  {c:>8}  {:>14}  {:>14}", row.positive_count, row.negative_count)?;
            }
        }
        Format::Records => {
            for (row, s, c) in rows {
                let rec = SweepRecord {
                    minsup: s,
                    minconf: c,
                    positive_count: row.positive_count,
                    negative_count: row.negative_count,
                };
                serde_json::to_writer(&mut *out, &rec)?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
