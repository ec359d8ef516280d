//! Reading similarity and Boolean matrices from delimited text, and turning
//! similarity values into a Boolean transaction matrix.
//!
//! File layout for both matrix kinds: a header row whose first cell names the
//! label column and whose remaining cells are gene names, then one row per
//! probe pattern starting with its name. Rows are transactions, gene columns
//! are items.

use std::collections::HashSet;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use num_traits::Float;
use thiserror::Error;

use crate::bitvec::BitVec;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("input is empty: expected a header row")]
    MissingHeader,
    #[error("line {line}, column {column}: cell {cell:?} is not a number")]
    NotNumeric { line: u64, column: usize, cell: String },
    #[error("line {line}, column {column}: value {cell:?} is outside [0, 1]")]
    OutOfRange { line: u64, column: usize, cell: String },
    #[error("line {line}, column {column}: cell {cell:?} is not 0 or 1")]
    NotBoolean { line: u64, column: usize, cell: String },
    #[error("line {line}: expected {expected} cells, found {found}")]
    Ragged { line: u64, expected: usize, found: usize },
    #[error("line {line}, column {column}: duplicate label {label:?}")]
    DuplicateLabel { line: u64, column: usize, label: String },
    #[error("line {line}, column {column}: empty label")]
    EmptyLabel { line: u64, column: usize },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl IngestError {
    /// True for failures of the underlying reader rather than the content.
    pub fn is_io(&self) -> bool {
        match self {
            IngestError::Io(_) => true,
            IngestError::Csv(e) => matches!(e.kind(), csv::ErrorKind::Io(_)),
            _ => false,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum DiscretizeError {
    #[error("highest value in the matrix is 0; max-minus-x% would mark nothing meaningful")]
    ZeroMaximum,
    #[error("matrix has no cells")]
    EmptyMatrix,
}

#[derive(Debug, Error, PartialEq)]
pub enum SpecError {
    #[error("x must satisfy 0 < x < 100, got {0}")]
    XPercent(u32),
    #[error("beta must satisfy 0 <= beta < 1, got {0}")]
    Beta(f64),
    #[error("unrecognised discretization {0:?}; expected max-minus-x:INT or threshold:FLOAT")]
    Syntax(String),
}

/// Dense probe-pattern × gene matrix of Jaccard similarities.
#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityMatrix<T = f64> {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    values: Vec<T>,
}

impl<T: Float> SimilarityMatrix<T> {
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        rows: Vec<Vec<T>>,
    ) -> Result<Self, IngestError> {
        if rows.len() != row_labels.len() {
            return Err(IngestError::Shape(format!(
                "{} row labels for {} rows",
                row_labels.len(),
                rows.len()
            )));
        }
        check_unique(&col_labels, 1, |i| i + 2, true)?;
        check_unique(&row_labels, 2, |_| 1, false)?;
        let mut values = Vec::with_capacity(rows.len() * col_labels.len());
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != col_labels.len() {
                return Err(IngestError::Ragged {
                    line: r as u64 + 2,
                    expected: col_labels.len() + 1,
                    found: row.len() + 1,
                });
            }
            for (c, v) in row.into_iter().enumerate() {
                if !(v >= T::zero() && v <= T::one()) {
                    return Err(IngestError::OutOfRange {
                        line: r as u64 + 2,
                        column: c + 2,
                        cell: format!("{}", v.to_f64().unwrap_or(f64::NAN)),
                    });
                }
                values.push(v);
            }
        }
        Ok(Self { row_labels, col_labels, values })
    }

    pub fn n_rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.values[row * self.n_cols() + col]
    }

    pub fn row(&self, row: usize) -> &[T] {
        let w = self.n_cols();
        &self.values[row * w..(row + 1) * w]
    }

    /// Highest value in the whole matrix, `None` when there are no cells.
    pub fn max_value(&self) -> Option<T> {
        self.values.iter().copied().reduce(T::max)
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.n_rows(), self.n_cols());
        let mut values = Vec::with_capacity(self.values.len());
        for j in 0..c {
            for i in 0..r {
                values.push(self.get(i, j));
            }
        }
        Self { row_labels: self.col_labels.clone(), col_labels: self.row_labels.clone(), values }
    }
}

/// Transactions × items bit matrix stored column-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanMatrix {
    transaction_labels: Vec<String>,
    item_labels: Vec<String>,
    columns: Vec<BitVec>,
    row_popcounts: Vec<u32>,
}

impl BooleanMatrix {
    pub fn from_rows(
        transaction_labels: Vec<String>,
        item_labels: Vec<String>,
        rows: &[Vec<bool>],
    ) -> Result<Self, IngestError> {
        if rows.len() != transaction_labels.len() {
            return Err(IngestError::Shape(format!(
                "{} transaction labels for {} rows",
                transaction_labels.len(),
                rows.len()
            )));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != item_labels.len() {
                return Err(IngestError::Ragged {
                    line: r as u64 + 2,
                    expected: item_labels.len() + 1,
                    found: row.len() + 1,
                });
            }
        }
        let columns =
            (0..item_labels.len()).map(|c| BitVec::from_bools(rows.iter().map(|row| row[c]))).collect();
        Self::from_columns(transaction_labels, item_labels, columns)
    }

    pub fn from_columns(
        transaction_labels: Vec<String>,
        item_labels: Vec<String>,
        columns: Vec<BitVec>,
    ) -> Result<Self, IngestError> {
        if columns.len() != item_labels.len() {
            return Err(IngestError::Shape(format!(
                "{} item labels for {} columns",
                item_labels.len(),
                columns.len()
            )));
        }
        let n = transaction_labels.len();
        if let Some(bad) = columns.iter().find(|c| c.len() != n) {
            return Err(IngestError::Shape(format!(
                "column of length {} in a matrix of {n} transactions",
                bad.len()
            )));
        }
        check_unique(&item_labels, 1, |i| i + 2, true)?;
        check_unique(&transaction_labels, 2, |_| 1, false)?;
        let mut row_popcounts = vec![0u32; n];
        for col in &columns {
            for t in col.iter_ones() {
                row_popcounts[t] += 1;
            }
        }
        Ok(Self { transaction_labels, item_labels, columns, row_popcounts })
    }

    /// Matrix with generated labels `t0..`, `i0..`; convenient for tests.
    pub fn from_unlabelled_rows(rows: &[Vec<bool>]) -> Self {
        let width = rows.first().map_or(0, Vec::len);
        let tl = (0..rows.len()).map(|i| format!("t{i}")).collect();
        let il = (0..width).map(|i| format!("i{i}")).collect();
        Self::from_rows(tl, il, rows).expect("rows must be rectangular")
    }

    pub fn n_transactions(&self) -> usize {
        self.transaction_labels.len()
    }

    pub fn n_items(&self) -> usize {
        self.item_labels.len()
    }

    pub fn transaction_labels(&self) -> &[String] {
        &self.transaction_labels
    }

    pub fn item_labels(&self) -> &[String] {
        &self.item_labels
    }

    pub fn column(&self, item: usize) -> &BitVec {
        &self.columns[item]
    }

    pub fn columns(&self) -> &[BitVec] {
        &self.columns
    }

    pub fn row_popcounts(&self) -> &[u32] {
        &self.row_popcounts
    }

    pub fn get(&self, transaction: usize, item: usize) -> bool {
        self.columns[item].get(transaction)
    }

    pub fn item_index(&self, label: &str) -> Option<usize> {
        self.item_labels.iter().position(|l| l == label)
    }

    pub fn transpose(&self) -> Self {
        let columns = (0..self.n_transactions())
            .map(|t| BitVec::from_bools(self.columns.iter().map(|c| c.get(t))))
            .collect();
        Self::from_columns(self.item_labels.clone(), self.transaction_labels.clone(), columns)
            .expect("transpose of a valid matrix is valid")
    }
}

fn check_unique(
    labels: &[String],
    line_of: u64,
    column_of: impl Fn(usize) -> usize,
    header: bool,
) -> Result<(), IngestError> {
    let mut seen = HashSet::with_capacity(labels.len());
    for (i, label) in labels.iter().enumerate() {
        let line = if header { line_of } else { line_of + i as u64 };
        if label.is_empty() {
            return Err(IngestError::EmptyLabel { line, column: column_of(i) });
        }
        if !seen.insert(label.as_str()) {
            return Err(IngestError::DuplicateLabel { line, column: column_of(i), label: label.clone() });
        }
    }
    Ok(())
}

struct RawTable {
    header: Vec<String>,
    rows: Vec<(u64, String, Vec<String>)>,
}

fn read_table<R: Read>(source: R, delimiter: u8) -> Result<RawTable, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .delimiter(delimiter)
        .trim(csv::Trim::All)
        .from_reader(source);
    let mut records = reader.records();
    let header = match records.next() {
        Some(rec) => rec?,
        None => return Err(IngestError::MissingHeader),
    };
    let header: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
    let mut rows = Vec::new();
    for rec in records {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != header.len() + 1 {
            return Err(IngestError::Ragged { line, expected: header.len() + 1, found: rec.len() });
        }
        let label = rec[0].to_owned();
        let cells = rec.iter().skip(1).map(str::to_owned).collect();
        rows.push((line, label, cells));
    }
    Ok(RawTable { header, rows })
}

/// Parses a delimited similarity matrix. Every cell must be a decimal in `[0, 1]`.
pub fn parse_similarity_matrix<T, R>(source: R, delimiter: u8) -> Result<SimilarityMatrix<T>, IngestError>
where
    T: Float + FromStr,
    R: Read,
{
    let table = read_table(source, delimiter)?;
    check_unique(&table.header, 1, |i| i + 2, true)?;
    let mut row_labels = Vec::with_capacity(table.rows.len());
    let mut values = Vec::with_capacity(table.rows.len() * table.header.len());
    let mut seen = HashSet::new();
    for (line, label, cells) in table.rows {
        if label.is_empty() {
            return Err(IngestError::EmptyLabel { line, column: 1 });
        }
        if !seen.insert(label.clone()) {
            return Err(IngestError::DuplicateLabel { line, column: 1, label });
        }
        for (c, cell) in cells.into_iter().enumerate() {
            let column = c + 2;
            let v: T = match cell.parse() {
                Ok(v) => v,
                Err(_) => return Err(IngestError::NotNumeric { line, column, cell }),
            };
            if !(v >= T::zero() && v <= T::one()) {
                return Err(IngestError::OutOfRange { line, column, cell });
            }
            values.push(v);
        }
        row_labels.push(label);
    }
    Ok(SimilarityMatrix { row_labels, col_labels: table.header, values })
}

/// Parses a delimited 0/1 matrix.
pub fn parse_boolean_matrix<R: Read>(source: R, delimiter: u8) -> Result<BooleanMatrix, IngestError> {
    let table = read_table(source, delimiter)?;
    let mut labels = Vec::with_capacity(table.rows.len());
    let mut rows = Vec::with_capacity(table.rows.len());
    for (line, label, cells) in table.rows {
        let row = cells
            .into_iter()
            .enumerate()
            .map(|(c, cell)| match cell.as_str() {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(IngestError::NotBoolean { line, column: c + 2, cell }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        labels.push(label);
        rows.push(row);
    }
    BooleanMatrix::from_rows(labels, table.header, &rows)
}

fn write_row<W: Write>(
    out: &mut W,
    delimiter: u8,
    cells: impl Iterator<Item = String>,
) -> std::io::Result<()> {
    let mut first = true;
    for cell in cells {
        if !first {
            out.write_all(&[delimiter])?;
        }
        first = false;
        out.write_all(cell.as_bytes())?;
    }
    out.write_all(b"\n")
}

/// Header cell emitted above the label column by the serializers.
pub const LABEL_HEADER: &str = "id";

pub fn write_boolean_matrix<W: Write>(m: &BooleanMatrix, mut out: W, delimiter: u8) -> std::io::Result<()> {
    write_row(
        &mut out,
        delimiter,
        std::iter::once(LABEL_HEADER.to_owned()).chain(m.item_labels.iter().cloned()),
    )?;
    for (t, label) in m.transaction_labels.iter().enumerate() {
        let cells = (0..m.n_items()).map(|i| if m.get(t, i) { "1" } else { "0" }.to_owned());
        write_row(&mut out, delimiter, std::iter::once(label.clone()).chain(cells))?;
    }
    Ok(())
}

/// Six decimal places per value, rows in stored order.
pub fn write_similarity_matrix<T: Float, W: Write>(
    m: &SimilarityMatrix<T>,
    mut out: W,
    delimiter: u8,
) -> std::io::Result<()> {
    write_row(
        &mut out,
        delimiter,
        std::iter::once(LABEL_HEADER.to_owned()).chain(m.col_labels.iter().cloned()),
    )?;
    for (r, label) in m.row_labels.iter().enumerate() {
        let cells = m.row(r).iter().map(|v| format!("{:.6}", v.to_f64().unwrap_or(f64::NAN)));
        write_row(&mut out, delimiter, std::iter::once(label.clone()).chain(cells))?;
    }
    Ok(())
}

/// Where the highest value (HV) for max-minus-x% is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HvScope {
    /// One HV for the whole matrix.
    #[default]
    Global,
    /// One HV per gene column.
    PerItem,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DiscretizationSpec {
    /// Bit is 1 iff `value > HV - (x/100)·HV`.
    MaxMinusX { x_percent: u32, scope: HvScope },
    /// Bit is 1 iff `value > beta`.
    Threshold { beta: f64 },
}

impl DiscretizationSpec {
    pub fn max_minus_x(x_percent: u32) -> Result<Self, SpecError> {
        Self::max_minus_x_scoped(x_percent, HvScope::Global)
    }

    pub fn max_minus_x_scoped(x_percent: u32, scope: HvScope) -> Result<Self, SpecError> {
        if x_percent == 0 || x_percent >= 100 {
            return Err(SpecError::XPercent(x_percent));
        }
        Ok(Self::MaxMinusX { x_percent, scope })
    }

    pub fn threshold(beta: f64) -> Result<Self, SpecError> {
        if !(0.0..1.0).contains(&beta) {
            return Err(SpecError::Beta(beta));
        }
        Ok(Self::Threshold { beta })
    }
}

impl FromStr for DiscretizationSpec {
    type Err = SpecError;

    /// `max-minus-x:25`, `max-minus-x:25:per-item`, `threshold:0.5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || SpecError::Syntax(s.to_owned());
        let mut parts = s.trim().split(':');
        let method = parts.next().ok_or_else(syntax)?;
        let arg = parts.next().ok_or_else(syntax)?;
        let extra = parts.next();
        if parts.next().is_some() {
            return Err(syntax());
        }
        match (method, extra) {
            ("max-minus-x", scope) => {
                let x: u32 = arg.trim().parse().map_err(|_| syntax())?;
                let scope = match scope {
                    None | Some("global") => HvScope::Global,
                    Some("per-item") => HvScope::PerItem,
                    Some(_) => return Err(syntax()),
                };
                Self::max_minus_x_scoped(x, scope)
            }
            ("threshold", None) => {
                let beta: f64 = arg.trim().parse().map_err(|_| syntax())?;
                Self::threshold(beta)
            }
            _ => Err(syntax()),
        }
    }
}

impl fmt::Display for DiscretizationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MaxMinusX { x_percent, scope: HvScope::Global } => write!(f, "max-minus-x:{x_percent}"),
            Self::MaxMinusX { x_percent, scope: HvScope::PerItem } => {
                write!(f, "max-minus-x:{x_percent}:per-item")
            }
            Self::Threshold { beta } => write!(f, "threshold:{beta}"),
        }
    }
}

fn cutoff<T: Float>(hv: T, x_percent: u32) -> T {
    let x = T::from(x_percent).expect("percent fits any float");
    let hundred = T::from(100).expect("100 fits any float");
    hv - x / hundred * hv
}

/// Maps similarity values to bits. Comparisons are strict, so a value equal
/// to the cutoff becomes 0. Labels are carried over unchanged.
pub fn discretize<T: Float>(
    matrix: &SimilarityMatrix<T>,
    spec: &DiscretizationSpec,
) -> Result<BooleanMatrix, DiscretizeError> {
    let (rows, cols) = (matrix.n_rows(), matrix.n_cols());
    let cutoffs: Vec<T> = match *spec {
        DiscretizationSpec::Threshold { beta } => {
            vec![T::from(beta).expect("beta is a finite fraction"); cols]
        }
        DiscretizationSpec::MaxMinusX { x_percent, scope } => {
            let hv = matrix.max_value().ok_or(DiscretizeError::EmptyMatrix)?;
            if hv <= T::zero() {
                return Err(DiscretizeError::ZeroMaximum);
            }
            match scope {
                HvScope::Global => vec![cutoff(hv, x_percent); cols],
                HvScope::PerItem => (0..cols)
                    .map(|c| {
                        let col_hv = (0..rows).map(|r| matrix.get(r, c)).fold(T::zero(), T::max);
                        cutoff(col_hv, x_percent)
                    })
                    .collect(),
            }
        }
    };
    let columns =
        (0..cols).map(|c| BitVec::from_bools((0..rows).map(|r| matrix.get(r, c) > cutoffs[c]))).collect();
    Ok(BooleanMatrix::from_columns(matrix.row_labels.clone(), matrix.col_labels.clone(), columns)
        .expect("labels were validated on the similarity matrix"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    fn column_matrix(values: &[f64]) -> SimilarityMatrix {
        let rows = values.iter().map(|&v| vec![v]).collect();
        SimilarityMatrix::new(labels("r", values.len()), vec!["g".into()], rows).unwrap()
    }

    #[test]
    fn parses_single_row() {
        let m: SimilarityMatrix =
            parse_similarity_matrix("id,Cer1,T\nEMAGE:1024,1,0\n".as_bytes(), b',').unwrap();
        assert_eq!(m.n_rows(), 1);
        assert_eq!(m.col_labels(), &["Cer1", "T"]);
        assert_eq!(m.row(0), &[1.0, 0.0]);
    }

    #[test]
    fn header_only_is_empty_matrix() {
        let m: SimilarityMatrix = parse_similarity_matrix("id,Cer1,T\n".as_bytes(), b',').unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (0, 2));
    }

    #[test]
    fn missing_header() {
        let err = parse_similarity_matrix::<f64, _>("".as_bytes(), b',').unwrap_err();
        assert!(matches!(err, IngestError::MissingHeader));
    }

    #[test]
    fn out_of_range_names_cell() {
        let err = parse_similarity_matrix::<f64, _>("id,a,b\nr1,0.5,1.2\n".as_bytes(), b',').unwrap_err();
        match &err {
            IngestError::OutOfRange { line, column, cell } => {
                assert_eq!((*line, *column, cell.as_str()), (2, 3, "1.2"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.to_string().contains("line 2, column 3"));
    }

    #[test]
    fn non_numeric_ragged_duplicate() {
        let e = parse_similarity_matrix::<f64, _>("id,a\nr1,x\n".as_bytes(), b',').unwrap_err();
        assert!(matches!(e, IngestError::NotNumeric { line: 2, column: 2, .. }));
        let e = parse_similarity_matrix::<f64, _>("id,a,b\nr1,0.1\n".as_bytes(), b',').unwrap_err();
        assert!(matches!(e, IngestError::Ragged { line: 2, expected: 3, found: 2 }));
        let e = parse_similarity_matrix::<f64, _>("id,a,a\nr1,0,0\n".as_bytes(), b',').unwrap_err();
        assert!(matches!(e, IngestError::DuplicateLabel { line: 1, column: 3, .. }));
        let e = parse_similarity_matrix::<f64, _>("id,a\nr1,0\nr1,1\n".as_bytes(), b',').unwrap_err();
        assert!(matches!(e, IngestError::DuplicateLabel { line: 3, column: 1, .. }));
        let e = parse_similarity_matrix::<f64, _>("id,a\nr1,NaN\n".as_bytes(), b',').unwrap_err();
        assert!(matches!(e, IngestError::OutOfRange { .. }));
        let e = parse_similarity_matrix::<f64, _>("id,a\nr1,\n".as_bytes(), b',').unwrap_err();
        assert!(matches!(e, IngestError::NotNumeric { .. }));
    }

    #[test]
    fn tab_delimited_f32() {
        let m: SimilarityMatrix<f32> =
            parse_similarity_matrix("id\ta\tb\nr\t0.25\t0.5\n".as_bytes(), b'\t').unwrap();
        assert_eq!(m.row(0), &[0.25f32, 0.5]);
    }

    #[test]
    fn boolean_parse_and_errors() {
        let m = parse_boolean_matrix("id,g\nt,1\n".as_bytes(), b',').unwrap();
        assert_eq!(m.n_transactions(), 1);
        assert_eq!(m.column(0).count_ones(), 1);
        assert_eq!(m.row_popcounts(), &[1]);
        let e = parse_boolean_matrix("id,g\nt,2\n".as_bytes(), b',').unwrap_err();
        assert!(matches!(e, IngestError::NotBoolean { line: 2, column: 2, .. }));
        let e = parse_boolean_matrix("id,g\nt,0.5\n".as_bytes(), b',').unwrap_err();
        assert!(matches!(e, IngestError::NotBoolean { .. }));
    }

    #[test]
    fn all_equal_values_become_ones() {
        let m = column_matrix(&[0.4, 0.4, 0.4]);
        let b = discretize(&m, &DiscretizationSpec::max_minus_x(25).unwrap()).unwrap();
        assert_eq!(b.column(0).count_ones(), 3);
    }

    #[test]
    fn threshold_is_strict() {
        let m = column_matrix(&[0.2, 0.5, 0.9]);
        let b = discretize(&m, &DiscretizationSpec::threshold(0.5).unwrap()).unwrap();
        assert_eq!(b.column(0).iter().collect::<Vec<_>>(), vec![false, false, true]);
    }

    #[test]
    fn zero_maximum_is_degenerate() {
        let m = column_matrix(&[0.0, 0.0]);
        assert_eq!(
            discretize(&m, &DiscretizationSpec::max_minus_x(25).unwrap()).unwrap_err(),
            DiscretizeError::ZeroMaximum
        );
        let b = discretize(&m, &DiscretizationSpec::threshold(0.0).unwrap()).unwrap();
        assert_eq!(b.column(0).count_ones(), 0);
    }

    #[test]
    fn per_item_scope_uses_column_maximum() {
        let m = SimilarityMatrix::new(labels("r", 2), labels("g", 2), vec![vec![0.9, 0.1], vec![0.5, 0.09]])
            .unwrap();
        let global = discretize(&m, &DiscretizationSpec::max_minus_x(25).unwrap()).unwrap();
        assert_eq!(global.column(1).count_ones(), 0);
        let per_item =
            discretize(&m, &DiscretizationSpec::max_minus_x_scoped(25, HvScope::PerItem).unwrap()).unwrap();
        assert_eq!(per_item.column(0).iter().collect::<Vec<_>>(), vec![true, false]);
        assert_eq!(per_item.column(1).iter().collect::<Vec<_>>(), vec![true, true]);
    }

    #[test]
    fn spec_validation_and_parsing() {
        assert_eq!(DiscretizationSpec::max_minus_x(0), Err(SpecError::XPercent(0)));
        assert_eq!(DiscretizationSpec::max_minus_x(100), Err(SpecError::XPercent(100)));
        assert_eq!(DiscretizationSpec::threshold(1.0), Err(SpecError::Beta(1.0)));
        assert!(DiscretizationSpec::threshold(-0.1).is_err());
        assert_eq!("max-minus-x:25".parse(), DiscretizationSpec::max_minus_x(25));
        assert_eq!(
            "max-minus-x:10:per-item".parse(),
            DiscretizationSpec::max_minus_x_scoped(10, HvScope::PerItem)
        );
        assert_eq!("threshold:0.5".parse(), DiscretizationSpec::threshold(0.5));
        assert!("threshold".parse::<DiscretizationSpec>().is_err());
        assert!("median:3".parse::<DiscretizationSpec>().is_err());
        for s in ["max-minus-x:25", "max-minus-x:10:per-item", "threshold:0.5"] {
            assert_eq!(s.parse::<DiscretizationSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn similarity_serializer_six_places() {
        let m = column_matrix(&[0.5, 0.291310]);
        let mut out = Vec::new();
        write_similarity_matrix(&m, &mut out, b',').unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "id,g\nr0,0.500000\nr1,0.291310\n");
    }

    #[test]
    fn transpose_swaps_labels() {
        let m = BooleanMatrix::from_rows(
            labels("t", 2),
            labels("i", 3),
            &[vec![true, false, true], vec![false, false, true]],
        )
        .unwrap();
        let t = m.transpose();
        assert_eq!(t.n_transactions(), 3);
        assert_eq!(t.item_labels(), &["t0", "t1"]);
        assert_eq!(t.row_popcounts(), &[1, 0, 2]);
        assert_eq!(t.transpose(), m);
    }
}
