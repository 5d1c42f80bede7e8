//! Square CSV matrices with an optional header row of node labels.

use std::fs;
use std::path::Path;

use combinf_core::connectivity::default_labels;
use combinf_core::ConnectivityMatrix;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MatrixFileError {
    #[error("matrix file is empty")]
    Empty,
    #[error("row {row}, column {col}: cannot parse `{value}` as a number")]
    Parse { row: usize, col: usize, value: String },
    #[error("row {row} has {got} fields, expected {expected}")]
    Ragged { row: usize, got: usize, expected: usize },
    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },
    #[error("header has {labels} labels but the matrix has {cols} columns")]
    HeaderWidth { labels: usize, cols: usize },
    #[error("not symmetric at ({i}, {j}): {a} vs {b} (tolerance {tol})")]
    Asymmetric { i: usize, j: usize, a: f64, b: f64, tol: f64 },
    #[error("{0}")]
    Csv(String),
    #[error("{0}")]
    Invalid(String),
}

/// Parses CSV text. The first row is treated as labels when any of its
/// fields is non-numeric. Row/column positions in errors are 1-based.
pub fn parse_matrix(text: &str, symmetry_tol: f64) -> Result<ConnectivityMatrix, MatrixFileError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| MatrixFileError::Csv(e.to_string()))?;
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        records.push(rec);
    }
    if records.is_empty() {
        return Err(MatrixFileError::Empty);
    }

    let header = records[0].iter().any(|f| f.parse::<f64>().is_err());
    let labels: Option<Vec<String>> = header.then(|| records[0].iter().map(str::to_string).collect());
    let first_data_line = if header { 2 } else { 1 };
    let body = &records[usize::from(header)..];

    let cols = body.first().map(|r| r.len()).unwrap_or(0);
    let mut rows = Vec::with_capacity(body.len());
    for (k, rec) in body.iter().enumerate() {
        let row = first_data_line + k;
        if rec.len() != cols {
            return Err(MatrixFileError::Ragged {
                row,
                got: rec.len(),
                expected: cols,
            });
        }
        let values = rec
            .iter()
            .enumerate()
            .map(|(c, f)| {
                f.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| MatrixFileError::Parse {
                        row,
                        col: c + 1,
                        value: f.to_string(),
                    })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(values);
    }
    if rows.len() != cols || cols == 0 {
        return Err(MatrixFileError::NotSquare {
            rows: rows.len(),
            cols,
        });
    }
    let labels = match labels {
        Some(l) if l.len() != cols => {
            return Err(MatrixFileError::HeaderWidth {
                labels: l.len(),
                cols,
            })
        }
        Some(l) => l,
        None => default_labels(cols),
    };
    let m = ConnectivityMatrix::from_rows(labels, rows).map_err(|e| MatrixFileError::Invalid(e.to_string()))?;
    if let Err(combinf_core::Error::NotSymmetric { i, j, a, b }) = m.check_symmetric(symmetry_tol) {
        return Err(MatrixFileError::Asymmetric {
            i: i + 1,
            j: j + 1,
            a,
            b,
            tol: symmetry_tol,
        });
    }
    Ok(m)
}

pub fn read_matrix(path: &Path, symmetry_tol: f64) -> Result<ConnectivityMatrix, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_matrix(&text, symmetry_tol).map_err(|e| format!("{}: {e}", path.display()))
}

/// CSV text with a header row; values use the shortest representation that
/// parses back to the same `f64`.
pub fn matrix_to_csv(m: &ConnectivityMatrix) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(m.labels()).expect("in-memory write");
    for i in 0..m.dim() {
        w.write_record(m.row(i).iter().map(|v| v.to_string()))
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

pub fn write_matrix(path: &Path, m: &ConnectivityMatrix) -> Result<(), String> {
    fs::write(path, matrix_to_csv(m)).map_err(|e| format!("{}: {e}", path.display()))
}
