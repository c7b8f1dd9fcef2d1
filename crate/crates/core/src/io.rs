//! File ingestion and persistence.
//!
//! Matrices are plain CSV (`,` separator, `.` decimal point, optional single
//! header line). Condensed distance matrices use a small text format:
//!
//! ```text
//! {"n": 3}
//! 1.5
//! 2.0
//! 0.25
//! ```
//!
//! The first line is a JSON object carrying the observation count; each
//! following line holds one entry in condensed pair order (see
//! [`crate::data::condensed_index`]). Values are written with the shortest
//! representation that parses back to the identical `f64`.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::data::{n_pairs, CondensedDistanceMatrix, DataMatrix, LabelVector};
use crate::error::{Error, Result};

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

/// Reads a numeric CSV file into a [`DataMatrix`].
///
/// Row and column numbers in parse errors are 1-based file positions.
pub fn read_matrix_csv(path: impl AsRef<Path>, has_header: bool) -> Result<DataMatrix> {
    let path = path.as_ref();
    parse_matrix_csv(open(path)?, has_header)
}

pub fn parse_matrix_csv(reader: impl std::io::Read, has_header: bool) -> Result<DataMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    for result in rdr.records() {
        let record = result.map_err(|e| {
            let row = e.position().map_or(0, |p| p.line() as usize);
            Error::Parse {
                row,
                col: 0,
                msg: e.to_string(),
            }
        })?;
        let line = record.position().map_or(rows.len() + 1, |p| p.line() as usize);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::Parse {
                row: line,
                col: record.len().min(expected) + 1,
                msg: format!("ragged row: {} fields, expected {expected}", record.len()),
            });
        }
        let mut row = Vec::with_capacity(expected);
        for (c, cell) in record.iter().enumerate() {
            let v: f64 = cell.parse().map_err(|_| Error::Parse {
                row: line,
                col: c + 1,
                msg: format!("cell {cell:?} is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row: line,
                    col: c + 1,
                    msg: format!("cell {cell:?} is not finite"),
                });
            }
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            row: 1,
            col: 1,
            msg: "file contains no data rows".into(),
        });
    }
    DataMatrix::from_rows(&rows)
}

/// Writes a matrix as headerless CSV with round-trip exact values.
pub fn write_matrix_csv(path: impl AsRef<Path>, x: &DataMatrix) -> Result<()> {
    let mut buf = Vec::new();
    write_matrix_to(&mut buf, x).expect("writing to memory");
    write_atomic(path, &buf)
}

fn write_matrix_to(w: &mut impl Write, x: &DataMatrix) -> std::io::Result<()> {
    for i in 0..x.n_rows() {
        for j in 0..x.n_cols() {
            if j > 0 {
                w.write_all(b",")?;
            }
            write!(w, "{:?}", x.get(i, j))?;
        }
        w.write_all(b"\n")?;
    }
    w.flush()
}

#[derive(Serialize, Deserialize)]
struct CondensedHeader {
    n: usize,
}

pub fn write_condensed(path: impl AsRef<Path>, d: &CondensedDistanceMatrix) -> Result<()> {
    let mut buf = serde_json::to_string(&CondensedHeader { n: d.n() })?;
    buf.push('\n');
    for v in d.entries() {
        buf.push_str(&format!("{v:?}\n"));
    }
    write_atomic(path, buf.as_bytes())
}

pub fn read_condensed(path: impl AsRef<Path>) -> Result<CondensedDistanceMatrix> {
    let path = path.as_ref();
    let reader = BufReader::new(open(path)?);
    let mut lines = reader.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| Error::Format("empty condensed-matrix file".into()))?
        .map_err(|e| Error::io(path, e))?;
    let header: CondensedHeader = serde_json::from_str(&header_line)
        .map_err(|e| Error::Format(format!("bad header {header_line:?}: {e}")))?;
    let expected = n_pairs(header.n);
    let mut entries = Vec::with_capacity(expected);
    for (k, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let v: f64 = text
            .parse()
            .map_err(|_| Error::Format(format!("line {}: {text:?} is not a number", k + 2)))?;
        entries.push(v);
    }
    if entries.len() != expected {
        return Err(Error::Format(format!(
            "header says n = {} ({expected} entries), file holds {}",
            header.n,
            entries.len()
        )));
    }
    CondensedDistanceMatrix::new(header.n, entries)
}

/// Reads one positive integer label per line (blank lines ignored).
pub fn read_labels(path: impl AsRef<Path>) -> Result<LabelVector> {
    let path = path.as_ref();
    let reader = BufReader::new(open(path)?);
    let mut labels = Vec::new();
    for (k, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let l: u32 = text.parse().map_err(|_| Error::Parse {
            row: k + 1,
            col: 1,
            msg: format!("label {text:?} is not a positive integer"),
        })?;
        labels.push(l);
    }
    LabelVector::new(labels)
}

pub fn write_labels(w: &mut impl Write, labels: &LabelVector) -> std::io::Result<()> {
    for l in labels.as_slice() {
        writeln!(w, "{l}")?;
    }
    w.flush()
}

pub fn write_labels_file(path: impl AsRef<Path>, labels: &LabelVector) -> Result<()> {
    let mut buf = Vec::new();
    write_labels(&mut buf, labels).expect("writing to memory");
    write_atomic(path, &buf)
}

/// Writes `contents` to `path` through a sibling temporary file, so readers
/// never observe a partially written file.
pub fn write_atomic(path: impl AsRef<Path>, contents: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp, contents).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        Error::io(path, e)
    })
}
