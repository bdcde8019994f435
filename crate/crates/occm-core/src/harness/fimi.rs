//! Flat-file ingestion: FIMI transaction files, label files, item names.
//!
//! A transaction file has one transaction per line as whitespace-separated
//! non-negative integer item ids. The universe is `0..=max_id`. Blank lines
//! are rejected; transaction order is preserved.

use std::fs;
use std::path::Path;

use crate::data::TransactionDB;
use crate::error::Error;
use crate::Result;

pub fn load_transactions(path: &Path) -> Result<TransactionDB> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))!;
    parse_transactions(&text, &path.display().to_string())
}

pub fn parse_transactions(text: &str, origin: &str) -> Result<TransactionDB> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut max_id: usize = 0;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            return Err(Error::Parse {
                path: origin.to_string(),
                line: line_no,
                reason: "blank line (empty transactions are not allowed)".into(),
            });
        }
        let mut row = Vec::new();
        for token in line.split_whitespace() {
            let id: usize = token.parse().map_err(|_| Error::Parse {
                path: origin.to_string(),
                line: line_no,
                reason: format!("expected a non-negative integer item id, got {token:?}"),
            })?;
            max_id = max_id.max(id);
            row.push(id);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyFile {
            path: origin.to_string(),
        });
    }
    TransactionDB::from_item_lists(max_id + 1, &rows)
}

/// Inverse of [`load_transactions`]. Reloading reproduces the same bitsets
/// provided the top item id occurs somewhere in the database.
pub fn save_transactions(db: &TransactionDB, path: &Path) -> Result<()> {
    let mut out = String::new();
    for (i, t) in db.transactions().iter().enumerate() {
        let items: Vec<String> = t.ones().map(|x| x.to_string()).collect();
        if items.is_empty() {
            return Err(Error::Parse {
                path: path.display().to_string(),
                line: i + 1,
                reason: "transaction is empty and cannot be serialized".into(),
            });
        }
        out.push_str(&items.join(" "));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path.display().to_string(), e))
}

/// Ground-truth labels remapped to dense class ids.
#[derive(Clone, Debug)]
pub struct LabelAssignment {
    /// per-transaction dense class id in `0..classes`
    pub dense: Vec<usize>,
    pub classes: usize,
    /// original label value -> dense id, ascending by original value
    pub mapping: Vec<(i64, usize)>,
}

pub fn load_labels(path: &Path, n: usize) -> Result<LabelAssignment> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_labels(&text, &path.display().to_string(), n)
}

pub fn parse_labels(text: &str, origin: &str, n: usize) -> Result<LabelAssignment> {
    let mut raw = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let token = line.trim();
        if token.is_empty() {
            return Err(Error::Parse {
                path: origin.to_string(),
                line: idx + 1,
                reason: "blank label line".into(),
            });
        }
        let value: i64 = token.parse().map_err(|_| Error::Parse {
            path: origin.to_string(),
            line: idx + 1,
            reason: format!("expected an integer label, got {token:?}"),
        })?;
        raw.push(value);
    }
    if raw.len() != n {
        return Err(Error::LabelCountMismatch {
            labels: raw.len(),
            transactions: n,
        });
    }
    let mut distinct: Vec<i64> = raw.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let mapping: Vec<(i64, usize)> = distinct.iter().copied().zip(0..).collect();
    let dense = raw
        .iter()
        .map(|v| distinct.binary_search(v).expect("label present") )
        .collect();
    Ok(LabelAssignment {
        dense,
        classes: distinct.len(),
        mapping,
    })
}

/// One item name per line; line `i` names item `i`.
pub fn load_item_names(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    Ok(text.lines().map(|l| l.trim().to_string()).collect())
}
