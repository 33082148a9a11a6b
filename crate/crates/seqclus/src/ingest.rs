//! Corpus loading from long-format CSV and JSONL files.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::dataset::{intern_corpus, CorpusError, Dataset, RawTrajectory};

/// On-disk corpus layouts.
///
/// `CsvLong` is one row per visited element with a header naming at least
/// `tid`, `order`, and the element column (`element` unless a dimension is
/// given); an optional `user` column labels trajectories. `Jsonl` is one
/// JSON object per line: `{"id", "user"?, "elements"}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    CsvLong,
    Jsonl,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("header is missing required column '{0}'")]
    MissingColumn(String),
    #[error("line {line}: order '{value}' is not an integer")]
    BadOrder { value: String, line: u64 },
    #[error("line {line}: trajectory '{key}' repeats order {order}")]
    DuplicateOrder { key: String, order: i64, line: u64 },
    #[error("line {line}: trajectory '{key}' is labeled with both user '{first}' and user '{second}'")]
    UserConflict {
        key: String,
        first: String,
        second: String,
        line: u64,
    },
    #[error("line {line}: {source}")]
    Json {
        line: u64,
        source: serde_json::Error,
    },
    #[error("line {line}: duplicate trajectory id '{id}'")]
    DuplicateId { id: String, line: u64 },
    #[error("line {line}: trajectory '{id}' has no elements")]
    EmptyElements { id: String, line: u64 },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

/// Load a corpus from `path`. For CSV, `dimension` names the element
/// column; `None` means `element`. JSONL ignores `dimension`.
pub fn load_corpus(
    path: &Path,
    format: CorpusFormat,
    dimension: Option<&str>,
) -> Result<Dataset, LoadError> {
    let raw = match format {
        CorpusFormat::CsvLong => read_csv_long(path, dimension.unwrap_or("element"))?,
        CorpusFormat::Jsonl => read_jsonl(path)?,
    };
    Ok(intern_corpus(raw)?)
}

struct CsvGroup {
    key: String,
    user: Option<String>,
    rows: Vec<(i64, String)>,
    seen_orders: HashSet<i64>,
}

fn read_csv_long(path: &Path, element_column: &str) -> Result<Vec<RawTrajectory>, LoadError> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let column = |name: &str| -> Result<usize, LoadError> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| LoadError::MissingColumn(name.to_owned()))
    };
    let tid_idx = column("tid")?;
    let order_idx = column("order")?;
    let element_idx = column(element_column)?;
    let user_idx = headers.iter().position(|h| h == "user");

    let mut groups: Vec<CsvGroup> = Vec::new();
    let mut group_of: HashMap<String, usize> = HashMap::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let key = record.get(tid_idx).unwrap_or("").to_owned();
        let order_text = record.get(order_idx).unwrap_or("");
        let order: i64 = order_text.parse().map_err(|_| LoadError::BadOrder {
            value: order_text.to_owned(),
            line,
        })?;
        let element = record.get(element_idx).unwrap_or("").to_owned();
        let user = user_idx
            .and_then(|i| record.get(i))
            .filter(|u| !u.is_empty())
            .map(str::to_owned);

        let idx = *group_of.entry(key.clone()).or_insert_with(|| {
            groups.push(CsvGroup {
                key,
                user: None,
                rows: Vec::new(),
                seen_orders: HashSet::new(),
            });
            groups.len() - 1
        });
        let group = &mut groups[idx];
        if !group.seen_orders.insert(order) {
            return Err(LoadError::DuplicateOrder {
                key: group.key.clone(),
                order,
                line,
            });
        }
        match (&group.user, user) {
            (Some(first), Some(second)) if *first != second => {
                return Err(LoadError::UserConflict {
                    key: group.key.clone(),
                    first: first.clone(),
                    second,
                    line,
                });
            }
            (None, Some(user)) => group.user = Some(user),
            _ => {}
        }
        group.rows.push((order, element));
    }

    Ok(groups
        .into_iter()
        .map(|mut g| {
            g.rows.sort_by_key(|&(order, _)| order);
            RawTrajectory {
                key: Some(g.key),
                user: g.user,
                elements: g.rows.into_iter().map(|(_, e)| e).collect(),
            }
        })
        .collect())
}

#[derive(Deserialize)]
struct JsonlRecord {
    id: String,
    #[serde(default)]
    user: Option<String>,
    elements: Vec<String>,
}

fn read_jsonl(path: &Path) -> Result<Vec<RawTrajectory>, LoadError> {
    let file = File::open(path).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })?;
    let mut raw = Vec::new();
    let mut seen_ids: HashSet<String> = HashSet::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line_no = i as u64 + 1;
        let line = line.map_err(|source| LoadError::Io {
            path: path.to_owned(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let record: JsonlRecord = serde_json::from_str(&line).map_err(|source| {
            LoadError::Json {
                line: line_no,
                source,
            }
        })?;
        if !seen_ids.insert(record.id.clone()) {
            return Err(LoadError::DuplicateId {
                id: record.id,
                line: line_no,
            });
        }
        if record.elements.is_empty() {
            return Err(LoadError::EmptyElements {
                id: record.id,
                line: line_no,
            });
        }
        raw.push(RawTrajectory {
            key: Some(record.id),
            user: record.user.filter(|u| !u.is_empty()),
            elements: record.elements,
        });
    }
    Ok(raw)
}
