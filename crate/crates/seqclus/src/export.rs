//! Serialized form of mining results, plus file-writing helpers.
//!
//! The JSON document is self-contained: sequences are element strings and
//! members carry both numeric tids and trajectory keys, so a result file
//! can be read back and checked against the corpus it came from.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::Dataset;
use crate::miner::CoCluster;

/// Shape of the corpus a result document was mined from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub n_trajectories: usize,
    pub n_elements: usize,
    pub n_users: Option<usize>,
}

impl CorpusSummary {
    pub fn of(dataset: &Dataset) -> Self {
        CorpusSummary {
            n_trajectories: dataset.n_trajectories(),
            n_elements: dataset.n_elements(),
            n_users: dataset.n_users(),
        }
    }
}

/// One co-cluster in exportable form. `rank` is 1-based insertion order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoClusterRecord {
    pub rank: usize,
    pub sequence: Vec<String>,
    pub n_trajectories: usize,
    pub tids: Vec<usize>,
    pub trajectory_keys: Vec<String>,
    /// Sorted distinct user labels of the member trajectories.
    pub users: Vec<String>,
    pub cost: i64,
    pub max_overlap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoClusterDocument {
    pub corpus: CorpusSummary,
    pub coclusters: Vec<CoClusterRecord>,
}

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("writing {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("document does not match the corpus: {0}")]
    Mismatch(String),
}

/// Build the exportable document for `results` mined from `dataset`.
pub fn document(results: &[CoCluster], dataset: &Dataset) -> CoClusterDocument {
    let coclusters = results
        .iter()
        .enumerate()
        .map(|(i, cc)| {
            let users: BTreeSet<String> = cc
                .tids
                .iter()
                .filter_map(|&tid| dataset.trajectory(tid).user.clone())
                .collect();
            CoClusterRecord {
                rank: i + 1,
                sequence: dataset.resolve(&cc.seq),
                n_trajectories: cc.tids.len(),
                tids: cc.tids.clone(),
                trajectory_keys: cc.tids.iter().map(|&t| dataset.trajectory_key(t)).collect(),
                users: users.into_iter().collect(),
                cost: cc.cost_at_insertion,
                max_overlap: cc.max_overlap_at_acceptance,
            }
        })
        .collect();
    CoClusterDocument {
        corpus: CorpusSummary::of(dataset),
        coclusters,
    }
}

/// Reconstruct miner-level co-clusters from a document, verifying that it
/// matches `dataset` (shape, element symbols, tids, trajectory keys).
pub fn document_to_coclusters(
    doc: &CoClusterDocument,
    dataset: &Dataset,
) -> Result<Vec<CoCluster>, ExportError> {
    let expected = CorpusSummary::of(dataset);
    if doc.corpus != expected {
        return Err(ExportError::Mismatch(format!(
            "document corpus {:?} but loaded corpus {:?}",
            doc.corpus, expected
        )));
    }
    doc.coclusters
        .iter()
        .map(|record| {
            let seq = record
                .sequence
                .iter()
                .map(|s| {
                    dataset
                        .element_id(s)
                        .ok_or_else(|| ExportError::Mismatch(format!("unknown element '{s}'")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            for (&tid, key) in record.tids.iter().zip(&record.trajectory_keys) {
                if tid >= dataset.n_trajectories() {
                    return Err(ExportError::Mismatch(format!("tid {tid} out of range")));
                }
                let actual = dataset.trajectory_key(tid);
                if actual != *key {
                    return Err(ExportError::Mismatch(format!(
                        "tid {tid} is '{actual}' in the corpus, not '{key}'"
                    )));
                }
            }
            Ok(CoCluster {
                tids: record.tids.clone(),
                seq,
                cost_at_insertion: record.cost,
                max_overlap_at_acceptance: record.max_overlap,
            })
        })
        .collect()
}

/// Serialize `doc` as pretty JSON and write it atomically.
pub fn write_coclusters(path: &Path, doc: &CoClusterDocument) -> Result<(), ExportError> {
    let mut bytes = serde_json::to_vec_pretty(doc)?;
    bytes.push(b'\n');
    atomic_write(path, &bytes).map_err(|source| ExportError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn read_coclusters(path: &Path) -> Result<CoClusterDocument, ExportError> {
    let file = File::open(path).map_err(|source| ExportError::Io {
        path: path.to_owned(),
        source,
    })?;
    Ok(serde_json::from_reader(file)?)
}

/// Write the per-position flow table used for alluvial-style diagrams:
/// one row per cluster per sequence position, weighted by cluster size.
pub fn write_alluvial_flows(path: &Path, doc: &CoClusterDocument) -> Result<(), ExportError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["cluster_id", "element", "position", "weight"])?;
    for record in &doc.coclusters {
        for (position, element) in record.sequence.iter().enumerate() {
            writer.write_record([
                record.rank.to_string(),
                element.clone(),
                position.to_string(),
                record.n_trajectories.to_string(),
            ])?;
        }
    }
    let bytes = writer.into_inner().expect("vec writer cannot fail");
    atomic_write(path, &bytes).map_err(|source| ExportError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Write `contents` to `path` via a temp file in the same directory plus
/// rename, so readers never observe a half-written file.
pub fn atomic_write(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let parent = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match parent {
        Some(dir) => tempfile::NamedTempFile::new_in(dir)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{intern_corpus, ElementId, RawTrajectory};

    fn labeled_corpus() -> Dataset {
        let raw = vec![
            RawTrajectory {
                key: Some("ta".into()),
                user: Some("u1".into()),
                elements: vec!["a".into(), "b".into(), "c".into()],
            },
            RawTrajectory {
                key: Some("tb".into()),
                user: Some("u2".into()),
                elements: vec!["a".into(), "b".into()],
            },
            RawTrajectory {
                key: Some("tc".into()),
                user: Some("u1".into()),
                elements: vec!["c".into(), "d".into()],
            },
        ];
        intern_corpus(raw).unwrap()
    }

    fn results() -> Vec<CoCluster> {
        vec![
            CoCluster {
                tids: vec![0, 1],
                seq: vec![ElementId(0), ElementId(1)],
                cost_at_insertion: -3,
                max_overlap_at_acceptance: 0.0,
            },
            CoCluster {
                tids: vec![2],
                seq: vec![ElementId(2), ElementId(3)],
                cost_at_insertion: -1,
                max_overlap_at_acceptance: 0.25,
            },
        ]
    }

    #[test]
    fn document_fields_resolved_against_the_corpus() {
        let d = labeled_corpus();
        let doc = document(&results(), &d);
        assert_eq!(doc.corpus.n_trajectories, 3);
        assert_eq!(doc.corpus.n_elements, 4);
        assert_eq!(doc.corpus.n_users, Some(2));
        assert_eq!(doc.coclusters.len(), 2);
        let first = &doc.coclusters[0];
        assert_eq!(first.rank, 1);
        assert_eq!(first.sequence, ["a", "b"]);
        assert_eq!(first.tids, [0, 1]);
        assert_eq!(first.trajectory_keys, ["ta", "tb"]);
        assert_eq!(first.users, ["u1", "u2"]);
        assert_eq!(first.cost, -3);
        assert_eq!(doc.coclusters[1].rank, 2);
        assert_eq!(doc.coclusters[1].users, ["u1"]);
    }

    #[test]
    fn write_read_reconstruct_round_trip() {
        let d = labeled_corpus();
        let doc = document(&results(), &d);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("coclusters.json");
        write_coclusters(&path, &doc).unwrap();
        let back = read_coclusters(&path).unwrap();
        assert_eq!(back, doc);
        assert_eq!(document_to_coclusters(&back, &d).unwrap(), results());
    }

    #[test]
    fn empty_results_still_describe_the_corpus() {
        let d = labeled_corpus();
        let doc = document(&[], &d);
        assert!(doc.coclusters.is_empty());
        assert_eq!(doc.corpus, CorpusSummary::of(&d));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("coclusters.json");
        write_coclusters(&path, &doc).unwrap();
        assert_eq!(read_coclusters(&path).unwrap(), doc);
    }

    #[test]
    fn mismatched_documents_are_rejected() {
        let d = labeled_corpus();
        let mut doc = document(&results(), &d);
        doc.coclusters[0].sequence[0] = "zebra".into();
        assert!(matches!(
            document_to_coclusters(&doc, &d),
            Err(ExportError::Mismatch(msg)) if msg.contains("zebra")
        ));

        let mut doc = document(&results(), &d);
        doc.coclusters[0].tids[0] = 99;
        assert!(matches!(
            document_to_coclusters(&doc, &d),
            Err(ExportError::Mismatch(msg)) if msg.contains("99")
        ));

        let mut doc = document(&results(), &d);
        doc.coclusters[0].trajectory_keys[0] = "other".into();
        assert!(matches!(
            document_to_coclusters(&doc, &d),
            Err(ExportError::Mismatch(_))
        ));

        let mut doc = document(&results(), &d);
        doc.corpus.n_trajectories = 7;
        assert!(matches!(
            document_to_coclusters(&doc, &d),
            Err(ExportError::Mismatch(_))
        ));
    }

    #[test]
    fn alluvial_rows_one_per_cluster_position() {
        let d = labeled_corpus();
        let doc = document(&results(), &d);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("alluvial.csv");
        write_alluvial_flows(&path, &doc).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines,
            [
                "cluster_id,element,position,weight",
                "1,a,0,2",
                "1,b,1,2",
                "2,c,0,1",
                "2,d,1,1",
            ]
        );
    }

    #[test]
    fn atomic_write_replaces_existing_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.txt");
        atomic_write(&path, b"first").unwrap();
        atomic_write(&path, b"second").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"second");
    }
}
