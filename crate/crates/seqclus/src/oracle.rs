//! Brute-force reference for contiguous-sequence support, used as the
//! independent check for the index and the miner. No inverted indexes here:
//! everything is a direct sliding-window scan, intended for small corpora.

use std::collections::BTreeMap;

use crate::dataset::{Dataset, ElementId, Tid};

/// Enumerate every contiguous subsequence of length `1..=max_len` occurring
/// anywhere in the corpus, with its exact trajectory-id support.
pub fn enumerate_contiguous(
    dataset: &Dataset,
    max_len: usize,
) -> BTreeMap<Vec<ElementId>, Vec<Tid>> {
    let mut supports: BTreeMap<Vec<ElementId>, Vec<Tid>> = BTreeMap::new();
    for traj in dataset.trajectories() {
        for len in 1..=max_len.min(traj.elements.len()) {
            for window in traj.elements.windows(len) {
                let entry = supports.entry(window.to_vec()).or_default();
                if entry.last() != Some(&traj.tid) {
                    entry.push(traj.tid);
                }
            }
        }
    }
    supports
}

/// Direct sliding-window membership test: does `tid`'s sequence contain
/// `seq` as a contiguous run?
pub fn contains_contiguous(dataset: &Dataset, tid: Tid, seq: &[ElementId]) -> bool {
    !seq.is_empty()
        && dataset
            .sequence(tid)
            .windows(seq.len())
            .any(|w| w == seq)
}

/// Support of one sequence by full scan over all trajectories.
pub fn scan_support(dataset: &Dataset, seq: &[ElementId]) -> Vec<Tid> {
    (0..dataset.n_trajectories())
        .filter(|&tid| contains_contiguous(dataset, tid, seq))
        .collect()
}
