//! Inverted-index structures the miner is built on: element posting lists,
//! per-trajectory sequences, and the mutable element frequency table.

use crate::dataset::{Dataset, ElementId, Tid};

/// Index bundle over one corpus.
///
/// `postings` maps each element to the sorted set of trajectories containing
/// it at least once. Frequencies count occurrences, not trajectories; the
/// current table is decremented as co-clusters are accepted, the initial one
/// is frozen at construction.
pub struct IndexBundle<'a> {
    dataset: &'a Dataset,
    postings: Vec<Vec<Tid>>,
    freqs: Vec<u64>,
    initial_freqs: Vec<u64>,
}

impl<'a> IndexBundle<'a> {
    pub fn dataset(&self) -> &'a Dataset {
        self.dataset
    }

    pub fn n_elements(&self) -> usize {
        self.postings.len()
    }

    /// Sorted trajectory ids containing `e`; empty for unknown ids.
    pub fn posting(&self, e: ElementId) -> &[Tid] {
        self.postings.get(e.index()).map_or(&[], Vec::as_slice)
    }

    /// Ordered element sequence of a trajectory.
    pub fn sequence(&self, tid: Tid) -> &[ElementId] {
        self.dataset.sequence(tid)
    }

    /// Current (possibly decremented) occurrence count of `e`.
    pub fn frequency(&self, e: ElementId) -> u64 {
        self.freqs.get(e.index()).copied().unwrap_or(0)
    }

    /// Occurrence count of `e` at construction time.
    pub fn initial_frequency(&self, e: ElementId) -> u64 {
        self.initial_freqs.get(e.index()).copied().unwrap_or(0)
    }

    pub(crate) fn decrement_frequency(&mut self, e: ElementId, by: u64) {
        if let Some(f) = self.freqs.get_mut(e.index()) {
            *f = f.saturating_sub(by);
        }
    }

    /// All element ids, in interning order.
    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.postings.len()).map(|i| ElementId(i as u32))
    }
}

/// Build posting lists and the occurrence frequency table for a corpus.
pub fn initialize_data(dataset: &Dataset) -> IndexBundle<'_> {
    let m = dataset.n_elements();
    let mut postings: Vec<Vec<Tid>> = vec![Vec::new(); m];
    let mut freqs: Vec<u64> = vec![0; m];
    for traj in dataset.trajectories() {
        for &e in &traj.elements {
            freqs[e.index()] += 1;
            let list = &mut postings[e.index()];
            if list.last() != Some(&traj.tid) {
                list.push(traj.tid);
            }
        }
    }
    // tids are visited in increasing order, so each list is already sorted
    IndexBundle {
        dataset,
        initial_freqs: freqs.clone(),
        postings,
        freqs,
    }
}

/// Trajectories containing `seq` as a contiguous, order-preserving run.
///
/// Intersects the posting lists of the distinct elements, then verifies
/// contiguity against the trajectory sequences. Unknown elements yield an
/// empty support.
pub fn support_of_contiguous(seq: &[ElementId], bundle: &IndexBundle<'_>) -> Vec<Tid> {
    if seq.is_empty() {
        return Vec::new();
    }
    let mut distinct: Vec<ElementId> = seq.to_vec();
    distinct.sort_unstable();
    distinct.dedup();

    if distinct.len() == 1 && seq.len() == 1 {
        return bundle.posting(seq[0]).to_vec();
    }

    // start from the rarest posting list
    let mut lists: Vec<&[Tid]> = distinct.iter().map(|&e| bundle.posting(e)).collect();
    lists.sort_by_key(|l| l.len());
    if lists[0].is_empty() {
        return Vec::new();
    }
    let mut candidates: Vec<Tid> = lists[0].to_vec();
    for list in &lists[1..] {
        candidates = intersect_sorted(&candidates, list);
        if candidates.is_empty() {
            return Vec::new();
        }
    }
    candidates
        .into_iter()
        .filter(|&tid| bundle.sequence(tid).windows(seq.len()).any(|w| w == seq))
        .collect()
}

/// Linear merge intersection of two sorted tid lists.
pub(crate) fn intersect_sorted(a: &[Tid], b: &[Tid]) -> Vec<Tid> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
