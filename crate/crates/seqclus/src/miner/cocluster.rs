//! Co-cluster representation, the cost function, and the cell-overlap
//! accounting it depends on.
//!
//! A co-cluster covers the (trajectory, element) cells given by the cross
//! product of its trajectory set and the distinct elements of its sequence.
//! Cell sets are the carrier for both the overlap penalty in the cost
//! function and the pairwise overlap-coefficient gate.

use std::collections::HashSet;

use crate::dataset::{ElementId, Tid};

/// A mined pattern: a set of trajectories sharing one contiguous element
/// sequence. `cost_at_insertion` and `max_overlap_at_acceptance` are frozen
/// against the co-cluster set that existed when this one was built.
#[derive(Debug, Clone, PartialEq)]
pub struct CoCluster {
    /// Sorted, deduplicated trajectory ids; the support of `seq`.
    pub tids: Vec<Tid>,
    /// Ordered element sequence; repeats allowed.
    pub seq: Vec<ElementId>,
    pub cost_at_insertion: i64,
    pub max_overlap_at_acceptance: f64,
}

impl CoCluster {
    pub fn new(tids: Vec<Tid>, seq: Vec<ElementId>) -> Self {
        CoCluster {
            tids,
            seq,
            cost_at_insertion: 0,
            max_overlap_at_acceptance: 0.0,
        }
    }

    /// Distinct elements of the sequence, sorted.
    pub fn distinct_elements(&self) -> Vec<ElementId> {
        let mut els = self.seq.clone();
        els.sort_unstable();
        els.dedup();
        els
    }

    /// The (trajectory, element) cells this co-cluster covers.
    pub fn cell_set(&self) -> CellSet {
        CellSet::new(self.tids.clone(), self.distinct_elements())
    }
}

/// A cross-product set of (trajectory, element) cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSet {
    tids: Vec<Tid>,
    elements: Vec<ElementId>,
}

impl CellSet {
    pub fn new(mut tids: Vec<Tid>, mut elements: Vec<ElementId>) -> Self {
        tids.sort_unstable();
        tids.dedup();
        elements.sort_unstable();
        elements.dedup();
        CellSet { tids, elements }
    }

    pub fn len(&self) -> usize {
        self.tids.len() * self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, tid: Tid, e: ElementId) -> bool {
        self.tids.binary_search(&tid).is_ok() && self.elements.binary_search(&e).is_ok()
    }

    /// Size of the cell intersection. Cross products intersect into a cross
    /// product, so this is the product of the two member intersections.
    pub fn intersection_len(&self, other: &CellSet) -> usize {
        count_common(&self.tids, &other.tids) * count_common(&self.elements, &other.elements)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Tid, ElementId)> + '_ {
        self.tids
            .iter()
            .flat_map(move |&t| self.elements.iter().map(move |&e| (t, e)))
    }
}

fn count_common<T: Ord>(a: &[T], b: &[T]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Union of all cells covered by an accepted co-cluster set. Maintained
/// incrementally by the miner so the overlap penalty is a lookup, not a
/// rebuild.
#[derive(Debug, Clone, Default)]
pub struct Cover {
    cells: HashSet<(Tid, ElementId)>,
}

impl Cover {
    pub fn new() -> Self {
        Cover::default()
    }

    pub fn from_phi(phi: &[CoCluster]) -> Self {
        let mut cover = Cover::new();
        for cc in phi {
            cover.insert(cc);
        }
        cover
    }

    pub fn insert(&mut self, cc: &CoCluster) {
        let els = cc.distinct_elements();
        for &t in &cc.tids {
            for &e in &els {
                self.cells.insert((t, e));
            }
        }
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    /// How many cells of `tids x elements` are already covered.
    pub fn covered_count(&self, tids: &[Tid], elements: &[ElementId]) -> usize {
        if self.cells.is_empty() {
            return 0;
        }
        tids.iter()
            .flat_map(|&t| elements.iter().map(move |&e| (t, e)))
            .filter(|cell| self.cells.contains(cell))
            .count()
    }
}

/// Number of (trajectory, element) cells of `cc` already covered by `phi`.
pub fn cov(cc: &CoCluster, phi: &[CoCluster]) -> usize {
    Cover::from_phi(phi).covered_count(&cc.tids, &cc.distinct_elements())
}

pub(crate) fn cost_value(n_tids: usize, seq_len: usize, cov: usize) -> i64 {
    (n_tids + seq_len) as i64 - (n_tids * seq_len) as i64 + cov as i64
}

/// Cost of a candidate against the accepted set: perimeter minus area plus
/// the overlap penalty. Sequence length counts repeats. Lower is better;
/// only negative-cost candidates are worth keeping.
pub fn cost(cc: &CoCluster, phi: &[CoCluster]) -> i64 {
    cost_value(cc.tids.len(), cc.seq.len(), cov(cc, phi))
}

pub(crate) fn cost_with_cover(tids: &[Tid], seq: &[ElementId], cover: &Cover) -> i64 {
    let mut distinct = seq.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    cost_value(tids.len(), seq.len(), cover.covered_count(tids, &distinct))
}

/// `|a ∩ b| / min(|a|, |b|)`; zero when either set is empty.
pub fn overlap_coefficient(a: &CellSet, b: &CellSet) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    a.intersection_len(b) as f64 / a.len().min(b.len()) as f64
}

/// Largest overlap coefficient between `cc` and any member of `phi`.
pub fn max_overlap(cc: &CoCluster, phi: &[CoCluster]) -> f64 {
    let cells = cc.cell_set();
    phi.iter()
        .map(|other| overlap_coefficient(&cells, &other.cell_set()))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u32) -> ElementId {
        ElementId(i)
    }

    fn cc(tids: &[Tid], seq: &[u32]) -> CoCluster {
        CoCluster::new(tids.to_vec(), seq.iter().map(|&i| e(i)).collect())
    }

    #[test]
    fn cost_of_empty_candidate_is_zero() {
        assert_eq!(cost(&cc(&[], &[]), &[]), 0);
    }

    #[test]
    fn cost_direct_formula() {
        // (5+2) - 10 + 0
        assert_eq!(cost(&cc(&[0, 1, 2, 3, 4], &[0, 1]), &[]), -3);
        // (2+2) - 4 + 3
        let phi = vec![cc(&[0, 1, 9], &[0])]; // covers (0,a),(1,a),(9,a)
        let cand = cc(&[0, 1], &[0, 1]); // cells (0,a),(0,b),(1,a),(1,b); cov = 2
        assert_eq!(cov(&cand, &phi), 2);
        // rebuild the spec-style arithmetic with cov 3
        let phi2 = vec![cc(&[0, 1], &[0]), cc(&[1], &[1])];
        assert_eq!(cov(&cand, &phi2), 3);
        assert_eq!(cost(&cand, &phi2), 3);
    }

    #[test]
    fn seq_length_counts_repeats() {
        // |seq| = 3 even though distinct elements = 2
        assert_eq!(cost(&cc(&[0, 1, 2, 3], &[0, 1, 0]), &[]), (4 + 3) - 12);
    }

    #[test]
    fn cov_empty_phi_is_zero() {
        assert_eq!(cov(&cc(&[0, 1, 2], &[0, 1]), &[]), 0);
    }

    #[test]
    fn cov_counts_intersected_cells() {
        // cc cells {(0,a),(1,a)}, phi covers {(1,a),(1,b)} -> 1
        let phi = vec![cc(&[1], &[0, 1])];
        assert_eq!(cov(&cc(&[0, 1], &[0]), &phi), 1);
    }

    #[test]
    fn cov_of_exact_duplicate() {
        // duplicate of a member with 3 tids x 2 distinct elements -> all 6 cells
        let member = cc(&[2, 5, 7], &[0, 1]);
        let phi = vec![member.clone()];
        assert_eq!(cov(&member, &phi), 6);
    }

    #[test]
    fn overlap_coefficient_direct() {
        // a = {x,y,z}, b = {y,z,w} as 1-row cell sets -> 2/3
        let a = CellSet::new(vec![0], vec![e(0), e(1), e(2)]);
        let b = CellSet::new(vec![0], vec![e(1), e(2), e(3)]);
        assert!((overlap_coefficient(&a, &b) - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(overlap_coefficient(&a, &a), 1.0);
        let disjoint = CellSet::new(vec![1], vec![e(0)]);
        assert_eq!(overlap_coefficient(&a, &disjoint), 0.0);
    }

    #[test]
    fn overlap_coefficient_empty_set_is_zero() {
        let empty = CellSet::new(vec![], vec![]);
        let a = CellSet::new(vec![0], vec![e(0)]);
        assert_eq!(overlap_coefficient(&empty, &a), 0.0);
        assert_eq!(overlap_coefficient(&a, &empty), 0.0);
    }

    #[test]
    fn intersection_len_matches_explicit_product_enumeration() {
        let a = CellSet::new(vec![0, 1, 2], vec![e(0), e(1)]);
        let b = CellSet::new(vec![1, 2, 3], vec![e(1), e(2)]);
        let explicit: HashSet<(Tid, ElementId)> = a.iter().collect();
        let expected = b.iter().filter(|c| explicit.contains(c)).count();
        assert_eq!(a.intersection_len(&b), expected);
        assert_eq!(expected, 2);
    }

    #[test]
    fn max_overlap_cases() {
        let member = cc(&[0, 1], &[0]);
        assert_eq!(max_overlap(&cc(&[0, 1], &[0, 1]), &[]), 0.0);
        assert_eq!(max_overlap(&member, std::slice::from_ref(&member)), 1.0);
        // cc shares half the cells of the smaller member set
        let phi = vec![cc(&[0, 1], &[0])]; // 2 cells
        let half = cc(&[1, 2], &[0]); // 2 cells, shares (1,a)
        assert_eq!(max_overlap(&half, &phi), 0.5);
    }

    #[test]
    fn cover_tracks_union_across_members() {
        let phi = vec![cc(&[0, 1], &[0]), cc(&[1, 2], &[0])];
        let cover = Cover::from_phi(&phi);
        assert_eq!(cover.n_cells(), 3); // (0,a),(1,a),(2,a)
        assert_eq!(cover.covered_count(&[0, 1, 2, 3], &[e(0)]), 3);
        assert_eq!(
            cost_with_cover(&[0, 1, 2, 3], &[e(0), e(1)], &cover),
            cost(&cc(&[0, 1, 2, 3], &[0, 1]), &phi)
        );
    }
}
