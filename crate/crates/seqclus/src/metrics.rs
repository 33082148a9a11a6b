//! Summary statistics over a set of mined co-clusters.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::miner::{mean, population_stddev, CoCluster};

/// Aggregate view of a mining result. Means are absent when there are no
/// co-clusters; user statistics are absent when the corpus has no user
/// labels. `cv` holds coefficients of variation in percent, keyed by the
/// quantity they describe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultReport {
    pub n_coclusters: usize,
    pub avg_trajectories: Option<f64>,
    pub avg_cost: Option<f64>,
    /// Distinct elements across all co-cluster sequences.
    pub n_unique_elements: usize,
    pub avg_seq_length: Option<f64>,
    pub avg_users: Option<f64>,
    /// Shannon entropy (bits) of the trajectory-count distribution.
    pub overall_entropy: f64,
    pub cv: BTreeMap<String, f64>,
}

/// Compute the report for `results` mined from `dataset`.
pub fn report(results: &[CoCluster], dataset: &Dataset) -> ResultReport {
    let unique: BTreeSet<_> = results.iter().flat_map(|cc| cc.seq.iter().copied()).collect();

    let mut cv = BTreeMap::new();
    let mut series = |name: &str, values: &[f64]| -> Option<f64> {
        if values.is_empty() {
            return None;
        }
        let m = mean(values);
        if m != 0.0 {
            cv.insert(name.to_owned(), (population_stddev(values) / m).abs() * 100.0);
        }
        Some(m)
    };

    let trajectories: Vec<f64> = results.iter().map(|cc| cc.tids.len() as f64).collect();
    let costs: Vec<f64> = results.iter().map(|cc| cc.cost_at_insertion as f64).collect();
    let lengths: Vec<f64> = results.iter().map(|cc| cc.seq.len() as f64).collect();
    let users: Vec<f64> = if dataset.has_users() {
        results
            .iter()
            .map(|cc| {
                cc.tids
                    .iter()
                    .filter_map(|&tid| dataset.trajectory(tid).user.as_deref())
                    .collect::<BTreeSet<_>>()
                    .len() as f64
            })
            .collect()
    } else {
        Vec::new()
    };

    ResultReport {
        n_coclusters: results.len(),
        avg_trajectories: series("trajectories", &trajectories),
        avg_cost: series("cost", &costs),
        n_unique_elements: unique.len(),
        avg_seq_length: series("seq_length", &lengths),
        avg_users: series("users", &users),
        overall_entropy: entropy(&trajectories),
        cv,
    }
}

/// Shannon entropy in bits of `counts` normalized to a distribution.
/// Empty input and zero-weight entries contribute nothing.
fn entropy(counts: &[f64]) -> f64 {
    let total: f64 = counts.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    // subtract from +0.0 so a degenerate distribution yields 0.0, not -0.0
    0.0 - counts
        .iter()
        .filter(|&&c| c > 0.0)
        .map(|&c| {
            let p = c / total;
            p * p.log2()
        })
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{intern_corpus, ElementId, RawTrajectory};

    fn corpus(n: usize) -> Dataset {
        Dataset::from_sequences((0..n).map(|i| vec![format!("e{i}"), format!("f{i}")])).unwrap()
    }

    fn cc(tids: &[usize], seq: &[u32], cost: i64) -> CoCluster {
        CoCluster {
            tids: tids.to_vec(),
            seq: seq.iter().map(|&e| ElementId(e)).collect(),
            cost_at_insertion: cost,
            max_overlap_at_acceptance: 0.0,
        }
    }

    #[test]
    fn averages_and_entropy_over_two_clusters() {
        let d = corpus(40);
        let results = vec![
            cc(&(0..10).collect::<Vec<_>>(), &[0, 1], -4),
            cc(&(10..40).collect::<Vec<_>>(), &[2, 3, 4], -10),
        ];
        let r = report(&results, &d);
        assert_eq!(r.n_coclusters, 2);
        assert_eq!(r.avg_trajectories, Some(20.0));
        assert_eq!(r.avg_cost, Some(-7.0));
        assert_eq!(r.avg_seq_length, Some(2.5));
        assert_eq!(r.n_unique_elements, 5);
        assert_eq!(r.avg_users, None);
        // weights 1/4 and 3/4
        assert!((r.overall_entropy - 0.8112781244591328).abs() < 1e-12);
        assert!((r.cv["trajectories"] - 50.0).abs() < 1e-9);
        assert!(r.cv.contains_key("cost") && r.cv.contains_key("seq_length"));
        assert!(!r.cv.contains_key("users"));
    }

    #[test]
    fn single_cluster_has_zero_entropy_and_zero_spread() {
        let d = corpus(5);
        let r = report(&[cc(&[0, 1, 2], &[0, 1], -3)], &d);
        // positive zero, so it serializes as 0.0
        assert_eq!(r.overall_entropy.to_bits(), 0.0f64.to_bits());
        for (name, value) in &r.cv {
            assert_eq!(*value, 0.0, "cv[{name}] of a single cluster");
        }
    }

    #[test]
    fn unique_elements_count_each_symbol_once() {
        let d = corpus(4);
        let results = vec![cc(&[0], &[0, 1], -1), cc(&[1], &[1, 2], -1)];
        assert_eq!(report(&results, &d).n_unique_elements, 3);
    }

    #[test]
    fn empty_results() {
        let d = corpus(3);
        let r = report(&[], &d);
        assert_eq!(r.n_coclusters, 0);
        assert_eq!(r.avg_trajectories, None);
        assert_eq!(r.avg_cost, None);
        assert_eq!(r.avg_seq_length, None);
        assert_eq!(r.avg_users, None);
        assert_eq!(r.n_unique_elements, 0);
        assert_eq!(r.overall_entropy, 0.0);
        assert!(r.cv.is_empty());
    }

    #[test]
    fn user_statistics_from_labeled_corpus() {
        let raw = [("u1", "a b"), ("u1", "a b"), ("u2", "a b"), ("u3", "c d")]
            .iter()
            .map(|(user, els)| RawTrajectory {
                key: None,
                user: Some((*user).to_owned()),
                elements: els.split(' ').map(str::to_owned).collect(),
            })
            .collect();
        let d = intern_corpus(raw).unwrap();
        let results = vec![cc(&[0, 1, 2], &[0, 1], -4), cc(&[3], &[2, 3], -1)];
        let r = report(&results, &d);
        // first cluster spans u1 and u2, second only u3
        assert_eq!(r.avg_users, Some(1.5));
        assert!(r.cv.contains_key("users"));
    }

    #[test]
    fn report_round_trips_through_json() {
        let d = corpus(10);
        let r = report(&[cc(&[0, 1], &[0, 1], -2), cc(&[2], &[2, 3], -1)], &d);
        let text = serde_json::to_string(&r).unwrap();
        let back: ResultReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn entropy_bounded_by_log_of_count(
                sizes in proptest::collection::vec(1usize..50, 1..12)
            ) {
                let d = corpus(50);
                let results: Vec<CoCluster> = sizes
                    .iter()
                    .map(|&n| cc(&(0..n).collect::<Vec<_>>(), &[0, 1], -1))
                    .collect();
                let r = report(&results, &d);
                prop_assert!(r.overall_entropy >= 0.0);
                prop_assert!(r.overall_entropy <= (sizes.len() as f64).log2() + 1e-9);
            }

            #[test]
            fn report_ignores_result_order(
                sizes in proptest::collection::vec(1usize..30, 2..8),
                rotate in 1usize..7
            ) {
                let d = corpus(30);
                let mut results: Vec<CoCluster> = sizes
                    .iter()
                    .enumerate()
                    .map(|(i, &n)| {
                        cc(&(0..n).collect::<Vec<_>>(), &[i as u32, i as u32 + 1], -(n as i64))
                    })
                    .collect();
                let before = report(&results, &d);
                results.rotate_left(rotate % sizes.len());
                let after = report(&results, &d);
                // float sums reassociate under reordering, so compare with
                // an ulp-scale tolerance instead of bitwise equality
                let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0);
                prop_assert_eq!(after.n_coclusters, before.n_coclusters);
                prop_assert_eq!(after.n_unique_elements, before.n_unique_elements);
                prop_assert_eq!(after.avg_trajectories, before.avg_trajectories);
                prop_assert_eq!(after.avg_cost, before.avg_cost);
                prop_assert_eq!(after.avg_seq_length, before.avg_seq_length);
                prop_assert_eq!(after.avg_users, before.avg_users);
                prop_assert!(close(after.overall_entropy, before.overall_entropy));
                prop_assert_eq!(
                    after.cv.keys().collect::<Vec<_>>(),
                    before.cv.keys().collect::<Vec<_>>()
                );
                for (name, value) in &after.cv {
                    prop_assert!(close(*value, before.cv[name]), "cv[{}]", name);
                }
            }
        }
    }
}
