//! Greedy order-aware co-cluster mining.
//!
//! Each iteration seeds a sequence with a high-frequency element, grows it
//! one element at a time in whichever direction yields the cheaper cost, and
//! accepts extensions that do not raise the cost and stay under the overlap
//! threshold. Accepted co-clusters consume element frequency, steering later
//! iterations toward uncovered structure, until a candidate stops paying for
//! itself or the iteration budget runs out. The surviving candidates are
//! pruned down to the statistically relevant ones.

mod cocluster;
mod prune;

pub use cocluster::{cost, cov, max_overlap, overlap_coefficient, CellSet, CoCluster, Cover};
pub use prune::prune;

pub(crate) use prune::{mean, population_stddev};

use std::collections::VecDeque;

use thiserror::Error;

use crate::dataset::{Dataset, ElementId, Tid};
use crate::index::{initialize_data, support_of_contiguous, IndexBundle};

use cocluster::cost_with_cover;

/// Statistical metric used by the pruning threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Statistic {
    Average,
    /// Threshold at `mean + z * stddev` (sign flipped for the cost side).
    ZScore(f64),
}

/// Which quantity decides whether a candidate is relevant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relevance {
    Trajectory,
    Cost,
    Both,
}

/// Mining parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct MinerConfig {
    /// Maximum number of candidate co-clusters to extract.
    pub k: usize,
    /// Overlap-coefficient gate in `[0, 1]`; 0 forbids any shared cell.
    pub epsilon: f64,
    pub statistic: Statistic,
    pub relevance: Relevance,
    /// Restrict the element queue to elements whose initial frequency is at
    /// least the corpus mean.
    pub frequent_only: bool,
}

impl MinerConfig {
    /// Config with the default knobs: epsilon 0.2, z-score 1, both
    /// references, frequent-element filter on.
    pub fn new(k: usize) -> Self {
        MinerConfig {
            k,
            epsilon: 0.2,
            statistic: Statistic::ZScore(1.0),
            relevance: Relevance::Both,
            frequent_only: true,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.k < 1 {
            return Err(ConfigError::KTooSmall);
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(ConfigError::EpsilonOutOfRange(self.epsilon));
        }
        if let Statistic::ZScore(z) = self.statistic {
            if !z.is_finite() {
                return Err(ConfigError::NonFiniteZ);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("k must be at least 1")]
    KTooSmall,
    #[error("epsilon must lie in [0, 1], got {0}")]
    EpsilonOutOfRange(f64),
    #[error("z must be finite")]
    NonFiniteZ,
}

/// Why a mining run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The best remaining candidate no longer has negative cost.
    CostFloor,
    /// No seed produced any extensible sequence.
    NoCandidate,
    /// All `k` iterations were spent.
    BudgetExhausted,
}

/// Per-iteration record of what the candidate search produced.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub iteration: usize,
    pub seq: Vec<ElementId>,
    pub n_tids: usize,
    pub cost: i64,
    pub max_overlap: f64,
    /// False on the final iteration when the candidate failed the cost gate.
    pub inserted: bool,
}

/// Diagnostic trail of one mining run.
#[derive(Debug, Clone)]
pub struct RunTrace {
    pub iterations: Vec<IterationTrace>,
    pub stop: StopReason,
    /// Candidate count before pruning.
    pub n_candidates: usize,
}

/// Outcome of [`mine`]: the pruned co-cluster list plus the run trace.
#[derive(Debug, Clone)]
pub struct MineResult {
    pub coclusters: Vec<CoCluster>,
    pub trace: RunTrace,
}

/// Run the full mining loop on a corpus.
pub fn mine(dataset: &Dataset, config: &MinerConfig) -> Result<MineResult, ConfigError> {
    config.validate()?;
    let mut bundle = initialize_data(dataset);
    let mut phi: Vec<CoCluster> = Vec::new();
    let mut cover = Cover::new();
    let mut iterations = Vec::new();
    let mut stop = StopReason::BudgetExhausted;

    for iteration in 0..config.k {
        let Some(candidate) = find_candidate_impl(&bundle, &phi, &cover, config) else {
            stop = StopReason::NoCandidate;
            break;
        };
        let inserted = candidate.cost_at_insertion < 0;
        iterations.push(IterationTrace {
            iteration,
            seq: candidate.seq.clone(),
            n_tids: candidate.tids.len(),
            cost: candidate.cost_at_insertion,
            max_overlap: candidate.max_overlap_at_acceptance,
            inserted,
        });
        if !inserted {
            stop = StopReason::CostFloor;
            break;
        }
        cover.insert(&candidate);
        update_frequencies(&mut bundle, &candidate);
        phi.push(candidate);
    }

    let n_candidates = phi.len();
    let coclusters = prune(&phi, config);
    Ok(MineResult {
        coclusters,
        trace: RunTrace {
            iterations,
            stop,
            n_candidates,
        },
    })
}

/// One candidate search over the current frequency ordering.
///
/// Seeds are tried from most to least frequent. For each seed the rotating
/// element queue is scanned; every element is offered as a forward or
/// backward extension via [`candidate_cc`], and an extension is accepted
/// when its cost does not exceed the current candidate's and its overlap
/// against every accepted co-cluster stays within epsilon. A full queue pass
/// without acceptance ends the seed; the first seed that yields a non-empty
/// candidate wins.
pub fn find_candidate(
    bundle: &IndexBundle<'_>,
    phi: &[CoCluster],
    config: &MinerConfig,
) -> Option<CoCluster> {
    find_candidate_impl(bundle, phi, &Cover::from_phi(phi), config)
}

fn find_candidate_impl(
    bundle: &IndexBundle<'_>,
    phi: &[CoCluster],
    cover: &Cover,
    config: &MinerConfig,
) -> Option<CoCluster> {
    let order = element_queue(bundle, config.frequent_only);
    let mut queue: VecDeque<ElementId> = order.into();
    let n_seeds = queue.len();

    for _ in 0..n_seeds {
        let el_p = queue.pop_front()?;
        queue.push_back(el_p);
        let mut sequence = vec![el_p];
        // empty candidate baseline: cost 0
        let mut best: Option<Candidate> = None;
        let mut best_cost: i64 = 0;
        let mut to_test = queue.len();

        while to_test > 0 {
            let el_q = queue.pop_front().expect("queue never drains");
            queue.push_back(el_q);
            let accepted = match candidate_impl(&sequence, el_q, bundle, cover) {
                Some(star) if star.cost <= best_cost => {
                    let cc = star.as_cocluster();
                    let overlap = max_overlap(&cc, phi);
                    if overlap <= config.epsilon {
                        sequence.clone_from(&star.seq);
                        best_cost = star.cost;
                        best = Some(star.with_overlap(overlap));
                        true
                    } else {
                        false
                    }
                }
                _ => false,
            };
            if accepted {
                to_test = queue.len();
            } else {
                to_test -= 1;
            }
        }

        if let Some(found) = best {
            return Some(found.into_cocluster());
        }
        // seed produced nothing; move on to the next el_p
    }
    None
}

/// Elements eligible for the queue, sorted by current frequency descending
/// with ties broken by interning order.
fn element_queue(bundle: &IndexBundle<'_>, frequent_only: bool) -> Vec<ElementId> {
    let mut elements: Vec<ElementId> = if frequent_only {
        frequent_elements(bundle)
    } else {
        bundle.elements().collect()
    };
    elements.sort_by_key(|&e| (std::cmp::Reverse(bundle.frequency(e)), e));
    elements
}

/// Elements whose initial frequency is at least the corpus mean.
pub fn frequent_elements(bundle: &IndexBundle<'_>) -> Vec<ElementId> {
    let m = bundle.n_elements();
    if m == 0 {
        return Vec::new();
    }
    let total: u64 = bundle.elements().map(|e| bundle.initial_frequency(e)).sum();
    let mean = total as f64 / m as f64;
    bundle
        .elements()
        .filter(|&e| bundle.initial_frequency(e) as f64 >= mean)
        .collect()
}

struct Candidate {
    seq: Vec<ElementId>,
    support: Vec<Tid>,
    cost: i64,
    overlap: f64,
}

impl Candidate {
    fn as_cocluster(&self) -> CoCluster {
        CoCluster {
            tids: self.support.clone(),
            seq: self.seq.clone(),
            cost_at_insertion: self.cost,
            max_overlap_at_acceptance: self.overlap,
        }
    }

    fn with_overlap(mut self, overlap: f64) -> Self {
        self.overlap = overlap;
        self
    }

    fn into_cocluster(self) -> CoCluster {
        CoCluster {
            tids: self.support,
            seq: self.seq,
            cost_at_insertion: self.cost,
            max_overlap_at_acceptance: self.overlap,
        }
    }
}

/// Build the cheaper of the two one-element extensions of `sequence`.
///
/// Tries `sequence + [el_q]` and `[el_q] + sequence`, drops extensions with
/// empty support, and returns the one with the smaller cost against `phi`;
/// the forward extension wins ties. `None` when neither direction has
/// support.
pub fn candidate_cc(
    sequence: &[ElementId],
    el_q: ElementId,
    bundle: &IndexBundle<'_>,
    phi: &[CoCluster],
) -> Option<CoCluster> {
    let cover = Cover::from_phi(phi);
    let star = candidate_impl(sequence, el_q, bundle, &cover)?;
    let mut cc = star.into_cocluster();
    cc.max_overlap_at_acceptance = max_overlap(&cc, phi);
    Some(cc)
}

fn candidate_impl(
    sequence: &[ElementId],
    el_q: ElementId,
    bundle: &IndexBundle<'_>,
    cover: &Cover,
) -> Option<Candidate> {
    let mut forward = Vec::with_capacity(sequence.len() + 1);
    forward.extend_from_slice(sequence);
    forward.push(el_q);
    let mut backward = Vec::with_capacity(sequence.len() + 1);
    backward.push(el_q);
    backward.extend_from_slice(sequence);

    let build = |seq: Vec<ElementId>| -> Option<Candidate> {
        let support = support_of_contiguous(&seq, bundle);
        if support.is_empty() {
            return None;
        }
        let cost = cost_with_cover(&support, &seq, cover);
        Some(Candidate {
            seq,
            support,
            cost,
            overlap: 0.0,
        })
    };

    match (build(forward), build(backward)) {
        (None, None) => None,
        (Some(f), None) => Some(f),
        (None, Some(b)) => Some(b),
        (Some(f), Some(b)) => Some(if f.cost <= b.cost { f } else { b }),
    }
}

/// Consume frequency for an accepted co-cluster: each element loses its
/// occurrence count within the sequence times the number of member
/// trajectories, saturating at zero.
pub fn update_frequencies(bundle: &mut IndexBundle<'_>, cc: &CoCluster) {
    let n = cc.tids.len() as u64;
    for &e in &cc.distinct_elements() {
        let occurrences = cc.seq.iter().filter(|&&x| x == e).count() as u64;
        bundle.decrement_frequency(e, occurrences * n);
    }
}
