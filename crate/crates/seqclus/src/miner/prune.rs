//! Candidate pruning: keep the co-clusters whose relevance clears a
//! statistical threshold over the finished candidate set.

use super::cocluster::CoCluster;
use super::{MinerConfig, Relevance, Statistic};

/// Filter the candidate set by the configured relevance reference.
///
/// Trajectory relevance keeps candidates whose support is at least the
/// threshold; cost relevance keeps candidates whose insertion cost is at
/// most its threshold. Under the z-score statistic the trajectory threshold
/// is `mean + z * stddev` while the cost threshold flips the sign of `z`,
/// since good costs sit below the mean. `both` requires both tests.
pub fn prune(phi: &[CoCluster], config: &MinerConfig) -> Vec<CoCluster> {
    if phi.is_empty() {
        return Vec::new();
    }
    let traj: Vec<f64> = phi.iter().map(|c| c.tids.len() as f64).collect();
    let costs: Vec<f64> = phi.iter().map(|c| c.cost_at_insertion as f64).collect();

    let (traj_threshold, cost_threshold) = match config.statistic {
        Statistic::Average => (mean(&traj), mean(&costs)),
        Statistic::ZScore(z) => (
            mean(&traj) + z * population_stddev(&traj),
            mean(&costs) + (-z) * population_stddev(&costs),
        ),
    };

    phi.iter()
        .filter(|c| {
            let traj_ok = c.tids.len() as f64 >= traj_threshold;
            let cost_ok = c.cost_at_insertion as f64 <= cost_threshold;
            match config.relevance {
                Relevance::Trajectory => traj_ok,
                Relevance::Cost => cost_ok,
                Relevance::Both => traj_ok && cost_ok,
            }
        })
        .cloned()
        .collect()
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

pub(crate) fn population_stddev(values: &[f64]) -> f64 {
    let m = mean(values);
    (values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / values.len() as f64).sqrt()
}
