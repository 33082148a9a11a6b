//! Shared corpus builders for the benchmarks.

use seqclus::synth::{generate_corpus, GenSpec, PlantPosition, PlantSpec};
use seqclus::Dataset;

/// Seeded benchmark corpus with two planted patterns scaled to the corpus
/// size, so mining always has real structure to find.
pub fn corpus(n_trajectories: usize, alphabet_size: usize, seed: u64) -> Dataset {
    let spec = GenSpec {
        seed,
        n_trajectories,
        alphabet_size,
        len_range: (8, 24),
        plants: vec![
            PlantSpec {
                pattern: vec!["a".into(), "b".into()],
                n_carriers: (n_trajectories / 4).max(1),
                position: PlantPosition::Random,
            },
            PlantSpec {
                pattern: vec!["c".into(), "d".into(), "e".into()],
                n_carriers: (n_trajectories / 5).max(1),
                position: PlantPosition::Random,
            },
        ],
    };
    generate_corpus(&spec).expect("benchmark spec is feasible").0
}
