//! Seeded synthetic corpora with planted contiguous patterns, for tests and
//! benchmarks that need exact ground truth.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dataset::{intern_corpus, Dataset, RawTrajectory, Tid};

/// Where a planted pattern sits inside its carrier trajectories.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlantPosition {
    Start,
    Random,
    End,
}

/// One pattern to embed: the raw element strings, how many trajectories
/// carry it, and where.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantSpec {
    pub pattern: Vec<String>,
    pub n_carriers: usize,
    pub position: PlantPosition,
}

/// Full description of a synthetic corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub seed: u64,
    pub n_trajectories: usize,
    /// Total element alphabet, plant elements included; noise draws
    /// uniformly from the remainder.
    pub alphabet_size: usize,
    /// Inclusive (min, max) trajectory length.
    pub len_range: (usize, usize),
    pub plants: Vec<PlantSpec>,
}

/// Ground truth for one plant: the pattern and the exact carrier tids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantTruth {
    pub pattern: Vec<String>,
    pub carriers: Vec<Tid>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("corpus must have at least one trajectory")]
    NoTrajectories,
    #[error("length range ({0}, {1}) is invalid; need 1 <= min <= max")]
    BadLengthRange(usize, usize),
    #[error("plant pattern must have at least 2 elements")]
    PatternTooShort,
    #[error("plant needs at least one carrier")]
    NoCarriers,
    #[error("plant pattern of length {pattern} exceeds max trajectory length {max_len}")]
    PatternTooLong { pattern: usize, max_len: usize },
    #[error("plants need {carriers} carriers but the corpus has {available} trajectories")]
    TooManyCarriers { carriers: usize, available: usize },
    #[error(
        "alphabet of {alphabet} cannot host {plant_elements} plant elements plus noise"
    )]
    AlphabetTooSmall {
        alphabet: usize,
        plant_elements: usize,
    },
}

/// Generate a corpus per `spec`. Deterministic in the spec: the same seed
/// and parameters always produce the identical corpus and ground truth.
///
/// Carrier sets are disjoint across plants and each carrier holds exactly
/// one embedded occurrence; because noise never draws plant elements, the
/// support of each planted pattern is exactly its carrier set.
pub fn generate_corpus(spec: &GenSpec) -> Result<(Dataset, Vec<PlantTruth>), GenError> {
    validate(spec)?;
    let (len_min, len_max) = spec.len_range;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let plant_elements: usize = spec
        .plants
        .iter()
        .flat_map(|p| p.pattern.iter())
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    let noise_alphabet: Vec<String> = (0..spec.alphabet_size - plant_elements)
        .map(|i| format!("n{i:02}"))
        .collect();

    // disjoint carrier assignment, shuffled so position in the corpus is
    // not correlated with plant order
    let mut slots: Vec<Tid> = (0..spec.n_trajectories).collect();
    shuffle(&mut slots, &mut rng);
    let mut truths = Vec::with_capacity(spec.plants.len());
    let mut plan: Vec<Option<&PlantSpec>> = vec![None; spec.n_trajectories];
    let mut next = 0;
    for plant in &spec.plants {
        let mut carriers: Vec<Tid> = slots[next..next + plant.n_carriers].to_vec();
        next += plant.n_carriers;
        carriers.sort_unstable();
        for &tid in &carriers {
            plan[tid] = Some(plant);
        }
        truths.push(PlantTruth {
            pattern: plant.pattern.clone(),
            carriers,
        });
    }

    let mut raw = Vec::with_capacity(spec.n_trajectories);
    for (tid, planted) in plan.iter().enumerate() {
        let mut len = rng.gen_range(len_min..=len_max);
        if let Some(plant) = planted {
            len = len.max(plant.pattern.len());
        }
        let mut elements: Vec<String> = (0..len)
            .map(|_| noise_alphabet[rng.gen_range(0..noise_alphabet.len())].clone())
            .collect();
        if let Some(plant) = planted {
            let span = plant.pattern.len();
            let offset = match plant.position {
                PlantPosition::Start => 0,
                PlantPosition::End => len - span,
                PlantPosition::Random => rng.gen_range(0..=len - span),
            };
            elements[offset..offset + span].clone_from_slice(&plant.pattern);
        }
        raw.push(RawTrajectory {
            key: Some(format!("t{tid}")),
            user: None,
            elements,
        });
    }

    let dataset = intern_corpus(raw).expect("generated corpus is non-empty");
    Ok((dataset, truths))
}

fn validate(spec: &GenSpec) -> Result<(), GenError> {
    if spec.n_trajectories == 0 {
        return Err(GenError::NoTrajectories);
    }
    let (len_min, len_max) = spec.len_range;
    if len_min < 1 || len_min > len_max {
        return Err(GenError::BadLengthRange(len_min, len_max));
    }
    let mut carriers = 0;
    for plant in &spec.plants {
        if plant.pattern.len() < 2 {
            return Err(GenError::PatternTooShort);
        }
        if plant.n_carriers == 0 {
            return Err(GenError::NoCarriers);
        }
        if plant.pattern.len() > len_max {
            return Err(GenError::PatternTooLong {
                pattern: plant.pattern.len(),
                max_len: len_max,
            });
        }
        carriers += plant.n_carriers;
    }
    if carriers > spec.n_trajectories {
        return Err(GenError::TooManyCarriers {
            carriers,
            available: spec.n_trajectories,
        });
    }
    let plant_elements: usize = spec
        .plants
        .iter()
        .flat_map(|p| p.pattern.iter())
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    if spec.alphabet_size <= plant_elements {
        return Err(GenError::AlphabetTooSmall {
            alphabet: spec.alphabet_size,
            plant_elements,
        });
    }
    Ok(())
}

// Fisher-Yates; rand's SliceRandom would add an import for three lines
fn shuffle<T>(items: &mut [T], rng: &mut ChaCha8Rng) {
    for i in (1..items.len()).rev() {
        let j = rng.gen_range(0..=i);
        items.swap(i, j);
    }
}
