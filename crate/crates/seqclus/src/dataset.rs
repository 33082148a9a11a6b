//! Trajectory corpus representation: interned element symbols plus the
//! ordered sequences that reference them.

use std::collections::HashMap;

use thiserror::Error;

/// Index of a trajectory within its [`Dataset`], dense in `0..N`.
pub type Tid = usize;

/// Interned element symbol. Ids are dense, assigned in order of first
/// appearance, and stable for the lifetime of one [`Dataset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One ordered sequence of elements, with optional source key and user label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub tid: Tid,
    /// Original record identifier, when the corpus came from a file.
    pub key: Option<String>,
    pub user: Option<String>,
    /// Input order preserved exactly; duplicates permitted.
    pub elements: Vec<ElementId>,
}

/// Unprocessed input record for [`intern_corpus`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawTrajectory {
    pub key: Option<String>,
    pub user: Option<String>,
    pub elements: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("empty corpus")]
    Empty,
    #[error("trajectory {record} has zero elements")]
    EmptyTrajectory { record: String },
}

/// Immutable trajectory corpus. Rows are densely indexed by [`Tid`],
/// element strings are interned to dense [`ElementId`]s.
#[derive(Debug, Clone)]
pub struct Dataset {
    trajectories: Vec<Trajectory>,
    symbols: Vec<String>,
    symbol_ids: HashMap<String, ElementId>,
}

impl Dataset {
    /// Number of trajectories (rows).
    pub fn n_trajectories(&self) -> usize {
        self.trajectories.len()
    }

    /// Number of distinct elements (columns).
    pub fn n_elements(&self) -> usize {
        self.symbols.len()
    }

    pub fn trajectory(&self, tid: Tid) -> &Trajectory {
        &self.trajectories[tid]
    }

    pub fn trajectories(&self) -> &[Trajectory] {
        &self.trajectories
    }

    /// Element sequence of one trajectory.
    pub fn sequence(&self, tid: Tid) -> &[ElementId] {
        &self.trajectories[tid].elements
    }

    /// Raw string for an interned element.
    pub fn element_str(&self, id: ElementId) -> &str {
        &self.symbols[id.index()]
    }

    /// Interned id for a raw string, if it occurs in the corpus.
    pub fn element_id(&self, raw: &str) -> Option<ElementId> {
        self.symbol_ids.get(raw).copied()
    }

    /// Resolve a sequence of ids back to raw strings.
    pub fn resolve(&self, seq: &[ElementId]) -> Vec<String> {
        seq.iter().map(|&e| self.element_str(e).to_owned()).collect()
    }

    /// Display key of a trajectory: the source key when present, else the tid.
    pub fn trajectory_key(&self, tid: Tid) -> String {
        match &self.trajectories[tid].key {
            Some(k) => k.clone(),
            None => tid.to_string(),
        }
    }

    /// True when at least one trajectory carries a user label.
    pub fn has_users(&self) -> bool {
        self.trajectories.iter().any(|t| t.user.is_some())
    }

    /// Count of distinct user labels, or `None` when the corpus has none.
    pub fn n_users(&self) -> Option<usize> {
        let users: std::collections::BTreeSet<&str> = self
            .trajectories
            .iter()
            .filter_map(|t| t.user.as_deref())
            .collect();
        if users.is_empty() {
            None
        } else {
            Some(users.len())
        }
    }

    /// Test helper: build a corpus from bare element rows, no keys or users.
    pub fn from_sequences<R, S>(rows: R) -> Result<Dataset, CorpusError>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let raw = rows
            .into_iter()
            .map(|row| RawTrajectory {
                key: None,
                user: None,
                elements: row.into_iter().map(Into::into).collect(),
            })
            .collect();
        intern_corpus(raw)
    }
}

/// Intern a batch of raw trajectories into a [`Dataset`].
///
/// Tids follow input order; element ids follow first-appearance order.
pub fn intern_corpus(raw: Vec<RawTrajectory>) -> Result<Dataset, CorpusError> {
    if raw.is_empty() {
        return Err(CorpusError::Empty);
    }
    let mut symbols: Vec<String> = Vec::new();
    let mut symbol_ids: HashMap<String, ElementId> = HashMap::new();
    let mut trajectories = Vec::with_capacity(raw.len());
    for (tid, rec) in raw.into_iter().enumerate() {
        if rec.elements.is_empty() {
            let record = rec.key.unwrap_or_else(|| format!("#{tid}"));
            return Err(CorpusError::EmptyTrajectory { record });
        }
        let elements = rec
            .elements
            .into_iter()
            .map(|s| match symbol_ids.get(&s) {
                Some(&id) => id,
                None => {
                    let id = ElementId(symbols.len() as u32);
                    symbols.push(s.clone());
                    symbol_ids.insert(s, id);
                    id
                }
            })
            .collect();
        trajectories.push(Trajectory {
            tid,
            key: rec.key,
            user: rec.user,
            elements,
        });
    }
    Ok(Dataset {
        trajectories,
        symbols,
        symbol_ids,
    })
}
