//! The minimal KS sets studied in the structural presets, each selected by a
//! fixed rule from a fixed greedy run so that every preset sees the same set.

use std::sync::OnceLock;

use serde::Serialize;

use super::registry::recipe;
use super::SurveyError;
use crate::minimize::greedy_minimize;
use crate::ExactPool;

/// Greedy deletion trials used to find island sets.
pub const ISLAND_TRIALS: usize = 400;
pub const ISLAND_SEED: u64 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Island {
    Ck31,
    Ck33,
    Eisenstein33,
    Peres33,
    SqrtMinus2_33,
    Heegner7_43,
    Golden52,
}

impl Island {
    pub const ALL: [Island; 7] = [
        Island::Ck31,
        Island::Ck33,
        Island::Eisenstein33,
        Island::Peres33,
        Island::SqrtMinus2_33,
        Island::Heegner7_43,
        Island::Golden52,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Island::Ck31 => "ck-31",
            Island::Ck33 => "ck-33",
            Island::Eisenstein33 => "eisenstein-33",
            Island::Peres33 => "peres-33",
            Island::SqrtMinus2_33 => "sqrt-2-33",
            Island::Heegner7_43 => "heegner7-43",
            Island::Golden52 => "golden-52",
        }
    }

    pub fn from_name(s: &str) -> Option<Island> {
        Island::ALL.into_iter().find(|i| i.name() == s)
    }

    /// Registry name of the pool the set is drawn from.
    pub fn alphabet(self) -> &'static str {
        match self {
            Island::Ck31 | Island::Ck33 => "integer",
            Island::Eisenstein33 => "eisenstein",
            Island::Peres33 => "peres",
            Island::SqrtMinus2_33 => "sqrt-2",
            Island::Heegner7_43 => "heegner-7",
            Island::Golden52 => "golden",
        }
    }

    pub fn size(self) -> usize {
        match self {
            Island::Ck31 => 31,
            Island::Heegner7_43 => 43,
            Island::Golden52 => 52,
            _ => 33,
        }
    }

    /// Extra condition on the triad count; CK-33 is the 33-set of the
    /// integer pool with 20 bases.
    fn triads(self) -> Option<usize> {
        match self {
            Island::Ck33 => Some(20),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IslandSet {
    pub island: Island,
    /// Indices into the pool, ascending.
    pub indices: Vec<usize>,
    pub set: ExactPool,
}

fn pools() -> &'static [OnceLock<Result<ExactPool, String>>; 7] {
    static P: [OnceLock<Result<ExactPool, String>>; 7] = [const { OnceLock::new() }; 7];
    &P
}

fn sets() -> &'static [OnceLock<Result<IslandSet, String>>; 7] {
    static S: [OnceLock<Result<IslandSet, String>>; 7] = [const { OnceLock::new() }; 7];
    &S
}

fn slot(i: Island) -> usize {
    Island::ALL.iter().position(|&x| x == i).expect("listed")
}

/// The pool an island set is drawn from (cached).
pub fn island_pool(island: Island) -> Result<ExactPool, SurveyError> {
    pools()[slot(island)]
        .get_or_init(|| {
            recipe(island.alphabet(), false).and_then(|r| r.build()).map(|b| b.pool).map_err(|e| e.to_string())
        })
        .clone()
        .map_err(SurveyError::Expected)
}

/// Lexicographically first index tuple of the right size (and triad count)
/// among the minimal sets of `ISLAND_TRIALS` greedy trials (cached).
pub fn island_set(island: Island) -> Result<IslandSet, SurveyError> {
    let cached = sets()[slot(island)].get_or_init(|| {
        let pool = island_pool(island).map_err(|e| e.to_string())?;
        let found = greedy_minimize(pool.graph(), ISLAND_TRIALS, ISLAND_SEED).map_err(|e| e.to_string())?;
        let best = found
            .into_iter()
            .filter(|m| m.size == island.size())
            .map(|m| m.ray_indices)
            .filter(|idx| island.triads().is_none_or(|t| pool.graph().induced(idx).triads().len() == t))
            .min()
            .ok_or_else(|| SurveyError::IslandNotFound { island: island.name().into(), size: island.size() }.to_string())?;
        let set = pool.subset(&best).map_err(|e| e.to_string())?;
        Ok(IslandSet { island, indices: best, set })
    });
    cached.clone().map_err(SurveyError::Expected)
}
