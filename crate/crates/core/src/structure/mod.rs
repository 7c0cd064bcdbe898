//! Isomorphism, merge saturation, critical bases, infinitesimal rigidity
//! and numerical realizability of KS configurations.

mod critical;
mod iso;
mod merge;
mod realize;
mod rigidity;

pub use critical::{critical_bases, CriticalBases, KAPPA_CAP};
pub use iso::{graph_isomorphic, IsoWitness};
pub use merge::{merge_saturation, merged, MergeReport};
pub use realize::{realizability, RealizeReport, Realizability, REALIZABLE_LOSS};
pub use rigidity::{constraints, jacobian, rigidity_nullspace, unit_embedding, RigidityReport, RigidityStatus, RANK_THRESHOLD};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructureError {
    #[error("the configuration is KS-colourable")]
    ColorableInput,
    #[error("floating embedding violates its constraints by {0:.3e}")]
    RankDeficientInput(f64),
}
