//! Exact construction and verification of Gelfand-Tsetlin modules of `gl_n`
//! defined by relation sets on tableau positions.

pub mod action;
pub mod error;
pub mod gamma;
pub mod gg;
pub mod rational;
pub mod relations;
pub mod tableau;
pub mod verifier;

pub use action::{Basis, BasisSpec, Engine, ExplicitBasis, FormalVector, Gen};
pub use error::{Error, Result};
pub use rational::Q;
pub use tableau::{AnchorId, AnchorTable, Entry, EntryDiff, GroupElement, Position, ShiftVector, Tableau};
pub use relations::{RelKind, Relation, RelationSet};
