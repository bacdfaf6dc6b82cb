//! Cobweb posets built from F-sequences: graded orders, their incidence
//! algebra, natural joins, relational codings and hyper-box tilings.

pub mod error;
pub mod fsequence;
pub mod hyperbox;
pub mod incidence;
pub mod join;
pub mod matrix;
pub mod poset;
pub mod relations;
pub mod structure;

pub use error::{Error, Result};
pub use fsequence::FSequence;
pub use hyperbox::{HyperBox, SubBox, Tiling, TilingOutcome};
pub use incidence::{CodingMatrix, Polynomial};
pub use join::{FinitePoset, OverlapSpec};
pub use matrix::{BoolMatrix, IntMatrix};
pub use poset::{GradedPoset, GridVertex, NaturalLabeling};
pub use relations::NaryRelation;
pub use structure::LinearExtension;
