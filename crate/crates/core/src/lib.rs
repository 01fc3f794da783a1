//! Counting degree-`p^2` extensions of a `p`-adic field that have no
//! intermediate field, grouped by the Galois group of their normal closure.
//!
//! The closed-form census lives in [`census`]; [`oracles`] recomputes every
//! count by brute force over `F_{p^2}` and small matrix groups.

pub mod census;
pub mod error;
pub mod finite_field;
pub mod matrix_groups;
pub mod numtheory;
pub mod oracles;
pub mod par;
pub mod rep_theory;

pub use census::{
    census_k2, census_k2_with, census_table, classify_pair, enumerate_dim2_orbits, CensusReport, CensusRow,
    CensusShape, CensusTable, CharPair, Dim2Kind, GroupDescriptor, LocalFieldParams, Parity, RowFilter, Splitting,
};
pub use error::{Error, Result};
pub use finite_field::{FieldCtx, FqElem};
pub use numtheory::{ExactRational, UnboundedInt};
pub use par::Exec;
