//! Exact-arithmetic engine for Chern-character calculus on finite graded
//! Chow-ring models.
//!
//! The engine works with desk-scale models of rational Chow rings given by
//! explicit bases and structure-constant tables, and layers on top of them:
//!
//! * parabolic line bundles `L(B)` and their K-classes, with tensor product,
//!   constituents, weights and the parabolic Chern character (`parabolic`);
//! * residue bookkeeping for abelian logarithmic connections and the
//!   associated parabolic bundle (`logconn`);
//! * a Riemann–Roch pushforward functional for curve fibrations and the
//!   rank/divisor decomposition it feeds (`grr`);
//! * a rank-constancy checker for complexes of free modules over a truncated
//!   disc ring carrying a logarithmic action (`steenbrink`);
//! * a built-in geometry corpus and named verification scenarios
//!   (`corpus`, `scenarios`).
//!
//! All arithmetic is exact: coefficients are arbitrary-precision rationals
//! and no operation ever rounds. Every value is immutable after construction
//! and can be shared freely across threads.

pub mod chow;
pub mod corpus;
pub mod error;
pub mod grr;
pub mod io;
pub mod linalg;
pub mod logconn;
pub mod parabolic;
pub mod rational;
pub mod report;
pub mod scenarios;
pub mod steenbrink;

pub use chow::{ChowElement, ChowModel, MapKind, ModelMap, ValidationReport};
pub use error::{EngineError, LoadError};
pub use rational::Rat;
