//! Fuzzy strong φ-b-normed linear spaces over ℝⁿ.
//!
//! The crate builds membership functions `N(x, t)` together with their
//! relaxation constant `K`, scalar rescaling function `φ` and t-norm `∗`,
//! checks the defining axioms by seeded sampling, and runs finite-dimensional
//! diagnostics (norm-equivalence constants on the ℓ1 coefficient sphere,
//! completeness and compactness probes).
//!
//! All checks are pure functions of their inputs and a seed. Sampling work is
//! split into fixed chunks that run on the ambient rayon pool, so results do
//! not depend on the number of worker threads.

// `!(a < b)` is used deliberately so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod analysis;
mod error;
pub mod findim;
pub mod fuzzynorm;
pub mod report;
mod sampling;
pub mod verifier;

pub use algebra::{PhiSpec, TNorm};
pub use error::{Error, Result};
pub use fuzzynorm::{CrispNorm, FuzzyNormSpec, NormKind, Vector};
pub use report::{CheckId, CheckReport, CounterExample, Relation, Verdict};
