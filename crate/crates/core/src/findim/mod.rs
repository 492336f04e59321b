//! Finite-dimensional results: the coefficient-sphere constant estimator and
//! probes for completeness and compactness of ℝⁿ under a fuzzy norm.

mod basis;
mod compactness;
mod completeness;
mod lemma1;

pub use basis::{BasisSet, INDEPENDENCE_TOLERANCE};
pub use compactness::{
    extract_convergent_subsequence, probe_compactness, CompactnessConfig, CompactnessOutcome, Extraction, SetSpec,
};
pub use completeness::{probe_completeness, CompletenessConfig};
pub use lemma1::{
    default_c_grid, default_resolution, estimate_lemma1_constants, sphere_point_count, verify_lemma1_certificate,
    Lemma1Estimate, MAX_VERIFY_POINTS, MIN_DELTA, RANDOM_ALPHA_SETS,
};
