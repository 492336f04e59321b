//! t-norms and φ-functions, with sampled axiom checkers.

mod phi;
mod tnorm;

pub use phi::{check_phi_axioms, default_growth_grid, phi_eval, CustomUnary, PhiSpec, PHI_TOLERANCE};
pub use tnorm::{
    check_continuity_at_one, check_tnorm_axioms, tnorm_eval, ContinuityCheck, CustomBinary, TNorm, TNORM_TOLERANCE,
    UNIT_CORNERS,
};

pub(crate) use phi::reevaluate_phi;
pub(crate) use tnorm::reevaluate_tnorm;
