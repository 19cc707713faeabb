//! The so(2,1) generator families, the point canonical map, ladder and
//! Casimir operators acting on the x-part of basis kets, and ground states.
//!
//! Wherever the generator constraints call for `sqrt(M)` the signed root
//! `sigma = u'` is used and `M = sigma^2`; with a decreasing map (`arcoth`)
//! only the signed root satisfies `F' = sigma (1 - F^2)`, `G' = -sigma F G`.

mod family;
mod ladder;

pub use family::{
    build_family, constraint_residuals, omega_invariant, pct_mass, FamilyClass, FamilySpec, GeneratorPair,
    OmegaEstimate, PctMap, ZeroSign,
};
pub use ladder::{
    casimir_apply, first_excited, ground_state, ladder_apply, printed_first_excited, CasimirVariant, Direction,
    LadderState,
};
