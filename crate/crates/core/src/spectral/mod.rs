//! Finite-difference cross-check of the algebraic levels: `-d^2/du^2 + V_s`
//! on a uniform `u` grid, its lowest eigenpairs, and a comparison with
//! `-(k - 1/2)^2`.

mod eigen;
mod operator;
mod verify;

pub use eigen::{eigen_lowest, sturm_count, EigenResult, EIGEN_RESIDUAL_TOL, MAX_EIGENPAIRS};
pub use operator::{discretize, invert_map, DiscretizedOperator, MIN_OPERATOR_NODES};
pub use verify::{
    verify_algebraic_spectrum, verify_algebraic_spectrum_with_delta, SpectralReport, SpectralStatus, SpectralVerdict,
    DECAY_TOL, DEFAULT_DELTA, EIGENVECTOR_TOL, FORMAL_RESIDUAL_TOL,
};
