//! Numerical toolkit for infima of weighted integral functionals over
//! sub-level sets: scalarization with a level-set multiplier, discrete
//! measure-space verification of the main identity, Jensen-type inequality
//! sweeps, and 1-D quasilinear Dirichlet energy bounds.

pub mod descent;
pub mod ext;
pub mod functionals;
pub mod inequalities;
pub mod measure;
pub mod pde1d;
pub mod scalarize;
pub mod suite;

pub use ext::ExtReal;
pub use functionals::{alpha_beta, AlphaBeta, FunctionalPair};
pub use scalarize::{
    find_lambda_r, level_set_infimum, level_set_infimum_direct, minimize_penalized,
    MultiplierResult, PenalizedMinimum, SearchConfig,
};
