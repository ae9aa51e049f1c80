//! Finite-difference discretization along a contour and eigenvalue extraction.

mod bound;
mod eigen;
mod grid;
mod operator;

pub use bound::{
    eigenvector_asymptotics, find_bound_states, match_tolerance, BoundStateOptions, BoundStateProblem,
    Convergence, DecayRates, LevelConvergence, MatchedLevel, Seed, SpectrumResult, UnmatchedSeed,
    DECAY_LENGTHS, SPURIOUS_RATE_FRACTION,
};
pub use eigen::{
    full_spectrum, sort_spectrum, targeted_eigenvalue, DenseOptions, Eigenpair, TargetOptions,
    DEFAULT_DENSE_CEILING,
};
pub use grid::{GridSpec, ResolvedGrid, MIN_NODES};
pub use operator::{discretize, discretize_ck_from_ell, DiscretizedOperator, OperatorMeta};
