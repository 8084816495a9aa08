//! Numerical verification of the rotation-based connection between spin and
//! exchange statistics for finite-dimensional multi-particle states.
//!
//! The library models product states whose slots carry an azimuthal spin
//! angle, exchanges slots through explicit sense-controlled rotations, builds
//! the resulting permutation superpositions, and compares transition
//! amplitudes computed this way against the standard symmetrized formalism.
//! A brute-force dense oracle provides independent cross-checks.

pub mod amplitudes;
pub mod error;
pub mod exchange;
pub mod oracle;
pub mod perm;
pub mod spin;
pub mod state;
pub mod symmetrize;

pub use amplitudes::{
    chained_amplitude, classify, feynman_amplitude, standard_amplitude, t_term, AmplitudeResult,
    ChainedResult, Method, TermCase,
};
pub use error::{Error, Result};
pub use exchange::{
    eta, eta_steps, exchange_factor_f, exchange_factor_f_chi, rotate_chi, transpose_pair,
    RotationResult, RotationSense,
};
pub use perm::{
    apply_full, apply_params_only, decompose_canonical, enumerate_all, enumerate_all_capped,
    Parity, Permutation, TranspositionSeq, DEFAULT_ENUM_CAP,
};
pub use spin::{HalfInt, SpinLabel};
pub use state::{
    phase_factor, product_inner, single_inner, superposition_inner, Chi, ProductState,
    SingleParticleState, Superposition,
};
pub use symmetrize::{
    apply_projector, build_superposed, build_superposed_general, extract_overall_phase,
    is_antisymmetric, is_symmetric, symmetrize_prime, Projector, Statistics,
};
