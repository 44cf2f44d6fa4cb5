//! Exact weight distributions of pre-transformed polar codes.
//!
//! A code is `x = u T K_2^{⊗n}` with a unit upper-triangular `T`. The
//! engine enumerates a small expanded information set, after which every
//! coset splits recursively into two half-length cosets whose spectra
//! convolve. The equivalence module searches `T · T(g_j)` for the member
//! with the smallest expanded set; all members share one spectrum.

pub mod code;
pub mod engine;
pub mod equivalence;
pub mod error;
pub mod expansion;
pub mod gf2;
pub mod identities;
pub mod kernel;
pub mod oracle;
pub mod tables;

pub use code::{
    build_info_set, build_pretransform, validate, CodeParts, CodeSpec, Pretransform,
    ReliabilitySequence, SequenceError, Violation,
};
pub use engine::{
    compute_wd, compute_wd_with, polar_coset_wd, split_coset, v_values, wd_convolve,
    CosetAssignment, CosetCache, EngineConfig, PolarCosetSpec, WdStats, WeightDistribution,
};
pub use equivalence::{
    candidate, equivalence_class, monte_carlo_reduction, optimize_pretransform, recover_memory,
    EquivalenceReport, ReductionRow,
};
pub use error::{Error, Result};
pub use expansion::{baseline_expansion_size, couple, expanded_information_set, ExpansionResult};
pub use gf2::{BitVector, UnitUpperTriangular};
pub use kernel::{encode, kernel_row, kernel_shift_matrix, polar_transform};
pub use oracle::{brute_force_coset_wd, brute_force_wd, OracleLimits};
