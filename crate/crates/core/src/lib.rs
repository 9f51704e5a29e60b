//! Set-equipped graph shifts: a finite simple digraph with a nonempty
//! subset of ℕ on every vertex, whose points are concatenations of full
//! blocks `u^n` (`n` in `S_u`) along the edges.
//!
//! The crate computes entropy three ways, exact zeta-function
//! coefficients, decidable dynamical properties, entropy-preserving graph
//! transformations and target-entropy constructions, and ships a
//! brute-force word oracle to check all of it.

pub mod construct;
pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod nset;
pub mod oracle;
pub mod sample;
pub mod series;
pub mod transforms;
pub mod tri;
pub mod zeta;

pub use construct::{
    family_member, greedy_beta_expansion, parse_lambda, realize_entropy, spiced_expansion,
    BetaExpansion, FamilyMember, Realization,
};
pub use dynamics::{properties, PropertyReport, SpecConstants};
pub use entropy::{entropy, s_gap_lambda, sft_truncation, EntropyMethod, EntropyReport, Method};
pub use error::{Error, Result};
pub use graph::{
    build_gap_pair, build_ordered_limited, build_s_gap, build_unordered_limited, Cycle, SGraph,
    Vertex, DEFAULT_CYCLE_CAP,
};
pub use linalg::{spectral_radius, Matrix};
pub use nset::{Bound, EvalMode, GapSet, NSet, NSetStats, Tail};
pub use oracle::{Oracle, OracleOptions, OracleReport};
pub use series::{series_det, IntSeries, RatSeries, TruncSeries};
pub use transforms::{Conjugacy, TransformKind, TransformRecord};
pub use tri::Tri;
pub use zeta::{
    fingerprint, fingerprint_compare, least_period_counts, ordered_limited_zeta, p1_count,
    periodic_counts, s_gap_zeta, zeta_coeffs, Fingerprint, FingerprintVerdict,
};
