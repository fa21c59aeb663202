//! Chevalley-Eilenberg cohomology with adjoint coefficients.

mod blocks;
mod cochain;
mod complex;
mod differential;
mod solve;

pub use blocks::{blocks_of_degree, c3_counts, weight_blocks, BlockKey, BlockWeights, WeightBlock};
pub use cochain::{cochain_eval, decode, encode, sort_with_sign, Cochain};
pub use complex::{h_dim, BlockReport, BlockStatus, CohomologyOptions, CohomologyReport, Mode, DEFAULT_BLOCK_CAP};
pub use differential::{ad_cochain, differential, is_cocycle, merge_entries, CocycleCheck, DiffContext};
pub use solve::{class_span_dim, coboundary_solve, verify_certificate, Certificate, CoboundaryResult};
