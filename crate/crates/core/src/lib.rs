//! Tools for omnimosaics: `n`x`n` matrices over an `a`-letter alphabet that
//! contain every `k`x`k` matrix over the same alphabet as a submatrix (any
//! `k` rows and any `k` columns, order preserved).
//!
//! The crate covers
//!
//! * explicit constructions and constructive target location ([`construct`]),
//! * exact coverage checks and single-target containment ([`verify`]),
//! * exhaustive search for the smallest omnimosaic at tiny sizes ([`search`]),
//! * closed-form lower/upper bounds and the correlation-inequality estimates
//!   for random matrices ([`bounds`]),
//! * Monte-Carlo and exact-enumeration experiments, including the
//!   one-dimensional (subsequence) case ([`experiments`]).
//!
//! Letters are `0..a` throughout. All logarithms are natural.

pub mod bounds;
pub mod cli;
mod combin;
pub mod construct;
mod error;
pub mod experiments;
pub mod format;
pub mod matrix;
pub mod search;
pub mod symmetry;
pub mod target;
pub mod verify;

pub use combin::{binomial_big, binomial_u64, combinations, for_each_combination};
pub use construct::{
    build_mosaic, canonical_grid, higher_dim_side_estimate, locate, square_omnimosaic, thin_strip,
    GridDiagram, RegionMap, Stroke,
};
pub use error::{Error, Result};
pub use format::{parse_matrix, serialize_matrix};
pub use matrix::{Alphabet, MosaicMatrix};
pub use symmetry::{apply_symmetry, SymmetryOp};
pub use target::{decode_target, encode_target, target_space, TargetCode};
pub use verify::{
    contains_target, coverage, is_omnimosaic, verify_placement, CoverageSet, Placement,
    VerifyReport,
};

/// Schema tag carried by every JSON document the CLI emits.
pub const SCHEMA: &str = "omnikit/1";
