//! Random-matrix experiments, exhaustive small-case oracles and tools for
//! one-dimensional (sequence) omni questions.

mod exact;
mod montecarlo;
mod oned;

pub use exact::{
    conjecture_table, exact_enumeration, exact_suen_inputs, ConjectureRow, ConjectureTable, ExactCounts,
    SuenInputs, EXACT_GUARD,
};
pub use montecarlo::{estimate, random_matrix, sweep, trial_rng, ExperimentConfig, MissingStats};
pub use oned::{oned_count_collections, oned_is_omni, oned_missing_count, text_to_sequence};
