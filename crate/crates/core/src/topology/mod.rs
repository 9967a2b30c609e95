//! Generic sequences of irreducibles along character paths, their entrywise limits at orbit-drop
//! points, and the decomposition of those limits into irreducibles.

mod decompose;
mod drop;
mod path;
mod sequence;

pub use decompose::{
    block_diagonalize, branches, decompose_limit, dual_labels, inner_product, inner_product_shifted, BlockDiagonalization,
    Constituent, DecompositionReport, LimitOptions, LimitRun, LEAKAGE_LIMIT, ROUNDING_LIMIT,
};
pub use drop::{detect_orbit_drop, detect_orbit_drop_masked, recover_character, recover_sequence, RECOVERY_MAX_DENOMINATOR};
pub use path::{CharacterPath, Coordinate, DEFAULT_SAMPLES};
pub use sequence::{
    closed_form_witness, comparison_elements, entrywise_limit, generic_sequence, path_witnesses, stabilizer_along,
    witness_spread, EntrywiseLimit, GenericSequence, PathSample, CAUCHY_RATE_BOUND, MAX_SAMPLES,
};
