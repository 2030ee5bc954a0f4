//! Membership certificates built from conjugates of a single matrix.

mod classify;
mod extract;
mod product;
mod reduction;

pub use classify::{
    classify, compare_ideals, cross_check_level, ClassificationCertificate, LevelSource, LowerWitness,
    UniquenessEvidence,
};
pub use extract::{extract_diagonal, extract_entry, extract_transvection_8};
pub use product::{ConjugateFactor, ConjugateProduct};
pub use reduction::{expand_reduction, reduce_step, ReductionExpansion, ReductionPair};
