//! Explicit factorizations into conjugates of `I`-elementary transvections.
//!
//! Free indices are always the smallest admissible ones, and every result is
//! re-evaluated against its target before it is returned.

mod commutator;
mod rank_one;
mod unimodular;

pub use commutator::{factor_congruence_commutator, transvection_as_commutator};
pub use rank_one::factor_rank_one;
pub use unimodular::{factor_conjugated_transvection, factor_unimodular};
