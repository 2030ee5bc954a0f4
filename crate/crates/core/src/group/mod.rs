//! Matrices over finite rings, transvection words and enumerated subgroups.

mod congruence;
mod enumerate;
mod matrix;
mod perm;
mod relations;
mod word;

pub use congruence::{count_invertible, CenterOracle, LevelGenerator, LevelOrigin};
pub use enumerate::{
    elementary_generators, enumerate_closure, gl_generators, ideal_elementary_generators,
    normal_closure, relative_generators, Subgroup, DEFAULT_GROUP_CAP,
};
pub use matrix::{Gl, InvertibleMatrix, Matrix, INVERT_SEARCH_CAP};
pub use perm::perm_conjugator;
pub use relations::{check_relations, Relation, RelationFailure, RelationReport, RELATION_CHECK_CAP};
pub use word::{perm_word, GroupWord, Letter, RelativeFactor, RelativeWord, Sign};
