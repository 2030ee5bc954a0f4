//! Exact computations with elementary subgroups of `GL_n` over finite rings.
//!
//! Every finite ring is an exchange ring, so the constructive normality,
//! commutator and sandwich-classification arguments for `E_n(R, I)` run here
//! literally: each operation emits an explicit witness word that re-evaluates
//! to its target by exact matrix arithmetic.

pub mod error;
pub mod factor;
pub mod group;
pub mod harness;
pub mod ring;

pub use error::{Error, Result};
pub use ring::{Elem, Ideal, Ring};
pub mod witness;
