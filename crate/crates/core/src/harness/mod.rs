//! Seeded sampling and the batch verification suites.

mod sample;
mod suite;

pub use sample::{sample_congruence, sample_gl, Sampler, ATTEMPTS_PER_SAMPLE};
pub use suite::{run_suite, Check, Report, SuiteConfig, SUITES};
