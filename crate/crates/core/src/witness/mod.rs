//! The counterexample constructions, each re-verified from raw norm
//! evaluations into a [`WitnessReport`].

mod blocks;
mod blockweight;
mod day;
mod ex17;
mod nakano;
mod report;
mod sample;
mod suites;

pub use blocks::{block_positions, block_window, MAX_DEFAULT_WINDOW};
pub use blockweight::{blockweight_witness, MAX_BLOCK_SUPPORT};
pub use day::{day_bound_suite, day_witness};
pub use ex17::ex17_witness;
pub use nakano::nakano_witness;
pub use report::{Relation, WitnessReport, WitnessRow};
pub use sample::{random_vector, seeded_rng};
pub use suites::{fact16_witness, nakano_suite, prop36_suite};
