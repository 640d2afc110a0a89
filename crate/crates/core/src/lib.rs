//! Sequence-space norms, the decomposition condition on concrete vectors,
//! and the witness constructions that separate the conditions.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod decomp;
pub mod error;
pub mod exact;
pub mod norms;
pub mod output;
pub mod seqvec;
pub mod witness;

pub use error::{Error, Result};
pub use seqvec::{IndexSet, SparseVec};
