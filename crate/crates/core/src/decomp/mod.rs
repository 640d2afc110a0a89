//! Gap sequences and the decomposition condition on concrete vectors.

mod boundary;
mod gap;
mod modulus;
mod prop36;
mod sequences;
mod star;

pub use boundary::{boundary_check, boundary_gap, BoundaryCheck};
pub use gap::{
    exhaustive_subset_sup, gap_table, greedy_subset_sup, prefix_gap, subset_gap, subset_sup, subset_sup_profile,
    GapMode, GapRow, GapTable, MAX_EXHAUSTIVE_SUPPORT,
};
pub use modulus::{orlicz_modulus, Modulus, ModulusTable, MODULUS_GRID};
pub use prop36::{prop36_chain, Prop36Report};
pub use sequences::{combine_sequences, lambda_sequence, ASequence, CombinedSequence};
pub use star::{
    star_check, star_orlicz_certificate, star_orlicz_certificate_with, star_rescale, star_summable_certificate,
    StarCertificate, StarConstants, SubsetMargin, MAX_STAR_SUPPORT, STAR_MARGIN_TOL,
};
