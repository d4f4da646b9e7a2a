//! Scripted replays of two concrete constructions: the diagonal subgroup of
//! integer vectors with dyadic neighborhoods, and direct sums of sequences
//! living on disjoint coordinate blocks.

mod blocks;
mod diagonal;

pub use blocks::{direct_sum_blocks, BlockReport};
pub use diagonal::{diagonal_separation, diagonal_tail_points, SeparationConfig, SeparationReport, TailPointsReport};
