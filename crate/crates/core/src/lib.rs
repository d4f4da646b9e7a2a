pub mod cases;
pub mod constructions;
pub mod error;
mod json;
pub mod group;
pub mod job;
pub mod neighborhood;
pub mod scheme;
pub mod sequence;
pub mod tsequence;
