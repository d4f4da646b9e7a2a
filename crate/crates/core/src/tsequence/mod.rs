//! Separation witnesses for integer sequences and finite-stage checks of the
//! neighborhood-base axioms for SP products.

mod axioms;
mod separation;

pub use axioms::{check_base_axiom_inclusions, AxiomOptions, AxiomOutcome, AxiomReport};
pub use separation::{
    check_tsequence_certificate, separation_witness, ClosedForm, TSequenceCheck, TraceEntry, WitnessReport,
};
