//! Interleaves finitely many sequences, and two sequences into a product group.

use std::sync::Arc;

use tseq::sequence::{interleave_finite, pair_interleave, SequenceSpec};

fn main() {
    let a = Arc::new(SequenceSpec::geometric("pow2", 2, 0).unwrap());
    let b = Arc::new(SequenceSpec::factorial("fact", 1).unwrap());
    let c = Arc::new(SequenceSpec::int_table("t", &[7, 8, 9]));
    let d = interleave_finite(&[a.clone(), b.clone(), c]).unwrap();
    println!("{}: {:?}", d.id, d.prefix(12).iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let p = pair_interleave(a, b).unwrap();
    println!("{}: {:?}", p.id, p.prefix(8).iter().map(|x| x.to_string()).collect::<Vec<_>>());
}
