//! Covers an interval of integers by translates of A(n,0) for 2^n.

use std::sync::Arc;

use tseq::group::GroupElement;
use tseq::neighborhood::{cover_by_translates, Config};
use tseq::sequence::SequenceSpec;

fn main() {
    let pow2 = Arc::new(SequenceSpec::geometric("pow2", 2, 0).unwrap());
    let k: Vec<GroupElement> = (-30..=30).map(GroupElement::int).collect();
    for n in 0..3 {
        match cover_by_translates(&k, &pow2, n, 4, &Config::default()).unwrap() {
            Some(t) => println!("n={n}: {} translates {:?}", t.len(), t.iter().map(|g| g.to_string()).collect::<Vec<_>>()),
            None => println!("n={n}: no cover with 4 translates"),
        }
    }
}
