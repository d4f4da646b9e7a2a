//! Growing fragments built from the first few tails of a family.

use std::sync::Arc;

use tseq::constructions::{hemicompact_fragment, hemicompact_truncation};
use tseq::group::{GroupElement, GroupSpec};
use tseq::neighborhood::Config;
use tseq::sequence::{Generator, SequenceSpec};

fn main() {
    let e = Arc::new(SequenceSpec::basis_vectors("e"));
    let g = Arc::new(SequenceSpec::geometric("g", 2, 0).unwrap());
    let blk = Arc::new(SequenceSpec::new("blk", GroupSpec::IntVec, Generator::Embed { inner: g, coordinate: 1 }).unwrap());
    let family = [e, blk];
    let cfg = Config::default();
    for n in 0..=2 {
        let size = hemicompact_truncation(&family, n, 3, &cfg).unwrap().len();
        let v = hemicompact_fragment(&family, n, &GroupElement::vector([(1, 5), (2, 1)]), &cfg).unwrap();
        println!("n={n}: {size} points in the truncation, 5e1+e2: {}", v.label());
    }
}
