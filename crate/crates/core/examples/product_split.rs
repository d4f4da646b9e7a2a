//! Splits a scheme for an interleaved product into schemes for the factors.

use std::sync::Arc;

use tseq::constructions::product_scheme_split;
use tseq::neighborhood::Config;
use tseq::scheme::{IndexScheme, SchemeFamily};
use tseq::sequence::SequenceSpec;

fn main() {
    let ten = Arc::new(SequenceSpec::geometric("ten", 10, 0).unwrap());
    let l = SchemeFamily::uniform(IndexScheme::from_start(1));
    let r = product_scheme_split(&ten, &ten, &l, 1, 2, &Config::default()).unwrap();
    println!("left  {:?}", r.left.default.values(5));
    println!("right {:?}", r.right.default.values(5));
    println!("{} × {} products checked, passed: {}", r.left_size, r.right_size, r.passed());
}
