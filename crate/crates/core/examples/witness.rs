//! Builds index schemes whose prefix sums of 10^n avoid a target.

use std::sync::Arc;

use tseq::group::GroupElement;
use tseq::neighborhood::Config;
use tseq::sequence::SequenceSpec;
use tseq::tsequence::separation_witness;

fn main() {
    let ten = Arc::new(SequenceSpec::geometric("ten", 10, 0).unwrap().with_ratio(10, 0).unwrap());
    for x in [1, 5, -42, 99] {
        let r = separation_witness(&GroupElement::int(x), &ten, 3, &Config::default()).unwrap();
        println!("{:#}", r.to_json());
    }
}
