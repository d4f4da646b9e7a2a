//! Decides membership in repeated tail sums of 2^n and prints the verdicts.

use std::sync::Arc;

use tseq::group::GroupElement;
use tseq::neighborhood::{member, Config, NeighborhoodExpr};
use tseq::sequence::SequenceSpec;

fn main() {
    let pow2 = Arc::new(SequenceSpec::geometric("pow2", 2, 0).unwrap().with_ratio(2, 0).unwrap());
    let cfg = Config::default();
    for (k, m) in [(0, 0), (1, 0), (1, 2), (2, 1)] {
        let expr = NeighborhoodExpr::sum_repeat(pow2.clone(), k, m);
        for x in [3, 6, 7, 11, 40] {
            let v = member(&GroupElement::int(x), &expr, &cfg).unwrap();
            println!("A({k},{m}) ∋ {x}? {v}");
        }
    }
}
