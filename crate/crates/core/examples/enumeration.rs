//! Lists a truncation of the sums e_i ± e_j and checks it is an l1 ball.

use std::sync::Arc;

use tseq::neighborhood::{enumerate_truncation, Config, NeighborhoodExpr};
use tseq::sequence::SequenceSpec;

fn main() {
    let e = Arc::new(SequenceSpec::basis_vectors("e"));
    let set = enumerate_truncation(&NeighborhoodExpr::sum_repeat(e, 1, 0), 2, &Config::default()).unwrap();
    println!("{} elements on coordinates 1..3:", set.len());
    for x in &set {
        println!("  {x}");
    }
}
