//! Sends generators to sequence terms and evaluates the induced map.

use tseq::constructions::quotient_apply;
use tseq::group::GroupElement;
use tseq::sequence::SequenceSpec;

fn main() {
    let pow2 = SequenceSpec::geometric("pow2s1", 2, 1).unwrap();
    let v = GroupElement::vector([(1, 3), (3, 1)]);
    println!("{v} ↦ {}", quotient_apply(&v, &pow2).unwrap());
    let w = GroupElement::word(&[(1, 1), (2, -1), (1, 1)]);
    println!("{w} ↦ {}", quotient_apply(&w, &pow2).unwrap());
    let letters = SequenceSpec::free_letters("x");
    println!("{w} ↦ {}", quotient_apply(&w, &letters).unwrap());
}
