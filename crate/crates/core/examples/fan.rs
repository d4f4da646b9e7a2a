//! Registers fan spines, cuts them, and checks the projection into level 0.

use std::sync::Arc;

use tseq::constructions::{fan_points, fan_projection_check, FanFamily, FanNeighborhood};
use tseq::group::{GroupElement, GroupSpec};
use tseq::neighborhood::Config;
use tseq::scheme::{IndexScheme, SchemeFamily};
use tseq::sequence::SequenceSpec;

fn main() {
    let mut family = FanFamily::new();
    let e = family.register(Arc::new(SequenceSpec::basis_vectors("e")), 32).unwrap();
    let repeats = SequenceSpec::table(
        "rep",
        GroupSpec::IntVec,
        vec![GroupElement::vector([(1, 1)]), GroupElement::vector([(1, 1)]), GroupElement::vector([(2, 1)])],
    )
    .unwrap();
    let t = family.register(Arc::new(repeats), 32).unwrap();
    println!("spines: {e}, {t} (index map {:?})", family.index_map(&t).unwrap());

    let w = FanNeighborhood::uniform(2).with(t.clone(), 1);
    for p in fan_points(&family, &w, 5) {
        println!("  {p} ↦ {}", family.project(&p).unwrap());
    }
    let schemes = SchemeFamily::uniform(IndexScheme::from_start(1));
    let r = fan_projection_check(&family, &schemes, 4, None, &Config::default()).unwrap();
    println!("{} points probed, passed: {}", r.checked, r.passed());
}
