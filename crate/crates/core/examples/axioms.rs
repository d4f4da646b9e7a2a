//! Checks the neighborhood-base inclusions on truncations of SP products.

use std::sync::Arc;

use tseq::neighborhood::Config;
use tseq::scheme::{IndexScheme, SchemeFamily};
use tseq::sequence::SequenceSpec;
use tseq::tsequence::{check_base_axiom_inclusions, AxiomOptions};

fn main() {
    let schemes = SchemeFamily::uniform(IndexScheme::from_start(0));
    let families = [
        vec![Arc::new(SequenceSpec::basis_vectors("e"))],
        vec![
            Arc::new(SequenceSpec::geometric("pow2", 2, 0).unwrap()),
            Arc::new(SequenceSpec::factorial("fact", 1).unwrap()),
        ],
    ];
    for family in &families {
        let r = check_base_axiom_inclusions(family, &schemes, 2, 3, &AxiomOptions::default(), &Config::default())
            .unwrap();
        for o in &r.outcomes {
            println!("{} ({}) {} after {} checks", family[0].id, o.axiom, if o.passed { "holds" } else { "fails" }, o.checked);
        }
    }
}
