//! Sampled separation check for several integer sequences.

use std::sync::Arc;

use tseq::neighborhood::Config;
use tseq::sequence::SequenceSpec;
use tseq::tsequence::check_tsequence_certificate;

fn main() {
    let seqs = [
        SequenceSpec::geometric("ten", 10, 0).unwrap().with_ratio(10, 0).unwrap(),
        SequenceSpec::factorial("fact", 1).unwrap().with_ratio(6, 4).unwrap(),
        SequenceSpec::geometric("pow2", 2, 0).unwrap(),
    ];
    for seq in seqs {
        let check = check_tsequence_certificate(&Arc::new(seq.clone()), 20, &Config::default());
        println!("{}: {}", seq.id, check.to_json());
    }
}
