//! Interleaves block-embedded sequences and probes which blocks are reached.

use std::sync::Arc;

use tseq::cases::direct_sum_blocks;
use tseq::group::GroupSpec;
use tseq::sequence::{Generator, SequenceSpec};

fn main() {
    let blocks: Vec<Arc<SequenceSpec>> = (1..=3)
        .map(|c| {
            Arc::new(
                SequenceSpec::new(
                    format!("blk{c}"),
                    GroupSpec::IntVec,
                    Generator::Embed { inner: Arc::new(SequenceSpec::geometric("g", 2, 0).unwrap()), coordinate: c },
                )
                .unwrap(),
            )
        })
        .collect();
    for q in 1..=3 {
        println!("{:#}", direct_sum_blocks(q, &blocks, 16).unwrap().to_json());
    }
}
