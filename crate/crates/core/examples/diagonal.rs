//! Dyadic separation of repeated basis sums and doubled basis points.

use tseq::cases::{diagonal_separation, diagonal_tail_points, SeparationConfig};
use tseq::neighborhood::Config;
use tseq::scheme::IndexScheme;

fn main() {
    let cfg = Config::default();
    for k in 1..=2 {
        let r = diagonal_separation(SeparationConfig { k, support_bound: 4, tail_depth: 5 }, &cfg).unwrap();
        println!("k={k}: {} elements, {} pairs, passed {}", r.elements, r.pairs, r.passed());
    }
    for n in 0..=2 {
        let r = diagonal_tail_points(n, &IndexScheme::from_start(0), 3, &cfg).unwrap();
        println!("n={n}: {:#}", r.to_json());
    }
}
