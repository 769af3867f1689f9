//! Sorted-order extraction from arbitrary subarrays of an append-only log.
//!
//! cargo run --release --example sorted_extraction -- [size]

use polyarc::sorted_range::MergeTree;
use rand::{Rng, SeedableRng};

fn main() {
    let size: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1 << 16);

    let values = [8, 5, 13, 16, 6, 1, 14, 3, 15, 4, 17, 0, 12, 10, 19, 7, 20, 10, 18, 11, 9];
    let tree = MergeTree::from_values(values);
    println!("dyadic cover of [1, 18]: {:?}", tree.cover(1, 18));
    let pops: Vec<i32> = tree.open_range(1, 18).map(|(_, v)| *v).collect();
    println!("pops from [1, 18]: {pops:?}");

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut log = MergeTree::new();
    for _ in 0..size {
        log.append(rng.gen_range(0..1_000_000u32));
    }
    let (i, j) = (size / 7, size - size / 5);
    let mut heap = log.open_range(i, j);
    let smallest: Vec<u32> = heap.by_ref().take(5).map(|(_, v)| *v).collect();
    while heap.pop_min().is_some() {}
    println!("range [{i}, {j}]: five smallest {smallest:?}");
    println!("full extraction of {} values took {} comparisons", j - i + 1, heap.comparisons());
}
