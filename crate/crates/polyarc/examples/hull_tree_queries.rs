//! Range tolerance and width queries answered from dyadic hulls.
//!
//! cargo run --release --example hull_tree_queries -- [points] [tolerance]

use polyarc::geometry_core::IntPoint;
use polyarc::hull_tree::HullTree;
use rand::{Rng, SeedableRng};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let tol: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(40.0);

    // A slowly wandering track: long ranges stay within tolerance of a chord.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
    let mut y = 0i64;
    let points: Vec<IntPoint> = (0..n as i64)
        .map(|x| {
            y += rng.gen_range(-1..=1);
            IntPoint::new(10 * x, y)
        })
        .collect();
    let tree = HullTree::build(&points);
    println!("{n} points, {} levels", tree.level_count());

    // Longest run from 0 that one segment covers, found by doubling.
    let mut len = 1usize;
    while len < n && tree.segment_within_tolerance(0, len, points[0], points[len], tol) {
        len *= 2;
    }
    let (mut lo, mut hi) = (len / 2, len.min(n - 1));
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if tree.segment_within_tolerance(0, mid, points[0], points[mid], tol) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    println!("longest segment from vertex 0 within {tol}: to vertex {lo}");
    println!("cover of [3, {}]: {} hulls", n - 5, tree.query_cover(3, n - 5).len());
    println!("min width of [0, {lo}] exceeds {}: {}", 2.0 * tol, tree.range_min_width_exceeds(0, lo, 2.0 * tol));
}
