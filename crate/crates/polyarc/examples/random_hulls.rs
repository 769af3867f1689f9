//! The random convex hull generators, finalized onto the integer grid.
//!
//! cargo run --release --example random_hulls -- [n] [seeds]

use polyarc::random_hull::{finalize_hull, gen_random_walk_hull, grid_scale_for, HullGenerator};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(1000);
    let seeds: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(200);

    for g in HullGenerator::ALL {
        let sample = g.generate(n, 1).expect("generate");
        let hull = finalize_hull(&sample, grid_scale_for(&sample, 30)).expect("finalize");
        println!("{g:<10} generated {:>6}  finalized {:>6}", sample.vertices.len(), hull.vertices.len());
    }

    for walk in [7usize, 55, 2981] {
        let mean = (0..seeds).map(|s| gen_random_walk_hull(walk, s).expect("walk").vertices.len() as f64).sum::<f64>()
            / seeds as f64;
        println!("walk of {walk:>5} points: mean hull size {mean:.2} (2 ln n = {:.2})", 2.0 * (walk as f64).ln());
    }
}
