//! Minimum-width annulus of noisy samples from a circular arc.
//!
//! cargo run --release --example annulus -- [points] [noise] [seed]

use std::time::Instant;

use polyarc::annulus_solver::{arc_exists_within_tolerance, min_width_annulus_stats};
use polyarc::delaunay::ClipConfig;
use polyarc::geometry_core::IntPoint;
use rand::{Rng, SeedableRng};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(200);
    let noise: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(20.0);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let radius = 1_000_000.0;
    let points: Vec<IntPoint> = (0..n)
        .map(|i| {
            let a = 1.2 * i as f64 / n as f64;
            let r = radius + rng.gen_range(-noise..=noise);
            IntPoint::new((r * a.cos()).round() as i64, (r * a.sin()).round() as i64)
        })
        .collect();

    let clip = ClipConfig::default();
    let t = Instant::now();
    let (res, stats) = min_width_annulus_stats(&points, &clip).expect("annulus");
    let elapsed = t.elapsed();
    let (cx, cy) = res.center.to_f64();
    println!("points       {n}");
    println!("center       ({cx:.3}, {cy:.3})");
    println!("width        {:.6}", res.width);
    println!("segments     {}", stats.segments);
    println!("events       {}", stats.events);
    println!("verified     {}", stats.verified);
    println!("solve time   {:.3} ms", elapsed.as_secs_f64() * 1e3);

    for tol in [noise * 0.5, noise, noise * 2.0] {
        let t = Instant::now();
        let ok = arc_exists_within_tolerance(&points, tol, &clip).expect("decision");
        println!("tol {tol:>8.2}  arc exists {ok:<5}  ({:.3} ms)", t.elapsed().as_secs_f64() * 1e3);
    }
}
