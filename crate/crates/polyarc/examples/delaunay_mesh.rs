//! Closest and farthest Delaunay triangulations with their Voronoi duals.
//!
//! cargo run --release --example delaunay_mesh -- [points] [threads]

use std::time::Instant;

use polyarc::delaunay::{
    build_closest_with, build_convex_ordered, build_farthest, voronoi_from_delaunay, BuildOptions, ClipConfig,
    MeshKind,
};
use polyarc::random_hull::{finalize_hull, gen_directions_hull, grid_scale_for, uniform_grid_points};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(200_000);
    let threads: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1);

    let points = uniform_grid_points(n, 7, 1 << 24);
    let opts = BuildOptions { threads, ..BuildOptions::default() };
    let t = Instant::now();
    let closest = build_closest_with(&points, &opts).expect("closest");
    println!("closest   n={n:<8} edges={:<8} (3(n−1) = {})  {:.3} s", closest.edge_count(), 3 * (n - 1), t.elapsed().as_secs_f64());

    let t = Instant::now();
    let farthest = build_farthest(&points).expect("farthest");
    println!("farthest  triangles={:<5} edges={:<6} {:.3} s", farthest.triangles().len(), farthest.edge_count(), t.elapsed().as_secs_f64());

    let vd = voronoi_from_delaunay(&farthest, Some(&ClipConfig::default()));
    println!("farthest Voronoi: {} vertices, {} edges", vd.vertices.len(), vd.edges.len());

    // Hull-ordered input skips every median split.
    let sample = gen_directions_hull(n / 4, 3).expect("hull");
    let hull = finalize_hull(&sample, grid_scale_for(&sample, 40)).expect("finalize");
    let t = Instant::now();
    let ordered = build_convex_ordered(&hull.vertices, MeshKind::Closest).expect("ordered");
    let ordered_s = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let general = build_closest_with(&hull.vertices, &opts).expect("general");
    let general_s = t.elapsed().as_secs_f64();
    println!(
        "convex hull of {} vertices: ordered {ordered_s:.3} s, unordered {general_s:.3} s, same mesh: {}",
        hull.vertices.len(),
        ordered.triangle_set() == general.triangle_set()
    );
}
