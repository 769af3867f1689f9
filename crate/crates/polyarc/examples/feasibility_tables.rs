//! Infeasible-pair tables that bound the compression search.
//!
//! cargo run --release --example feasibility_tables -- [corners] [tolerance]

use polyarc::feasibility::{build_fit_index_arrays, test_arcs_stats, test_segments, ArcScanConfig};
use polyarc::geometry_core::IntPoint;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let corners: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(6);
    let tol: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(30.0);

    // Quarter circles joined at sharp corners: each arc fits, corners do not.
    let mut polyline = Vec::new();
    for c in 0..corners {
        let (ox, flip) = (c as f64 * 2000.0, if c % 2 == 0 { 1.0 } else { -1.0 });
        for k in 0..12 {
            let a = std::f64::consts::FRAC_PI_2 * k as f64 / 12.0;
            polyline.push(IntPoint::new((ox + 1000.0 - 1000.0 * a.cos()).round() as i64, (flip * 1000.0 * a.sin()).round() as i64));
        }
    }
    let n = polyline.len();

    let (arcs, stats) = test_arcs_stats(&polyline, tol, &ArcScanConfig::default());
    println!("{n} vertices, {} annulus windows tested", stats.windows);
    println!("arc infeasible pairs: {:?}", arcs.pairs().collect::<Vec<_>>());
    let arrays = build_fit_index_arrays(&arcs, n);
    println!("first_arc: {:?}", arrays.first);
    println!("last_arc:  {:?}", arrays.last);

    let (segments, seg_arrays) = test_segments(&polyline, tol);
    println!("segment infeasible pairs: {}", segments.len());
    println!("first_segment[{}] = {}", n - 1, seg_arrays.first[n - 1]);
    println!("contains_infeasible(0, {}) = {}", n - 1, arcs.contains_infeasible(0, n - 1));
}
