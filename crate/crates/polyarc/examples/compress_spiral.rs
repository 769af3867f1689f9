//! Compresses an Archimedean spiral with unit arm separation.
//!
//! cargo run --release --example compress_spiral -- [turns] [step] [tolerance]

use std::f64::consts::TAU;
use std::time::Instant;

use polyarc::dp_compress::{compress_with, CompressionParams, PrimitiveShape, Pruning};
use polyarc::geometry_core::IntPoint;

/// Grid units per model unit.
const SCALE: f64 = 16384.0;

fn spiral(turns: f64, step: f64) -> Vec<IntPoint> {
    // r = θ / 2π; advance θ so consecutive samples are about `step` apart.
    let mut out = Vec::new();
    let mut theta = TAU;
    while theta <= TAU * (1.0 + turns) {
        let r = theta / TAU;
        out.push(IntPoint::new((SCALE * r * theta.cos()).round() as i64, (SCALE * r * theta.sin()).round() as i64));
        theta += step / r.hypot(1.0 / TAU);
    }
    out
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let turns: f64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(5.0);
    let step: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.25);
    let tol: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.1);

    let points = spiral(turns, step);
    let params = CompressionParams::new(tol * SCALE);
    let t = Instant::now();
    let (out, stats) = compress_with(&points, &params, Pruning::FULL).expect("compress");
    let elapsed = t.elapsed();

    println!("vertices          {}", points.len());
    println!("primitives        {} ({} arcs, {} segments)", out.primitives.len(), out.arc_count(), out.segment_count());
    println!("penalty           {{{}, {:.4e}}}", out.total.t_count, out.total.t_sse / (SCALE * SCALE));
    println!("within tolerance  {}", out.within_tolerance(params.tolerance));
    println!("windows tested    {}", stats.feasibility_windows);
    println!("evaluations       {} segment, {} arc ({} fallback)", stats.segment_evaluations, stats.arc_evaluations, stats.arc_fallbacks);
    println!("time              {:.3} s", elapsed.as_secs_f64());
    let radii: Vec<f64> = out
        .primitives
        .iter()
        .filter_map(|p| match &p.shape {
            PrimitiveShape::Arc(a) => Some(a.radius / SCALE),
            PrimitiveShape::Segment => None,
        })
        .collect();
    let growing = radii.windows(2).filter(|w| w[1] >= w[0]).count();
    println!("arc radii         {} of {} steps non-decreasing", growing, radii.len().saturating_sub(1));
    for p in out.primitives.iter().take(8) {
        match &p.shape {
            PrimitiveShape::Segment => println!("  segment {:>5} → {:>5}", p.start, p.end),
            PrimitiveShape::Arc(a) => println!("  arc     {:>5} → {:>5}  r = {:.4}", p.start, p.end, a.radius / SCALE),
        }
    }
}
