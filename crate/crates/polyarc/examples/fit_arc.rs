//! Arc fitting through fixed endpoints: least squares and tolerance.
//!
//! cargo run --release --example fit_arc -- [points] [noise] [tolerance]

use polyarc::arc_fit::{arc_within_tolerance, feasible_centers, fit_arc_by_tolerance, fit_arc_least_squares};
use polyarc::geometry_core::IntPoint;
use rand::{Rng, SeedableRng};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(60);
    let noise: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(20.0);
    let tol: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(30.0);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let radius = 20_000.0;
    let mut points: Vec<IntPoint> = (0..n)
        .map(|i| {
            let a = 2.0 * i as f64 / (n - 1) as f64;
            let r = radius + rng.gen_range(-noise..=noise);
            IntPoint::new((r * a.cos()).round() as i64, (r * a.sin()).round() as i64)
        })
        .collect();
    // Endpoints are part of the result and carry no noise.
    points[0] = IntPoint::new(radius as i64, 0);
    points[n - 1] = IntPoint::new((radius * 2f64.cos()).round() as i64, (radius * 2f64.sin()).round() as i64);

    let lsq = fit_arc_least_squares(&points).expect("least squares");
    println!("least squares  r = {:.2}  center = ({:.2}, {:.2})  sse = {:.1}", lsq.radius, lsq.center.0, lsq.center.1, lsq.sse);
    println!("  within {tol}: {}", arc_within_tolerance(&lsq, &points, tol));

    let centers = feasible_centers(&points, tol).expect("intervals");
    println!("feasible bisector intervals: {:?}", centers.intervals());
    match fit_arc_by_tolerance(&points, tol).expect("tolerance fit") {
        Some(arc) => println!(
            "tolerance fit  r = {:.2}  sse = {:.1}  sweep = {:.1}°  within: {}",
            arc.radius,
            arc.sse,
            arc.sweep().to_degrees(),
            arc_within_tolerance(&arc, &points, tol)
        ),
        None => println!("no arc within {tol}"),
    }
}
