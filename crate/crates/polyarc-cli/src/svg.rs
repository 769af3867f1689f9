//! SVG rendering: source polyline in black, compressed result in blue,
//! result vertices in red. Model y points up, so y is negated.

use std::f64::consts::PI;
use std::fmt::Write as _;

use polyarc::arc_fit::Orientation;
use polyarc::dp_compress::{CompressedPolyline, PrimitiveShape};
use polyarc::geometry_core::IntPoint;

fn model(p: IntPoint, scale: f64) -> (f64, f64) {
    (p.x as f64 / scale, -(p.y as f64) / scale)
}

fn fmt_num(v: f64) -> String {
    // Six fractional digits keep files small and deterministic.
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

pub fn render(source: &[IntPoint], result: &CompressedPolyline, scale: i64) -> String {
    let scale = scale as f64;
    let pts: Vec<(f64, f64)> = source.iter().map(|&p| model(p, scale)).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts.iter().chain(result.vertices.iter().map(|&p| model(p, scale)).collect::<Vec<_>>().iter()) {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let extent = (x1 - x0).max(y1 - y0).max(1.0 / scale);
    let pad = extent * 0.05;
    let dot = extent / 300.0;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        fmt_num(x0 - pad),
        fmt_num(y0 - pad),
        fmt_num(x1 - x0 + 2.0 * pad),
        fmt_num(y1 - y0 + 2.0 * pad)
    )
    .unwrap();

    let source_pts: Vec<String> = pts.iter().map(|&(x, y)| format!("{},{}", fmt_num(x), fmt_num(y))).collect();
    writeln!(
        out,
        r#"  <polyline fill="none" stroke="black" stroke-width="1" vector-effect="non-scaling-stroke" points="{}"/>"#,
        source_pts.join(" ")
    )
    .unwrap();

    let mut path = String::new();
    for (i, prim) in result.primitives.iter().enumerate() {
        let (sx, sy) = model(result.vertices[prim.start], scale);
        let (ex, ey) = model(result.vertices[prim.end], scale);
        if i == 0 {
            write!(path, "M {} {}", fmt_num(sx), fmt_num(sy)).unwrap();
        }
        match &prim.shape {
            PrimitiveShape::Segment => write!(path, " L {} {}", fmt_num(ex), fmt_num(ey)).unwrap(),
            PrimitiveShape::Arc(arc) => {
                let r = fmt_num(arc.radius / scale);
                let large = u8::from(arc.sweep() > PI);
                // Negating y turns counterclockwise into SVG's negative sweep.
                let sweep = u8::from(arc.orientation == Orientation::Cw);
                write!(path, " A {r} {r} 0 {large} {sweep} {} {}", fmt_num(ex), fmt_num(ey)).unwrap();
            }
        }
    }
    if !path.is_empty() {
        writeln!(
            out,
            r#"  <path fill="none" stroke="blue" stroke-width="2" vector-effect="non-scaling-stroke" d="{path}"/>"#
        )
        .unwrap();
    }

    let mut anchors: Vec<usize> = result.primitives.iter().flat_map(|p| [p.start, p.end]).collect();
    anchors.dedup();
    if result.primitives.is_empty() && !result.vertices.is_empty() {
        anchors.push(0);
    }
    out.push_str(r#"  <g fill="red">"#);
    out.push('\n');
    for i in anchors {
        let (x, y) = model(result.vertices[i], scale);
        writeln!(out, r#"    <circle cx="{}" cy="{}" r="{}"/>"#, fmt_num(x), fmt_num(y), fmt_num(dot)).unwrap();
    }
    out.push_str("  </g>\n</svg>\n");
    out
}
