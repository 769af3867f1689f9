//! Plain-text polylines: one `x,y` vertex per line, optional
//! `# scale=<int>` header fixing the grid quantization.

use std::fmt::Write as _;

use polyarc::geometry_core::IntPoint;
use thiserror::Error;

/// Largest grid coordinate accepted by the exact kernels.
pub const MAX_GRID_COORD: f64 = (1u64 << 60) as f64;

/// Tolerance must span at least this many grid units.
pub const MIN_TOLERANCE_UNITS: f64 = 1024.0;

#[derive(Debug, Error, PartialEq)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("no vertices")]
    Empty,
    #[error("vertex {index} leaves the grid range at scale {scale}")]
    OutOfRange { index: usize, scale: i64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolylineFile {
    pub points: Vec<(f64, f64)>,
    pub scale: Option<i64>,
}

fn malformed(line: usize, message: impl Into<String>) -> InputError {
    InputError::Malformed { line, message: message.into() }
}

fn parse_coord(text: &str, line: usize) -> Result<f64, InputError> {
    let v: f64 = text.trim().parse().map_err(|_| malformed(line, format!("'{}' is not a number", text.trim())))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(malformed(line, "coordinates must be finite"))
    }
}

impl PolylineFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let mut points = Vec::new();
        let mut scale = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                if let Some(value) = comment.trim().strip_prefix("scale=") {
                    let s: i64 = value.trim().parse().map_err(|_| malformed(line, "scale must be an integer"))?;
                    if s <= 0 {
                        return Err(malformed(line, "scale must be positive"));
                    }
                    if scale.replace(s).is_some() {
                        return Err(malformed(line, "duplicate scale header"));
                    }
                }
                continue;
            }
            let (x, y) = trimmed.split_once(',').ok_or_else(|| malformed(line, "expected 'x,y'"))?;
            points.push((parse_coord(x, line)?, parse_coord(y, line)?));
        }
        if points.is_empty() {
            return Err(InputError::Empty);
        }
        Ok(PolylineFile { points, scale })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(s) = self.scale {
            writeln!(out, "# scale={s}").unwrap();
        }
        for (x, y) in &self.points {
            writeln!(out, "{x},{y}").unwrap();
        }
        out
    }

    /// Rounds every vertex to `scale` grid units per model unit.
    pub fn quantize(&self, scale: i64) -> Result<Vec<IntPoint>, InputError> {
        self.points
            .iter()
            .enumerate()
            .map(|(index, &(x, y))| {
                let (gx, gy) = ((x * scale as f64).round(), (y * scale as f64).round());
                if gx.abs() > MAX_GRID_COORD || gy.abs() > MAX_GRID_COORD {
                    Err(InputError::OutOfRange { index, scale })
                } else {
                    Ok(IntPoint::new(gx as i64, gy as i64))
                }
            })
            .collect()
    }
}

/// Smallest power of two putting `tolerance` at ≥ 1024 grid units.
pub fn default_scale(tolerance: f64) -> i64 {
    let mut scale: i64 = 1;
    while tolerance * (scale as f64) < MIN_TOLERANCE_UNITS && scale < (1 << 60) {
        scale *= 2;
    }
    scale
}

/// Power-of-two scale putting the largest coordinate magnitude near
/// `2^bits` grid units.
pub fn extent_scale(points: &[(f64, f64)], bits: u32) -> i64 {
    let extent = points.iter().fold(0.0f64, |m, p| m.max(p.0.abs()).max(p.1.abs()));
    let mut scale: i64 = 1;
    while extent * (scale as f64) * 2.0 <= (1u64 << bits) as f64 && scale < (1 << 60) {
        scale *= 2;
    }
    scale
}
