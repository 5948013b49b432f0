//! Orbits of a single map.

use std::f64::consts::TAU;

use crate::affine::{AffineError, AffineMap, Vector};

/// `[p, f(p), …, f^steps(p)]`.
pub fn iterate(f: &AffineMap, p: &Vector, steps: usize) -> Result<Vec<Vector>, AffineError> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(p.clone());
    for _ in 0..steps {
        let next = f.apply(out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}

/// Largest gap between consecutive angles on the circle (radians).
///
/// Returns `TAU` for fewer than two angles.
pub fn max_circular_gap(angles: &[f64]) -> f64 {
    if angles.len() < 2 {
        return TAU;
    }
    let mut sorted: Vec<f64> = angles.iter().map(|a| a.rem_euclid(TAU)).collect();
    sorted.sort_by(f64::total_cmp);
    let wrap = sorted[0] + TAU - sorted[sorted.len() - 1];
    sorted.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::max)
}

/// Polar angles of planar points.
pub fn planar_angles(points: &[Vector]) -> Vec<f64> {
    points.iter().map(|p| p[1].atan2(p[0])).collect()
}
