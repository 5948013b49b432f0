#![allow(dead_code)]

use affine_atlas::{AffineMap, Matrix, Vector};
use proptest::prelude::*;

pub fn v(xs: &[f64]) -> Vector {
    Vector::from_column_slice(xs)
}

/// Entrywise closeness, relative for large entries.
pub fn close(a: &AffineMap, b: &AffineMap, tol: f64) -> bool {
    let scale = a.linear().amax().max(a.translation().amax()).max(1.0);
    a.deviation(b) <= tol * scale
}

pub fn vectors(n: usize, bound: f64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-bound..bound, n).prop_map(Vector::from_vec)
}

/// Well-conditioned affine maps on ℝⁿ.
pub fn affine(n: usize) -> impl Strategy<Value = AffineMap> {
    (prop::collection::vec(-1.0..1.0f64, n * n), vectors(n, 3.0)).prop_filter_map(
        "ill-conditioned",
        move |(entries, t)| {
            let m = Matrix::from_row_slice(n, n, &entries) + Matrix::identity(n, n) * 1.5;
            let det = m.determinant().abs();
            if !(0.2..=20.0).contains(&det) {
                return None;
            }
            AffineMap::new(m, t).ok()
        },
    )
}

pub fn dims() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![1usize, 2, 3, 5])
}
