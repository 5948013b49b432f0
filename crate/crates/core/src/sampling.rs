//! Seeded random maps for harnesses and property tests.
//!
//! Every generator here draws well-conditioned data: determinants stay in a
//! band around 1 and eigenvalues kept away from 1 stay at least 0.3 away.

use nalgebra::DMatrix;
use rand::Rng;

use crate::affine::{AffineMap, Matrix, Vector};
use crate::line_groups::{BlockForm, VerdictTag};

fn uniform_vector<R: Rng>(rng: &mut R, n: usize, bound: f64) -> Vector {
    Vector::from_fn(n, |_, _| rng.gen_range(-bound..=bound))
}

/// Invertible `n×n` matrix with `|det|` in `[0.2, 20]`.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let m = DMatrix::<f64>::from_fn(n, n, |i, j| {
            rng.gen_range(-1.0..=1.0) + if i == j { 1.5 } else { 0.0 }
        });
        let det = m.determinant().abs();
        if (0.2..=20.0).contains(&det) {
            return m;
        }
    }
}

pub fn random_affine<R: Rng>(rng: &mut R, n: usize) -> AffineMap {
    let linear = random_invertible(rng, n);
    AffineMap::new(linear, uniform_vector(rng, n, 3.0)).expect("gated determinant")
}

/// A scalar drawn from `[0.2, 0.7] ∪ [1.3, 3]`, with random sign if `signed`.
fn away_from_one<R: Rng>(rng: &mut R, signed: bool) -> f64 {
    let x = if rng.gen_bool(0.5) {
        rng.gen_range(0.2..=0.7)
    } else {
        rng.gen_range(1.3..=3.0)
    };
    if signed && rng.gen_bool(0.5) {
        -x
    } else {
        x
    }
}

/// `P diag(λ) P⁻¹` with the given eigenvalues.
fn conjugated_diagonal<R: Rng>(rng: &mut R, eigenvalues: &[f64]) -> (Matrix, Matrix) {
    let n = eigenvalues.len();
    let p = random_invertible(rng, n);
    let p_inv = p.clone().try_inverse().expect("invertible");
    let diag = Matrix::from_diagonal(&Vector::from_column_slice(eigenvalues));
    (&p * diag * p_inv, p)
}

/// Transverse part with no eigenvalue equal to 1.
pub fn transverse_without_one<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let eig: Vec<f64> = (0..n).map(|_| away_from_one(rng, true)).collect();
    conjugated_diagonal(rng, &eig).0
}

/// Transverse part with eigenvalue 1 of multiplicity one, and its fixed
/// direction `u`.
pub fn transverse_with_one<R: Rng>(rng: &mut R, n: usize) -> (Matrix, Vector) {
    let mut eig = vec![1.0];
    eig.extend((1..n).map(|_| away_from_one(rng, true)));
    let (a, p) = conjugated_diagonal(rng, &eig);
    (a, p.column(0).into_owned())
}

/// A row `w` with `w·u` bounded away from 0.
pub fn row_pairing_with<R: Rng>(rng: &mut R, u: &Vector) -> Vector {
    loop {
        let w = uniform_vector(rng, u.len(), 2.0);
        if w.dot(u).abs() > 0.2 * u.norm() {
            return w;
        }
    }
}

/// A random row orthogonal to `u`.
pub fn row_orthogonal_to<R: Rng>(rng: &mut R, u: &Vector) -> Vector {
    let w = uniform_vector(rng, u.len(), 2.0);
    &w - u * (w.dot(u) / u.dot(u))
}

fn nonzero<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let x = rng.gen_range(lo..=hi);
    if rng.gen_bool(0.5) {
        -x
    } else {
        x
    }
}

/// A line-preserving map on ℝ¹⁺ⁿ that the cyclic classifier should place in
/// class `tag`. `CompleteObstruction` is treated like `MappingTorus`.
pub fn random_block_for<R: Rng>(rng: &mut R, n: usize, tag: VerdictTag) -> BlockForm {
    let block = match tag {
        VerdictTag::NonProperScaling => {
            let r = away_from_one(rng, true);
            let a = random_invertible(rng, n);
            BlockForm::new(r, uniform_vector(rng, n, 2.0), a, rng.gen_range(-3.0..=3.0))
        }
        VerdictTag::LineFixedPoints => {
            let a = random_invertible(rng, n);
            BlockForm::new(1.0, uniform_vector(rng, n, 2.0), a, 0.0)
        }
        VerdictTag::FreenessViolation => {
            let (a, u) = transverse_with_one(rng, n);
            let w = row_pairing_with(rng, &u);
            BlockForm::new(1.0, w, a, nonzero(rng, 0.5, 3.0))
        }
        VerdictTag::NonCompactInvariantPlane => {
            let (a, u) = transverse_with_one(rng, n);
            let w = row_orthogonal_to(rng, &u);
            BlockForm::new(1.0, w, a, nonzero(rng, 0.5, 3.0))
        }
        VerdictTag::MappingTorus | VerdictTag::CompleteObstruction => {
            let a = transverse_without_one(rng, n);
            BlockForm::new(1.0, uniform_vector(rng, n, 2.0), a, nonzero(rng, 0.5, 3.0))
        }
    };
    block.expect("sampled blocks are invertible")
}

/// A line-preserving map from any of the five classes, sometimes reversing
/// the line.
pub fn random_line_preserving<R: Rng>(rng: &mut R, n: usize) -> BlockForm {
    const TAGS: [VerdictTag; 5] = [
        VerdictTag::NonProperScaling,
        VerdictTag::LineFixedPoints,
        VerdictTag::FreenessViolation,
        VerdictTag::NonCompactInvariantPlane,
        VerdictTag::MappingTorus,
    ];
    let tag = TAGS[rng.gen_range(0..TAGS.len())];
    let mut block = random_block_for(rng, n, tag);
    if rng.gen_bool(0.2) {
        block = BlockForm::new(
            -block.line_scale(),
            block.shear_row().clone(),
            block.transverse().clone(),
            block.line_translation(),
        )
        .expect("still invertible");
    }
    block
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line_groups::classify_cyclic;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn planted_classes_classify_as_planted() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for tag in [
            VerdictTag::NonProperScaling,
            VerdictTag::LineFixedPoints,
            VerdictTag::FreenessViolation,
            VerdictTag::NonCompactInvariantPlane,
            VerdictTag::MappingTorus,
        ] {
            for n in 1..=3 {
                let b = random_block_for(&mut rng, n, tag);
                let v = classify_cyclic(&b.reassemble()).unwrap();
                assert_eq!(v.tag, tag, "n = {n}");
            }
        }
    }
}
