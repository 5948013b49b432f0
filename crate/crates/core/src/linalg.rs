use nalgebra::{DMatrix, DVector};

use crate::tol;

pub(crate) struct LeastSquares {
    pub x: DVector<f64>,
    pub residual: f64,
}

/// Thin SVD `m = U Σ Vᵀ` of an `r×c` matrix with `r ≥ c`.
///
/// One-sided Jacobi rotations on the columns. nalgebra's bidiagonal SVD can
/// return a decomposition that does not recompose for nearly rank-deficient
/// 2×2 blocks, which is exactly the case the kernel decisions care about.
struct Svd {
    u: DMatrix<f64>,
    sigma: DVector<f64>,
    v: DMatrix<f64>,
}

const MAX_SWEEPS: usize = 80;

fn jacobi_svd(m: &DMatrix<f64>) -> Svd {
    let (rows, cols) = m.shape();
    if rows < cols {
        // Pad with zero rows; the right singular vectors are unchanged.
        let mut padded = DMatrix::zeros(cols, cols);
        padded.view_mut((0, 0), (rows, cols)).copy_from(m);
        let svd = jacobi_svd(&padded);
        return Svd {
            u: svd.u.rows(0, rows).into_owned(),
            ..svd
        };
    }
    let mut a = m.clone();
    let mut v = DMatrix::identity(cols, cols);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = a.column(p).norm_squared();
                let beta = a.column(q).norm_squared();
                let gamma = a.column(p).dot(&a.column(q));
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for (mat, n) in [(&mut a, rows), (&mut v, cols)] {
                    for i in 0..n {
                        let (xp, xq) = (mat[(i, p)], mat[(i, q)]);
                        mat[(i, p)] = c * xp - s * xq;
                        mat[(i, q)] = s * xp + c * xq;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma = DVector::from_fn(cols, |j, _| a.column(j).norm());
    let mut u = a;
    for j in 0..cols {
        if sigma[j] > 0.0 {
            u.column_mut(j).unscale_mut(sigma[j]);
        }
    }
    Svd { u, sigma, v }
}

pub(crate) fn singular_values(m: &DMatrix<f64>) -> DVector<f64> {
    jacobi_svd(m).sigma
}

fn threshold(singular_values: &DVector<f64>) -> f64 {
    tol::RANK * singular_values.amax().max(1.0)
}

/// Orthonormal basis of the kernel of a square matrix, by singular-value
/// thresholding. Each vector is signed so its largest entry is positive.
pub(crate) fn kernel_basis(m: &DMatrix<f64>) -> Vec<DVector<f64>> {
    debug_assert!(m.is_square());
    let n = m.ncols();
    if m.amax() <= tol::RANK {
        return (0..n)
            .map(|i| DVector::from_fn(n, |j, _| if i == j { 1.0 } else { 0.0 }))
            .collect();
    }
    let svd = jacobi_svd(m);
    let cut = threshold(&svd.sigma);
    let mut basis: Vec<DVector<f64>> = (0..n)
        .filter(|&j| svd.sigma[j] <= cut)
        .map(|j| canonical_sign(svd.v.column(j).into_owned()))
        .collect();
    basis.sort_by_key(|v| v.iamax());
    basis
}

fn canonical_sign(v: DVector<f64>) -> DVector<f64> {
    let i = v.iamax();
    if v[i] < 0.0 {
        -v
    } else {
        v
    }
}

/// Minimum-norm least-squares solution of `m x = rhs` with the same rank
/// threshold as `kernel_basis`.
pub(crate) fn least_squares(m: &DMatrix<f64>, rhs: &DVector<f64>) -> LeastSquares {
    if m.amax() <= tol::RANK {
        let x = DVector::zeros(m.ncols());
        return LeastSquares {
            residual: rhs.norm(),
            x,
        };
    }
    let svd = jacobi_svd(m);
    let cut = threshold(&svd.sigma);
    let mut x = DVector::zeros(m.ncols());
    for j in 0..m.ncols() {
        if svd.sigma[j] > cut {
            let coeff = svd.u.column(j).dot(rhs) / svd.sigma[j];
            x += svd.v.column(j) * coeff;
        }
    }
    let residual = (m * &x - rhs).norm();
    LeastSquares { x, residual }
}
