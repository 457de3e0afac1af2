use super::{Matrix, Tolerance};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
/// Stop once the off-diagonal Frobenius mass drops below this fraction of ‖A‖_F.
const OFF_DIAGONAL_FRACTION: f64 = 1e-12;

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// Ascending, with multiplicity.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: Matrix,
    pub sweeps: usize,
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            acc += 2.0 * a[(i, j)] * a[(i, j)];
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi rotations. The input must be symmetric within
/// `tol.abs_tol · max(1, ‖A‖_F)`.
pub fn symmetric_eigen(a: &Matrix, tol: Tolerance) -> Result<SymmetricEigen> {
    if !a.is_square() {
        return Err(Error::dims("square", a.shape()));
    }
    let norm = a.frobenius_norm();
    let asymmetry = a.asymmetry();
    if asymmetry > tol.abs_tol * norm.max(1.0) {
        return Err(Error::NotSymmetric { asymmetry });
    }
    let n = a.rows();
    let mut w = Matrix::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    let mut v = Matrix::identity(n);
    let target = OFF_DIAGONAL_FRACTION * norm;

    let mut sweeps = 0;
    while off_diagonal_norm(&w) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w[(p, q)];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (w[(q, q)] - w[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = w[(k, p)];
                    let akq = w[(k, q)];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    w[(k, p)] = new_kp;
                    w[(p, k)] = new_kp;
                    w[(k, q)] = new_kq;
                    w[(q, k)] = new_kq;
                }
                w[(p, p)] -= t * apq;
                w[(q, q)] += t * apq;
                w[(p, q)] = 0.0;
                w[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| w[(x, x)].total_cmp(&w[(y, y)]));
    let values = order.iter().map(|&k| w[(k, k)]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

/// Full real spectrum, ascending, with multiplicity.
pub fn symmetric_eigenvalues(a: &Matrix, tol: Tolerance) -> Result<Vec<f64>> {
    symmetric_eigen(a, tol).map(|e| e.values)
}
