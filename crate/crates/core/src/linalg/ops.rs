use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if !(abs_tol >= 0.0 && rel_tol >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerances must be non-negative, got abs {abs_tol} rel {rel_tol}"
            )));
        }
        Ok(Self { abs_tol, rel_tol })
    }

    pub fn abs(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }
}

/// Kronecker product; the left factor carries the more significant index.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (br, bc) = (b.rows(), b.cols());
    let mut out = Matrix::zeros(a.rows() * br, a.cols() * bc);
    for i1 in 0..a.rows() {
        for j1 in 0..a.cols() {
            let s = a[(i1, j1)];
            if s == 0.0 {
                continue;
            }
            for i2 in 0..br {
                for j2 in 0..bc {
                    out[(i1 * br + i2, j1 * bc + j2)] = s * b[(i2, j2)];
                }
            }
        }
    }
    out
}

pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a Matrix>) -> Matrix {
    factors
        .into_iter()
        .fold(Matrix::identity(1), |acc, f| kron(&acc, f))
}

fn checked_pow(d: usize, k: usize) -> Result<usize> {
    let mut acc = 1usize;
    for _ in 0..k {
        acc = acc.checked_mul(d).ok_or(Error::SizeExceeded {
            dim: usize::MAX,
            limit: usize::MAX,
        })?;
    }
    Ok(acc)
}

/// Adds `scale · 𝟙^{⊗(first-1)} ⊗ op ⊗ 𝟙^{⊗rest}` into `acc` without forming
/// the identity factors. `first` is the 1-based leftmost site `op` acts on.
pub fn add_embedded(
    acc: &mut Matrix,
    op: &Matrix,
    first: usize,
    sites: usize,
    d: usize,
    scale: f64,
) -> Result<()> {
    let span = span_of(op, d)?;
    if first == 0 || first + span - 1 > sites {
        return Err(Error::IndexOutOfRange {
            index: first,
            bound: sites.saturating_sub(span) + 1,
        });
    }
    let total = checked_pow(d, sites)?;
    if acc.rows() != total || acc.cols() != total {
        return Err(Error::dims(format!("{total}x{total}"), acc.shape()));
    }
    let right = checked_pow(d, sites + 1 - first - span)?;
    let left = checked_pow(d, first - 1)?;
    let block = op.rows();
    for l in 0..left {
        for p in 0..block {
            for q in 0..block {
                let v = op[(p, q)];
                if v == 0.0 {
                    continue;
                }
                let row0 = (l * block + p) * right;
                let col0 = (l * block + q) * right;
                for r in 0..right {
                    acc[(row0 + r, col0 + r)] += scale * v;
                }
            }
        }
    }
    Ok(())
}

/// Number of sites a `d^k × d^k` operator spans.
fn span_of(op: &Matrix, d: usize) -> Result<usize> {
    if !op.is_square() || d < 1 {
        return Err(Error::dims("square operator", op.shape()));
    }
    let mut k = 0;
    let mut dim = 1;
    while dim < op.rows() {
        dim *= d;
        k += 1;
        if d == 1 {
            break;
        }
    }
    if dim != op.rows() || k == 0 {
        return Err(Error::dims(format!("power of {d}"), op.shape()));
    }
    Ok(k)
}

/// `𝟙^{⊗(first-1)} ⊗ op ⊗ 𝟙^{⊗rest}` on `sites` sites of dimension `d`.
pub fn embed_local(op: &Matrix, first: usize, sites: usize, d: usize) -> Result<Matrix> {
    let total = checked_pow(d, sites)?;
    let mut out = Matrix::zeros(total, total);
    add_embedded(&mut out, op, first, sites, d, 1.0)?;
    Ok(out)
}

/// Places a `d² × d²` operator on sites `i, i+1` (1-based, `1 ≤ i ≤ sites-1`).
pub fn embed_two_site(op: &Matrix, i: usize, sites: usize, d: usize) -> Result<Matrix> {
    if op.rows() != d * d || op.cols() != d * d {
        return Err(Error::dims(format!("{0}x{0}", d * d), op.shape()));
    }
    if i == 0 || i + 1 > sites {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: sites.saturating_sub(1),
        });
    }
    embed_local(op, i, sites, d)
}

pub fn commutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if !a.is_square() || a.rows() != b.rows() || b.cols() != a.cols() {
        return Err(Error::dims(a.shape(), b.shape()));
    }
    a.matmul(b)?.checked_sub(&b.matmul(a)?)
}

pub fn frobenius_norm(a: &Matrix) -> f64 {
    a.frobenius_norm()
}

/// LU factorization with partial pivoting, returning the inverse.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::dims("square", a.shape()));
    }
    let n = a.rows();
    let mut work = a.clone();
    let mut inv = Matrix::identity(n);
    let scale = a.max_abs().max(1.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| work[(x, col)].abs().total_cmp(&work[(y, col)].abs()))
            .expect("non-empty range");
        if work[(pivot, col)].abs() <= 1e-14 * scale {
            return Err(Error::Singular);
        }
        if pivot != col {
            for j in 0..n {
                let t = work[(col, j)];
                work[(col, j)] = work[(pivot, j)];
                work[(pivot, j)] = t;
                let t = inv[(col, j)];
                inv[(col, j)] = inv[(pivot, j)];
                inv[(pivot, j)] = t;
            }
        }
        let p = work[(col, col)];
        for j in 0..n {
            work[(col, j)] /= p;
            inv[(col, j)] /= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = work[(r, col)];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                work[(r, j)] -= f * work[(col, j)];
                inv[(r, j)] -= f * inv[(col, j)];
            }
        }
    }
    Ok(inv)
}

/// Solves `a x = b` for square non-singular `a`.
pub fn solve(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    inverse(a)?.matvec(b)
}

/// Basis of the right null space of `a` by Gauss-Jordan elimination with full
/// column scanning. Pivots below `tol · max|a|` are treated as zero.
pub fn null_space(a: &Matrix, tol: f64) -> Vec<Vec<f64>> {
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.clone();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let p = (row..m)
            .max_by(|&x, &y| w[(x, col)].abs().total_cmp(&w[(y, col)].abs()))
            .expect("non-empty range");
        if w[(p, col)].abs() <= tol * scale {
            continue;
        }
        for j in 0..n {
            let t = w[(row, j)];
            w[(row, j)] = w[(p, j)];
            w[(p, j)] = t;
        }
        let pv = w[(row, col)];
        for j in 0..n {
            w[(row, j)] /= pv;
        }
        for r in 0..m {
            if r != row {
                let f = w[(r, col)];
                if f != 0.0 {
                    for j in 0..n {
                        w[(r, j)] -= f * w[(row, j)];
                    }
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0.0; n];
            v[f] = 1.0;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -w[(r, f)];
            }
            v
        })
        .collect()
}

/// Power traces `tr(a^k)` for `k = 1..=kmax`. Two matrices with equal power
/// traces up to their dimension have the same characteristic polynomial.
pub fn trace_moments(a: &Matrix, kmax: usize) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::dims("square", a.shape()));
    }
    let mut out = Vec::with_capacity(kmax);
    let mut p = a.clone();
    for k in 1..=kmax {
        if k > 1 {
            p = p.matmul(a)?;
        }
        out.push(p.trace());
    }
    Ok(out)
}

/// Largest relative disagreement of power traces, each moment scaled by
/// `max(1, ‖a‖_F^k)`. Zero for similar matrices.
pub fn moment_mismatch(a: &Matrix, b: &Matrix, kmax: usize) -> Result<f64> {
    if a.rows() != b.rows() {
        return Err(Error::dims(a.shape(), b.shape()));
    }
    let ma = trace_moments(a, kmax)?;
    let mb = trace_moments(b, kmax)?;
    let norm = a.frobenius_norm().max(b.frobenius_norm()).max(1.0);
    Ok(ma
        .iter()
        .zip(&mb)
        .enumerate()
        .map(|(k, (x, y))| (x - y).abs() / norm.powi(k as i32 + 1))
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, r: usize, c: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        m[(r, c)] = 1.0;
        m
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = Matrix::identity(2);
        assert_eq!(kron(&i2, &i2), Matrix::identity(4));
    }

    #[test]
    fn kron_of_diagonals() {
        let z = Matrix::diag(&[1.0, -1.0]);
        assert_eq!(kron(&z, &z), Matrix::diag(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn kron_of_unit_matrices_places_single_one() {
        // (0,1) ⊗ (1,0): row 0*2+1 = 1, col 1*2+0 = 2
        let k = kron(&unit(2, 0, 1), &unit(2, 1, 0));
        assert_eq!(k, unit(4, 1, 2));
    }

    #[test]
    fn embed_single_pair_is_unchanged() {
        let op = Matrix::from_fn(9, 9, |i, j| (i * 9 + j) as f64);
        assert_eq!(embed_two_site(&op, 1, 2, 3).unwrap(), op);
    }

    #[test]
    fn embed_identity_is_identity() {
        let e = embed_two_site(&Matrix::identity(4), 2, 4, 2).unwrap();
        assert_eq!(e, Matrix::identity(16));
    }

    #[test]
    fn embed_swap_on_last_two_qubits() {
        let swap = Matrix::from_rows(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        let e = embed_two_site(&swap, 2, 3, 2).unwrap();
        // Enumerate basis states b0 b1 b2 and swap b1,b2.
        let mut expected = Matrix::zeros(8, 8);
        for s in 0..8usize {
            let (b0, b1, b2) = (s >> 2 & 1, s >> 1 & 1, s & 1);
            let t = b0 << 2 | b2 << 1 | b1;
            expected[(t, s)] = 1.0;
        }
        assert_eq!(e, expected);
    }

    #[test]
    fn embed_rejects_bad_site_and_shape() {
        let op = Matrix::identity(4);
        assert!(matches!(
            embed_two_site(&op, 0, 3, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            embed_two_site(&op, 3, 3, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            embed_two_site(&Matrix::identity(3), 1, 3, 2),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn commutator_basics() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]);
        assert_eq!(commutator(&a, &a).unwrap(), Matrix::zeros(2, 2));
        let e = unit(2, 0, 1);
        let f = unit(2, 1, 0);
        let h = Matrix::diag(&[1.0, -1.0]);
        assert_eq!(commutator(&e, &f).unwrap(), h);
        assert_eq!(commutator(&h, &e).unwrap(), e.scale(2.0));
        assert!(commutator(&a, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn norms() {
        assert_eq!(frobenius_norm(&Matrix::zeros(3, 3)), 0.0);
        assert_eq!(frobenius_norm(&Matrix::identity(4)), 2.0);
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::from_rows(&[[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]]);
        let inv = inverse(&a).unwrap();
        assert!((&a * &inv).distance(&Matrix::identity(3)) < 1e-14);
        let singular = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]);
        assert!(matches!(inverse(&singular), Err(Error::Singular)));
    }

    #[test]
    fn null_space_of_rank_deficient() {
        let a = Matrix::from_rows(&[[1.0, -1.0, 0.0], [-1.0, 1.0, 0.0], [0.0, 0.0, 0.0]]);
        let ns = null_space(&a, 1e-12);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let r = a.matvec(v).unwrap();
            assert!(r.iter().all(|x| x.abs() < 1e-14));
        }
    }

    #[test]
    fn tolerance_rejects_negative() {
        assert!(Tolerance::new(-1.0, 0.0).is_err());
        let t = Tolerance::default();
        assert_eq!((t.abs_tol, t.rel_tol), (1e-10, 1e-9));
    }

    #[test]
    fn similar_matrices_share_moments() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [0.0, 3.0]]);
        let b = Matrix::from_rows(&[[2.0, 1.0], [1.0, 1.0]]);
        let sim = &(&b * &a) * &inverse(&b).unwrap();
        assert!(moment_mismatch(&a, &sim, 4).unwrap() < 1e-12);
        assert!(moment_mismatch(&a, &Matrix::diag(&[1.0, 4.0]), 4).unwrap() > 1e-3);
    }
}
