//! The A_n fundamental representation, its Casimir, and the coproduct of the
//! Casimir built along two independent routes: from generator products and
//! from the closed-form Kronecker-delta index pattern.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, Matrix};

/// Rank `n ≥ 1` of A_n; the fundamental representation has dimension `n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct AnRank(usize);

impl AnRank {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("A_n rank must be at least 1".into()));
        }
        Ok(Self(n))
    }

    pub fn n(self) -> usize {
        self.0
    }

    pub fn local_dim(self) -> usize {
        self.0 + 1
    }
}

impl TryFrom<usize> for AnRank {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Self::new(n)
    }
}

impl From<AnRank> for usize {
    fn from(r: AnRank) -> usize {
        r.0
    }
}

/// Fundamental-representation generators in the Chevalley-style basis.
#[derive(Debug, Clone)]
pub struct AnRep {
    pub rank: AnRank,
    /// `h_α = E_{αα} - E_{α+1,α+1}`, α = 1..n.
    pub cartan: Vec<Matrix>,
    /// `E_{αβ}` for β > α, ordered by (α, β).
    pub raising: Vec<Matrix>,
    /// `E_{βα}`, paired with `raising` by position.
    pub lowering: Vec<Matrix>,
    /// 1-based (α, β) labels of `raising`.
    pub root_pairs: Vec<(usize, usize)>,
    pub cartan_matrix: Vec<Vec<i64>>,
}

impl AnRep {
    /// Simple-root raising generator `e_α = E_{α,α+1}` (1-based α).
    pub fn simple_raising(&self, alpha: usize) -> &Matrix {
        let pos = self.pair_position(alpha, alpha + 1);
        &self.raising[pos]
    }

    pub fn simple_lowering(&self, alpha: usize) -> &Matrix {
        let pos = self.pair_position(alpha, alpha + 1);
        &self.lowering[pos]
    }

    pub fn pair_position(&self, alpha: usize, beta: usize) -> usize {
        self.root_pairs
            .iter()
            .position(|&p| p == (alpha, beta))
            .expect("root pair in range")
    }

    /// All generators: Cartan, then raising, then lowering.
    pub fn generators(&self) -> impl Iterator<Item = &Matrix> {
        self.cartan
            .iter()
            .chain(self.raising.iter())
            .chain(self.lowering.iter())
    }
}

/// `E_{αβ}` with a single 1 at 1-based (α, β).
pub fn unit_matrix(alpha: usize, beta: usize, rank: AnRank) -> Result<Matrix> {
    let d = rank.local_dim();
    for idx in [alpha, beta] {
        if idx == 0 || idx > d {
            return Err(Error::IndexOutOfRange {
                index: idx,
                bound: d,
            });
        }
    }
    let mut m = Matrix::zeros(d, d);
    m[(alpha - 1, beta - 1)] = 1.0;
    Ok(m)
}

pub fn fundamental_rep(rank: AnRank) -> AnRep {
    let n = rank.n();
    let e = |a, b| unit_matrix(a, b, rank).expect("indices within 1..=n+1");
    let cartan = (1..=n).map(|a| &e(a, a) - &e(a + 1, a + 1)).collect();
    let root_pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| ((a + 1)..=(n + 1)).map(move |b| (a, b)))
        .collect();
    let raising = root_pairs.iter().map(|&(a, b)| e(a, b)).collect();
    let lowering = root_pairs.iter().map(|&(a, b)| e(b, a)).collect();
    let cartan_matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    AnRep {
        rank,
        cartan,
        raising,
        lowering,
        root_pairs,
        cartan_matrix,
    }
}

/// Quadratic Casimir in the fundamental representation minus `shift · I`.
/// With `shift = 0` it equals `n(n+2) I`.
pub fn casimir(rank: AnRank, shift: f64) -> Matrix {
    let rep = fundamental_rep(rank);
    let n = rank.n();
    let np1 = (n + 1) as f64;
    let mut c = Matrix::zeros(n + 1, n + 1);
    for (e, f) in rep.raising.iter().zip(&rep.lowering) {
        c.axpy(np1, &(&(e * f) + &(f * e))).unwrap();
    }
    for a in 1..=n {
        let h = &rep.cartan[a - 1];
        c.axpy((a * (n + 1 - a)) as f64, &(h * h)).unwrap();
        for b in 1..=(n - a) {
            let coeff = 2.0 * (a * (n + 1 - a - b)) as f64;
            c.axpy(coeff, &(h * &rep.cartan[a + b - 1])).unwrap();
        }
    }
    c.shift_diagonal(-shift)
}

/// Lie-algebra coproduct `x ⊗ 𝟙 + 𝟙 ⊗ x`.
pub fn coproduct(x: &Matrix) -> Matrix {
    let id = Matrix::identity(x.rows());
    &kron(x, &id) + &kron(&id, x)
}

/// ΔC from generator products, with the Casimir constant chosen as
/// `2n(n+2)` so no identity component survives.
pub fn delta_casimir_sum(rank: AnRank) -> Matrix {
    let rep = fundamental_rep(rank);
    let n = rank.n();
    let d = n + 1;
    let id = Matrix::identity(d);
    let c0 = casimir(rank, 0.0);
    let mut dc = &kron(&c0, &id) + &kron(&id, &c0);
    let a = 2.0 * (n * (n + 2)) as f64;
    dc = dc.shift_diagonal(-a);
    for (e, f) in rep.raising.iter().zip(&rep.lowering) {
        dc.axpy(d as f64, &(&kron(e, f) + &kron(f, e))).unwrap();
    }
    for al in 1..=n {
        let h = &rep.cartan[al - 1];
        dc.axpy((al * (n + 1 - al)) as f64, &kron(h, h)).unwrap();
        for be in 1..=(n - al) {
            let h2 = &rep.cartan[al + be - 1];
            let coeff = (al * (n + 1 - al - be)) as f64;
            dc.axpy(coeff, &(&kron(h, h2) + &kron(h2, h))).unwrap();
        }
    }
    dc
}

/// The three 1-based index classes of the Kronecker-delta pattern:
/// matched diagonal states `l(n+2)+1`, and the paired off-diagonal states
/// `j(n+2)+k+2` and `(j+1)(n+2)+k(n+1)`.
pub fn index_classes(rank: AnRank) -> [Vec<usize>; 3] {
    let n = rank.n();
    let diag = (0..=n).map(|l| l * (n + 1) + l + 1).collect();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for j in 0..n {
        for k in 0..(n - j) {
            upper.push(j * (n + 2) + k + 2);
            lower.push((j + 1) * (n + 2) + k * (n + 1));
        }
    }
    [diag, upper, lower]
}

/// ΔC purely from the closed-form index pattern.
pub fn delta_casimir_indexed(rank: AnRank) -> Matrix {
    let n = rank.n();
    let dim = (n + 1) * (n + 1);
    let np1 = (n + 1) as f64;
    let [diag, upper, lower] = index_classes(rank);
    let mut m = Matrix::identity(dim).scale(-1.0);
    for alpha in diag {
        m[(alpha - 1, alpha - 1)] += np1;
    }
    for (a, b) in upper.into_iter().zip(lower) {
        m[(a - 1, b - 1)] = np1;
        m[(b - 1, a - 1)] = np1;
    }
    m
}

/// ‖(ΔC)² + 2ΔC − n(n+2)·I‖_F.
pub fn lemma1_residual(rank: AnRank) -> f64 {
    let dc = delta_casimir_indexed(rank);
    let n = rank.n() as f64;
    let mut r = &dc * &dc;
    r.axpy(2.0, &dc).unwrap();
    r.shift_diagonal(-n * (n + 2.0)).frobenius_norm()
}

/// True iff the three index classes partition `1..=(n+1)²`.
pub fn index_partition_check(rank: AnRank) -> bool {
    let dim = rank.local_dim() * rank.local_dim();
    let mut hits = vec![0u32; dim + 1];
    for class in index_classes(rank) {
        for alpha in class {
            if alpha == 0 || alpha > dim {
                return false;
            }
            hits[alpha] += 1;
        }
    }
    hits[1..].iter().all(|&h| h == 1)
}

/// Frobenius norms of the two cubic relations between `ΔC ⊗ 𝟙` and
/// `𝟙 ⊗ ΔC` on the three-fold space.
pub fn lemma2_residuals(rank: AnRank) -> (f64, f64) {
    let n = rank.n() as f64;
    let dc = delta_casimir_indexed(rank);
    let id = Matrix::identity(rank.local_dim());
    let a = kron(&dc, &id);
    let b = kron(&id, &dc);
    let ab = &a * &b;
    let ba = &b * &a;
    let mixed = &ab + &ba;
    let cubic = |outer: &Matrix, inner: &Matrix, x: &Matrix, y: &Matrix| {
        let mut r = &(outer * inner) * outer;
        r.axpy(-n, &mixed).unwrap();
        r.axpy(n * n - 1.0, x).unwrap();
        r.axpy(n * n, y).unwrap();
        r.shift_diagonal(n * (1.0 - n * n)).frobenius_norm()
    };
    (cubic(&a, &b, &a, &b), cubic(&b, &a, &b, &a))
}
