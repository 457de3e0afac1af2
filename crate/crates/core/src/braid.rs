//! Braid-form Yang-Baxter and Temperley-Lieb certificates for two-site operators.

use crate::algebra::AnRank;
use crate::chain::two_site_h;
use crate::error::{Error, Result};
use crate::linalg::{kron, Matrix, Tolerance};
use crate::report::VerificationReport;

/// Spectral parameters sampled for the baxterized identity.
pub const SPECTRAL_GRID: [f64; 5] = [-1.0, 0.5, 1.0, 2.0, 3.0];

/// Constant in `ℋ(x) = (x - 1)ℋ + 16·I` for the 16×16 ladder operators.
pub const LADDER_BAXTER_SHIFT: f64 = 16.0;

/// A `d² × d²` operator acting on two adjacent rungs of local dimension `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSiteOperator {
    local_dim: usize,
    matrix: Matrix,
}

impl TwoSiteOperator {
    pub fn new(local_dim: usize, matrix: Matrix) -> Result<Self> {
        let dim = local_dim * local_dim;
        if local_dim == 0 || matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::dims(format!("{dim}x{dim}"), matrix.shape()));
        }
        Ok(Self { local_dim, matrix })
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            local_dim: self.local_dim,
            matrix: self.matrix.scale(c),
        }
    }

    /// `(ℋ ⊗ 𝟙_d, 𝟙_d ⊗ ℋ)` on the three-rung space.
    pub fn three_site_pair(&self) -> (Matrix, Matrix) {
        let id = Matrix::identity(self.local_dim);
        (kron(&self.matrix, &id), kron(&id, &self.matrix))
    }

    /// `(x - 1)ℋ + shift·I`.
    pub fn baxterized(&self, x: f64, shift: f64) -> Self {
        Self {
            local_dim: self.local_dim,
            matrix: self.matrix.scale(x - 1.0).shift_diagonal(shift),
        }
    }
}

/// Temperley-Lieb generator candidate `E` with loop value `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct TLElement {
    pub local_dim: usize,
    pub matrix: Matrix,
    pub beta: f64,
}

/// ‖ℋ₁₂ℋ₂₃ℋ₁₂ − ℋ₂₃ℋ₁₂ℋ₂₃‖_F.
pub fn qybe_residual(h: &TwoSiteOperator) -> f64 {
    let (h12, h23) = h.three_site_pair();
    let lhs = &(&h12 * &h23) * &h12;
    let rhs = &(&h23 * &h12) * &h23;
    lhs.distance(&rhs)
}

/// Norm-relative acceptance: `residual < abs_tol · max(1, ‖ℋ‖_F³)`.
pub fn qybe_threshold(h: &TwoSiteOperator, tol: Tolerance) -> f64 {
    tol.abs_tol * h.matrix().frobenius_norm().powi(3).max(1.0)
}

pub fn qybe_passes(h: &TwoSiteOperator, tol: Tolerance) -> bool {
    qybe_residual(h) < qybe_threshold(h, tol)
}

/// Residual of `ℋ₁₂(x)ℋ₂₃(xy)ℋ₁₂(y) = ℋ₂₃(y)ℋ₁₂(xy)ℋ₂₃(x)` with
/// `ℋ(x) = (x - 1)ℋ + shift·I`.
pub fn spectral_qybe_residual_with(h: &TwoSiteOperator, x: f64, y: f64, shift: f64) -> f64 {
    let (a12, a23) = h.baxterized(x, shift).three_site_pair();
    let (b12, b23) = h.baxterized(x * y, shift).three_site_pair();
    let (c12, c23) = h.baxterized(y, shift).three_site_pair();
    let lhs = &(&a12 * &b23) * &c12;
    let rhs = &(&c23 * &b12) * &a23;
    lhs.distance(&rhs)
}

/// Baxterized identity for a 16×16 ladder operator.
pub fn spectral_qybe_residual(h: &TwoSiteOperator, x: f64, y: f64) -> Result<f64> {
    if h.local_dim() != 4 {
        return Err(Error::dims("local dimension 4", h.local_dim()));
    }
    Ok(spectral_qybe_residual_with(h, x, y, LADDER_BAXTER_SHIFT))
}

/// Largest baxterized residual over `SPECTRAL_GRID²`.
pub fn spectral_qybe_grid_max(h: &TwoSiteOperator) -> Result<f64> {
    let mut worst = 0.0f64;
    for &x in &SPECTRAL_GRID {
        for &y in &SPECTRAL_GRID {
            worst = worst.max(spectral_qybe_residual(h, x, y)?);
        }
    }
    Ok(worst)
}

/// Checks `E² = βE` and both braid-type relations
/// `(E⊗𝟙)(𝟙⊗E)(E⊗𝟙) = E⊗𝟙`, `(𝟙⊗E)(E⊗𝟙)(𝟙⊗E) = 𝟙⊗E`.
pub fn tl_check(e: &TLElement, tol: Tolerance) -> VerificationReport {
    let mut report = VerificationReport::new("temperley_lieb", tol.abs_tol);
    let d = e.local_dim;
    let dim = d * d;
    if e.matrix.rows() != dim || e.matrix.cols() != dim {
        report.record("shape", f64::INFINITY).require(false);
        return report;
    }
    let square = (&e.matrix * &e.matrix).distance(&e.matrix.scale(e.beta));
    let id = Matrix::identity(d);
    let left = kron(&e.matrix, &id);
    let right = kron(&id, &e.matrix);
    let lrl = &(&left * &right) * &left;
    let rlr = &(&right * &left) * &right;
    report
        .check_below("square", square)
        .check_below("braid_left", lrl.distance(&left))
        .check_below("braid_right", rlr.distance(&right));
    report
}

/// `E = -ℋ/(n+1) + 𝟙⊗𝟙` from the A_n two-site Hamiltonian, with β = 2.
pub fn tl_from_an(rank: AnRank) -> TLElement {
    let h = two_site_h(rank);
    let np1 = rank.local_dim() as f64;
    TLElement {
        local_dim: rank.local_dim(),
        matrix: h.matrix().scale(-1.0 / np1).shift_diagonal(1.0),
        beta: 2.0,
    }
}

/// `Ř = E + (-β ± √(β² - 4))/2 · 𝟙⊗𝟙`; `sign` picks the root.
pub fn rmatrix_from_tl(e: &TLElement, sign: i8) -> Result<TwoSiteOperator> {
    let disc = e.beta * e.beta - 4.0;
    if disc < 0.0 {
        return Err(Error::ComplexBranch { beta: e.beta });
    }
    let s = if sign >= 0 { 1.0 } else { -1.0 };
    let root = (-e.beta + s * disc.sqrt()) / 2.0;
    TwoSiteOperator::new(e.local_dim, e.matrix.shift_diagonal(root))
}
