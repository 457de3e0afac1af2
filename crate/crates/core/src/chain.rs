//! Open A_n chains: the nearest-neighbour Hamiltonian `Σ (ΔC + 1)_{i,i+1}`,
//! its global symmetry generators and spectrum.

use serde::{Deserialize, Serialize};

use crate::algebra::{delta_casimir_indexed, fundamental_rep, AnRank};
use crate::braid::{tl_from_an, TwoSiteOperator};
use crate::error::{Error, Result};
use crate::linalg::{add_embedded, commutator, symmetric_eigenvalues, Matrix, Tolerance};

/// Largest state-space dimension assembled densely.
pub const DENSE_LIMIT: usize = 4096;

/// Checks `local_dim^sites ≤ DENSE_LIMIT` and returns the dimension.
pub fn dense_dimension(local_dim: usize, sites: usize) -> Result<usize> {
    let mut dim: usize = 1;
    for _ in 0..sites {
        dim = dim.saturating_mul(local_dim);
        if dim > DENSE_LIMIT {
            return Err(Error::SizeExceeded {
                dim,
                limit: DENSE_LIMIT,
            });
        }
    }
    Ok(dim)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub rank: AnRank,
    pub sites: usize,
}

impl ChainSpec {
    pub fn new(n: usize, sites: usize) -> Result<Self> {
        if sites < 2 {
            return Err(Error::InvalidArgument(format!(
                "a chain needs at least 2 sites, got {sites}"
            )));
        }
        Ok(Self {
            rank: AnRank::new(n)?,
            sites,
        })
    }

    pub fn n(&self) -> usize {
        self.rank.n()
    }

    pub fn local_dim(&self) -> usize {
        self.rank.local_dim()
    }

    /// `(n+1)^L`, subject to the dense size guard.
    pub fn dimension(&self) -> Result<usize> {
        dense_dimension(self.local_dim(), self.sites)
    }

    /// `(L-1)(n+1)`: common row and column sum of the Hamiltonian.
    pub fn bond_weight(&self) -> f64 {
        ((self.sites - 1) * self.local_dim()) as f64
    }
}

#[derive(Debug, Clone)]
pub struct LatticeHamiltonian {
    pub spec: ChainSpec,
    pub matrix: Matrix,
}

/// `ℋ = ΔC + 𝟙⊗𝟙`, which is `(n+1)` times the swap of the two sites.
pub fn two_site_h(rank: AnRank) -> TwoSiteOperator {
    let m = delta_casimir_indexed(rank).shift_diagonal(1.0);
    TwoSiteOperator::new(rank.local_dim(), m).expect("(n+1)^2 square by construction")
}

/// Sum of `op` over every bond `i, i+1` of an open chain.
pub fn bond_sum(op: &Matrix, local_dim: usize, sites: usize) -> Result<Matrix> {
    let dim = dense_dimension(local_dim, sites)?;
    if op.rows() != local_dim * local_dim || !op.is_square() {
        return Err(Error::dims(
            format!("{0}x{0}", local_dim * local_dim),
            op.shape(),
        ));
    }
    let mut acc = Matrix::zeros(dim, dim);
    for i in 1..sites {
        add_embedded(&mut acc, op, i, sites, local_dim, 1.0)?;
    }
    Ok(acc)
}

pub fn hamiltonian(spec: ChainSpec) -> Result<LatticeHamiltonian> {
    let h = two_site_h(spec.rank);
    let matrix = bond_sum(h.matrix(), spec.local_dim(), spec.sites)?;
    Ok(LatticeHamiltonian { spec, matrix })
}

/// `Σ_{i=1}^{L} 𝟙^{⊗(i-1)} ⊗ g ⊗ 𝟙^{⊗(L-i)}` for every Cartan, raising and
/// lowering generator of the fundamental representation, in that order.
pub fn global_generators(spec: ChainSpec) -> Result<Vec<Matrix>> {
    let dim = spec.dimension()?;
    let rep = fundamental_rep(spec.rank);
    rep.generators()
        .map(|g| {
            let mut acc = Matrix::zeros(dim, dim);
            for site in 1..=spec.sites {
                add_embedded(&mut acc, g, site, spec.sites, spec.local_dim(), 1.0)?;
            }
            Ok(acc)
        })
        .collect()
}

/// Largest `‖[H, G]‖_F` over the global generators of the chain.
pub fn symmetry_residual(h: &LatticeHamiltonian) -> Result<f64> {
    let mut worst = 0.0f64;
    for g in global_generators(h.spec)? {
        worst = worst.max(commutator(&h.matrix, &g)?.frobenius_norm());
    }
    Ok(worst)
}

pub fn chain_spectrum(h: &LatticeHamiltonian, tol: Tolerance) -> Result<Vec<f64>> {
    symmetric_eigenvalues(&h.matrix, tol)
}

/// Residuals of the two candidate Temperley-Lieb forms of the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TlExpressionResiduals {
    /// `‖H - [(n+1) Σ e_i + (n+1)(L-1)]‖_F`.
    pub plus_sign: f64,
    /// `‖H - [(n+1)(L-1) - (n+1) Σ e_i]‖_F`.
    pub minus_sign: f64,
}

pub fn tl_expression_residuals(spec: ChainSpec) -> Result<TlExpressionResiduals> {
    let h = hamiltonian(spec)?;
    let e = tl_from_an(spec.rank);
    let sum_e = bond_sum(&e.matrix, spec.local_dim(), spec.sites)?;
    let np1 = spec.local_dim() as f64;
    let constant = spec.bond_weight();
    let plus = sum_e.scale(np1).shift_diagonal(constant);
    let minus = sum_e.scale(-np1).shift_diagonal(constant);
    Ok(TlExpressionResiduals {
        plus_sign: h.matrix.distance(&plus),
        minus_sign: h.matrix.distance(&minus),
    })
}
