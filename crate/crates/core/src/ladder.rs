//! SU(2)-invariant two-leg ladders. Each rung carries two spin-1/2 sites with
//! local digit `2·leg1 + leg2`; a two-rung operator acts on the factors
//! `(leg1ᵢ, leg2ᵢ, leg1ᵢ₊₁, leg2ᵢ₊₁)`.
//!
//! `S_y` is imaginary, so it is stored as the real `Y` with `S_y = iY`. Every
//! operator here only uses `S·S = X⊗X − Y⊗Y + Z⊗Z`, which is real.

use serde::{Deserialize, Serialize};

use crate::braid::TwoSiteOperator;
use crate::chain::{bond_sum, dense_dimension};
use crate::error::{Error, Result};
use crate::linalg::{
    add_embedded, commutator, embed_local, inverse, kron, moment_mismatch, solve, trace_moments,
    Matrix,
};
use crate::report::VerificationReport;

/// Sign of `S_k ⊗ S_k` in the real encoding of the dot product.
pub const DOT_SIGNS: [f64; 3] = [1.0, -1.0, 1.0];

/// Local dimension of a rung.
pub const RUNG_DIM: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl LadderParams {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    /// `18 + 4a + 4b + c`.
    pub fn normalizer(&self) -> f64 {
        18.0 + 4.0 * self.a + 4.0 * self.b + self.c
    }

    /// Common column sum `4(18 + 4a + 4b + c)` of `ℋ″`.
    pub fn column_sum(&self) -> f64 {
        4.0 * self.normalizer()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct H0Params {
    pub d: f64,
    pub f: f64,
}

/// `(X, Y, Z)` with `S_x = X`, `S_y = iY`, `S_z = Z`.
pub fn spin_generators() -> [Matrix; 3] {
    [
        Matrix::from_rows(&[[0.0, 0.5], [0.5, 0.0]]),
        Matrix::from_rows(&[[0.0, -0.5], [0.5, 0.0]]),
        Matrix::from_rows(&[[0.5, 0.0], [0.0, -0.5]]),
    ]
}

/// `S_p · S_q` on `sites` spin-1/2 factors (1-based positions).
pub fn spin_dot(p: usize, q: usize, sites: usize) -> Result<Matrix> {
    if p == q || p == 0 || q == 0 || p > sites || q > sites {
        return Err(Error::InvalidArgument(format!(
            "spin pair ({p}, {q}) on {sites} sites"
        )));
    }
    let dim = dense_dimension(2, sites)?;
    let mut acc = Matrix::zeros(dim, dim);
    for (s, sign) in spin_generators().iter().zip(DOT_SIGNS) {
        let sp = embed_local(s, p, sites, 2)?;
        let sq = embed_local(s, q, sites, 2)?;
        acc.axpy(sign, &(&sp * &sq))?;
    }
    Ok(acc)
}

/// Total spin `Σ_p S_k` over `sites` factors, `k = x, y, z` in the real encoding.
pub fn total_spin_generators(sites: usize) -> Result<[Matrix; 3]> {
    let dim = dense_dimension(2, sites)?;
    let gens = spin_generators();
    let mut out = [
        Matrix::zeros(dim, dim),
        Matrix::zeros(dim, dim),
        Matrix::zeros(dim, dim),
    ];
    for (acc, s) in out.iter_mut().zip(&gens) {
        for p in 1..=sites {
            add_embedded(acc, s, p, sites, 2, 1.0)?;
        }
    }
    Ok(out)
}

const C_PAIRS: [&[(usize, usize)]; 3] = [
    &[(1, 4), (2, 4), (3, 4)],
    &[(1, 4), (1, 2), (1, 3)],
    &[(1, 4), (2, 4), (1, 3), (2, 3)],
];

/// `C_k`, `k ∈ {1, 2, 3}`, on the 16-dimensional two-rung space.
pub fn c_operator(k: usize) -> Result<Matrix> {
    let pairs = k
        .checked_sub(1)
        .and_then(|i| C_PAIRS.get(i))
        .ok_or_else(|| Error::InvalidArgument(format!("C index {k} not in 1..=3")))?;
    let mut acc = Matrix::zeros(16, 16);
    for &(p, q) in pairs.iter() {
        acc += &spin_dot(p, q, 4)?;
    }
    Ok(acc)
}

/// `C_i C_j C_k`.
pub fn c_product(i: usize, j: usize, k: usize) -> Result<Matrix> {
    Ok(&(&c_operator(i)? * &c_operator(j)?) * &c_operator(k)?)
}

/// The twelve products appearing in every ladder operator, in display order.
pub const PRODUCTS: [[usize; 3]; 12] = [
    [1, 1, 1],
    [1, 1, 2],
    [1, 1, 3],
    [1, 2, 1],
    [1, 2, 2],
    [1, 2, 3],
    [1, 3, 1],
    [1, 3, 2],
    [1, 3, 3],
    [2, 1, 1],
    [2, 1, 2],
    [2, 1, 3],
];

/// `(d, f, denominator)` per product.
const H0_COEFFS: [[i64; 3]; 12] = [
    [108, -55, 108],
    [-72, 104, 288],
    [-486, 211, 270],
    [-756, 370, 216],
    [0, -29, 108],
    [90, -31, 36],
    [2, -1, 2],
    [-54, 26, 108],
    [-108, 43, 540],
    [-216, 80, 864],
    [0, 11, 108],
    [216, -119, 108],
];

/// `(numerator, denominator)` per product.
const LADDER_COEFFS: [[i64; 2]; 12] = [
    [-5, 48],
    [-11, 32],
    [-61, 30],
    [-41, 48],
    [41, 48],
    [21, 16],
    [3, 4],
    [-17, 12],
    [173, 240],
    [55, 96],
    [-5, 3],
    [131, 48],
];

/// `(constant, a, b, c, denominator)` per product.
const PRIME_COEFFS: [[i64; 5]; 12] = [
    [-45, 23, -4, -28, 432],
    [-99, -3, -3, -1, 288],
    [-1098, -91, -118, -16, 540],
    [-369, -97, -70, 50, 432],
    [396, 4, 31, 25, 432],
    [189, 29, 20, -4, 144],
    [3, 0, 0, 0, 4],
    [-306, -2, -29, -14, 216],
    [1557, -71, 172, 124, 2160],
    [495, -1, 53, 47, 864],
    [-720, -22, -49, -43, 432],
    [1179, 91, 118, 16, 432],
];

fn combine(coeffs: impl IntoIterator<Item = f64>) -> TwoSiteOperator {
    let mut acc = Matrix::zeros(16, 16);
    for (w, [i, j, k]) in coeffs.into_iter().zip(PRODUCTS) {
        if w != 0.0 {
            let c = c_product(i, j, k).expect("indices in range");
            acc.axpy(w, &c).expect("16x16");
        }
    }
    TwoSiteOperator::new(RUNG_DIM, acc).expect("16x16")
}

pub fn h0_coefficients(p: H0Params) -> [f64; 12] {
    H0_COEFFS.map(|[cd, cf, den]| (cd as f64 * p.d + cf as f64 * p.f) / den as f64)
}

pub fn h_ladder_coefficients() -> [f64; 12] {
    LADDER_COEFFS.map(|[num, den]| num as f64 / den as f64)
}

pub fn h_prime_coefficients(p: LadderParams) -> [f64; 12] {
    PRIME_COEFFS.map(|[k, ca, cb, cc, den]| {
        (k as f64 + ca as f64 * p.a + cb as f64 * p.b + cc as f64 * p.c) / den as f64
    })
}

pub fn h0(p: H0Params) -> TwoSiteOperator {
    combine(h0_coefficients(p))
}

pub fn h_ladder() -> TwoSiteOperator {
    combine(h_ladder_coefficients())
}

pub fn h_prime(p: LadderParams) -> TwoSiteOperator {
    combine(h_prime_coefficients(p))
}

/// `a₁ … a₉` of `ℋ″`.
pub fn entry_values(p: LadderParams) -> [f64; 9] {
    let LadderParams { a, b, c } = p;
    [
        66.0 + a + 4.0 * b + 4.0 * c,
        -10.0 + a + 2.0 * b,
        6.0 + a + 2.0 * b,
        2.0 + a,
        54.0 + a + 4.0 * b + 4.0 * c,
        -16.0 + a + 2.0 * b,
        14.0 + a,
        8.0 + a,
        a + 2.0 * b,
    ]
}

const HPP_PATTERN: [&str; 16] = [
    "1222344434443444",
    "2566738889448944",
    "2656849478388494",
    "2665844984497883",
    "3788526698449844",
    "4344212243444344",
    "4894625687384894",
    "4849626548498783",
    "3878948456269484",
    "4984837865264984",
    "4434443422124434",
    "4489448966258873",
    "3887944894485662",
    "4948838749486562",
    "4498449888376652",
    "4443444344432221",
];

/// Which `aᵢ` (1-based) sits at each entry of `ℋ″`.
pub fn hpp_pattern() -> [[u8; 16]; 16] {
    let mut out = [[0u8; 16]; 16];
    for (row, s) in out.iter_mut().zip(HPP_PATTERN) {
        for (cell, ch) in row.iter_mut().zip(s.bytes()) {
            *cell = ch - b'0';
        }
    }
    out
}

pub fn h_doubleprime(p: LadderParams) -> TwoSiteOperator {
    let vals = entry_values(p);
    let pattern = hpp_pattern();
    let m = Matrix::from_fn(16, 16, |i, j| vals[pattern[i][j] as usize - 1]);
    TwoSiteOperator::new(RUNG_DIM, m).expect("16x16")
}

/// Largest `|Σ_α ℋ″_{αβ} − 4(18+4a+4b+c)|` over columns.
pub fn column_sum_residual(p: LadderParams) -> f64 {
    let target = p.column_sum();
    h_doubleprime(p)
        .matrix()
        .column_sums()
        .iter()
        .map(|s| (s - target).abs())
        .fold(0.0, f64::max)
}

/// The fixed rung basis change `𝓑`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisChange {
    pub matrix: Matrix,
}

impl BasisChange {
    pub fn new() -> Self {
        Self {
            matrix: Matrix::from_rows(&[
                [-1.0, 1.0, 0.0, 0.0],
                [1.0, 0.5, -0.5, 1.0],
                [0.0, -0.5, -1.5, 0.0],
                [0.0, 1.0, 0.0, -1.0],
            ]),
        }
    }

    /// `𝓑 ⊗ 𝓑` and its inverse.
    pub fn two_rung(&self) -> Result<(Matrix, Matrix)> {
        let bb = kron(&self.matrix, &self.matrix);
        let inv = inverse(&bb)?;
        Ok((bb, inv))
    }

    /// `(𝓑⊗𝓑) X (𝓑⊗𝓑)^{-1}`.
    pub fn conjugate(&self, x: &Matrix) -> Result<Matrix> {
        let (bb, inv) = self.two_rung()?;
        Ok(&(&bb * x) * &inv)
    }
}

impl Default for BasisChange {
    fn default() -> Self {
        Self::new()
    }
}

/// `‖(𝓑⊗𝓑) ℋ′ (𝓑⊗𝓑)^{-1} − ℋ″‖_F`.
pub fn similarity_residual(p: LadderParams) -> Result<f64> {
    let lhs = BasisChange::new().conjugate(h_prime(p).matrix())?;
    Ok(lhs.distance(h_doubleprime(p).matrix()))
}

/// Entrywise non-negativity of `ℋ″`: records `a₁ … a₉` and their minimum.
pub fn positivity_check(p: LadderParams) -> VerificationReport {
    let vals = entry_values(p);
    let mut report = VerificationReport::new("positivity", 0.0);
    for (i, v) in vals.iter().enumerate() {
        report.record(&format!("a{}", i + 1), *v);
    }
    let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
    report
        .record("min_entry", min)
        .require(min >= 0.0)
        .flag("a_plus_2b_at_least_16", p.a + 2.0 * p.b >= 16.0)
        .flag("a_at_least_minus_2", p.a >= -2.0);
    report
}

/// Largest `‖[op, G]‖_F` over the three total-spin generators of a two-rung
/// space, optionally conjugated by `𝓑⊗𝓑`.
pub fn su2_residual(op: &Matrix, conjugated: bool) -> Result<f64> {
    let basis = BasisChange::new();
    let mut worst = 0.0f64;
    for g in total_spin_generators(4)? {
        let g = if conjugated { basis.conjugate(&g)? } else { g };
        worst = worst.max(commutator(op, &g)?.frobenius_norm());
    }
    Ok(worst)
}

/// Least-squares `(a, b, c)` matching the coefficients of `ℋ′` to those of `ℋ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientMatch {
    pub params: LadderParams,
    /// Euclidean norm of the twelve coefficient mismatches.
    pub coefficient_residual: f64,
    /// `‖ℋ′(a,b,c) − ℋ‖_F`.
    pub operator_residual: f64,
}

pub fn match_prime_to_ladder() -> Result<CoefficientMatch> {
    let target = h_ladder_coefficients();
    let mut ata = Matrix::zeros(3, 3);
    let mut atb = [0.0; 3];
    for ([k, ca, cb, cc, den], t) in PRIME_COEFFS.iter().zip(target) {
        let den = *den as f64;
        let row = [*ca as f64 / den, *cb as f64 / den, *cc as f64 / den];
        let rhs = t - *k as f64 / den;
        for i in 0..3 {
            atb[i] += row[i] * rhs;
            for j in 0..3 {
                ata[(i, j)] += row[i] * row[j];
            }
        }
    }
    let x = solve(&ata, &atb)?;
    let params = LadderParams::new(x[0], x[1], x[2]);
    let got = h_prime_coefficients(params);
    let coefficient_residual = got
        .iter()
        .zip(target)
        .map(|(g, t)| (g - t).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(CoefficientMatch {
        params,
        coefficient_residual,
        operator_residual: h_prime(params).matrix().distance(h_ladder().matrix()),
    })
}

/// `½ + 2 S_p·S_q`, which is the swap of factors `p` and `q`.
fn exchange(p: usize, q: usize) -> Result<Matrix> {
    Ok(spin_dot(p, q, 4)?.scale(2.0).shift_diagonal(0.5))
}

/// Two-rung term of the spin-form Hamiltonian.
pub fn spin_form_two_rung() -> Result<Matrix> {
    let legs = &exchange(1, 3)? * &exchange(2, 4)?;
    let cross = &exchange(1, 4)? * &exchange(2, 3)?;
    let rungs = &exchange(1, 2)? * &exchange(3, 4)?;
    let mut acc = legs.scale(0.5);
    acc.axpy(-0.5, &cross)?;
    acc.axpy(5.0 / 6.0, &rungs)?;
    Ok(acc)
}

/// Open-chain spin-form Hamiltonian on `rungs` rungs.
pub fn spin_form_hamiltonian(rungs: usize) -> Result<Matrix> {
    if rungs < 2 {
        return Err(Error::InvalidArgument(format!(
            "a ladder needs at least 2 rungs, got {rungs}"
        )));
    }
    bond_sum(&spin_form_two_rung()?, RUNG_DIM, rungs)
}

/// Affine map `target ≈ scale·reference + shift` between spectra, fitted on
/// the first two power traces and judged on the higher ones. Works for
/// non-symmetric operators since only traces are used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AffineFit {
    pub scale: f64,
    pub shift: f64,
    /// `moment_mismatch(scale·reference + shift, target)` up to `kmax`.
    pub moment_mismatch: f64,
}

pub fn affine_spectral_fit(reference: &Matrix, target: &Matrix, kmax: usize) -> Result<AffineFit> {
    if reference.rows() != target.rows() || !reference.is_square() || !target.is_square() {
        return Err(Error::dims(reference.shape(), target.shape()));
    }
    let n = reference.rows() as f64;
    let stats = |m: &Matrix| -> Result<(f64, f64)> {
        let t = trace_moments(m, 2)?;
        let mean = t[0] / n;
        Ok((mean, (t[1] / n - mean * mean).max(0.0)))
    };
    let (mr, vr) = stats(reference)?;
    let (mt, vt) = stats(target)?;
    let magnitude = if vr > 0.0 { (vt / vr).sqrt() } else { 0.0 };
    let mut best: Option<AffineFit> = None;
    for scale in [magnitude, -magnitude] {
        let shift = mt - scale * mr;
        let mapped = reference.scale(scale).shift_diagonal(shift);
        let mismatch = moment_mismatch(&mapped, target, kmax)?;
        if best.is_none_or(|b| mismatch < b.moment_mismatch) {
            best = Some(AffineFit {
                scale,
                shift,
                moment_mismatch: mismatch,
            });
        }
    }
    Ok(best.expect("two candidates"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::qybe_residual;
    use crate::linalg::{symmetric_eigenvalues, Tolerance};

    fn swap_factors(p: usize, q: usize, sites: usize) -> Matrix {
        let dim = 1 << sites;
        Matrix::from_fn(dim, dim, |i, j| {
            let bit = |x: usize, pos: usize| (x >> (sites - pos)) & 1;
            let mut k = j;
            let (bp, bq) = (bit(j, p), bit(j, q));
            k ^= (bp ^ bq) << (sites - p);
            k ^= (bp ^ bq) << (sites - q);
            if i == k {
                1.0
            } else {
                0.0
            }
        })
    }

    #[test]
    fn spin_algebra_in_real_encoding() {
        let [x, y, z] = spin_generators();
        assert_eq!(z, Matrix::diag(&[0.5, -0.5]));
        let casimir = &(&(&x * &x) - &(&y * &y)) + &(&z * &z);
        assert_eq!(casimir, Matrix::identity(2).scale(0.75));
        assert_eq!(commutator(&x, &y).unwrap(), z);
        assert_eq!(commutator(&y, &z).unwrap(), x);
        assert_eq!(commutator(&z, &x).unwrap(), y.scale(-1.0));
    }

    #[test]
    fn dot_product_is_shifted_swap() {
        for (p, q) in [(1, 2), (1, 4), (2, 3), (3, 4)] {
            let dot = spin_dot(p, q, 4).unwrap();
            let expected = swap_factors(p, q, 4).scale(0.5).shift_diagonal(-0.25);
            assert_eq!(dot, expected, "({p}, {q})");
        }
        assert!(spin_dot(2, 2, 4).is_err());
        assert!(spin_dot(1, 5, 4).is_err());
    }

    #[test]
    fn c_operators_basic_properties() {
        for k in 1..=3 {
            let c = c_operator(k).unwrap();
            assert_eq!(c.rows(), 16);
            assert_eq!(c.asymmetry(), 0.0);
            assert_eq!(c.trace(), 0.0);
        }
        assert!(c_operator(0).is_err());
        assert!(c_operator(4).is_err());
    }

    #[test]
    fn c3_minus_c1_minus_c2_is_mixed_legs() {
        let c = |k| c_operator(k).unwrap();
        let diff = &(&c(3) - &c(1)) - &c(2);
        let dot = |p, q| spin_dot(p, q, 4).unwrap();
        let expected = &(&(&dot(2, 3) - &dot(3, 4)) - &dot(1, 4)) - &dot(1, 2);
        assert!(diff.distance(&expected) < 1e-14);
    }

    #[test]
    fn products() {
        let c1 = c_operator(1).unwrap();
        assert_eq!(c_product(1, 1, 1).unwrap(), &(&c1 * &c1) * &c1);
        let a = c_product(1, 2, 3).unwrap();
        let b = c_product(2, 1, 3).unwrap();
        assert!(a.distance(&b) > 1e-3);
        assert!(c_product(1, 4, 1).is_err());
    }

    #[test]
    fn coefficient_tables() {
        let p = h_prime_coefficients(LadderParams::new(3.0, -2.0, 7.0));
        assert_eq!(p[6], 0.75);
        let l = h_ladder_coefficients();
        assert_eq!(l[3], -l[4]);
        assert_eq!(h0_coefficients(H0Params { d: 1.0, f: 0.0 })[0], 1.0);
        assert_eq!(
            h0_coefficients(H0Params { d: 0.0, f: 1.0 })[4],
            -29.0 / 108.0
        );
    }

    #[test]
    fn h0_at_origin_is_zero() {
        let h = h0(H0Params { d: 0.0, f: 0.0 });
        assert_eq!(h.matrix(), &Matrix::zeros(16, 16));
        assert_eq!(qybe_residual(&h), 0.0);
    }

    #[test]
    fn operators_are_su2_invariant() {
        let ops = [
            h0(H0Params { d: 1.0, f: 0.0 }),
            h0(H0Params { d: -1.0, f: 2.0 }),
            h_ladder(),
            h_prime(LadderParams::new(16.0, 0.0, 0.0)),
        ];
        for op in &ops {
            assert!(su2_residual(op.matrix(), false).unwrap() < 1e-10);
        }
    }

    #[test]
    fn doubleprime_entries_and_sums() {
        let h = h_doubleprime(LadderParams::new(0.0, 0.0, 0.0));
        assert_eq!(h.matrix()[(0, 0)], 66.0);
        assert_eq!(h.matrix()[(1, 2)], -16.0);
        for p in [
            (16.0, 0.0, 0.0),
            (0.0, 8.0, 1.0),
            (1.0, 1.0, 1.0),
            (-3.5, 2.25, 9.0),
        ] {
            let p = LadderParams::new(p.0, p.1, p.2);
            assert_eq!(column_sum_residual(p), 0.0);
            assert_eq!(h_doubleprime(p).matrix().asymmetry(), 0.0);
        }
    }

    #[test]
    fn pattern_uses_every_symbol() {
        let pat = hpp_pattern();
        for s in 1..=9u8 {
            assert!(pat.iter().flatten().any(|&x| x == s));
        }
        for (i, row) in pat.iter().enumerate() {
            assert!(row[i] == 1 || row[i] == 5);
        }
    }

    #[test]
    fn basis_change_is_invertible() {
        let b = BasisChange::new();
        let inv = inverse(&b.matrix).unwrap();
        assert!((&b.matrix * &inv).distance(&Matrix::identity(4)) < 1e-14);
        let (bb, bbi) = b.two_rung().unwrap();
        assert!((&bb * &bbi).distance(&Matrix::identity(16)) < 1e-12);
    }

    #[test]
    fn positivity_region() {
        let check = |a, b, c| positivity_check(LadderParams::new(a, b, c));
        let r = check(16.0, 0.0, 0.0);
        assert!(r.pass);
        assert_eq!(r.residuals["a6"], 0.0);
        assert_eq!(r.residuals["a2"], 6.0);
        assert_eq!(r.residuals["a4"], 18.0);
        let r = check(0.0, 8.0, 0.0);
        assert!(r.pass);
        assert_eq!(r.residuals["a4"], 2.0);
        let r = check(0.0, 0.0, 0.0);
        assert!(!r.pass);
        assert_eq!(r.residuals["min_entry"], -16.0);
        // a + 2b ≥ 16 alone is not enough
        let r = check(-4.0, 10.0, 0.0);
        assert!(!r.pass);
        assert!(r.flags["a_plus_2b_at_least_16"]);
    }

    #[test]
    fn spin_form_two_rung_is_swap_combination() {
        let h = spin_form_two_rung().unwrap();
        let s = |p, q| swap_factors(p, q, 4);
        let mut expected = (&s(1, 3) * &s(2, 4)).scale(0.5);
        expected.axpy(-0.5, &(&s(1, 4) * &s(2, 3))).unwrap();
        expected.axpy(5.0 / 6.0, &(&s(1, 2) * &s(3, 4))).unwrap();
        assert!(h.distance(&expected) < 1e-14);
        assert_eq!(h.asymmetry(), 0.0);
    }

    #[test]
    fn spin_form_chain_is_symmetric_and_invariant() {
        let h = spin_form_hamiltonian(2).unwrap();
        assert_eq!(h.rows(), 16);
        assert!(su2_residual(&h, false).unwrap() < 1e-12);
        let h3 = spin_form_hamiltonian(3).unwrap();
        for g in total_spin_generators(6).unwrap() {
            assert!(commutator(&h3, &g).unwrap().frobenius_norm() < 1e-12);
        }
        assert!(spin_form_hamiltonian(1).is_err());
        assert!(spin_form_hamiltonian(7).is_err());
    }

    #[test]
    fn affine_fit_recovers_known_map() {
        let a = Matrix::diag(&[1.0, 2.0, 4.0, -3.0]);
        let b = a.scale(-2.5).shift_diagonal(7.0);
        let fit = affine_spectral_fit(&a, &b, 4).unwrap();
        assert!((fit.scale + 2.5).abs() < 1e-12);
        assert!((fit.shift - 7.0).abs() < 1e-12);
        assert!(fit.moment_mismatch < 1e-12);
        let c = Matrix::diag(&[0.0, 0.0, 1.0, 9.0]);
        assert!(affine_spectral_fit(&a, &c, 4).unwrap().moment_mismatch > 1e-3);
    }

    #[test]
    fn total_spin_lowers_to_embedded_sum() {
        let [x, _, _] = total_spin_generators(2).unwrap();
        let s = &spin_generators()[0];
        let expected = &embed_local(s, 1, 2, 2).unwrap() + &embed_local(s, 2, 2, 2).unwrap();
        assert_eq!(x, expected);
        let ev = symmetric_eigenvalues(&x, Tolerance::default()).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[3] - 1.0).abs() < 1e-12);
    }
}
