use super::{Matrix, Tolerance};
use crate::error::{Error, Result};

/// Largest λt handled by a single uniformization series; longer horizons are
/// split into 2^s equal pieces and squared back together.
const MAX_SERIES_RATE: f64 = 32.0;
const MAX_SERIES_TERMS: usize = 10_000;

/// Smallest off-diagonal entry and largest absolute column sum of `q`.
pub fn intensity_defects(q: &Matrix) -> (f64, f64) {
    let mut min_off = f64::INFINITY;
    for i in 0..q.rows() {
        for j in 0..q.cols() {
            if i != j {
                min_off = min_off.min(q[(i, j)]);
            }
        }
    }
    if q.rows() == 1 {
        min_off = 0.0;
    }
    let max_sum = q
        .column_sums()
        .iter()
        .fold(0.0, |acc: f64, s| acc.max(s.abs()));
    (min_off, max_sum)
}

/// Checks the intensity-matrix conditions: non-negative off-diagonal entries
/// and zero column sums, both relative to `max(1, max|q|)`.
pub fn check_intensity(q: &Matrix, tol: Tolerance) -> Result<()> {
    if !q.is_square() {
        return Err(Error::InvalidIntensity(format!(
            "not square ({})",
            q.shape()
        )));
    }
    let scale = q.max_abs().max(1.0);
    let (min_off, max_sum) = intensity_defects(q);
    if min_off < -tol.abs_tol * scale {
        return Err(Error::InvalidIntensity(format!(
            "negative off-diagonal entry {min_off:.3e}"
        )));
    }
    if max_sum > tol.abs_tol * scale {
        return Err(Error::InvalidIntensity(format!(
            "column sum deviates from zero by {max_sum:.3e}"
        )));
    }
    Ok(())
}

/// `e^{Qt}` by uniformization: with λ ≥ max|q_ii| and M = I + Q/λ ≥ 0,
/// `e^{Qt} = Σ_k e^{-λt}(λt)^k/k! M^k`, truncated once the Poisson weights
/// fall below a cutoff tied to `tol.abs_tol`. Every partial sum is entrywise non-negative.
pub fn intensity_exp(q: &Matrix, t: f64, tol: Tolerance) -> Result<Matrix> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    check_intensity(q, tol)?;
    let n = q.rows();
    let rate = (0..n).map(|i| q[(i, i)].abs()).fold(0.0, f64::max);
    if rate == 0.0 || t == 0.0 {
        return Ok(Matrix::identity(n));
    }

    let mut squarings = 0u32;
    let mut step = t;
    while rate * step > MAX_SERIES_RATE {
        step *= 0.5;
        squarings += 1;
    }

    let m = q.scale(1.0 / rate).shift_diagonal(1.0);
    let x = rate * step;
    let mut weight = (-x).exp();
    let mut acc = Matrix::identity(n).scale(weight);
    let mut power = Matrix::identity(n);
    // each squaring can double the truncation error
    let cutoff = tol.abs_tol * 1e-3 / f64::from(1u32 << squarings.min(30));
    let mut k = 0usize;
    while (k as f64) < x || weight >= cutoff {
        k += 1;
        if k > MAX_SERIES_TERMS {
            break;
        }
        power = power.matmul(&m)?;
        weight *= x / k as f64;
        acc.axpy(weight, &power)?;
    }
    for _ in 0..squarings {
        acc = acc.matmul(&acc)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state() -> Matrix {
        Matrix::from_rows(&[[-1.0, 1.0], [1.0, -1.0]])
    }

    #[test]
    fn zero_time_is_identity() {
        assert_eq!(
            intensity_exp(&two_state(), 0.0, Tolerance::default()).unwrap(),
            Matrix::identity(2)
        );
    }

    #[test]
    fn two_state_closed_form() {
        for &t in &[0.1, 0.7, 3.0, 25.0, 400.0] {
            let p = intensity_exp(&two_state(), t, Tolerance::default()).unwrap();
            let e = (-2.0 * t).exp();
            let expected = Matrix::from_rows(&[
                [(1.0 + e) / 2.0, (1.0 - e) / 2.0],
                [(1.0 - e) / 2.0, (1.0 + e) / 2.0],
            ]);
            assert!(p.distance(&expected) < 1e-10, "t = {t}");
        }
    }

    #[test]
    fn rejects_negative_time_and_bad_generator() {
        assert!(matches!(
            intensity_exp(&two_state(), -1.0, Tolerance::default()),
            Err(Error::NegativeTime(_))
        ));
        let bad = Matrix::from_rows(&[[-1.0, 1.0], [2.0, -1.0]]);
        assert!(matches!(
            intensity_exp(&bad, 1.0, Tolerance::default()),
            Err(Error::InvalidIntensity(_))
        ));
        let negative = Matrix::from_rows(&[[1.0, -1.0], [-1.0, 1.0]]);
        assert!(intensity_exp(&negative, 1.0, Tolerance::default()).is_err());
    }
}
