use lattice_markov::braid::{qybe_residual, spectral_qybe_grid_max};
use lattice_markov::chain::bond_sum;
use lattice_markov::ladder::{
    affine_spectral_fit, column_sum_residual, h0, h_doubleprime, h_ladder, h_prime,
    match_prime_to_ladder, positivity_check, similarity_residual, spin_form_hamiltonian,
    su2_residual, H0Params, LadderParams, RUNG_DIM,
};
use lattice_markov::linalg::Tolerance;
use lattice_markov::markov::{
    absorbing_states, build_ladder_markov, spectrum_coincidence, validate, ChainKind,
};
use lattice_markov::{Error, Result, VerificationReport};

use crate::tolerances::{H0_GRID, LADDER_COLUMN_SUM, MOMENT_ORDER, SPECTRUM};
use crate::SuiteReport;

/// Every identity for the spin ladder at `p` on `rungs` rungs. `tol.abs_tol`
/// bounds the operator identities.
pub fn ladder_suite(p: LadderParams, rungs: usize, tol: Tolerance) -> Result<SuiteReport> {
    let abs = tol.abs_tol;
    let mut checks = Vec::new();

    let positivity = positivity_check(p);
    checks.push(positivity);

    let mut family = VerificationReport::new("h0_qybe", abs);
    let mut worst = 0.0f64;
    for &d in &H0_GRID {
        for &f in &H0_GRID {
            worst = worst.max(qybe_residual(&h0(H0Params { d, f })));
        }
    }
    family.check_below("grid_max", worst);
    checks.push(family);

    let h = h_ladder();
    let mut ladder = VerificationReport::new("ladder_qybe", abs);
    ladder
        .check_below("braid", qybe_residual(&h))
        .check_below("spectral_grid_max", spectral_qybe_grid_max(&h)?)
        .record("asymmetry", h.matrix().asymmetry());
    checks.push(ladder);

    let prime = h_prime(p);
    let mut prime_qybe = VerificationReport::new("prime_qybe", abs);
    prime_qybe.check_below("braid", qybe_residual(&prime));
    checks.push(prime_qybe);

    let hpp = h_doubleprime(p);
    let mut similarity = VerificationReport::new("similarity", abs);
    similarity
        .check_below("conjugation", similarity_residual(p)?)
        .check_within("column_sum", column_sum_residual(p), LADDER_COLUMN_SUM)
        .record(
            "moment_fit",
            affine_spectral_fit(prime.matrix(), hpp.matrix(), MOMENT_ORDER)?.moment_mismatch,
        )
        .record("asymmetry", hpp.matrix().asymmetry());
    checks.push(similarity);

    let mut su2 = VerificationReport::new("su2", abs);
    su2.check_below("doubleprime_conjugated", su2_residual(hpp.matrix(), true)?)
        .record("ladder", su2_residual(h.matrix(), false)?)
        .record("prime", su2_residual(prime.matrix(), false)?);
    checks.push(su2);

    checks.push(markov_check(p, rungs, tol)?);

    let fit = match_prime_to_ladder()?;
    let mut coeffs = VerificationReport::new("coefficient_match", abs);
    coeffs
        .record("a", fit.params.a)
        .record("b", fit.params.b)
        .record("c", fit.params.c)
        .record("coefficient_residual", fit.coefficient_residual)
        .record("operator_residual", fit.operator_residual);
    checks.push(coeffs);

    let spin = spin_form_hamiltonian(2)?;
    let fit = affine_spectral_fit(&spin, h.matrix(), MOMENT_ORDER)?;
    let mut spin_form = VerificationReport::new("spin_form", abs);
    spin_form
        .check_below("su2", su2_residual(&spin, false)?)
        .record("scale", fit.scale)
        .record("shift", fit.shift)
        .record("moment_mismatch", fit.moment_mismatch);
    checks.push(spin_form);

    Ok(SuiteReport::new("ladder", checks))
}

fn markov_check(p: LadderParams, rungs: usize, tol: Tolerance) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("markov", LADDER_COLUMN_SUM);
    let total = bond_sum(h_doubleprime(p).matrix(), RUNG_DIM, rungs)?;
    let w = 4.0 * (rungs - 1) as f64 * p.normalizer();
    for (kind, label, scale, shift) in [
        (ChainKind::Transition, "p", 1.0 / w, 0.0),
        (
            ChainKind::Intensity,
            "q",
            1.0,
            -((rungs - 1) as f64) * p.column_sum(),
        ),
    ] {
        let chain = match build_ladder_markov(p, rungs, kind) {
            Ok(c) => c,
            Err(Error::ParameterRegion(_) | Error::DegenerateNormalizer) => {
                report.flag("built", false).require(false);
                return Ok(report);
            }
            Err(e) => return Err(e),
        };
        let v = validate(&chain, LADDER_COLUMN_SUM);
        for (k, x) in &v.residuals {
            report.record(&format!("{label}_{k}"), *x);
        }
        report.require(v.pass);
        let cmp = spectrum_coincidence(&total, &chain, scale, shift, tol)?;
        report.check_within(&format!("{label}_spectrum"), cmp.residual, SPECTRUM);
        if kind == ChainKind::Transition {
            let absorbing = absorbing_states(&chain);
            report
                .record("absorbing_count", absorbing.len() as f64)
                .require(absorbing.is_empty());
        }
    }
    report.flag("built", true);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::LADDER_IDENTITY;

    fn run(a: f64, b: f64, c: f64) -> SuiteReport {
        ladder_suite(
            LadderParams::new(a, b, c),
            2,
            Tolerance::abs(LADDER_IDENTITY),
        )
        .unwrap()
    }

    #[test]
    fn positive_point_builds_valid_chains() {
        let s = run(16.0, 0.0, 0.0);
        assert!(s.check("positivity").unwrap().pass);
        let m = s.check("markov").unwrap();
        assert!(m.pass, "{m:?}");
        assert!(m.flags["built"]);
        assert!(s.check("su2").unwrap().pass);
    }

    #[test]
    fn negative_entry_fails_positivity_and_chain() {
        let s = run(0.0, 0.0, 0.0);
        assert!(!s.pass);
        assert!(!s.check("positivity").unwrap().pass);
        assert!(!s.check("markov").unwrap().flags["built"]);
    }

    #[test]
    fn integrability_claims_fail_as_printed() {
        let s = run(16.0, 0.0, 0.0);
        let failed: Vec<_> = s.failed().collect();
        assert_eq!(
            failed,
            vec!["h0_qybe", "ladder_qybe", "prime_qybe", "similarity"]
        );
        let sim = s.check("similarity").unwrap();
        assert!(sim.residuals["column_sum"] < LADDER_COLUMN_SUM);
        assert!(sim.residuals["conjugation"] > 1.0);
    }
}
