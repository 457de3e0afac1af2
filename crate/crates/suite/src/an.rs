use lattice_markov::algebra::{
    delta_casimir_indexed, delta_casimir_sum, index_partition_check, lemma1_residual,
    lemma2_residuals,
};
use lattice_markov::braid::{qybe_residual, rmatrix_from_tl, tl_check, tl_from_an};
use lattice_markov::chain::{
    hamiltonian, symmetry_residual, tl_expression_residuals, two_site_h, ChainSpec,
};
use lattice_markov::linalg::Tolerance;
use lattice_markov::markov::{
    absorbing_states, absorbing_states_formula, build_an_markov, spectrum_coincidence, validate,
    ChainKind,
};
use lattice_markov::{Result, VerificationReport};

use crate::tolerances::{COLUMN_SUM, SPECTRUM};
use crate::SuiteReport;

/// Every identity for the A_n chain described by `spec`. `tol.abs_tol`
/// bounds the algebraic residuals; chain checks use their pinned bounds.
pub fn an_suite(spec: ChainSpec, tol: Tolerance) -> Result<SuiteReport> {
    let rank = spec.rank;
    let abs = tol.abs_tol;
    let mut checks = Vec::new();

    let mut routes = VerificationReport::new("casimir_routes", abs);
    routes
        .check_below(
            "sum_vs_indexed",
            delta_casimir_sum(rank).distance(&delta_casimir_indexed(rank)),
        )
        .require(index_partition_check(rank))
        .flag("index_partition", index_partition_check(rank));
    checks.push(routes);

    let mut quadratic = VerificationReport::new("lemma1", abs);
    quadratic.check_below("quadratic", lemma1_residual(rank));
    checks.push(quadratic);

    let (first, second) = lemma2_residuals(rank);
    let mut cubic = VerificationReport::new("lemma2", abs);
    cubic
        .check_below("first", first)
        .check_below("second", second);
    checks.push(cubic);

    let mut qybe = VerificationReport::new("qybe", abs);
    qybe.check_below("braid", qybe_residual(&two_site_h(rank)));
    checks.push(qybe);

    let e = tl_from_an(rank);
    checks.push(tl_check(&e, tol));

    let mut rmatrix = VerificationReport::new("rmatrix", abs);
    for (label, sign) in [("plus_root", 1), ("minus_root", -1)] {
        rmatrix.check_below(label, qybe_residual(&rmatrix_from_tl(&e, sign)?));
    }
    checks.push(rmatrix);

    let h = hamiltonian(spec)?;
    let mut symmetry = VerificationReport::new("symmetry", abs);
    symmetry.check_below("max_commutator", symmetry_residual(&h)?);
    checks.push(symmetry);

    let tl = tl_expression_residuals(spec)?;
    let mut expr = VerificationReport::new("tl_expression", abs);
    expr.check_below("minus_sign", tl.minus_sign)
        .record("plus_sign", tl.plus_sign);
    checks.push(expr);

    let mut markov = VerificationReport::new("markov", COLUMN_SUM);
    let w = spec.bond_weight();
    for (kind, label, scale, shift) in [
        (ChainKind::Transition, "p", 1.0 / w, 0.0),
        (ChainKind::Intensity, "q", 1.0, -w),
    ] {
        let chain = build_an_markov(spec, kind)?;
        let v = validate(&chain, COLUMN_SUM);
        for (k, x) in &v.residuals {
            markov.record(&format!("{label}_{k}"), *x);
        }
        markov.require(v.pass);
        let cmp = spectrum_coincidence(&h.matrix, &chain, scale, shift, tol)?;
        markov.check_within(&format!("{label}_spectrum"), cmp.residual, SPECTRUM);
        if kind == ChainKind::Transition {
            let found = absorbing_states(&chain);
            let expected = absorbing_states_formula(spec);
            markov
                .record("absorbing_count", found.len() as f64)
                .flag("absorbing_matches_formula", found == expected)
                .require(found == expected);
        }
    }
    checks.push(markov);

    Ok(SuiteReport::new("an", checks))
}
