//! Transition and intensity matrices built from the integrable Hamiltonians.
//!
//! Column convention throughout: `m[(i, j)]` is the probability (or rate) of
//! moving to state `i` from state `j`. State indices exposed by this module
//! are 1-based.

use std::fmt;

use petgraph::algo::condensation;
use petgraph::graph::DiGraph;
use petgraph::Direction;
use serde::{Deserialize, Serialize};

use crate::chain::{bond_sum, dense_dimension, hamiltonian, ChainSpec};
use crate::error::{Error, Result};
use crate::ladder::{h_doubleprime, positivity_check, LadderParams, RUNG_DIM};
use crate::linalg::{moment_mismatch, null_space, symmetric_eigenvalues, Matrix, Tolerance};
use crate::report::VerificationReport;

/// Edge threshold for the transition graph.
pub const EDGE_TOL: f64 = 1e-12;

/// Most negative entry accepted as non-negative.
pub const ENTRY_FLOOR: f64 = -1e-14;

/// Default tolerance on column sums.
pub const COLUMN_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Transition,
    Intensity,
}

/// How state indices map to site configurations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum Encoder {
    An { spec: ChainSpec },
    Ladder { params: LadderParams, rungs: usize },
}

impl Encoder {
    pub fn local_dim(&self) -> usize {
        match self {
            Encoder::An { spec } => spec.local_dim(),
            Encoder::Ladder { .. } => RUNG_DIM,
        }
    }

    pub fn sites(&self) -> usize {
        match self {
            Encoder::An { spec } => spec.sites,
            Encoder::Ladder { rungs, .. } => *rungs,
        }
    }

    pub fn state_count(&self) -> Result<usize> {
        dense_dimension(self.local_dim(), self.sites())
    }

    /// `1 + Σ τ_i d^{L-i}` with site 1 most significant.
    pub fn encode(&self, label: &StateLabel) -> Result<usize> {
        let digits = match (self, label) {
            (Encoder::An { .. }, StateLabel::An(t)) => t.clone(),
            (Encoder::Ladder { .. }, StateLabel::Ladder(t)) => {
                if t.iter().any(|&(u, v)| u > 1 || v > 1) {
                    return Err(Error::InvalidArgument(format!("ladder label {label}")));
                }
                t.iter()
                    .map(|&(u, v)| 2 * u as usize + v as usize)
                    .collect()
            }
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "label {label} does not match the encoder"
                )))
            }
        };
        let d = self.local_dim();
        if digits.len() != self.sites() {
            return Err(Error::dims(self.sites(), digits.len()));
        }
        let mut index = 0usize;
        for &t in &digits {
            if t >= d {
                return Err(Error::IndexOutOfRange {
                    index: t,
                    bound: d - 1,
                });
            }
            index = index * d + t;
        }
        Ok(index + 1)
    }

    pub fn decode(&self, index: usize) -> Result<StateLabel> {
        let m = self.state_count()?;
        if index == 0 || index > m {
            return Err(Error::IndexOutOfRange { index, bound: m });
        }
        let d = self.local_dim();
        let mut rest = index - 1;
        let mut digits = vec![0usize; self.sites()];
        for slot in digits.iter_mut().rev() {
            *slot = rest % d;
            rest /= d;
        }
        Ok(match self {
            Encoder::An { .. } => StateLabel::An(digits),
            Encoder::Ladder { .. } => StateLabel::Ladder(
                digits
                    .into_iter()
                    .map(|t| ((t / 2) as u8, (t % 2) as u8))
                    .collect(),
            ),
        })
    }
}

/// Site configuration: occupations per site, or `(leg1, leg2)` per rung.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateLabel {
    An(Vec<usize>),
    Ladder(Vec<(u8, u8)>),
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateLabel::An(t) => {
                let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            StateLabel::Ladder(t) => {
                let parts: Vec<String> = t.iter().map(|(u, v)| format!("{u}{v}")).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkovChain {
    pub kind: ChainKind,
    pub matrix: Matrix,
    pub encoder: Encoder,
}

impl MarkovChain {
    /// Number of states.
    pub fn m(&self) -> usize {
        self.matrix.rows()
    }
}

/// `P = H/((L-1)(n+1))` or `Q = H - (n+1)(L-1)`.
pub fn build_an_markov(spec: ChainSpec, kind: ChainKind) -> Result<MarkovChain> {
    let h = hamiltonian(spec)?.matrix;
    let w = spec.bond_weight();
    let matrix = match kind {
        ChainKind::Transition => h.scale(1.0 / w),
        ChainKind::Intensity => h.shift_diagonal(-w),
    };
    Ok(MarkovChain {
        kind,
        matrix,
        encoder: Encoder::An { spec },
    })
}

/// `P = Σ ℋ″ᵢ,ᵢ₊₁ / (4(L-1)(18+4a+4b+c))` or `Q = Σ (ℋ″ - 4(18+4a+4b+c))ᵢ,ᵢ₊₁`.
pub fn build_ladder_markov(p: LadderParams, rungs: usize, kind: ChainKind) -> Result<MarkovChain> {
    if rungs < 2 {
        return Err(Error::InvalidArgument(format!(
            "a ladder needs at least 2 rungs, got {rungs}"
        )));
    }
    dense_dimension(RUNG_DIM, rungs)?;
    let norm = p.normalizer();
    if norm == 0.0 {
        return Err(Error::DegenerateNormalizer);
    }
    let positivity = positivity_check(p);
    if !positivity.pass {
        return Err(Error::ParameterRegion(format!(
            "ℋ″ has a negative entry ({}) at a={}, b={}, c={}",
            positivity.residuals["min_entry"], p.a, p.b, p.c
        )));
    }
    let hpp = h_doubleprime(p).into_matrix();
    let matrix = match kind {
        ChainKind::Transition => {
            bond_sum(&hpp, RUNG_DIM, rungs)?.scale(1.0 / (4.0 * (rungs - 1) as f64 * norm))
        }
        ChainKind::Intensity => bond_sum(&hpp.shift_diagonal(-p.column_sum()), RUNG_DIM, rungs)?,
    };
    Ok(MarkovChain {
        kind,
        matrix,
        encoder: Encoder::Ladder { params: p, rungs },
    })
}

/// Column-convention validation. `column_tol` bounds `|Σ_i m_ij - target|`.
pub fn validate(chain: &MarkovChain, column_tol: f64) -> VerificationReport {
    let m = &chain.matrix;
    let mut report = VerificationReport::new(
        match chain.kind {
            ChainKind::Transition => "stochastic",
            ChainKind::Intensity => "intensity",
        },
        column_tol,
    );
    let target = match chain.kind {
        ChainKind::Transition => 1.0,
        ChainKind::Intensity => 0.0,
    };
    let n = m.rows();
    let mut min_entry = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            if chain.kind == ChainKind::Transition || i != j {
                min_entry = min_entry.min(m[(i, j)]);
            }
        }
    }
    let defect = |sums: Vec<f64>| sums.iter().map(|s| (s - target).abs()).fold(0.0, f64::max);
    let column_defect = defect(m.column_sums());
    let row_defect = defect(m.row_sums());
    report
        .check_below("column_sum_defect", column_defect)
        .record("min_entry", min_entry)
        .record("row_sum_defect", row_defect)
        .require(m.is_square() && min_entry >= ENTRY_FLOOR)
        .flag("row_stochastic", row_defect < column_tol);
    report
}

/// States `α` whose row and column vanish off the diagonal (1-based).
pub fn absorbing_states(chain: &MarkovChain) -> Vec<usize> {
    let m = &chain.matrix;
    let n = m.rows();
    (0..n)
        .filter(|&a| {
            let stays = match chain.kind {
                ChainKind::Transition => (m[(a, a)] - 1.0).abs() <= EDGE_TOL,
                ChainKind::Intensity => m[(a, a)].abs() <= EDGE_TOL,
            };
            stays
                && (0..n)
                    .filter(|&b| b != a)
                    .all(|b| m[(a, b)].abs() <= EDGE_TOL && m[(b, a)].abs() <= EDGE_TOL)
        })
        .map(|a| a + 1)
        .collect()
}

/// `{ l((n+1)((n+1)^{L-1} - 1) + n)/n + 1 : l = 0..n }`, the all-equal states.
pub fn absorbing_states_formula(spec: ChainSpec) -> Vec<usize> {
    let n = spec.n();
    let d = spec.local_dim();
    let step = (d * (d.pow(spec.sites as u32 - 1) - 1) + n) / n;
    (0..=n).map(|l| l * step + 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainAnalysis {
    pub absorbing: Vec<usize>,
    /// Minimal closed sets, each sorted, ordered by smallest member.
    pub closed_sets: Vec<Vec<usize>>,
    pub reducible: bool,
}

/// Closed sets are the sink components of the condensed transition graph.
pub fn closed_sets(chain: &MarkovChain) -> ChainAnalysis {
    let m = &chain.matrix;
    let n = m.rows();
    let mut graph = DiGraph::<usize, ()>::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|i| graph.add_node(i + 1)).collect();
    for j in 0..n {
        for i in 0..n {
            if i != j && m[(i, j)] > EDGE_TOL {
                graph.add_edge(nodes[j], nodes[i], ());
            }
        }
    }
    let condensed = condensation(graph, true);
    let mut sets: Vec<Vec<usize>> = condensed
        .node_indices()
        .filter(|&c| {
            condensed
                .neighbors_directed(c, Direction::Outgoing)
                .next()
                .is_none()
        })
        .map(|c| {
            let mut s = condensed[c].clone();
            s.sort_unstable();
            s
        })
        .collect();
    sets.sort();
    let reducible = sets.iter().any(|s| s.len() < n);
    ChainAnalysis {
        absorbing: absorbing_states(chain),
        closed_sets: sets,
        reducible,
    }
}

/// First transition leaving `set` (1-based `(from, to)`), if any.
pub fn leak(chain: &MarkovChain, set: &[usize]) -> Result<Option<(usize, usize)>> {
    let n = chain.m();
    let mut inside = vec![false; n];
    for &s in set {
        if s == 0 || s > n {
            return Err(Error::IndexOutOfRange { index: s, bound: n });
        }
        inside[s - 1] = true;
    }
    for &j in set {
        for (i, &within) in inside.iter().enumerate() {
            if !within && chain.matrix[(i, j - 1)] > EDGE_TOL {
                return Ok(Some((j, i + 1)));
            }
        }
    }
    Ok(None)
}

/// Stationary law supported on a closed set: the normalized null vector of the
/// generator restricted to the set (`P - 1` for transition matrices).
pub fn stationary_distribution(chain: &MarkovChain, set: &[usize]) -> Result<Vec<f64>> {
    if set.is_empty() {
        return Err(Error::InvalidArgument("empty closed set".into()));
    }
    if let Some((from, to)) = leak(chain, set)? {
        return Err(Error::NotClosed { from, to });
    }
    let k = set.len();
    let mut q = Matrix::from_fn(k, k, |a, b| chain.matrix[(set[a] - 1, set[b] - 1)]);
    if chain.kind == ChainKind::Transition {
        q = q.shift_diagonal(-1.0);
    }
    let basis = null_space(&q, 1e-10);
    if basis.len() != 1 {
        return Err(Error::DegenerateNullSpace { dim: basis.len() });
    }
    let v = &basis[0];
    let total: f64 = v.iter().sum();
    let mut pi = vec![0.0; chain.m()];
    for (&s, x) in set.iter().zip(v) {
        pi[s - 1] = (x / total).max(0.0);
    }
    let renorm: f64 = pi.iter().sum();
    pi.iter_mut().for_each(|x| *x /= renorm);
    Ok(pi)
}

/// How two spectra were compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMethod {
    /// Sorted eigenvalues of two symmetric matrices.
    Eigenvalues,
    /// Relative power-trace mismatch, used when either side is not symmetric.
    Moments,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumComparison {
    pub method: SpectrumMethod,
    pub residual: f64,
}

/// Compares the spectrum of the chain matrix with `scale·spec(h) + shift`.
pub fn spectrum_coincidence(
    h: &Matrix,
    chain: &MarkovChain,
    scale: f64,
    shift: f64,
    tol: Tolerance,
) -> Result<SpectrumComparison> {
    let m = &chain.matrix;
    if h.rows() != m.rows() || !h.is_square() {
        return Err(Error::dims(m.shape(), h.shape()));
    }
    let symmetric = |x: &Matrix| x.asymmetry() <= tol.abs_tol * x.max_abs().max(1.0);
    if symmetric(h) && symmetric(m) {
        let eh = symmetric_eigenvalues(h, tol)?;
        let em = symmetric_eigenvalues(m, tol)?;
        let mut mapped: Vec<f64> = eh.iter().map(|x| scale * x + shift).collect();
        mapped.sort_by(f64::total_cmp);
        let residual = em
            .iter()
            .zip(&mapped)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        Ok(SpectrumComparison {
            method: SpectrumMethod::Eigenvalues,
            residual,
        })
    } else {
        let mapped = h.scale(scale).shift_diagonal(shift);
        Ok(SpectrumComparison {
            method: SpectrumMethod::Moments,
            residual: moment_mismatch(&mapped, m, 6)?,
        })
    }
}

/// Export record for a chain and its analysis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainExport {
    pub kind: ChainKind,
    pub encoder: Encoder,
    pub states: usize,
    pub absorbing: Vec<usize>,
    pub closed_sets: Vec<Vec<usize>>,
    pub reducible: bool,
    pub matrix: Matrix,
}

pub fn export(chain: &MarkovChain) -> ChainExport {
    let analysis = closed_sets(chain);
    ChainExport {
        kind: chain.kind,
        encoder: chain.encoder,
        states: chain.m(),
        absorbing: analysis.absorbing,
        closed_sets: analysis.closed_sets,
        reducible: analysis.reducible,
        matrix: chain.matrix.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::intensity_exp;
    use proptest::prelude::*;

    fn spec(n: usize, l: usize) -> ChainSpec {
        ChainSpec::new(n, l).unwrap()
    }

    fn an(n: usize, l: usize, kind: ChainKind) -> MarkovChain {
        build_an_markov(spec(n, l), kind).unwrap()
    }

    fn raw(kind: ChainKind, m: Matrix) -> MarkovChain {
        MarkovChain {
            kind,
            matrix: m,
            encoder: Encoder::An { spec: spec(1, 2) },
        }
    }

    #[test]
    fn encoding_examples() {
        let e = Encoder::An { spec: spec(1, 3) };
        assert_eq!(e.encode(&StateLabel::An(vec![0, 0, 0])).unwrap(), 1);
        assert_eq!(e.encode(&StateLabel::An(vec![1, 1, 1])).unwrap(), 8);
        assert_eq!(e.encode(&StateLabel::An(vec![1, 0, 0])).unwrap(), 5);
        assert!(e.encode(&StateLabel::An(vec![2, 0, 0])).is_err());
        assert!(e.encode(&StateLabel::An(vec![0, 0])).is_err());
        assert!(e.decode(0).is_err());
        assert!(e.decode(9).is_err());
        let l = Encoder::Ladder {
            params: LadderParams::new(16.0, 0.0, 0.0),
            rungs: 2,
        };
        assert_eq!(
            l.encode(&StateLabel::Ladder(vec![(0, 1), (1, 0)])).unwrap(),
            7
        );
        assert_eq!(
            l.decode(16).unwrap(),
            StateLabel::Ladder(vec![(1, 1), (1, 1)])
        );
        assert!(l.encode(&StateLabel::An(vec![0, 0])).is_err());
    }

    #[test]
    fn encoding_round_trips() {
        let e = Encoder::An { spec: spec(2, 3) };
        for i in 1..=27 {
            assert_eq!(e.encode(&e.decode(i).unwrap()).unwrap(), i);
        }
        let l = Encoder::Ladder {
            params: LadderParams::new(0.0, 8.0, 0.0),
            rungs: 3,
        };
        for i in 1..=64 {
            assert_eq!(l.encode(&l.decode(i).unwrap()).unwrap(), i);
        }
    }

    #[test]
    fn label_display() {
        assert_eq!(StateLabel::An(vec![0, 2, 1]).to_string(), "(0,2,1)");
        assert_eq!(
            StateLabel::Ladder(vec![(0, 1), (1, 1)]).to_string(),
            "(01,11)"
        );
    }

    #[test]
    fn smallest_chains() {
        let p = an(1, 2, ChainKind::Transition);
        let swap = Matrix::from_rows(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert_eq!(p.matrix, swap);
        let q = an(1, 2, ChainKind::Intensity);
        let expected = Matrix::from_rows(&[
            [0.0, 0.0, 0.0, 0.0],
            [0.0, -2.0, 2.0, 0.0],
            [0.0, 2.0, -2.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(q.matrix, expected);
    }

    #[test]
    fn an_chains_validate() {
        for (n, l) in [(1, 3), (2, 3), (3, 2)] {
            let p = an(n, l, ChainKind::Transition);
            let r = validate(&p, COLUMN_SUM_TOL);
            assert!(r.pass, "{}", r.to_json());
            assert!(r.flags["row_stochastic"]);
            assert!(p
                .matrix
                .as_slice()
                .iter()
                .all(|&x| (0.0..=1.0).contains(&x)));
            assert!(validate(&an(n, l, ChainKind::Intensity), COLUMN_SUM_TOL).pass);
        }
    }

    #[test]
    fn validation_negative_controls() {
        let q = raw(
            ChainKind::Intensity,
            Matrix::from_rows(&[[-1.0, 1.0], [2.0, -1.0]]),
        );
        assert!(!validate(&q, COLUMN_SUM_TOL).pass);
        let p = raw(
            ChainKind::Transition,
            Matrix::from_rows(&[[1.5, 0.0], [-0.5, 1.0]]),
        );
        assert!(!validate(&p, COLUMN_SUM_TOL).pass);
    }

    #[test]
    fn ladder_chains() {
        let p = LadderParams::new(16.0, 0.0, 0.0);
        for rungs in [2, 3] {
            let pc = build_ladder_markov(p, rungs, ChainKind::Transition).unwrap();
            let r = validate(&pc, 1e-10);
            assert!(r.pass, "{}", r.to_json());
            assert!(absorbing_states(&pc).is_empty());
            assert!(
                validate(
                    &build_ladder_markov(p, rungs, ChainKind::Intensity).unwrap(),
                    1e-10
                )
                .pass
            );
        }
        assert!(matches!(
            build_ladder_markov(LadderParams::new(0.0, 0.0, 0.0), 2, ChainKind::Transition),
            Err(Error::ParameterRegion(_))
        ));
        assert!(matches!(
            build_ladder_markov(LadderParams::new(16.0, 0.0, -82.0), 2, ChainKind::Intensity),
            Err(Error::DegenerateNormalizer)
        ));
        assert!(build_ladder_markov(p, 7, ChainKind::Transition).is_err());
    }

    #[test]
    fn absorbing_examples() {
        assert_eq!(
            absorbing_states(&an(1, 3, ChainKind::Transition)),
            vec![1, 8]
        );
        assert_eq!(
            absorbing_states(&an(2, 2, ChainKind::Transition)),
            vec![1, 5, 9]
        );
        assert_eq!(absorbing_states_formula(spec(1, 3)), vec![1, 8]);
        assert_eq!(absorbing_states_formula(spec(1, 2)), vec![1, 4]);
        assert_eq!(absorbing_states_formula(spec(2, 2)), vec![1, 5, 9]);
    }

    #[test]
    fn absorbing_formula_matches_computation() {
        for n in 1..=3 {
            for l in 2..=4 {
                let s = spec(n, l);
                if s.dimension().is_err() {
                    continue;
                }
                let p = build_an_markov(s, ChainKind::Transition).unwrap();
                assert_eq!(
                    absorbing_states(&p),
                    absorbing_states_formula(s),
                    "n={n} L={l}"
                );
            }
        }
    }

    #[test]
    fn closed_set_examples() {
        let a = closed_sets(&an(1, 3, ChainKind::Transition));
        assert!(a.reducible);
        assert_eq!(
            a.closed_sets,
            vec![vec![1], vec![2, 3, 5], vec![4, 6, 7], vec![8]]
        );
        let flip = raw(
            ChainKind::Transition,
            Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]),
        );
        let a = closed_sets(&flip);
        assert!(!a.reducible);
        assert_eq!(a.closed_sets, vec![vec![1, 2]]);
        let id = raw(ChainKind::Transition, Matrix::identity(3));
        assert_eq!(
            closed_sets(&id).closed_sets,
            vec![vec![1], vec![2], vec![3]]
        );
        // a transient state is in no closed set
        let drain = raw(
            ChainKind::Transition,
            Matrix::from_rows(&[[1.0, 0.5], [0.0, 0.5]]),
        );
        assert_eq!(closed_sets(&drain).closed_sets, vec![vec![1]]);
    }

    #[test]
    fn every_absorbing_state_is_a_singleton_closed_set() {
        for (n, l) in [(1, 3), (2, 3), (1, 4)] {
            let a = closed_sets(&an(n, l, ChainKind::Transition));
            for s in &a.absorbing {
                assert!(a.closed_sets.contains(&vec![*s]));
            }
        }
    }

    #[test]
    fn stationary_examples() {
        let q = an(1, 3, ChainKind::Intensity);
        let pi = stationary_distribution(&q, &[2, 3, 5]).unwrap();
        for (i, x) in pi.iter().enumerate() {
            let expected = if [1, 2, 4].contains(&i) {
                1.0 / 3.0
            } else {
                0.0
            };
            assert!((x - expected).abs() < 1e-12);
        }
        let point = stationary_distribution(&q, &[1]).unwrap();
        assert_eq!(point[0], 1.0);
        assert!(matches!(
            stationary_distribution(&q, &[2, 3]),
            Err(Error::NotClosed { .. })
        ));
        let q2 = an(2, 2, ChainKind::Intensity);
        let e = Encoder::An { spec: spec(2, 2) };
        let s = [
            e.encode(&StateLabel::An(vec![0, 1])).unwrap(),
            e.encode(&StateLabel::An(vec![1, 0])).unwrap(),
        ];
        let pi = stationary_distribution(&q2, &s).unwrap();
        assert!((pi[s[0] - 1] - 0.5).abs() < 1e-12 && (pi[s[1] - 1] - 0.5).abs() < 1e-12);
        // two disjoint closed sets together leave a 2-dim null space
        assert!(matches!(
            stationary_distribution(&q, &[1, 8]),
            Err(Error::DegenerateNullSpace { dim: 2 })
        ));
    }

    #[test]
    fn every_closed_set_has_uniform_law() {
        for (n, l) in [(1, 3), (1, 4), (2, 3)] {
            let q = an(n, l, ChainKind::Intensity);
            for set in closed_sets(&q).closed_sets {
                let pi = stationary_distribution(&q, &set).unwrap();
                let u = 1.0 / set.len() as f64;
                for &s in &set {
                    assert!((pi[s - 1] - u).abs() < 1e-10);
                }
                let qpi = q.matrix.matvec(&pi).unwrap();
                assert!(qpi.iter().all(|x| x.abs() < 1e-10));
            }
        }
    }

    #[test]
    fn transition_stationary_on_asymmetric_chain() {
        // moves 1→2 w.p. 1/2, 2→1 w.p. 1/4
        let p = raw(
            ChainKind::Transition,
            Matrix::from_rows(&[[0.5, 0.25], [0.5, 0.75]]),
        );
        let pi = stationary_distribution(&p, &[1, 2]).unwrap();
        assert!((pi[0] - 1.0 / 3.0).abs() < 1e-12 && (pi[1] - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn content_is_conserved() {
        for n in 1..=2 {
            let s = spec(n, 3);
            let p = build_an_markov(s, ChainKind::Transition).unwrap();
            let e = p.encoder;
            let content = |i: usize| match e.decode(i + 1).unwrap() {
                StateLabel::An(mut t) => {
                    t.sort_unstable();
                    t
                }
                StateLabel::Ladder(_) => unreachable!(),
            };
            for i in 0..p.m() {
                for j in 0..p.m() {
                    if content(i) != content(j) {
                        assert_eq!(p.matrix[(i, j)], 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn semigroup_of_an_intensity_is_stochastic() {
        let q = an(1, 3, ChainKind::Intensity);
        for t in [0.1, 1.0, 10.0] {
            let pt = intensity_exp(&q.matrix, t, Tolerance::default()).unwrap();
            let chain = MarkovChain {
                kind: ChainKind::Transition,
                matrix: pt,
                encoder: q.encoder,
            };
            assert!(validate(&chain, 1e-10).pass);
        }
        let q2 = an(1, 2, ChainKind::Intensity);
        let p1 = intensity_exp(&q2.matrix, 1.0, Tolerance::default()).unwrap();
        assert!(p1.column_sums().iter().all(|s| (s - 1.0).abs() < 1e-10));
    }

    #[test]
    fn spectrum_coincidence_examples() {
        let h = hamiltonian(spec(1, 3)).unwrap().matrix;
        let tol = Tolerance::default();
        let p = an(1, 3, ChainKind::Transition);
        let r = spectrum_coincidence(&h, &p, 0.25, 0.0, tol).unwrap();
        assert_eq!(r.method, SpectrumMethod::Eigenvalues);
        assert!(r.residual < 1e-9);
        let q = an(1, 3, ChainKind::Intensity);
        assert!(
            spectrum_coincidence(&h, &q, 1.0, -4.0, tol)
                .unwrap()
                .residual
                < 1e-9
        );
        let other = Matrix::diag(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        assert!(
            spectrum_coincidence(&other, &p, 0.25, 0.0, tol)
                .unwrap()
                .residual
                > 0.1
        );
        let asym = Matrix::from_fn(8, 8, |i, j| if j == i + 1 { 1.0 } else { 0.0 });
        let r = spectrum_coincidence(&asym, &p, 0.25, 0.0, tol).unwrap();
        assert_eq!(r.method, SpectrumMethod::Moments);
        assert!(spectrum_coincidence(&Matrix::identity(4), &p, 1.0, 0.0, tol).is_err());
    }

    #[test]
    fn export_serializes() {
        let v: serde_json::Value =
            serde_json::to_value(export(&an(1, 2, ChainKind::Transition))).unwrap();
        assert_eq!(v["kind"], "transition");
        assert_eq!(v["encoder"]["model"], "an");
        assert_eq!(v["absorbing"], serde_json::json!([1, 4]));
        assert_eq!(v["closed_sets"], serde_json::json!([[1], [2, 3], [4]]));
    }

    proptest! {
        #[test]
        fn decode_encode_round_trip(n in 1usize..4, l in 2usize..5, seed in 0usize..10_000) {
            let s = spec(n, l);
            prop_assume!(s.dimension().is_ok());
            let e = Encoder::An { spec: s };
            let m = e.state_count().unwrap();
            let i = seed % m + 1;
            prop_assert_eq!(e.encode(&e.decode(i).unwrap()).unwrap(), i);
        }
    }
}
