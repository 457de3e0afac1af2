//! Seeded trajectory sampling for the constructed chains.
//!
//! Randomness comes from `ChaCha8Rng` (ChaCha stream cipher, 8 rounds),
//! seeded with `seed_from_u64`; output is identical across platforms.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{inverse, Matrix};
use crate::markov::{
    closed_sets, stationary_distribution, validate, ChainKind, Encoder, MarkovChain,
};

/// Default fraction of steps or time discarded before measuring.
pub const DEFAULT_BURN_IN: f64 = 0.1;

/// Column-sum tolerance required before sampling.
pub const SAMPLING_TOL: f64 = 1e-10;

/// Largest number of jumps a single continuous-time run may take.
pub const MAX_JUMPS: usize = 50_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    /// Visited states, 1-based.
    pub states: Vec<usize>,
    /// Entry times of `states` for continuous-time runs; `None` for unit steps.
    pub times: Option<Vec<f64>>,
    /// End of the observation window for continuous-time runs.
    pub horizon: Option<f64>,
    pub seed: u64,
}

impl Trajectory {
    /// Number of jumps actually taken (self-loops count in discrete time).
    pub fn transitions(&self) -> usize {
        self.states.len() - 1
    }
}

/// Inverse-CDF sampler over the columns of a stochastic matrix.
struct ColumnSampler {
    /// Per column: `(row, cumulative probability)` for positive entries.
    cumulative: Vec<Vec<(usize, f64)>>,
}

impl ColumnSampler {
    /// `weight(i, j)` is the unnormalized probability of `j → i`.
    fn new(n: usize, weight: impl Fn(usize, usize) -> f64, total: impl Fn(usize) -> f64) -> Self {
        let cumulative = (0..n)
            .map(|j| {
                let t = total(j);
                let mut out = Vec::new();
                if t <= 0.0 {
                    return out;
                }
                // Kahan summation of the running total
                let (mut sum, mut carry) = (0.0f64, 0.0f64);
                for i in 0..n {
                    let w = weight(i, j);
                    if w > 0.0 {
                        let y = w / t - carry;
                        let s = sum + y;
                        carry = (s - sum) - y;
                        sum = s;
                        out.push((i, sum));
                    }
                }
                out
            })
            .collect();
        Self { cumulative }
    }

    fn sample(&self, j: usize, u: f64) -> usize {
        let col = &self.cumulative[j];
        let k = col.partition_point(|&(_, c)| c <= u);
        // the last bucket absorbs rounding slack in the total
        col[k.min(col.len() - 1)].0
    }
}

fn check_init(chain: &MarkovChain, init: usize) -> Result<()> {
    if init == 0 || init > chain.m() {
        return Err(Error::IndexOutOfRange {
            index: init,
            bound: chain.m(),
        });
    }
    Ok(())
}

fn require_valid(chain: &MarkovChain, kind: ChainKind) -> Result<()> {
    if chain.kind != kind {
        return Err(Error::InvalidTransition(format!(
            "expected a {kind:?} matrix, got {:?}",
            chain.kind
        )));
    }
    let report = validate(chain, SAMPLING_TOL);
    if !report.pass {
        return Err(Error::InvalidTransition(report.to_json()));
    }
    Ok(())
}

/// `X₀ = init`, `X_{k+1}` drawn from column `X_k` of `P`.
pub fn simulate_dtmc(
    chain: &MarkovChain,
    init: usize,
    steps: usize,
    seed: u64,
) -> Result<Trajectory> {
    require_valid(chain, ChainKind::Transition)?;
    check_init(chain, init)?;
    let m = &chain.matrix;
    let sampler = ColumnSampler::new(chain.m(), |i, j| m[(i, j)], |_| 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut states = Vec::with_capacity(steps + 1);
    let mut x = init - 1;
    states.push(init);
    for _ in 0..steps {
        x = sampler.sample(x, rng.random::<f64>());
        states.push(x + 1);
    }
    Ok(Trajectory {
        states,
        times: None,
        horizon: None,
        seed,
    })
}

/// Jump-chain sampling: hold for `Exp(|q_jj|)`, then jump to `i` with
/// probability `q_ij/|q_jj|`. A state with `q_jj = 0` holds forever.
pub fn simulate_ctmc(
    chain: &MarkovChain,
    init: usize,
    t_max: f64,
    seed: u64,
) -> Result<Trajectory> {
    require_valid(chain, ChainKind::Intensity)?;
    check_init(chain, init)?;
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    let m = &chain.matrix;
    let n = chain.m();
    let rate = |j: usize| -m[(j, j)];
    let sampler = ColumnSampler::new(n, |i, j| if i == j { 0.0 } else { m[(i, j)] }, rate);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut states = vec![init];
    let mut times = vec![0.0];
    let mut x = init - 1;
    let mut t = 0.0;
    loop {
        let r = rate(x);
        if r <= 0.0 {
            break;
        }
        let hold: f64 = rng.sample(Exp1);
        t += hold / r;
        if t >= t_max {
            break;
        }
        if states.len() > MAX_JUMPS {
            return Err(Error::SizeExceeded {
                dim: states.len(),
                limit: MAX_JUMPS,
            });
        }
        x = sampler.sample(x, rng.random::<f64>());
        states.push(x + 1);
        times.push(t);
    }
    Ok(Trajectory {
        states,
        times: Some(times),
        horizon: Some(t_max),
        seed,
    })
}

/// Occupation frequencies over `m` states after discarding the first
/// `burn_in` fraction of steps (discrete) or time (continuous).
pub fn empirical_distribution(traj: &Trajectory, m: usize, burn_in: f64) -> Result<Vec<f64>> {
    if !(0.0..1.0).contains(&burn_in) {
        return Err(Error::InvalidArgument(format!(
            "burn-in fraction {burn_in}"
        )));
    }
    let mut occ = vec![0.0; m];
    let mut add =
        |state: usize, w: f64| -> Result<()> {
            let slot = state.checked_sub(1).and_then(|s| occ.get_mut(s)).ok_or(
                Error::IndexOutOfRange {
                    index: state,
                    bound: m,
                },
            )?;
            *slot += w;
            Ok(())
        };
    match (&traj.times, traj.horizon) {
        (Some(times), Some(horizon)) => {
            let start = burn_in * horizon;
            if horizon <= start {
                return Err(Error::EmptyWindow);
            }
            for (k, &s) in traj.states.iter().enumerate() {
                let enter = times[k].max(start);
                let leave = times.get(k + 1).copied().unwrap_or(horizon).min(horizon);
                if leave > enter {
                    add(s, leave - enter)?;
                }
            }
        }
        _ => {
            let skip = (burn_in * traj.states.len() as f64).floor() as usize;
            if skip >= traj.states.len() {
                return Err(Error::EmptyWindow);
            }
            for &s in &traj.states[skip..] {
                add(s, 1.0)?;
            }
        }
    }
    let total: f64 = occ.iter().sum();
    if total <= 0.0 {
        return Err(Error::EmptyWindow);
    }
    occ.iter_mut().for_each(|x| *x /= total);
    Ok(occ)
}

/// `sqrt(p(1-p)/N)` per entry of `target`.
pub fn binomial_sigma(target: &[f64], samples: usize) -> Vec<f64> {
    let n = samples.max(1) as f64;
    target.iter().map(|p| (p * (1.0 - p) / n).sqrt()).collect()
}

/// Asymptotic standard deviation of occupation fractions on a closed set,
/// from the Markov-chain central limit theorem.
///
/// Continuous time over a window of length `window`:
/// `σ_i² = 2 Σ_x π_x f̄_x g_x / T` with `(1πᵀ - Qᵀ) g = f̄`, `f̄ = 1_i - π_i`.
/// Discrete time over `window` steps:
/// `σ_i² = (2 Σ π f̄ g - Σ π f̄²)/N` with `(I - Pᵀ + 1πᵀ) g = f̄`.
/// Entries outside `set` are zero.
pub fn clt_sigma(chain: &MarkovChain, set: &[usize], pi: &[f64], window: f64) -> Result<Vec<f64>> {
    if !(window > 0.0) {
        return Err(Error::EmptyWindow);
    }
    let k = set.len();
    let p: Vec<f64> = set.iter().map(|&s| pi[s - 1]).collect();
    let local = Matrix::from_fn(k, k, |a, b| chain.matrix[(set[b] - 1, set[a] - 1)]);
    let fundamental = match chain.kind {
        ChainKind::Intensity => Matrix::from_fn(k, k, |a, b| p[b] - local[(a, b)]),
        ChainKind::Transition => Matrix::from_fn(k, k, |a, b| {
            f64::from(u8::from(a == b)) - local[(a, b)] + p[b]
        }),
    };
    let z = inverse(&fundamental)?;
    let mut out = vec![0.0; chain.m()];
    for (idx, &s) in set.iter().enumerate() {
        let fbar: Vec<f64> = (0..k)
            .map(|a| f64::from(u8::from(a == idx)) - p[idx])
            .collect();
        let g = z.matvec(&fbar)?;
        let cross: f64 = (0..k).map(|a| p[a] * fbar[a] * g[a]).sum();
        let var = match chain.kind {
            ChainKind::Intensity => 2.0 * cross / window,
            ChainKind::Transition => {
                let sq: f64 = (0..k).map(|a| p[a] * fbar[a] * fbar[a]).sum();
                (2.0 * cross - sq) / window
            }
        };
        out[s - 1] = var.max(0.0).sqrt();
    }
    Ok(out)
}

/// Largest `|observed - target| / σ` over entries with `σ > 0`; entries with
/// `σ = 0` must match exactly or give infinity.
pub fn max_deviation_sigma(observed: &[f64], target: &[f64], sigma: &[f64]) -> f64 {
    observed
        .iter()
        .zip(target)
        .zip(sigma)
        .map(|((o, t), s)| {
            let d = (o - t).abs();
            if *s > 0.0 {
                d / s
            } else if d > 1e-12 {
                f64::INFINITY
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max)
}

/// Whether every step of the trajectory follows a non-zero matrix element.
pub fn transitions_supported(traj: &Trajectory, chain: &MarkovChain) -> bool {
    traj.states
        .windows(2)
        .all(|w| chain.matrix[(w[1] - 1, w[0] - 1)] > 0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub seed: u64,
    pub init: usize,
    pub transitions: usize,
    pub occupation: Vec<f64>,
    pub closed_set: Vec<usize>,
    pub target: Vec<f64>,
    /// Deviation measured with the Markov-chain CLT standard deviation.
    pub max_dev_sigma: f64,
    /// Deviation measured with the binomial bound on the jump count.
    pub max_dev_binomial_sigma: f64,
}

/// Occupation statistics of a trajectory against the stationary law of the
/// closed set that contains its initial state (or, failing that, its final
/// state).
pub fn summarize(
    chain: &MarkovChain,
    traj: &Trajectory,
    burn_in: f64,
) -> Result<SimulationSummary> {
    let m = chain.m();
    let init = traj.states[0];
    let last = *traj.states.last().expect("trajectory starts somewhere");
    let sets = closed_sets(chain).closed_sets;
    let set = sets
        .iter()
        .find(|s| s.contains(&init))
        .or_else(|| sets.iter().find(|s| s.contains(&last)))
        .cloned()
        .ok_or_else(|| Error::InvalidArgument(format!("state {last} is not in a closed set")))?;
    let target = stationary_distribution(chain, &set)?;
    let occupation = empirical_distribution(traj, m, burn_in)?;
    let (window, samples) = match traj.horizon {
        Some(h) => {
            let start = burn_in * h;
            let times = traj.times.as_deref().unwrap_or_default();
            (h - start, times.iter().filter(|&&t| t > start).count())
        }
        None => {
            let kept = traj.states.len() - (burn_in * traj.states.len() as f64).floor() as usize;
            (kept as f64, kept)
        }
    };
    let sigma = clt_sigma(chain, &set, &target, window)?;
    let binomial = binomial_sigma(&target, samples);
    Ok(SimulationSummary {
        seed: traj.seed,
        init,
        transitions: traj.transitions(),
        max_dev_sigma: max_deviation_sigma(&occupation, &target, &sigma),
        max_dev_binomial_sigma: max_deviation_sigma(&occupation, &target, &binomial),
        occupation,
        closed_set: set,
        target,
    })
}

/// One row per visited state: time (or step), index, decoded label.
pub fn write_trajectory_csv<W: Write>(traj: &Trajectory, encoder: &Encoder, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["step_or_time", "state_index", "label"])?;
    for (k, &s) in traj.states.iter().enumerate() {
        let when = match &traj.times {
            Some(t) => t[k].to_string(),
            None => k.to_string(),
        };
        w.write_record([when, s.to_string(), encoder.decode(s)?.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
