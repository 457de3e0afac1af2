//! Pinned thresholds for the certification suites and acceptance checks.

/// Exact-algebra residuals on A_n operators (Frobenius norm).
pub const ALGEBRA_ABS: f64 = 1e-10;

/// Column-sum defect of a transition or intensity matrix.
pub const COLUMN_SUM: f64 = 1e-12;

/// Most negative entry accepted as a rounding artifact.
pub const ENTRY_FLOOR: f64 = -1e-14;

/// Largest eigenvalue offset between a chain and its Hamiltonian.
pub const SPECTRUM: f64 = 1e-8;

/// Ladder identities (QYBE, similarity, SU(2) invariance).
pub const LADDER_IDENTITY: f64 = 1e-8;

/// Column sums of the ladder operator and its chains.
pub const LADDER_COLUMN_SUM: f64 = 1e-10;

/// Power traces compared when a spectrum is not symmetric.
pub const MOMENT_ORDER: usize = 6;

/// Uniform-law simulation: band, run count and passing quota.
pub const SIGMA_BAND: f64 = 3.0;
pub const SEEDED_RUNS: u64 = 20;
pub const MIN_PASSING_RUNS: usize = 19;
pub const CTMC_HORIZON: f64 = 1e4;
pub const ABSORBING_STEPS: usize = 100_000;

/// `(d, f)` sample points for the first ladder family.
pub const H0_GRID: [f64; 4] = [-1.0, 0.0, 1.0, 2.0];

/// Sample points for the similarity check.
pub const SIMILARITY_POINTS: [[f64; 3]; 3] = [[16.0, 0.0, 0.0], [0.0, 8.0, 1.0], [1.0, 1.0, 1.0]];
