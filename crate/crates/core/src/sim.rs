//! Pressure/tolerance sweeps.
//!
//! One round draws a random oracle advice over `p` genes, reduces the NE
//! instance to a knapsack with capacity `t`, solves it exactly and records the
//! achieved value and weight. A cell averages many rounds; a sweep covers the
//! full pressure x tolerance grid.
//!
//! Each round owns an RNG stream keyed by `(master_seed, p, t, round)`, and
//! rounds are reduced in index order, so results do not depend on how many
//! worker threads ran them.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SignedDigraph;
use crate::knapsack::Solver;
use crate::ne::{compute_benefit_damage, solve_benefit_damage, OracleAdvice};

/// How per-round values and weights are averaged into a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Averaging {
    /// Mean rounded down to an integer. This is how published sweep tables
    /// report cells: a mean weight just below `t` shows as `t - 1`, and a
    /// rare positive weight at low pressure shows as 0.
    #[default]
    Floor,
    /// Plain arithmetic mean.
    Exact,
}

impl Averaging {
    pub fn mean(self, sum: f64, rounds: usize) -> f64 {
        let m = sum / rounds as f64;
        match self {
            Averaging::Exact => m,
            // slack absorbs representation error on sums of non-integers
            Averaging::Floor => (m + 1e-9 * m.abs().max(1.0)).floor(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub pressures: Vec<usize>,
    pub tolerances: Vec<f64>,
    pub rounds: usize,
    pub master_seed: u64,
    pub worker_count: usize,
    pub solver: Solver,
    pub averaging: Averaging,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            pressures: vec![5, 10, 50, 500],
            tolerances: vec![5.0, 10.0, 50.0, 500.0],
            rounds: 10_000,
            master_seed: 0,
            worker_count: std::thread::available_parallelism().map_or(1, |n| n.get()),
            solver: Solver::default(),
            averaging: Averaging::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.pressures.is_empty() || self.tolerances.is_empty() {
            return fail("need at least one pressure and one tolerance".into());
        }
        if let Some(p) = self.pressures.iter().find(|&&p| p == 0) {
            return fail(format!("pressure {p} must be at least 1"));
        }
        if let Some(t) = self
            .tolerances
            .iter()
            .find(|t| !(t.is_finite() && **t >= 0.0))
        {
            return fail(format!("tolerance {t} must be finite and non-negative"));
        }
        if self.rounds == 0 {
            return fail("rounds must be at least 1".into());
        }
        if self.worker_count == 0 {
            return fail("worker count must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub p: usize,
    pub t: f64,
    pub rounds_completed: usize,
    pub mean_value: f64,
    pub mean_weight: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMeta {
    pub network: String,
    pub n: usize,
    pub seed: u64,
    pub solver: String,
    pub weight_scale: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub meta: SweepMeta,
    pub cells: Vec<CellResult>,
    pub warnings: Vec<String>,
}

impl SweepResult {
    pub fn cell(&self, p: usize, t: f64) -> Option<&CellResult> {
        self.cells.iter().find(|c| c.p == p && c.t == t)
    }

    /// The cell with the highest value-to-weight ratio (first one on ties).
    pub fn best_cell(&self) -> Option<&CellResult> {
        self.cells
            .iter()
            .fold(None, |best: Option<&CellResult>, c| match best {
                Some(b) if b.ratio >= c.ratio => Some(b),
                _ => Some(c),
            })
    }
}

/// Value-to-weight ratio; a weightless cell reports its value.
pub fn ratio(mean_value: f64, mean_weight: f64) -> f64 {
    if mean_weight > 0.0 {
        mean_value / mean_weight
    } else {
        mean_value
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn round_seed(master_seed: u64, p: usize, t: f64, round: usize) -> u64 {
    [p as u64, t.to_bits(), round as u64]
        .into_iter()
        .fold(splitmix(master_seed), |h, x| splitmix(h ^ x))
}

pub fn round_rng(master_seed: u64, p: usize, t: f64, round: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(round_seed(master_seed, p, t, round))
}

/// Picks `p` distinct genes uniformly and gives each a fair-coin sign.
pub fn sample_advice<R: Rng>(g: &SignedDigraph, p: usize, rng: &mut R) -> Result<OracleAdvice> {
    let n = g.node_count();
    if p == 0 || p > n {
        return Err(Error::PressureOutOfRange {
            pressure: p,
            nodes: n,
        });
    }
    let mut advice = vec![0i8; n];
    for k in index::sample(rng, n, p) {
        advice[k] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    OracleAdvice::new(advice)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundOutcome {
    pub value: f64,
    pub weight: f64,
}

/// Solves one NE instance under a given advice.
pub fn evaluate_advice(
    g: &SignedDigraph,
    advice: &OracleAdvice,
    t: f64,
    solver: &Solver,
) -> Result<RoundOutcome> {
    let bd = compute_benefit_damage(g, advice)?;
    let sol = solve_benefit_damage(&bd, t, solver)?;
    Ok(RoundOutcome {
        value: sol.total_benefit,
        weight: sol.total_damage,
    })
}

pub fn run_round<R: Rng>(
    g: &SignedDigraph,
    p: usize,
    t: f64,
    solver: &Solver,
    rng: &mut R,
) -> Result<RoundOutcome> {
    let advice = sample_advice(g, p, rng)?;
    evaluate_advice(g, &advice, t, solver)
}

fn worker_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Pool(e.to_string()))
}

fn aggregate(p: usize, t: f64, outcomes: &[RoundOutcome], averaging: Averaging) -> CellResult {
    let rounds = outcomes.len();
    let (mut value, mut weight) = (0.0, 0.0);
    for o in outcomes {
        value += o.value;
        weight += o.weight;
    }
    let mean_value = averaging.mean(value, rounds);
    let mean_weight = averaging.mean(weight, rounds);
    CellResult {
        p,
        t,
        rounds_completed: rounds,
        mean_value,
        mean_weight,
        ratio: ratio(mean_value, mean_weight),
    }
}

fn run_cell_in(
    pool: &rayon::ThreadPool,
    g: &SignedDigraph,
    p: usize,
    t: f64,
    rounds: usize,
    seed: u64,
    cfg: &SweepConfig,
) -> Result<CellResult> {
    let outcomes: Vec<RoundOutcome> = pool.install(|| {
        (0..rounds)
            .into_par_iter()
            .map(|i| run_round(g, p, t, &cfg.solver, &mut round_rng(seed, p, t, i)))
            .collect::<Result<_>>()
    })?;
    Ok(aggregate(p, t, &outcomes, cfg.averaging))
}

/// Runs one `(p, t)` cell with the rounds, seed, solver, averaging and worker
/// count of `cfg`.
pub fn run_cell(g: &SignedDigraph, p: usize, t: f64, cfg: &SweepConfig) -> Result<CellResult> {
    cfg.validate()?;
    let pool = worker_pool(cfg.worker_count)?;
    run_cell_in(&pool, g, p, t, cfg.rounds, cfg.master_seed, cfg)
}

/// Runs every `(p, t)` cell of the grid, pressures outermost. Pressures larger
/// than the network are skipped with a warning.
pub fn run_sweep(g: &SignedDigraph, network: &str, cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let pool = worker_pool(cfg.worker_count)?;
    let mut cells = Vec::new();
    let mut warnings = Vec::new();
    for &p in &cfg.pressures {
        if p > g.node_count() {
            warnings.push(format!(
                "{network}: pressure {p} exceeds {} nodes; cells skipped",
                g.node_count()
            ));
            continue;
        }
        for &t in &cfg.tolerances {
            cells.push(run_cell_in(
                &pool,
                g,
                p,
                t,
                cfg.rounds,
                cfg.master_seed,
                cfg,
            )?);
        }
    }
    Ok(SweepResult {
        meta: SweepMeta {
            network: network.to_string(),
            n: g.node_count(),
            seed: cfg.master_seed,
            solver: cfg.solver.id().to_string(),
            weight_scale: cfg.solver.weight_scale(),
        },
        cells,
        warnings,
    })
}

/// Two runs of the same cell compared by their means.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceProbe {
    pub p: usize,
    pub t: f64,
    pub rounds_a: usize,
    pub seed_a: u64,
    pub rounds_b: usize,
    pub seed_b: u64,
}

impl ConvergenceProbe {
    /// Probe whose two runs use unrelated seed streams.
    pub fn disjoint(p: usize, t: f64, rounds_a: usize, rounds_b: usize, seed: u64) -> Self {
        Self {
            p,
            t,
            rounds_a,
            seed_a: seed,
            rounds_b,
            seed_b: splitmix(seed ^ 0xA5A5_A5A5_A5A5_A5A5),
        }
    }
}

fn relative_difference(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Largest relative difference of mean value and mean weight between the
/// probe's two runs. Solver, averaging and worker count come from `cfg`; its
/// rounds and seed are ignored.
pub fn convergence_check(
    g: &SignedDigraph,
    probe: &ConvergenceProbe,
    cfg: &SweepConfig,
) -> Result<f64> {
    let pool = worker_pool(cfg.worker_count.max(1))?;
    if probe.rounds_a == 0 || probe.rounds_b < probe.rounds_a {
        return Err(Error::InvalidConfig(format!(
            "convergence needs 1 <= rounds_a <= rounds_b, got {} and {}",
            probe.rounds_a, probe.rounds_b
        )));
    }
    let a = run_cell_in(
        &pool,
        g,
        probe.p,
        probe.t,
        probe.rounds_a,
        probe.seed_a,
        cfg,
    )?;
    let b = run_cell_in(
        &pool,
        g,
        probe.p,
        probe.t,
        probe.rounds_b,
        probe.seed_b,
        cfg,
    )?;
    Ok(relative_difference(a.mean_value, b.mean_value)
        .max(relative_difference(a.mean_weight, b.mean_weight)))
}
