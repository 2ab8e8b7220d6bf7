//! 0/1 knapsack: instances, an exact dynamic program, an exhaustive oracle and
//! a greedy baseline.
//!
//! Every exact solver returns the same canonical optimum: highest total value,
//! then lowest total weight, then the lexicographically smallest selection
//! vector (item 0 most significant, unselected before selected).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative slack used when checking that a scaled weight is an integer.
const INTEGRAL_EPS: f64 = 1e-9;

/// Upper bound on `items * (capacity + 1)` decision bits kept by the DP.
const MAX_DP_CELLS: u128 = 1 << 33;

pub const BRUTE_FORCE_LIMIT: usize = 25;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnapsackInstance {
    pub values: Vec<f64>,
    pub weights: Vec<f64>,
    pub capacity: f64,
}

impl KnapsackInstance {
    pub fn new(values: Vec<f64>, weights: Vec<f64>, capacity: f64) -> Result<Self> {
        let inst = Self {
            values,
            weights,
            capacity,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.len() != self.weights.len() {
            return Err(Error::InvalidKnapsack(format!(
                "{} values but {} weights",
                self.values.len(),
                self.weights.len()
            )));
        }
        let bad = |x: f64| !x.is_finite() || x < 0.0;
        if let Some(i) = self.values.iter().position(|&v| bad(v)) {
            return Err(Error::InvalidKnapsack(format!(
                "value {} of item {i} must be finite and non-negative",
                self.values[i]
            )));
        }
        if let Some(i) = self.weights.iter().position(|&w| bad(w)) {
            return Err(Error::InvalidKnapsack(format!(
                "weight {} of item {i} must be finite and non-negative",
                self.weights[i]
            )));
        }
        if bad(self.capacity) {
            return Err(Error::InvalidKnapsack(format!(
                "capacity {} must be finite and non-negative",
                self.capacity
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Rounds every `weight * scale` half-up to an integer and divides the
    /// scale back out, so the result passes the DP's integrality check.
    pub fn quantized(&self, scale: f64) -> Self {
        Self {
            values: self.values.clone(),
            weights: self
                .weights
                .iter()
                .map(|&w| (w * scale + 0.5).floor() / scale)
                .collect(),
            capacity: self.capacity,
        }
    }

    /// Builds the solution record for `selection`, summing in item order.
    pub fn evaluate(&self, selection: Vec<bool>, optimal: bool) -> KnapsackSolution {
        let (mut total_value, mut total_weight) = (0.0, 0.0);
        for (i, _) in selection.iter().enumerate().filter(|(_, &x)| x) {
            total_value += self.values[i];
            total_weight += self.weights[i];
        }
        KnapsackSolution {
            selection,
            total_value,
            total_weight,
            optimal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnapsackSolution {
    pub selection: Vec<bool>,
    pub total_value: f64,
    pub total_weight: f64,
    pub optimal: bool,
}

impl KnapsackSolution {
    pub fn selected(&self) -> impl Iterator<Item = usize> + '_ {
        self.selection
            .iter()
            .enumerate()
            .filter_map(|(i, &x)| x.then_some(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    /// Exact dynamic program over integral weights `round(w * weight_scale)`.
    Dp {
        weight_scale: f64,
    },
    Brute,
    Greedy,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::Dp { weight_scale: 1.0 }
    }
}

impl Solver {
    pub fn solve(&self, inst: &KnapsackInstance) -> Result<KnapsackSolution> {
        match *self {
            Solver::Dp { weight_scale } => solve_dp_scaled(inst, weight_scale),
            Solver::Brute => solve_bruteforce(inst),
            Solver::Greedy => solve_greedy(inst),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            Solver::Dp { .. } => "dp",
            Solver::Brute => "brute",
            Solver::Greedy => "greedy",
        }
    }

    pub fn weight_scale(&self) -> f64 {
        match *self {
            Solver::Dp { weight_scale } => weight_scale,
            _ => 1.0,
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dp" => Ok(Solver::default()),
            "brute" => Ok(Solver::Brute),
            "greedy" => Ok(Solver::Greedy),
            other => Err(Error::Format(format!("unknown solver {other:?}"))),
        }
    }
}

/// `(value, weight)` of `a` beats `b`: more value, or equal value and less weight.
fn beats(a_value: f64, a_weight: u64, b_value: f64, b_weight: u64) -> bool {
    a_value > b_value || (a_value == b_value && a_weight < b_weight)
}

fn scaled_integer(x: f64, scale: f64) -> Option<u64> {
    let scaled = x * scale;
    let rounded = scaled.round();
    ((scaled - rounded).abs() <= INTEGRAL_EPS * rounded.abs().max(1.0)).then_some(rounded as u64)
}

pub fn solve_dp(inst: &KnapsackInstance) -> Result<KnapsackSolution> {
    solve_dp_scaled(inst, 1.0)
}

/// Exact solver: dynamic program over the (scaled, integral) weight axis.
///
/// Items are folded in reverse order into a rolling best-`(value, weight)`
/// row; one decision bit per `(item, capacity)` records whether taking the
/// item strictly improves on skipping it. Walking the bits forward from item 0
/// then yields the canonical optimum, since skipping is preferred on ties.
pub fn solve_dp_scaled(inst: &KnapsackInstance, weight_scale: f64) -> Result<KnapsackSolution> {
    inst.validate()?;
    if !(weight_scale.is_finite() && weight_scale > 0.0) {
        return Err(Error::InvalidKnapsack(format!(
            "weight scale {weight_scale} must be positive"
        )));
    }
    let weights: Vec<u64> = inst
        .weights
        .iter()
        .enumerate()
        .map(|(item, &w)| {
            scaled_integer(w, weight_scale).ok_or(Error::NonIntegralWeight {
                item,
                weight: w,
                scale: weight_scale,
            })
        })
        .collect::<Result<_>>()?;
    // Integral weights fit under C exactly when they fit under floor(C).
    let scaled_cap = (inst.capacity * weight_scale * (1.0 + INTEGRAL_EPS)).floor();
    let r = inst.len();
    if scaled_cap > u32::MAX as f64 || (r as u128) * (scaled_cap as u128 + 1) > MAX_DP_CELLS {
        return Err(Error::CapacityOverflow(inst.capacity));
    }
    let cap = scaled_cap as usize;

    let row = cap + 1;
    let mut take = vec![0u64; (r * row).div_ceil(64)];
    let mut best_value = vec![0.0f64; row];
    let mut best_weight = vec![0u64; row];

    for i in (0..r).rev() {
        let (v, w) = (inst.values[i], weights[i]);
        if w as usize > cap {
            continue;
        }
        let w = w as usize;
        for c in (w..=cap).rev() {
            let cand_value = best_value[c - w] + v;
            let cand_weight = best_weight[c - w] + w as u64;
            if beats(cand_value, cand_weight, best_value[c], best_weight[c]) {
                best_value[c] = cand_value;
                best_weight[c] = cand_weight;
                let bit = i * row + c;
                take[bit / 64] |= 1 << (bit % 64);
            }
        }
    }

    let mut selection = vec![false; r];
    let mut c = cap;
    for (i, slot) in selection.iter_mut().enumerate() {
        let bit = i * row + c;
        if take[bit / 64] >> (bit % 64) & 1 == 1 {
            *slot = true;
            c -= weights[i] as usize;
        }
    }
    Ok(inst.evaluate(selection, true))
}

/// Exhaustive search over all `2^r` selections, used as a test oracle.
///
/// Subset sums come from two half tables (meet in the middle), so each
/// candidate costs two lookups.
pub fn solve_bruteforce(inst: &KnapsackInstance) -> Result<KnapsackSolution> {
    inst.validate()?;
    let r = inst.len();
    if r > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyItems {
            items: r,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    // Item i maps to bit (r - 1 - i): numeric order of masks is then the
    // lexicographic order of selection vectors.
    let bit_of = |i: usize| 1u64 << (r - 1 - i);
    let low_items = r / 2;
    let high_items = r - low_items;
    // low half holds the items with the least significant bits: the last ones
    let half_sums = |items: std::ops::Range<usize>, shift: usize| {
        let size = 1usize << items.len();
        let mut sums = vec![(0.0f64, 0.0f64); size];
        for (m, slot) in sums.iter_mut().enumerate() {
            let mask = (m as u64) << shift;
            for i in items.clone() {
                if mask & bit_of(i) != 0 {
                    slot.0 += inst.values[i];
                    slot.1 += inst.weights[i];
                }
            }
        }
        sums
    };
    let low = half_sums(high_items..r, 0);
    let high = half_sums(0..high_items, low_items);

    let limit = inst.capacity + INTEGRAL_EPS * inst.capacity.max(1.0);
    let mut best: (f64, f64, u64) = (0.0, 0.0, 0);
    for (h, &(hv, hw)) in high.iter().enumerate() {
        if hw > limit {
            continue;
        }
        for (l, &(lv, lw)) in low.iter().enumerate() {
            let (value, weight) = (hv + lv, hw + lw);
            if weight > limit {
                continue;
            }
            let mask = ((h as u64) << low_items) | l as u64;
            let better = value > best.0
                || (value == best.0 && (weight < best.1 || (weight == best.1 && mask < best.2)));
            if better {
                best = (value, weight, mask);
            }
        }
    }
    let selection = (0..r).map(|i| best.2 & bit_of(i) != 0).collect();
    Ok(inst.evaluate(selection, true))
}

/// Ratio-ordered greedy fill. Zero-weight items with positive value go first;
/// items with no value are never taken.
pub fn solve_greedy(inst: &KnapsackInstance) -> Result<KnapsackSolution> {
    inst.validate()?;
    let ratio = |i: usize| {
        if inst.weights[i] == 0.0 {
            f64::INFINITY
        } else {
            inst.values[i] / inst.weights[i]
        }
    };
    let mut order: Vec<usize> = (0..inst.len()).filter(|&i| inst.values[i] > 0.0).collect();
    order.sort_by(|&a, &b| ratio(b).total_cmp(&ratio(a)));

    let mut selection = vec![false; inst.len()];
    let mut load = 0.0;
    for i in order {
        if load + inst.weights[i] <= inst.capacity {
            load += inst.weights[i];
            selection[i] = true;
        }
    }
    Ok(inst.evaluate(selection, false))
}
