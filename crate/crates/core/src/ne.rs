//! The network evolution (NE) problem.
//!
//! An oracle states, per gene, whether it should be promoted (+1), repressed
//! (-1) or left alone (0). Gene `j` earns benefit `|I_jk|` for every outgoing
//! interaction whose sign agrees with the advice on its target `k`, and damage
//! `|I_jk|` for every one that disagrees. Choosing which genes to force is a
//! 0/1 knapsack over those benefits (values) and damages (weights) with the
//! tolerance as capacity.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, NodeId, SignedDigraph};
use crate::knapsack::{KnapsackInstance, Solver};

/// Ternary advice string over the genes of a network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct OracleAdvice(Vec<i8>);

impl OracleAdvice {
    pub fn new(advice: Vec<i8>) -> Result<Self> {
        if let Some(index) = advice.iter().position(|a| !(-1..=1).contains(a)) {
            return Err(Error::AdviceValue {
                index,
                value: advice[index] as i64,
            });
        }
        Ok(Self(advice))
    }

    pub fn indifferent(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn uniform(n: usize, sign: i8) -> Self {
        Self(vec![sign.signum(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    /// Number of genes the oracle is not indifferent to.
    pub fn pressure(&self) -> usize {
        self.0.iter().filter(|&&a| a != 0).count()
    }

    pub fn advised(&self) -> impl Iterator<Item = (NodeId, i8)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(k, &a)| (a != 0).then_some((k, a)))
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }
}

impl TryFrom<Vec<i64>> for OracleAdvice {
    type Error = Error;

    fn try_from(raw: Vec<i64>) -> Result<Self> {
        if let Some(index) = raw.iter().position(|a| !(-1..=1).contains(a)) {
            return Err(Error::AdviceValue {
                index,
                value: raw[index],
            });
        }
        Ok(Self(raw.into_iter().map(|a| a as i8).collect()))
    }
}

impl From<OracleAdvice> for Vec<i64> {
    fn from(a: OracleAdvice) -> Self {
        a.0.into_iter().map(i64::from).collect()
    }
}

#[derive(Debug, Clone)]
pub struct NeInstance {
    pub graph: Arc<SignedDigraph>,
    pub advice: OracleAdvice,
    pub tolerance: f64,
}

impl NeInstance {
    pub fn new(graph: Arc<SignedDigraph>, advice: OracleAdvice, tolerance: f64) -> Result<Self> {
        if advice.len() != graph.node_count() {
            return Err(Error::AdviceLength {
                advice: advice.len(),
                nodes: graph.node_count(),
            });
        }
        if tolerance.is_nan() || tolerance < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tolerance {tolerance} must be non-negative"
            )));
        }
        Ok(Self {
            graph,
            advice,
            tolerance,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenefitDamage {
    pub benefits: Vec<f64>,
    pub damages: Vec<f64>,
}

/// Benefit and damage per gene.
///
/// Only the incoming edges of advised genes are visited, so the cost is the
/// summed in-degree of the advised set (plus the output allocation).
pub fn compute_benefit_damage(g: &SignedDigraph, advice: &OracleAdvice) -> Result<BenefitDamage> {
    if advice.len() != g.node_count() {
        return Err(Error::AdviceLength {
            advice: advice.len(),
            nodes: g.node_count(),
        });
    }
    let n = g.node_count();
    let mut benefits = vec![0.0; n];
    let mut damages = vec![0.0; n];
    for (k, a) in advice.advised() {
        for e in g.in_edges(k) {
            if e.weight * f64::from(a) > 0.0 {
                benefits[e.source] += e.weight.abs();
            } else {
                damages[e.source] += e.weight.abs();
            }
        }
    }
    Ok(BenefitDamage { benefits, damages })
}

/// How the knapsack-to-NE construction divides negative matrix entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionMode {
    /// Both halves divided by `floor(r/2)`. Damages come out inflated by
    /// `ceil(r/2) / floor(r/2)` when `r` is odd.
    PaperFaithful,
    /// Negative half divided by its own width `r - floor(r/2)`; exact for all `r`.
    #[default]
    Corrected,
}

/// Builds an NE instance whose optimal gene selection is the optimal item
/// selection of `kp`: `r` genes all advised +1, a dense interaction matrix whose
/// first `floor(r/2)` columns carry `v_j` and the rest carry `-w_j`, and
/// tolerance `C`.
pub fn kp_to_ne(kp: &KnapsackInstance, mode: ReductionMode) -> Result<NeInstance> {
    kp.validate()?;
    let r = kp.len();
    if r < 2 {
        return Err(Error::TooFewItems(r));
    }
    let positive_int = |x: f64| x > 0.0 && x.fract() == 0.0;
    if let Some(i) = (0..r).find(|&i| !positive_int(kp.values[i]) || !positive_int(kp.weights[i])) {
        return Err(Error::InvalidKnapsack(format!(
            "item {i}: reduction needs positive integer value and weight, got ({}, {})",
            kp.values[i], kp.weights[i]
        )));
    }
    let half = r / 2;
    let negative_divisor = match mode {
        ReductionMode::PaperFaithful => half,
        ReductionMode::Corrected => r - half,
    } as f64;
    let mut edges = Vec::with_capacity(r * r);
    for j in 0..r {
        for k in 0..r {
            let weight = if k < half {
                kp.values[j] / half as f64
            } else {
                -kp.weights[j] / negative_divisor
            };
            edges.push(Edge::new(j, k, weight));
        }
    }
    NeInstance::new(
        Arc::new(SignedDigraph::from_edges(r, edges)?),
        OracleAdvice::uniform(r, 1),
        kp.capacity,
    )
}

/// A knapsack produced from an NE instance, with the gene behind each item.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedKnapsack {
    pub knapsack: KnapsackInstance,
    pub item_nodes: Vec<NodeId>,
}

/// Reverse reduction: items are genes, values are benefits, weights are
/// damages, capacity is the tolerance. One item per gene.
pub fn ne_to_kp(ne: &NeInstance) -> Result<ReducedKnapsack> {
    let bd = compute_benefit_damage(&ne.graph, &ne.advice)?;
    let item_nodes = (0..ne.graph.node_count()).collect();
    Ok(ReducedKnapsack {
        knapsack: KnapsackInstance::new(bd.benefits, bd.damages, ne.tolerance)?,
        item_nodes,
    })
}

/// Like [`ne_to_kp`] but keeps only genes with positive benefit. A gene without
/// benefit is never part of the canonical optimum, so solving the compact
/// instance gives the same selection.
pub fn ne_to_kp_compact(ne: &NeInstance) -> Result<ReducedKnapsack> {
    let bd = compute_benefit_damage(&ne.graph, &ne.advice)?;
    Ok(compact_from(&bd, ne.tolerance))
}

pub(crate) fn compact_from(bd: &BenefitDamage, tolerance: f64) -> ReducedKnapsack {
    let item_nodes: Vec<NodeId> = (0..bd.benefits.len())
        .filter(|&j| bd.benefits[j] > 0.0)
        .collect();
    ReducedKnapsack {
        knapsack: KnapsackInstance {
            values: item_nodes.iter().map(|&j| bd.benefits[j]).collect(),
            weights: item_nodes.iter().map(|&j| bd.damages[j]).collect(),
            capacity: tolerance,
        },
        item_nodes,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeSolution {
    /// `selection[j]` is `f(g_j)`: whether gene `j` is forced.
    pub selection: Vec<bool>,
    pub total_benefit: f64,
    pub total_damage: f64,
}

/// Solves an NE instance through its knapsack image.
///
/// With [`Solver::Dp`], damages are first rounded half-up on the solver's
/// weight scale, which is a no-op for integral damages.
pub fn solve_ne(ne: &NeInstance, solver: &Solver) -> Result<NeSolution> {
    let bd = compute_benefit_damage(&ne.graph, &ne.advice)?;
    solve_benefit_damage(&bd, ne.tolerance, solver)
}

pub(crate) fn solve_benefit_damage(
    bd: &BenefitDamage,
    tolerance: f64,
    solver: &Solver,
) -> Result<NeSolution> {
    let reduced = compact_from(bd, tolerance);
    let knapsack = match solver {
        Solver::Dp { weight_scale } => reduced.knapsack.quantized(*weight_scale),
        _ => reduced.knapsack,
    };
    let solution = solver.solve(&knapsack)?;
    let mut selection = vec![false; bd.benefits.len()];
    let (mut total_benefit, mut total_damage) = (0.0, 0.0);
    for item in solution.selected() {
        let j = reduced.item_nodes[item];
        selection[j] = true;
        total_benefit += bd.benefits[j];
        total_damage += bd.damages[j];
    }
    Ok(NeSolution {
        selection,
        total_benefit,
        total_damage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hand_graph() -> Arc<SignedDigraph> {
        Arc::new(SignedDigraph::build(3, [(0, 1, 2.0), (0, 2, -1.0), (1, 2, 3.0)]).unwrap())
    }

    fn advice(a: &[i8]) -> OracleAdvice {
        OracleAdvice::new(a.to_vec()).unwrap()
    }

    #[test]
    fn pressure_counts_nonzero() {
        assert_eq!(advice(&[0, 1, -1, 0, -1]).pressure(), 3);
        assert_eq!(OracleAdvice::indifferent(4).pressure(), 0);
        assert!(OracleAdvice::new(vec![2]).is_err());
    }

    #[test]
    fn indifferent_advice_zeroes_everything() {
        let bd = compute_benefit_damage(&hand_graph(), &OracleAdvice::indifferent(3)).unwrap();
        assert_eq!(bd.benefits, vec![0.0; 3]);
        assert_eq!(bd.damages, vec![0.0; 3]);
    }

    #[test]
    fn hand_graph_benefit_damage() {
        let bd = compute_benefit_damage(&hand_graph(), &advice(&[0, 1, -1])).unwrap();
        assert_eq!(bd.benefits, vec![3.0, 0.0, 0.0]);
        assert_eq!(bd.damages, vec![0.0, 3.0, 0.0]);
        let swapped = compute_benefit_damage(&hand_graph(), &advice(&[0, -1, 1])).unwrap();
        assert_eq!(swapped.benefits, vec![0.0, 3.0, 0.0]);
        assert_eq!(swapped.damages, vec![3.0, 0.0, 0.0]);
    }

    #[test]
    fn advice_length_mismatch() {
        assert!(matches!(
            compute_benefit_damage(&hand_graph(), &advice(&[1, 1])),
            Err(Error::AdviceLength {
                advice: 2,
                nodes: 3
            })
        ));
        assert!(NeInstance::new(hand_graph(), advice(&[1]), 1.0).is_err());
    }

    #[test]
    fn kp_to_ne_even_r() {
        let kp = KnapsackInstance::new(vec![3.0, 4.0], vec![1.0, 2.0], 2.0).unwrap();
        for mode in [ReductionMode::PaperFaithful, ReductionMode::Corrected] {
            let ne = kp_to_ne(&kp, mode).unwrap();
            let m: Vec<(usize, usize, f64)> = ne
                .graph
                .edges()
                .iter()
                .map(|e| (e.source, e.target, e.weight))
                .collect();
            assert_eq!(
                m,
                vec![(0, 0, 3.0), (0, 1, -1.0), (1, 0, 4.0), (1, 1, -2.0)]
            );
            assert_eq!(ne.advice, advice(&[1, 1]));
            assert_eq!(ne.tolerance, 2.0);
            let bd = compute_benefit_damage(&ne.graph, &ne.advice).unwrap();
            assert_eq!(bd.benefits, vec![3.0, 4.0]);
            assert_eq!(bd.damages, vec![1.0, 2.0]);
            let back = ne_to_kp(&ne).unwrap();
            assert_eq!(back.knapsack, kp);
        }
    }

    #[test]
    fn kp_to_ne_odd_r_divisor() {
        let kp = KnapsackInstance::new(vec![2.0; 3], vec![2.0; 3], 1.0).unwrap();
        let faithful = kp_to_ne(&kp, ReductionMode::PaperFaithful).unwrap();
        let bd = compute_benefit_damage(&faithful.graph, &faithful.advice).unwrap();
        assert_eq!(bd.damages, vec![4.0; 3]);
        assert_eq!(bd.benefits, vec![2.0; 3]);
        let corrected = kp_to_ne(&kp, ReductionMode::Corrected).unwrap();
        let bd = compute_benefit_damage(&corrected.graph, &corrected.advice).unwrap();
        assert_eq!(bd.damages, vec![2.0; 3]);
    }

    #[test]
    fn kp_to_ne_rejects_bad_input() {
        let one = KnapsackInstance::new(vec![1.0], vec![1.0], 1.0).unwrap();
        assert!(matches!(
            kp_to_ne(&one, ReductionMode::Corrected),
            Err(Error::TooFewItems(1))
        ));
        let frac = KnapsackInstance::new(vec![1.5, 1.0], vec![1.0, 1.0], 1.0).unwrap();
        assert!(kp_to_ne(&frac, ReductionMode::Corrected).is_err());
        let zero = KnapsackInstance::new(vec![1.0, 1.0], vec![0.0, 1.0], 1.0).unwrap();
        assert!(kp_to_ne(&zero, ReductionMode::Corrected).is_err());
    }

    #[test]
    fn zero_capacity_reduction_selects_nothing() {
        let kp = KnapsackInstance::new(vec![1.0, 1.0], vec![1.0, 1.0], 0.0).unwrap();
        let ne = kp_to_ne(&kp, ReductionMode::Corrected).unwrap();
        let sol = solve_ne(&ne, &Solver::default()).unwrap();
        assert_eq!(sol.selection, vec![false, false]);
        assert_eq!(sol.total_benefit, 0.0);
    }

    #[test]
    fn ne_to_kp_examples() {
        let ne = NeInstance::new(hand_graph(), advice(&[0, 1, -1]), 5.0).unwrap();
        let kp = ne_to_kp(&ne).unwrap();
        assert_eq!(kp.knapsack.values, vec![3.0, 0.0, 0.0]);
        assert_eq!(kp.knapsack.weights, vec![0.0, 3.0, 0.0]);
        assert_eq!(kp.knapsack.capacity, 5.0);
        assert_eq!(kp.item_nodes, vec![0, 1, 2]);

        let compact = ne_to_kp_compact(&ne).unwrap();
        assert_eq!(compact.item_nodes, vec![0]);

        let quiet = NeInstance::new(hand_graph(), OracleAdvice::indifferent(3), 1.0).unwrap();
        let kp = ne_to_kp(&quiet).unwrap();
        assert!(kp
            .knapsack
            .values
            .iter()
            .chain(&kp.knapsack.weights)
            .all(|&x| x == 0.0));
    }

    #[test]
    fn solve_hand_graph() {
        for t in [0.0, 3.0] {
            let ne = NeInstance::new(hand_graph(), advice(&[0, 1, -1]), t).unwrap();
            let sol = solve_ne(&ne, &Solver::default()).unwrap();
            assert_eq!(sol.selection, vec![true, false, false]);
            assert_eq!(sol.total_benefit, 3.0);
            assert_eq!(sol.total_damage, 0.0);
        }
        let quiet = NeInstance::new(hand_graph(), OracleAdvice::indifferent(3), 9.0).unwrap();
        let sol = solve_ne(&quiet, &Solver::default()).unwrap();
        assert_eq!(sol.selection, vec![false; 3]);
    }

    #[test]
    fn advice_json() {
        let a: OracleAdvice = serde_json::from_str("[0,1,-1]").unwrap();
        assert_eq!(a, advice(&[0, 1, -1]));
        assert_eq!(serde_json::to_string(&a).unwrap(), "[0,1,-1]");
        assert!(serde_json::from_str::<OracleAdvice>("[3]").is_err());
    }
}
