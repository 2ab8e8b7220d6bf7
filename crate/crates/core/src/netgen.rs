//! Synthetic networks.
//!
//! Every generator first builds a simple undirected skeleton (no loops, no
//! repeated pairs), then orients each edge and picks its sign with two
//! independent fair coins. All magnitudes are 1.0.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, NodeId, SignedDigraph};

/// Attachment fraction for [`Model::ScaleFree`] that yields about 3.2 distinct
/// neighbours per node at `n = 2000`.
pub const SCALE_FREE_DEFAULT_BETA: f64 = 0.46;

/// Default BA attachments per new node (about 6 neighbours per node).
pub const BA_DEFAULT_M: f64 = 3.0;

/// Default ER edge probability (about 399 neighbours per node at `n = 2000`).
pub const ER_DEFAULT_P: f64 = 0.2;

// Split of the non-attachment steps between "new node with out-edge" and
// "new node with in-edge", and the in-degree smoothing constant.
const SCALE_FREE_NEW_SOURCE_SHARE: f64 = 0.41 / 0.46;
const SCALE_FREE_DELTA_IN: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    BarabasiAlbert,
    ErdosRenyi,
    ScaleFree,
    Complete,
}

impl Model {
    pub fn default_param(self) -> f64 {
        match self {
            Model::BarabasiAlbert => BA_DEFAULT_M,
            Model::ErdosRenyi => ER_DEFAULT_P,
            Model::ScaleFree => SCALE_FREE_DEFAULT_BETA,
            Model::Complete => 0.0,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Model::BarabasiAlbert => "ba",
            Model::ErdosRenyi => "er",
            Model::ScaleFree => "scalefree",
            Model::Complete => "complete",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ba" | "barabasi_albert" => Ok(Model::BarabasiAlbert),
            "er" | "erdos_renyi" => Ok(Model::ErdosRenyi),
            "scalefree" | "scale_free" => Ok(Model::ScaleFree),
            "complete" => Ok(Model::Complete),
            other => Err(Error::InvalidGenerator(format!("unknown model {other:?}"))),
        }
    }
}

/// Generator input.
///
/// `model_param` means: BA, attachments per new node `m`; ER, edge probability;
/// scale-free, probability that a step links two existing nodes instead of
/// adding one; complete, unused.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub model: Model,
    pub n: usize,
    pub model_param: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(model: Model, n: usize, seed: u64) -> Self {
        Self {
            model,
            n,
            model_param: model.default_param(),
            seed,
        }
    }

    pub fn with_param(mut self, model_param: f64) -> Self {
        self.model_param = model_param;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidGenerator(msg));
        if self.n < 2 {
            return fail(format!("need at least 2 nodes, got {}", self.n));
        }
        let x = self.model_param;
        match self.model {
            Model::BarabasiAlbert => {
                if !(x >= 1.0 && x.fract() == 0.0 && x < self.n as f64) {
                    return fail(format!("BA needs integer 1 <= m < n, got m = {x}"));
                }
            }
            Model::ErdosRenyi => {
                if !(0.0..=1.0).contains(&x) {
                    return fail(format!("ER needs 0 <= p <= 1, got p = {x}"));
                }
            }
            Model::ScaleFree => {
                if !(0.0..1.0).contains(&x) {
                    return fail(format!("scale-free needs 0 <= beta < 1, got {x}"));
                }
                if self.n < 3 {
                    return fail("scale-free needs at least 3 nodes".into());
                }
            }
            Model::Complete => {}
        }
        Ok(())
    }
}

pub fn generate(spec: &GenSpec) -> Result<SignedDigraph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let skeleton = match spec.model {
        Model::BarabasiAlbert => barabasi_albert(spec.n, spec.model_param as usize, &mut rng),
        Model::ErdosRenyi => erdos_renyi(spec.n, spec.model_param, &mut rng),
        Model::ScaleFree => scale_free(spec.n, spec.model_param, &mut rng),
        Model::Complete => complete(spec.n),
    };
    let edges = skeleton
        .into_iter()
        .map(|(u, v)| orient(u, v, 1.0, &mut rng))
        .collect();
    Ok(SignedDigraph::from_valid_edges(spec.n, edges))
}

fn orient<R: Rng>(u: NodeId, v: NodeId, magnitude: f64, rng: &mut R) -> Edge {
    let (source, target) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    Edge::new(source, target, sign * magnitude)
}

/// Redraws the direction and sign of every edge; magnitudes and the
/// undirected skeleton are preserved.
pub fn randomize_signs_directions(g: &SignedDigraph, seed: u64) -> SignedDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = g
        .edges()
        .iter()
        .map(|e| orient(e.source, e.target, e.weight.abs(), &mut rng))
        .collect();
    SignedDigraph::from_valid_edges(g.node_count(), edges)
}

/// Preferential attachment from a star on `m + 1` nodes; each new node links
/// to `m` distinct existing nodes chosen proportionally to degree.
fn barabasi_albert<R: Rng>(n: usize, m: usize, rng: &mut R) -> Vec<(NodeId, NodeId)> {
    let mut edges: Vec<(NodeId, NodeId)> = (1..=m).map(|leaf| (0, leaf)).collect();
    // one entry per edge endpoint, so uniform picks are degree-proportional
    let mut endpoints: Vec<NodeId> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut targets: Vec<NodeId> = Vec::with_capacity(m);
    for source in (m + 1)..n {
        targets.clear();
        while targets.len() < m {
            let t = *endpoints.choose(rng).expect("seed star has edges");
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, source));
            endpoints.push(t);
            endpoints.push(source);
        }
    }
    edges
}

fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Vec<(NodeId, NodeId)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Directed scale-free growth (Bollobás, Borgs, Chayes and Riordan), collapsed
/// to its simple undirected skeleton.
///
/// Starting from a 3-cycle, each step either adds a new node pointing at an
/// existing one, links two existing nodes (probability `beta`), or adds a new
/// node pointed at by an existing one. Heads are drawn proportionally to
/// `in_degree + 0.2`, tails proportionally to out-degree.
fn scale_free<R: Rng>(n: usize, beta: f64, rng: &mut R) -> Vec<(NodeId, NodeId)> {
    let alpha = (1.0 - beta) * SCALE_FREE_NEW_SOURCE_SHARE;
    let mut heads: Vec<NodeId> = vec![1, 2, 0];
    let mut tails: Vec<NodeId> = vec![0, 1, 2];
    let mut raw: Vec<(NodeId, NodeId)> = vec![(0, 1), (1, 2), (2, 0)];
    let mut nodes = 3;

    let pick_head = |heads: &[NodeId], nodes: usize, rng: &mut R| {
        let bias = nodes as f64 * SCALE_FREE_DELTA_IN;
        if rng.gen::<f64>() < bias / (bias + heads.len() as f64) {
            rng.gen_range(0..nodes)
        } else {
            *heads.choose(rng).expect("non-empty")
        }
    };

    while nodes < n {
        let r: f64 = rng.gen();
        let (tail, head) = if r < alpha {
            let head = pick_head(&heads, nodes, rng);
            nodes += 1;
            (nodes - 1, head)
        } else if r < alpha + beta {
            let tail = *tails.choose(rng).expect("non-empty");
            (tail, pick_head(&heads, nodes, rng))
        } else {
            let tail = *tails.choose(rng).expect("non-empty");
            nodes += 1;
            (tail, nodes - 1)
        };
        tails.push(tail);
        heads.push(head);
        raw.push((tail, head));
    }

    let mut seen = HashSet::with_capacity(raw.len());
    raw.into_iter()
        .filter(|&(a, b)| a != b && seen.insert((a.min(b), a.max(b))))
        .collect()
}

fn complete(n: usize) -> Vec<(NodeId, NodeId)> {
    (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{degree_stats, weak_components};

    fn skeleton(g: &SignedDigraph) -> HashSet<(NodeId, NodeId)> {
        g.edges()
            .iter()
            .map(|e| (e.source.min(e.target), e.source.max(e.target)))
            .collect()
    }

    #[test]
    fn complete_four() {
        let g = generate(&GenSpec::new(Model::Complete, 4, 1)).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!((0..4).all(|v| g.neighbors(v).len() == 3));
    }

    #[test]
    fn same_seed_same_graph() {
        for model in [
            Model::BarabasiAlbert,
            Model::ErdosRenyi,
            Model::ScaleFree,
            Model::Complete,
        ] {
            let spec = GenSpec::new(model, 200, 42);
            assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
            if model != Model::Complete {
                let other = GenSpec { seed: 43, ..spec };
                assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
            }
        }
    }

    #[test]
    fn generated_graphs_are_simple_with_unit_weights() {
        for model in [Model::BarabasiAlbert, Model::ScaleFree, Model::ErdosRenyi] {
            let g = generate(&GenSpec::new(model, 300, 7)).unwrap();
            assert!(!g.has_self_loops());
            assert_eq!(skeleton(&g).len(), g.edge_count(), "{model}");
            assert!(g.edges().iter().all(|e| e.weight.abs() == 1.0));
        }
    }

    #[test]
    fn ba_and_scale_free_are_connected() {
        for model in [Model::BarabasiAlbert, Model::ScaleFree] {
            let g = generate(&GenSpec::new(model, 500, 3)).unwrap();
            assert_eq!(weak_components(&g).len(), 1, "{model}");
        }
    }

    #[test]
    fn ba_edge_count() {
        // star of m edges, then m per remaining node
        let g = generate(&GenSpec::new(Model::BarabasiAlbert, 100, 5)).unwrap();
        assert_eq!(g.edge_count(), 3 + 3 * 96);
    }

    #[test]
    fn invalid_specs() {
        let bad = [
            GenSpec::new(Model::Complete, 1, 0),
            GenSpec::new(Model::BarabasiAlbert, 10, 0).with_param(0.0),
            GenSpec::new(Model::BarabasiAlbert, 10, 0).with_param(10.0),
            GenSpec::new(Model::BarabasiAlbert, 10, 0).with_param(2.5),
            GenSpec::new(Model::ErdosRenyi, 10, 0).with_param(1.5),
            GenSpec::new(Model::ScaleFree, 10, 0).with_param(1.0),
        ];
        for spec in bad {
            assert!(
                matches!(generate(&spec), Err(Error::InvalidGenerator(_))),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn single_edge_orientations() {
        let g = SignedDigraph::build(2, [(0, 1, 1.0)]).unwrap();
        let mut outcomes = HashSet::new();
        for seed in 0..200 {
            let e = randomize_signs_directions(&g, seed).edges()[0];
            outcomes.insert((e.source, e.target, e.weight as i8));
        }
        let expected: HashSet<_> = [(0, 1, 1), (0, 1, -1), (1, 0, 1), (1, 0, -1)].into();
        assert_eq!(outcomes, expected);
    }

    #[test]
    fn randomize_keeps_skeleton_and_magnitudes() {
        let g = SignedDigraph::build(4, [(0, 1, 2.5), (2, 1, -0.5), (3, 0, 1.0)]).unwrap();
        let r = randomize_signs_directions(&g, 11);
        assert_eq!(skeleton(&r), skeleton(&g));
        let mags: Vec<f64> = r.edges().iter().map(|e| e.weight.abs()).collect();
        assert_eq!(mags, vec![2.5, 0.5, 1.0]);
        assert_eq!(r, randomize_signs_directions(&g, 11));
    }

    #[test]
    fn er_sign_balance() {
        let g = generate(&GenSpec::new(Model::ErdosRenyi, 800, 9).with_param(0.32)).unwrap();
        assert!(g.edge_count() > 100_000);
        let r = randomize_signs_directions(&g, 99);
        let positive = r.edges().iter().filter(|e| e.weight > 0.0).count();
        let frac = positive as f64 / r.edge_count() as f64;
        assert!((0.48..=0.52).contains(&frac), "{frac}");
    }

    #[test]
    fn preferential_attachment_has_heavier_tail_than_er() {
        for seed in 0..5 {
            let ba = generate(&GenSpec::new(Model::BarabasiAlbert, 2000, seed)).unwrap();
            let ba_stats = degree_stats(&ba);
            let p = ba_stats.avg_neighbors / 1999.0;
            let er = generate(&GenSpec::new(Model::ErdosRenyi, 2000, seed).with_param(p)).unwrap();
            let er_stats = degree_stats(&er);
            assert!(ba_stats.max_degree > er_stats.max_degree, "seed {seed}");

            let sf = generate(&GenSpec::new(Model::ScaleFree, 2000, seed)).unwrap();
            let sf_stats = degree_stats(&sf);
            let p = sf_stats.avg_neighbors / 1999.0;
            let er = generate(&GenSpec::new(Model::ErdosRenyi, 2000, seed).with_param(p)).unwrap();
            assert!(
                sf_stats.max_degree > degree_stats(&er).max_degree,
                "seed {seed}"
            );
        }
    }

    #[test]
    fn scale_free_calibration() {
        let mean: f64 = (0..5)
            .map(|seed| {
                let g = generate(&GenSpec::new(Model::ScaleFree, 2000, seed)).unwrap();
                degree_stats(&g).avg_neighbors
            })
            .sum::<f64>()
            / 5.0;
        assert!((mean - 3.2).abs() <= 0.32, "avg neighbours {mean}");
    }
}
