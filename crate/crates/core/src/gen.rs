//! Random instance generation.
//!
//! States are split into `m` sink blocks and some child blocks. Every block is
//! closed by a cycle through its states (a self-loop for singletons), which
//! makes each block strongly connected and gives a cycle family covering all
//! states, so the system is structurally full rank. Cross-block edges only
//! run from a child block to a later block, so exactly the `m` sink blocks
//! are parent SCCs.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{ProblemInstance, StructuredMatrix, WeightedDigraph};
use crate::seed::stream_rng;

#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    pub n: usize,
    pub m: usize,
    /// Probability of each optional extra edge, in `[0, 1]`.
    pub density: f64,
    pub seed: u64,
    pub undirected: bool,
}

pub const MAX_SENSING_COST: u32 = 20;
pub const MAX_LINK_COST: u32 = 10;

pub fn generate(config: GenConfig) -> Result<ProblemInstance> {
    let GenConfig {
        n,
        m,
        density,
        seed,
        undirected,
    } = config;
    if n == 0 || m == 0 {
        return Err(Error::invalid("n/m", "state and sensor counts must be at least 1"));
    }
    if m > n {
        return Err(Error::invalid(
            "m",
            format!("{m} parent SCCs cannot be formed from {n} states"),
        ));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::invalid("density", format!("{density} is outside [0, 1]")));
    }

    let system = system_pattern(n, m, density, seed)?;

    let mut rng = stream_rng(seed, "sensing", 0);
    let mut sensing = BTreeMap::new();
    for sensor in 0..m {
        for state in 0..n {
            sensing.insert((sensor, state), rng.random_range(1..=MAX_SENSING_COST) as f64);
        }
    }

    let network = if undirected {
        undirected_network(m, density, seed)?
    } else {
        directed_network(m, density, seed)?
    };
    ProblemInstance::new(system, m, sensing, network, undirected)
}

fn system_pattern(n: usize, m: usize, density: f64, seed: u64) -> Result<StructuredMatrix> {
    let mut rng = stream_rng(seed, "system", 0);
    let children = rng.random_range(0..=n - m);
    let blocks = children + m;

    let mut states: Vec<usize> = (0..n).collect();
    states.shuffle(&mut rng);
    let mut members: Vec<Vec<usize>> = states[..blocks].iter().map(|&s| vec![s]).collect();
    for &s in &states[blocks..] {
        members[rng.random_range(0..blocks)].push(s);
    }
    let mut block_of = vec![0usize; n];
    for (b, nodes) in members.iter().enumerate() {
        for &v in nodes {
            block_of[v] = b;
        }
    }

    // edges u -> v, stored as pattern entries (v, u)
    let mut edges = std::collections::BTreeSet::new();
    for nodes in &members {
        let s = nodes.len();
        for t in 0..s {
            edges.insert((nodes[t], nodes[(t + 1) % s]));
        }
        for &u in nodes {
            for &v in nodes {
                if rng.random_bool(density) {
                    edges.insert((u, v));
                }
            }
        }
    }
    for b in 0..children {
        let u = members[b][rng.random_range(0..members[b].len())];
        let target = rng.random_range(b + 1..blocks);
        let v = members[target][rng.random_range(0..members[target].len())];
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in 0..n {
            if block_of[u] < children && block_of[u] < block_of[v] && rng.random_bool(density / 2.0) {
                edges.insert((u, v));
            }
        }
    }
    StructuredMatrix::new(n, n, edges.into_iter().map(|(u, v)| (v, u)))
}

fn directed_network(m: usize, density: f64, seed: u64) -> Result<WeightedDigraph> {
    let mut rng = stream_rng(seed, "network", 0);
    let mut arcs = BTreeMap::new();
    if m > 1 {
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(&mut rng);
        for t in 0..m {
            arcs.insert((order[t], order[(t + 1) % m]), ());
        }
        for u in 0..m {
            for v in 0..m {
                if u != v && rng.random_bool(density) {
                    arcs.insert((u, v), ());
                }
            }
        }
    }
    let mut cost_rng = stream_rng(seed, "network-cost", 0);
    let weighted: Vec<_> = arcs
        .into_keys()
        .map(|(u, v)| (u, v, cost_rng.random_range(1..=MAX_LINK_COST) as f64))
        .collect();
    WeightedDigraph::new(m, weighted)
}

fn undirected_network(m: usize, density: f64, seed: u64) -> Result<WeightedDigraph> {
    let mut rng = stream_rng(seed, "network", 0);
    let mut edges = std::collections::BTreeSet::new();
    if m > 1 {
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(&mut rng);
        for t in 1..m {
            let other = order[rng.random_range(0..t)];
            let (u, v) = (order[t].min(other), order[t].max(other));
            edges.insert((u, v));
        }
        for u in 0..m {
            for v in u + 1..m {
                if rng.random_bool(density) {
                    edges.insert((u, v));
                }
            }
        }
    }
    let mut cost_rng = stream_rng(seed, "network-cost", 0);
    let mut arcs = Vec::new();
    for (u, v) in edges {
        let c = cost_rng.random_range(1..=MAX_LINK_COST) as f64;
        arcs.push((u, v, c));
        arcs.push((v, u, c));
    }
    WeightedDigraph::new(m, arcs)
}
