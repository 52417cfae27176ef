//! Networking-cost optimisation: cheapest strongly connected spanning
//! subgraph of the candidate sensor network.
//!
//! Undirected networks are solved exactly by a minimum spanning tree. For
//! directed networks the problem is NP-hard; the union of a minimum
//! out-branching and a minimum in-branching at a common root is strongly
//! connected and costs at most twice the optimum, since each branching alone
//! is no more expensive than the optimum.

mod branching;
mod brute;
mod mst;

use std::collections::BTreeSet;

pub use branching::{min_branching, Branching};
pub use brute::{brute_force_msss, brute_force_symmetric, BRUTE_FORCE_MAX_ARCS};
pub use mst::mst_solve;

use crate::error::{Direction, Error, Result};
use crate::graph::{StructuredMatrix, WeightedDigraph};
use crate::structural::is_strongly_connected;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Mst,
    BranchingUnion,
    BruteForce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Mst => "mst",
            Method::BranchingUnion => "branching_union",
            Method::BruteForce => "brute_force",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkDesign {
    pub selected_arcs: BTreeSet<(usize, usize)>,
    /// Sum of arc costs, each directed arc counted once.
    pub total_cost: f64,
    pub method: Method,
    pub root: Option<usize>,
    /// Guaranteed bound on `(cost - optimum) / optimum`.
    pub gap_bound: f64,
    /// Undirected cost of an MST-style design, each link counted once.
    pub tree_cost: Option<f64>,
}

impl NetworkDesign {
    pub(crate) fn from_arcs(
        net: &WeightedDigraph,
        selected_arcs: BTreeSet<(usize, usize)>,
        method: Method,
        root: Option<usize>,
        tree_cost: Option<f64>,
    ) -> Self {
        let total_cost = selected_arcs
            .iter()
            .map(|&(u, v)| net.cost(u, v).expect("selected arc belongs to the network"))
            .sum();
        let gap_bound = match method {
            Method::BranchingUnion => 1.0,
            Method::Mst | Method::BruteForce => 0.0,
        };
        Self {
            selected_arcs,
            total_cost,
            method,
            root,
            gap_bound,
            tree_cost,
        }
    }

    pub fn pattern(&self, m: usize) -> StructuredMatrix {
        StructuredMatrix::new(m, m, self.selected_arcs.iter().copied())
            .expect("design arcs are distinct and in range")
    }
}

/// Union of the minimum out- and in-branchings rooted at `root`.
pub fn msss_2approx(net: &WeightedDigraph, root: usize) -> Result<NetworkDesign> {
    if root >= net.node_count() {
        return Err(Error::invalid(
            "root",
            format!("sensor {} outside 1..={}", root + 1, net.node_count()),
        ));
    }
    if !is_strongly_connected(&net.topology()) {
        return Err(Error::NotStronglyConnected);
    }
    let out = min_branching(net, root, Direction::Out)?;
    let inward = min_branching(net, root, Direction::In)?;
    let union: BTreeSet<_> = out.arcs.union(&inward.arcs).copied().collect();
    Ok(NetworkDesign::from_arcs(net, union, Method::BranchingUnion, Some(root), None))
}

/// Runs [`msss_2approx`] from every root and keeps the cheapest result,
/// preferring the lowest root on ties.
pub fn msss_best_root(net: &WeightedDigraph) -> Result<NetworkDesign> {
    let mut best: Option<NetworkDesign> = None;
    for root in 0..net.node_count() {
        let design = msss_2approx(net, root)?;
        if best.as_ref().is_none_or(|b| design.total_cost < b.total_cost) {
            best = Some(design);
        }
    }
    best.ok_or_else(|| Error::invalid("net", "network has no sensors"))
}

/// `(heuristic - optimum) / optimum`, with `0/0` read as zero.
pub fn gap(heuristic: f64, optimum: f64) -> f64 {
    if optimum == 0.0 {
        if heuristic == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (heuristic - optimum) / optimum
    }
}
