use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;

use super::{Method, NetworkDesign};

pub const BRUTE_FORCE_MAX_ARCS: usize = 20;

/// Exact minimum spanning strong subgraph by enumerating arc subsets.
///
/// Subsets leaving some node without an in- or out-arc are skipped before the
/// connectivity test. Equal-cost optima are resolved towards the
/// lexicographically smallest sorted arc list.
pub fn brute_force_msss(net: &WeightedDigraph) -> Result<NetworkDesign> {
    let arcs: Vec<(usize, usize, f64)> = net.arcs().collect();
    if arcs.len() > BRUTE_FORCE_MAX_ARCS {
        return Err(Error::GuardExceeded {
            what: "arc count",
            actual: arcs.len(),
            limit: BRUTE_FORCE_MAX_ARCS,
        });
    }
    let m = net.node_count();
    if m <= 1 {
        return Ok(NetworkDesign::from_arcs(net, BTreeSet::new(), Method::BruteForce, None, None));
    }

    let mut in_mask = vec![0u32; m];
    let mut out_mask = vec![0u32; m];
    for (k, &(u, v, _)) in arcs.iter().enumerate() {
        out_mask[u] |= 1 << k;
        in_mask[v] |= 1 << k;
    }

    let mut best: Option<(f64, u32)> = None;
    for mask in 0u32..(1u32 << arcs.len()) {
        if (0..m).any(|v| mask & in_mask[v] == 0 || mask & out_mask[v] == 0) {
            continue;
        }
        let cost = subset_cost(&arcs, mask);
        let better = match best {
            None => true,
            Some((b, bm)) => cost < b || (cost == b && lex_less(&arcs, mask, bm)),
        };
        if better && strongly_connected(m, &arcs, mask) {
            best = Some((cost, mask));
        }
    }
    let Some((_, mask)) = best else {
        return Err(Error::NotStronglyConnected);
    };
    let selected = (0..arcs.len())
        .filter(|k| mask >> k & 1 == 1)
        .map(|k| (arcs[k].0, arcs[k].1))
        .collect();
    Ok(NetworkDesign::from_arcs(net, selected, Method::BruteForce, None, None))
}

/// Exact minimum over symmetric strongly connected designs (each chosen link
/// used in both directions), by enumerating undirected edge subsets.
pub fn brute_force_symmetric(net: &WeightedDigraph) -> Result<NetworkDesign> {
    if !net.is_symmetric() {
        return Err(Error::invalid("net", "symmetric design needs a symmetric network"));
    }
    let edges: Vec<(usize, usize, f64)> = net.arcs().filter(|&(u, v, _)| u < v).collect();
    if edges.len() > BRUTE_FORCE_MAX_ARCS {
        return Err(Error::GuardExceeded {
            what: "edge count",
            actual: edges.len(),
            limit: BRUTE_FORCE_MAX_ARCS,
        });
    }
    let m = net.node_count();
    if m <= 1 {
        return Ok(NetworkDesign::from_arcs(net, BTreeSet::new(), Method::BruteForce, None, Some(0.0)));
    }
    let both: Vec<(usize, usize, f64)> = edges
        .iter()
        .flat_map(|&(u, v, c)| [(u, v, c), (v, u, c)])
        .collect();

    let mut best: Option<(f64, u32)> = None;
    for mask in 0u32..(1u32 << edges.len()) {
        let cost = subset_cost(&edges, mask);
        if best.is_some_and(|(b, _)| cost >= b) {
            continue;
        }
        let doubled = (0..edges.len())
            .filter(|k| mask >> k & 1 == 1)
            .fold(0u64, |acc, k| acc | 0b11 << (2 * k));
        if strongly_connected_wide(m, &both, doubled) {
            best = Some((cost, mask));
        }
    }
    let Some((tree_cost, mask)) = best else {
        let reach = reachable_wide(m, &both, u64::MAX);
        return Err(Error::Disconnected {
            cut: (0..m).filter(|&v| reach[v]).collect(),
        });
    };
    let mut selected = BTreeSet::new();
    for (k, &(u, v, _)) in edges.iter().enumerate() {
        if mask >> k & 1 == 1 {
            selected.insert((u, v));
            selected.insert((v, u));
        }
    }
    Ok(NetworkDesign::from_arcs(net, selected, Method::BruteForce, None, Some(tree_cost)))
}

fn subset_cost(arcs: &[(usize, usize, f64)], mask: u32) -> f64 {
    arcs.iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, a)| a.2)
        .sum()
}

fn lex_less(arcs: &[(usize, usize, f64)], a: u32, b: u32) -> bool {
    let list = |mask: u32| -> Vec<(usize, usize)> {
        (0..arcs.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| (arcs[k].0, arcs[k].1))
            .collect()
    };
    list(a) < list(b)
}

fn strongly_connected(m: usize, arcs: &[(usize, usize, f64)], mask: u32) -> bool {
    strongly_connected_wide(m, arcs, mask as u64)
}

fn strongly_connected_wide(m: usize, arcs: &[(usize, usize, f64)], mask: u64) -> bool {
    if !reachable_wide(m, arcs, mask).iter().all(|&r| r) {
        return false;
    }
    let reversed: Vec<(usize, usize, f64)> = arcs.iter().map(|&(u, v, c)| (v, u, c)).collect();
    reachable_wide(m, &reversed, mask).iter().all(|&r| r)
}

fn reachable_wide(m: usize, arcs: &[(usize, usize, f64)], mask: u64) -> Vec<bool> {
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for (k, &(u, v, _)) in arcs.iter().enumerate() {
            if mask >> k & 1 == 1 && seen[u] && !seen[v] {
                seen[v] = true;
                changed = true;
            }
        }
    }
    seen
}
