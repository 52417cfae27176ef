use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;

use super::{Method, NetworkDesign};

/// Dense Prim on the undirected skeleton of a symmetric network.
///
/// Each tree edge is selected in both directions, so `total_cost` counts it
/// twice while `tree_cost` counts it once.
pub fn mst_solve(net: &WeightedDigraph) -> Result<NetworkDesign> {
    if !net.is_symmetric() {
        return Err(Error::invalid(
            "net",
            "spanning tree design needs a symmetric network",
        ));
    }
    let m = net.node_count();
    let mut weight = vec![vec![None; m]; m];
    for (u, v, c) in net.arcs() {
        weight[u][v] = Some(c);
    }

    let mut in_tree = vec![false; m];
    let mut key = vec![f64::INFINITY; m];
    let mut link: Vec<Option<usize>> = vec![None; m];
    let mut edges = Vec::with_capacity(m.saturating_sub(1));
    if m > 0 {
        key[0] = 0.0;
    }
    for _ in 0..m {
        // lowest index wins on equal keys
        let next = (0..m)
            .filter(|&v| !in_tree[v] && key[v].is_finite())
            .min_by(|&a, &b| key[a].total_cmp(&key[b]).then(a.cmp(&b)));
        let Some(u) = next else {
            let cut = (0..m).filter(|&v| in_tree[v]).collect();
            return Err(Error::Disconnected { cut });
        };
        in_tree[u] = true;
        if let Some(p) = link[u] {
            edges.push((p.min(u), p.max(u)));
        }
        for v in 0..m {
            if in_tree[v] {
                continue;
            }
            if let Some(c) = weight[u][v] {
                if c < key[v] {
                    key[v] = c;
                    link[v] = Some(u);
                }
            }
        }
    }

    let mut selected = BTreeSet::new();
    for &(u, v) in &edges {
        selected.insert((u, v));
        selected.insert((v, u));
    }
    edges.sort_unstable();
    let tree_cost = edges.iter().map(|&(u, v)| weight[u][v].unwrap()).sum();
    Ok(NetworkDesign::from_arcs(net, selected, Method::Mst, None, Some(tree_cost)))
}
