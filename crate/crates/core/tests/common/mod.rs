//! Test-only generators and exhaustive oracles. None of these call into the
//! solvers they are used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sensornet::graph::{ProblemInstance, StructuredMatrix, WeightedDigraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Transitive closure by Floyd–Warshall over an adjacency matrix.
pub fn closure(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for v in 0..n {
        r[v][v] = true;
    }
    for (u, v) in edges {
        r[u][v] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

pub fn strongly_connected_by_closure(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> bool {
    closure(n, edges).iter().all(|row| row.iter().all(|&x| x))
}

/// Parent test by reachability: the component of `v` is a parent iff every
/// node reachable from `v` can reach `v` back.
pub fn brute_parent_nodes(n: usize, edges: &[(usize, usize)]) -> BTreeSet<usize> {
    let r = closure(n, edges.iter().copied());
    (0..n)
        .filter(|&v| (0..n).all(|w| !r[v][w] || r[w][v]))
        .collect()
}

/// Output connectivity of the system digraph of `a` (edge `j -> i` per
/// nonzero `(i, j)`): every state has a path to a measured state.
pub fn output_connected(a: &StructuredMatrix, measured: &[usize]) -> bool {
    let n = a.rows();
    let r = closure(n, a.iter().map(|(i, j)| (j, i)));
    (0..n).all(|v| measured.iter().any(|&s| r[v][s]))
}

/// Random square pattern containing a random permutation, so it is
/// structurally full rank.
pub fn random_full_rank(rng: &mut ChaCha8Rng, n: usize, extra: f64) -> StructuredMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut entries: BTreeSet<(usize, usize)> = perm.iter().enumerate().map(|(i, &j)| (i, j)).collect();
    for i in 0..n {
        for j in 0..n {
            if rng.random_bool(extra) {
                entries.insert((i, j));
            }
        }
    }
    StructuredMatrix::new(n, n, entries).unwrap()
}

/// Random strongly connected digraph on `m` nodes with at most `max_arcs`
/// arcs: a Hamiltonian cycle plus random extras.
pub fn random_sc_digraph(rng: &mut ChaCha8Rng, m: usize, max_arcs: usize, integer_costs: bool) -> WeightedDigraph {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let mut arcs: BTreeSet<(usize, usize)> = BTreeSet::new();
    if m > 1 {
        for t in 0..m {
            arcs.insert((order[t], order[(t + 1) % m]));
        }
    }
    let mut candidates: Vec<(usize, usize)> = (0..m)
        .flat_map(|u| (0..m).filter(move |&v| v != u).map(move |v| (u, v)))
        .filter(|a| !arcs.contains(a))
        .collect();
    candidates.shuffle(rng);
    let room = max_arcs.saturating_sub(arcs.len());
    let extra = rng.random_range(0..=room.min(candidates.len()));
    arcs.extend(candidates.into_iter().take(extra));
    WeightedDigraph::new(
        m,
        arcs.into_iter().map(|(u, v)| (u, v, cost(rng, integer_costs, 20))),
    )
    .unwrap()
}

/// Random connected symmetric network: random spanning tree plus extras.
pub fn random_symmetric(rng: &mut ChaCha8Rng, m: usize, extra: f64) -> WeightedDigraph {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let mut edges = BTreeSet::new();
    for t in 1..m {
        let o = order[rng.random_range(0..t)];
        edges.insert((order[t].min(o), order[t].max(o)));
    }
    for u in 0..m {
        for v in u + 1..m {
            if rng.random_bool(extra) {
                edges.insert((u, v));
            }
        }
    }
    let mut arcs = Vec::new();
    for (u, v) in edges {
        let c = rng.random_range(1..=12) as f64;
        arcs.push((u, v, c));
        arcs.push((v, u, c));
    }
    WeightedDigraph::new(m, arcs).unwrap()
}

pub fn cost(rng: &mut ChaCha8Rng, integer: bool, max: u32) -> f64 {
    if integer {
        rng.random_range(1..=max) as f64
    } else {
        rng.random_range(0.0..max as f64)
    }
}

/// Minimum spanning tree cost over all `(m-1)`-edge subsets.
pub fn brute_spanning_tree(net: &WeightedDigraph) -> Option<f64> {
    let m = net.node_count();
    let edges: Vec<(usize, usize, f64)> = net.arcs().filter(|&(u, v, _)| u < v).collect();
    if m <= 1 {
        return Some(0.0);
    }
    let k = m - 1;
    let mut best: Option<f64> = None;
    let mut pick: Vec<usize> = (0..k).collect();
    if edges.len() < k {
        return None;
    }
    loop {
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut acyclic = true;
        for &e in &pick {
            let (u, v, _) = edges[e];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                acyclic = false;
                break;
            }
            parent[a] = b;
        }
        if acyclic {
            let c: f64 = pick.iter().map(|&e| edges[e].2).sum();
            best = Some(best.map_or(c, |b: f64| b.min(c)));
        }
        // next k-combination
        let mut i = k;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if pick[i] < edges.len() - k + i {
                break;
            }
            if i == 0 {
                return best;
            }
        }
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Minimum out-branching cost by choosing one incoming arc per non-root node
/// and keeping choices in which every node reaches the root by parent links.
pub fn brute_out_branching(net: &WeightedDigraph, root: usize) -> Option<f64> {
    let m = net.node_count();
    let mut incoming: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m];
    for (u, v, c) in net.arcs() {
        incoming[v].push((u, c));
    }
    let others: Vec<usize> = (0..m).filter(|&v| v != root).collect();
    if others.iter().any(|&v| incoming[v].is_empty()) {
        return None;
    }
    let mut choice = vec![0usize; others.len()];
    let mut best: Option<f64> = None;
    loop {
        let mut parent = vec![usize::MAX; m];
        let mut total = 0.0;
        for (t, &v) in others.iter().enumerate() {
            let (u, c) = incoming[v][choice[t]];
            parent[v] = u;
            total += c;
        }
        let valid = others.iter().all(|&v| {
            let mut w = v;
            for _ in 0..m {
                if w == root {
                    return true;
                }
                w = parent[w];
            }
            w == root
        });
        if valid {
            best = Some(best.map_or(total, |b: f64| b.min(total)));
        }
        let mut t = 0;
        loop {
            if t == others.len() {
                return best;
            }
            choice[t] += 1;
            if choice[t] < incoming[others[t]].len() {
                break;
            }
            choice[t] = 0;
            t += 1;
        }
    }
}

/// Exact MSSS cost by plain enumeration in descending mask order with a
/// closure-based connectivity test.
pub fn brute_msss_descending(net: &WeightedDigraph) -> Option<f64> {
    let arcs: Vec<(usize, usize, f64)> = net.arcs().collect();
    let m = net.node_count();
    let mut best: Option<f64> = None;
    for mask in (0u32..(1u32 << arcs.len())).rev() {
        let chosen: Vec<(usize, usize)> = (0..arcs.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| (arcs[k].0, arcs[k].1))
            .collect();
        if strongly_connected_by_closure(m, chosen.iter().copied()) {
            let c: f64 = (0..arcs.len()).filter(|k| mask >> k & 1 == 1).map(|k| arcs[k].2).sum();
            best = Some(best.map_or(c, |b: f64| b.min(c)));
        }
    }
    best
}

/// Minimum sensing cost over every measurement structure with one state per
/// sensor and at most one sensor per state, subject to output connectivity.
pub fn brute_sensing(instance: &ProblemInstance) -> Option<f64> {
    let m = instance.sensors();
    let n = instance.states();
    let mut best: Option<f64> = None;
    let mut chosen = Vec::with_capacity(m);
    fn go(
        inst: &ProblemInstance,
        sensor: usize,
        n: usize,
        chosen: &mut Vec<usize>,
        acc: f64,
        best: &mut Option<f64>,
    ) {
        if sensor == inst.sensors() {
            if output_connected(inst.system(), chosen) {
                *best = Some(best.map_or(acc, |b| b.min(acc)));
            }
            return;
        }
        for state in 0..n {
            if chosen.contains(&state) {
                continue;
            }
            if let Some(c) = inst.sensing_cost(sensor, state) {
                chosen.push(state);
                go(inst, sensor + 1, n, chosen, acc + c, best);
                chosen.pop();
            }
        }
    }
    let _ = m;
    go(instance, 0, n, &mut chosen, 0.0, &mut best);
    best
}

/// Same instance with every sensing cost entry dropped with probability `p`.
pub fn thin_sensing_costs(rng: &mut ChaCha8Rng, instance: &ProblemInstance, p: f64) -> ProblemInstance {
    let costs: BTreeMap<(usize, usize), f64> = instance
        .sensing_costs()
        .iter()
        .filter(|_| !rng.random_bool(p))
        .map(|(&k, &v)| (k, v))
        .collect();
    ProblemInstance::new(
        instance.system().clone(),
        instance.sensors(),
        costs,
        instance.network().clone(),
        instance.is_undirected(),
    )
    .unwrap()
}

/// Least-squares slope of `log(y)` against `log(x)`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}
