//! Minimum-cost spanning branchings (arborescences) by Chu–Liu/Edmonds
//! cycle contraction.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Direction, Error, Result};
use crate::graph::WeightedDigraph;

/// A spanning branching and its cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Branching {
    pub root: usize,
    pub direction: Direction,
    pub arcs: BTreeSet<(usize, usize)>,
    pub cost: f64,
}

/// Node count up to which the dense O(n^2) contraction is always used.
const DENSE_LIMIT: usize = 1024;

#[derive(Debug, Clone, Copy)]
struct Arc {
    from: usize,
    to: usize,
    cost: f64,
    /// Position in the lexicographically sorted original arc list.
    id: usize,
}

impl Arc {
    fn beats(&self, other: &Arc) -> bool {
        self.cost < other.cost || (self.cost == other.cost && self.id < other.id)
    }
}

/// Minimum in- or out-branching rooted at `root`. Ties go to the
/// lexicographically smallest arc.
pub fn min_branching(net: &WeightedDigraph, root: usize, direction: Direction) -> Result<Branching> {
    let n = net.node_count();
    if root >= n {
        return Err(Error::invalid(
            "root",
            format!("sensor {} outside 1..={n}", root + 1),
        ));
    }
    // an in-branching of `net` is an out-branching of the reversed graph
    let oriented = match direction {
        Direction::Out => net.clone(),
        Direction::In => net.reversed(),
    };
    if let Some(node) = first_unreachable(&oriented, root) {
        return Err(Error::Unreachable {
            node,
            root,
            direction,
        });
    }

    let original: Vec<(usize, usize, f64)> = oriented.arcs().collect();
    let arcs: Vec<Arc> = original
        .iter()
        .enumerate()
        .map(|(id, &(from, to, cost))| Arc { from, to, cost, id })
        .collect();
    let chosen = if n <= DENSE_LIMIT || n * n <= 8 * arcs.len() {
        contract_dense(n, root, &arcs)
    } else {
        contract(n, root, &arcs)
    };

    let mut out = BTreeSet::new();
    let mut cost = 0.0;
    for k in chosen {
        let (u, v, c) = original[arcs[k].id];
        out.insert(match direction {
            Direction::Out => (u, v),
            Direction::In => (v, u),
        });
        cost += c;
    }
    // recompute in sorted order so the total does not depend on expansion order
    let cost_sorted = out
        .iter()
        .map(|&(u, v)| net.cost(u, v).expect("branching arc exists"))
        .sum::<f64>();
    debug_assert!((cost - cost_sorted).abs() <= 1e-9 * (1.0 + cost.abs()));
    Ok(Branching {
        root,
        direction,
        arcs: out,
        cost: cost_sorted,
    })
}

fn first_unreachable(net: &WeightedDigraph, root: usize) -> Option<usize> {
    let g = net.topology();
    let mut seen = vec![false; g.node_count()];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(u) = queue.pop_front() {
        for &v in g.successors(u) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen.iter().position(|&s| !s)
}

/// Returns indices into `arcs` forming a minimum out-branching from `root`.
/// Every non-root node must be reachable.
fn contract(n: usize, root: usize, arcs: &[Arc]) -> Vec<usize> {
    const NONE: usize = usize::MAX;
    let mut best = vec![NONE; n];
    for (k, a) in arcs.iter().enumerate() {
        if a.from == a.to || a.to == root {
            continue;
        }
        if best[a.to] == NONE || a.beats(&arcs[best[a.to]]) {
            best[a.to] = k;
        }
    }

    // find cycles of the best-parent pointers: 0 unseen, 1 on the walk, 2 done
    let mut state = vec![0u8; n];
    state[root] = 2;
    let mut comp = vec![NONE; n];
    let mut in_cycle = vec![false; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut walk = Vec::new();
    for start in 0..n {
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            walk.push(v);
            v = arcs[best[v]].from;
        }
        if state[v] == 1 {
            let mut cycle = Vec::new();
            let mut w = v;
            loop {
                comp[w] = cycles.len();
                in_cycle[w] = true;
                cycle.push(w);
                w = arcs[best[w]].from;
                if w == v {
                    break;
                }
            }
            cycles.push(cycle);
        }
        for w in walk.drain(..) {
            state[w] = 2;
        }
    }

    if cycles.is_empty() {
        return (0..n).filter(|&v| v != root).map(|v| best[v]).collect();
    }

    let mut next = cycles.len();
    for v in 0..n {
        if comp[v] == NONE {
            comp[v] = next;
            next += 1;
        }
    }
    let size = next;

    // contracted arcs, keeping the cheapest per (from, to) component pair
    let mut slot = vec![NONE; size * size];
    let mut reduced: Vec<Arc> = Vec::new();
    let mut origin: Vec<usize> = Vec::new();
    for (k, a) in arcs.iter().enumerate() {
        let (cf, ct) = (comp[a.from], comp[a.to]);
        if cf == ct {
            continue;
        }
        let cost = if in_cycle[a.to] {
            a.cost - arcs[best[a.to]].cost
        } else {
            a.cost
        };
        let candidate = Arc {
            from: cf,
            to: ct,
            cost,
            id: a.id,
        };
        let s = &mut slot[cf * size + ct];
        if *s == NONE {
            *s = reduced.len();
            reduced.push(candidate);
            origin.push(k);
        } else if candidate.beats(&reduced[*s]) {
            reduced[*s] = candidate;
            origin[*s] = k;
        }
    }

    let sub = contract(size, comp[root], &reduced);
    let mut result = Vec::with_capacity(n - 1);
    let mut entered = vec![false; n];
    for r in sub {
        let k = origin[r];
        entered[arcs[k].to] = true;
        result.push(k);
    }
    for cycle in &cycles {
        for &v in cycle {
            if !entered[v] {
                result.push(best[v]);
            }
        }
    }
    result
}

/// Dense variant of [`contract`]: grows a path backwards along cheapest
/// incoming arcs and contracts each cycle it closes, keeping an `n x n`
/// matrix of reduced costs between the current super-nodes. O(n^2) overall.
fn contract_dense(n: usize, root: usize, arcs: &[Arc]) -> Vec<usize> {
    const NONE: usize = usize::MAX;
    // inc[to * n + from]: cheapest arc between the super-nodes held in those slots
    let mut inc_cost = vec![f64::INFINITY; n * n];
    let mut inc_arc = vec![NONE; n * n];
    for (k, a) in arcs.iter().enumerate() {
        let s = a.to * n + a.from;
        if inc_arc[s] == NONE || a.beats(&arcs[inc_arc[s]]) {
            inc_cost[s] = a.cost;
            inc_arc[s] = k;
        }
    }

    // super-node ids: 0..n are the original nodes, contractions get n, n+1, ...
    let mut slot_of: Vec<usize> = (0..n).collect();
    let mut id_at: Vec<usize> = (0..n).collect();
    let mut active = vec![true; n];
    let mut forest_parent: Vec<usize> = vec![NONE; n];
    let mut chosen: Vec<usize> = vec![NONE; n];
    // 0 unvisited, 1 on the current path, 2 finished
    let mut status = vec![0u8; n];
    status[root] = 2;

    let mut path: Vec<usize> = Vec::new();
    for start in 0..n {
        if status[start] != 0 {
            continue;
        }
        let mut cur = start;
        loop {
            status[cur] = 1;
            path.push(cur);
            let s = slot_of[cur];
            let row = s * n;
            let mut best = NONE;
            for u in 0..n {
                if u == s || !active[u] || inc_arc[row + u] == NONE {
                    continue;
                }
                let better = best == NONE
                    || inc_cost[row + u] < inc_cost[row + best]
                    || (inc_cost[row + u] == inc_cost[row + best]
                        && arcs[inc_arc[row + u]].id < arcs[inc_arc[row + best]].id);
                if better {
                    best = u;
                }
            }
            debug_assert!(best != NONE, "reachability was checked");
            chosen[cur] = inc_arc[row + best];
            let y = inc_cost[row + best];
            // reduce every arc entering `cur` by the chosen cost
            for u in 0..n {
                if inc_arc[row + u] != NONE {
                    inc_cost[row + u] -= y;
                }
            }
            let from = id_at[best];
            match status[from] {
                2 => break,
                0 => cur = from,
                _ => {
                    let mut cycle = Vec::new();
                    loop {
                        let v = path.pop().expect("cycle lies on the path");
                        status[v] = 2;
                        cycle.push(v);
                        if v == from {
                            break;
                        }
                    }
                    let c = slot_of.len();
                    let target = slot_of[cycle[0]];
                    for &v in &cycle[1..] {
                        let vs = slot_of[v];
                        active[vs] = false;
                        for u in 0..n {
                            if !active[u] && u != target {
                                continue;
                            }
                            let (into_t, into_v) = (target * n + u, vs * n + u);
                            if inc_arc[into_v] != NONE
                                && (inc_arc[into_t] == NONE
                                    || inc_cost[into_v] < inc_cost[into_t]
                                    || (inc_cost[into_v] == inc_cost[into_t]
                                        && arcs[inc_arc[into_v]].id < arcs[inc_arc[into_t]].id))
                            {
                                inc_cost[into_t] = inc_cost[into_v];
                                inc_arc[into_t] = inc_arc[into_v];
                            }
                            let (out_t, out_v) = (u * n + target, u * n + vs);
                            if inc_arc[out_v] != NONE
                                && (inc_arc[out_t] == NONE
                                    || inc_cost[out_v] < inc_cost[out_t]
                                    || (inc_cost[out_v] == inc_cost[out_t]
                                        && arcs[inc_arc[out_v]].id < arcs[inc_arc[out_t]].id))
                            {
                                inc_cost[out_t] = inc_cost[out_v];
                                inc_arc[out_t] = inc_arc[out_v];
                            }
                        }
                    }
                    inc_cost[target * n + target] = f64::INFINITY;
                    inc_arc[target * n + target] = NONE;
                    slot_of.push(target);
                    id_at[target] = c;
                    forest_parent.push(NONE);
                    for &v in &cycle {
                        forest_parent[v] = c;
                    }
                    chosen.push(NONE);
                    status.push(0);
                    cur = c;
                }
            }
        }
        for v in path.drain(..) {
            status[v] = 2;
        }
    }

    // expand from the newest super-node down: the arc entering a contracted
    // node replaces the cycle arc of the member it enters
    let total = slot_of.len();
    let mut entering = chosen.clone();
    for c in (n..total).rev() {
        let a = entering[c];
        if a == NONE {
            continue;
        }
        let mut w = arcs[a].to;
        while forest_parent[w] != c {
            w = forest_parent[w];
        }
        entering[w] = a;
    }
    (0..n).filter(|&v| v != root).map(|v| entering[v]).collect()
}
