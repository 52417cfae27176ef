//! Maximum bipartite matching (Hopcroft–Karp) and Hall-violator extraction.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Maximum-cardinality matching of a bipartite graph given as left-to-right
/// adjacency lists.
#[derive(Debug, Clone)]
pub struct BipartiteMatching {
    pub left_mate: Vec<Option<usize>>,
    pub right_mate: Vec<Option<usize>>,
}

impl BipartiteMatching {
    pub fn size(&self) -> usize {
        self.left_mate.iter().filter(|m| m.is_some()).count()
    }

    pub fn is_left_perfect(&self) -> bool {
        self.left_mate.iter().all(Option::is_some)
    }
}

pub fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> BipartiteMatching {
    let left = adj.len();
    let mut mate_l = vec![NIL; left];
    let mut mate_r = vec![NIL; right];
    let mut dist = vec![0usize; left];

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for u in 0..left {
            if mate_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = mate_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }

        // iterative DFS along the layers
        let mut it = vec![0usize; left];
        for root in 0..left {
            if mate_l[root] != NIL {
                continue;
            }
            let mut stack = vec![root];
            while let Some(&u) = stack.last() {
                if it[u] == adj[u].len() {
                    dist[u] = usize::MAX;
                    stack.pop();
                    continue;
                }
                let v = adj[u][it[u]];
                it[u] += 1;
                let w = mate_r[v];
                if w == NIL {
                    // augment along the stack
                    let mut right_v = v;
                    while let Some(x) = stack.pop() {
                        let prev = mate_l[x];
                        mate_l[x] = right_v;
                        mate_r[right_v] = x;
                        right_v = prev;
                    }
                    break;
                } else if dist[w] == dist[u] + 1 {
                    stack.push(w);
                }
            }
        }
    }

    let wrap = |x: usize| if x == NIL { None } else { Some(x) };
    BipartiteMatching {
        left_mate: mate_l.into_iter().map(wrap).collect(),
        right_mate: mate_r.into_iter().map(wrap).collect(),
    }
}

/// A left set `S` whose neighbourhood is smaller than `S`, witnessing that no
/// left-perfect matching exists. Both lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallViolator {
    pub left: Vec<usize>,
    pub neighbours: Vec<usize>,
}

/// Returns `None` when a left-perfect matching exists.
pub fn hall_violator(adj: &[Vec<usize>], right: usize) -> Option<HallViolator> {
    let matching = hopcroft_karp(adj, right);
    let free = matching.left_mate.iter().position(Option::is_none)?;

    let mut seen_left = vec![false; adj.len()];
    let mut seen_right = vec![false; right];
    let mut queue = VecDeque::from([free]);
    seen_left[free] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if seen_right[v] {
                continue;
            }
            seen_right[v] = true;
            // maximality: every reached right vertex is matched
            let w = matching.right_mate[v].expect("augmenting path in maximum matching");
            if !seen_left[w] {
                seen_left[w] = true;
                queue.push_back(w);
            }
        }
    }
    let pick = |flags: &[bool]| flags.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i).collect();
    Some(HallViolator {
        left: pick(&seen_left),
        neighbours: pick(&seen_right),
    })
}
