//! SCC decomposition, parent/child classification and the structural
//! observability checks for structurally full-rank systems.

pub mod matching;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{digraph_from_pattern, Digraph, ProblemInstance, StructuredMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SccKind {
    /// No edge leaves the component.
    Parent,
    Child,
}

/// Strongly connected components of a digraph together with their
/// condensation DAG.
///
/// Components are sorted by their smallest node and each component's nodes
/// are sorted, so the partition of a given graph is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    kinds: Vec<SccKind>,
    condensation: Vec<Vec<usize>>,
}

impl SccPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &[usize] {
        &self.components[k]
    }

    pub fn component_of(&self, node: usize) -> usize {
        self.component_of[node]
    }

    pub fn kind(&self, k: usize) -> SccKind {
        self.kinds[k]
    }

    /// Outgoing condensation edges per component, sorted.
    pub fn condensation(&self) -> &[Vec<usize>] {
        &self.condensation
    }

    /// Indices of parent components in ascending order.
    pub fn parents(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.kinds[k] == SccKind::Parent)
            .collect()
    }
}

/// Iterative Tarjan decomposition.
pub fn scc_decompose(graph: &Digraph) -> SccPartition {
    const UNSEEN: usize = usize::MAX;
    let n = graph.node_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw: Vec<Vec<usize>> = Vec::new();
    let mut next = 0usize;
    // (node, position in its successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for start in 0..n {
        if index[start] != UNSEEN {
            continue;
        }
        index[start] = next;
        low[start] = next;
        next += 1;
        stack.push(start);
        on_stack[start] = true;
        call.push((start, 0));

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let succ = graph.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                raw.push(comp);
            }
        }
    }

    raw.sort_unstable_by_key(|c| c[0]);
    let mut component_of = vec![0usize; n];
    for (k, comp) in raw.iter().enumerate() {
        for &v in comp {
            component_of[v] = k;
        }
    }
    let mut outs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); raw.len()];
    for (u, v) in graph.edges() {
        let (a, b) = (component_of[u], component_of[v]);
        if a != b {
            outs[a].insert(b);
        }
    }
    let kinds = outs
        .iter()
        .map(|o| if o.is_empty() { SccKind::Parent } else { SccKind::Child })
        .collect();
    SccPartition {
        components: raw,
        component_of,
        kinds,
        condensation: outs.into_iter().map(|o| o.into_iter().collect()).collect(),
    }
}

pub fn is_strongly_connected(graph: &Digraph) -> bool {
    scc_decompose(graph).len() <= 1
}

/// Perfect-matching test on the row/column bipartite graph of the pattern.
pub fn is_structurally_full_rank(pattern: &StructuredMatrix) -> Result<bool> {
    let n = pattern.require_square()?;
    let adj: Vec<Vec<usize>> = (0..n).map(|i| pattern.row(i).collect()).collect();
    Ok(matching::hopcroft_karp(&adj, n).is_left_perfect())
}

/// Every parent SCC of the system digraph contains a measured state.
///
/// Only meaningful for structurally full-rank systems; other patterns are
/// rejected with [`Error::NotStructurallyFullRank`].
pub fn check_structural_observability(
    a_pattern: &StructuredMatrix,
    h_pattern: &StructuredMatrix,
) -> Result<bool> {
    let n = a_pattern.require_square()?;
    if h_pattern.cols() != n {
        return Err(Error::Shape {
            expected: format!("measurement pattern with {n} columns"),
            rows: h_pattern.rows(),
            cols: h_pattern.cols(),
        });
    }
    if !is_structurally_full_rank(a_pattern)? {
        return Err(Error::NotStructurallyFullRank);
    }
    let partition = scc_decompose(&digraph_from_pattern(a_pattern)?);
    Ok(parents_covered(&partition, h_pattern))
}

fn parents_covered(partition: &SccPartition, h_pattern: &StructuredMatrix) -> bool {
    let mut covered = vec![false; partition.len()];
    for (_, state) in h_pattern.iter() {
        covered[partition.component_of(state)] = true;
    }
    partition.parents().into_iter().all(|k| covered[k])
}

/// Sufficient structural condition for distributed observability: each
/// sensor measures one state of a distinct parent SCC, all parents are
/// covered, and the sensor network is strongly connected.
///
/// Network pattern entry `(i, j)` is the link from sensor `i` to sensor `j`.
pub fn check_distributed_observability_structural(
    instance: &ProblemInstance,
    h_pattern: &StructuredMatrix,
    w_pattern: &StructuredMatrix,
) -> Result<bool> {
    Ok(distributed_gate(instance, h_pattern, w_pattern)?.is_none())
}

/// Like [`check_distributed_observability_structural`] but returns the
/// reason a design fails the gate.
pub fn distributed_gate(
    instance: &ProblemInstance,
    h_pattern: &StructuredMatrix,
    w_pattern: &StructuredMatrix,
) -> Result<Option<String>> {
    let m = instance.sensors();
    let n = instance.states();
    h_pattern.require_shape(m, n)?;
    w_pattern.require_shape(m, m)?;
    for (i, j) in w_pattern.iter() {
        if instance.network().cost(i, j).is_none() {
            return Err(Error::ArcOutsideNetwork { from: i, to: j });
        }
    }

    if !check_structural_observability(instance.system(), h_pattern)? {
        return Ok(Some("some parent SCC has no measured state".into()));
    }
    let partition = scc_decompose(&digraph_from_pattern(instance.system())?);
    let parents = partition.parents();
    let mut owner = vec![None; partition.len()];
    for sensor in 0..m {
        let states: Vec<usize> = h_pattern.row(sensor).collect();
        if states.len() != 1 {
            return Ok(Some(format!(
                "sensor {} measures {} states, expected exactly 1",
                sensor + 1,
                states.len()
            )));
        }
        let comp = partition.component_of(states[0]);
        if partition.kind(comp) != SccKind::Parent {
            return Ok(Some(format!(
                "sensor {} measures state {} outside every parent SCC",
                sensor + 1,
                states[0] + 1
            )));
        }
        if let Some(other) = owner[comp].replace(sensor) {
            return Ok(Some(format!(
                "sensors {} and {} measure the same parent SCC",
                other + 1,
                sensor + 1
            )));
        }
    }
    if parents.len() != m {
        return Ok(Some(format!(
            "{} parent SCCs for {m} sensors",
            parents.len()
        )));
    }
    let net = Digraph::new(m, w_pattern.iter());
    if !is_strongly_connected(&net) {
        return Ok(Some("sensor network is not strongly connected".into()));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedDigraph;
    use std::collections::BTreeMap;

    fn pattern(n: usize, entries: &[(usize, usize)]) -> StructuredMatrix {
        StructuredMatrix::new(n, n, entries.iter().copied()).unwrap()
    }

    #[test]
    fn three_cycle_single_parent() {
        let g = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]);
        let p = scc_decompose(&g);
        assert_eq!(p.components(), &[vec![0, 1, 2]]);
        assert_eq!(p.kind(0), SccKind::Parent);
        assert!(is_strongly_connected(&g));
    }

    #[test]
    fn isolated_self_loops() {
        let g = Digraph::new(2, [(0, 0), (1, 1)]);
        let p = scc_decompose(&g);
        assert_eq!(p.components(), &[vec![0], vec![1]]);
        assert_eq!(p.parents(), vec![0, 1]);
    }

    #[test]
    fn chain_has_one_parent() {
        let g = Digraph::new(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]);
        let p = scc_decompose(&g);
        assert_eq!(p.len(), 3);
        assert_eq!(p.parents(), vec![2]);
        assert_eq!(p.condensation(), &[vec![1], vec![2], vec![]]);
        assert!(!is_strongly_connected(&Digraph::new(3, [(0, 1), (1, 2)])));
    }

    #[test]
    fn single_node_is_sc() {
        assert!(is_strongly_connected(&Digraph::new(1, [])));
    }

    #[test]
    fn deep_path_does_not_overflow() {
        let n = 200_000;
        let g = Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n)));
        assert!(is_strongly_connected(&g));
    }

    #[test]
    fn full_rank_examples() {
        assert!(is_structurally_full_rank(&StructuredMatrix::identity(4)).unwrap());
        assert!(!is_structurally_full_rank(&pattern(2, &[(0, 1)])).unwrap());
        assert!(is_structurally_full_rank(&pattern(2, &[(0, 1), (1, 0)])).unwrap());
        assert!(is_structurally_full_rank(&StructuredMatrix::empty(2, 3)).is_err());
    }

    #[test]
    fn two_by_two_full_rank_matches_permutation_enumeration() {
        // permutations of S_2: identity and the swap
        for mask in 0u32..16 {
            let entries: Vec<_> = (0..4)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| (b / 2, b % 2))
                .collect();
            let p = pattern(2, &entries);
            let by_perm = (p.contains(0, 0) && p.contains(1, 1)) || (p.contains(0, 1) && p.contains(1, 0));
            assert_eq!(is_structurally_full_rank(&p).unwrap(), by_perm, "{entries:?}");
        }
    }

    #[test]
    fn structural_observability() {
        let a = StructuredMatrix::identity(2);
        let both = StructuredMatrix::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let first = StructuredMatrix::new(1, 2, [(0, 0)]).unwrap();
        assert!(check_structural_observability(&a, &both).unwrap());
        assert!(!check_structural_observability(&a, &first).unwrap());

        let cycle = pattern(3, &[(1, 0), (2, 1), (0, 2)]);
        for s in 0..3 {
            let h = StructuredMatrix::new(1, 3, [(0, s)]).unwrap();
            assert!(check_structural_observability(&cycle, &h).unwrap());
        }
    }

    #[test]
    fn observability_rejects_rank_deficient_system() {
        let a = pattern(2, &[(0, 1)]);
        let h = StructuredMatrix::new(1, 2, [(0, 0)]).unwrap();
        assert!(matches!(
            check_structural_observability(&a, &h),
            Err(Error::NotStructurallyFullRank)
        ));
    }

    fn two_parent_instance() -> ProblemInstance {
        let mut c = BTreeMap::new();
        for i in 0..2 {
            for j in 0..2 {
                c.insert((i, j), 1.0);
            }
        }
        let net = WeightedDigraph::new(2, [(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        ProblemInstance::new(StructuredMatrix::identity(2), 2, c, net, false).unwrap()
    }

    #[test]
    fn distributed_gate_examples() {
        let inst = two_parent_instance();
        let h = StructuredMatrix::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let cycle = StructuredMatrix::new(2, 2, [(0, 1), (1, 0)]).unwrap();
        let one_way = StructuredMatrix::new(2, 2, [(0, 1)]).unwrap();
        assert!(check_distributed_observability_structural(&inst, &h, &cycle).unwrap());
        assert!(!check_distributed_observability_structural(&inst, &h, &one_way).unwrap());

        let same_parent = StructuredMatrix::new(2, 2, [(0, 0), (1, 0)]).unwrap();
        assert!(!check_distributed_observability_structural(&inst, &same_parent, &cycle).unwrap());
    }

    #[test]
    fn distributed_gate_single_sensor() {
        let mut c = BTreeMap::new();
        c.insert((0, 0), 1.0);
        let inst = ProblemInstance::new(
            StructuredMatrix::identity(1),
            1,
            c,
            WeightedDigraph::new(1, []).unwrap(),
            false,
        )
        .unwrap();
        let h = StructuredMatrix::new(1, 1, [(0, 0)]).unwrap();
        assert!(check_distributed_observability_structural(&inst, &h, &StructuredMatrix::empty(1, 1)).unwrap());
    }

    #[test]
    fn distributed_gate_rejects_foreign_arc() {
        let mut c = BTreeMap::new();
        c.insert((0, 0), 1.0);
        c.insert((1, 1), 1.0);
        let net = WeightedDigraph::new(2, [(0, 1, 1.0)]).unwrap();
        let inst = ProblemInstance::new(StructuredMatrix::identity(2), 2, c, net, false).unwrap();
        let h = StructuredMatrix::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let w = StructuredMatrix::new(2, 2, [(0, 1), (1, 0)]).unwrap();
        assert!(matches!(
            check_distributed_observability_structural(&inst, &h, &w),
            Err(Error::ArcOutsideNetwork { from: 1, to: 0 })
        ));
    }
}
