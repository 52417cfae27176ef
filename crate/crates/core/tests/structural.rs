mod common;

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use proptest::prelude::*;

use common::*;
use sensornet::graph::{digraph_from_pattern, Digraph, StructuredMatrix};
use sensornet::structural::{
    check_structural_observability, is_strongly_connected, is_structurally_full_rank, scc_decompose, SccKind,
};
use sensornet::verification::kalman_rank_observable;
use sensornet::Error;

fn brute_full_rank(a: &StructuredMatrix) -> bool {
    let n = a.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|i| a.contains(i, perm[i])) {
            return true;
        }
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return false;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

proptest! {
    #[test]
    fn parents_match_reachability(n in 1usize..=8, raw in prop::collection::btree_set((0usize..8, 0usize..8), 0..24)) {
        let edges: Vec<(usize, usize)> = raw.into_iter().filter(|&(u, v)| u < n && v < n).collect();
        let g = Digraph::new(n, edges.iter().copied());
        let p = scc_decompose(&g);
        let parent_nodes: BTreeSet<usize> = p
            .parents()
            .into_iter()
            .flat_map(|k| p.component(k).to_vec())
            .collect();
        prop_assert_eq!(parent_nodes, brute_parent_nodes(n, &edges));

        let r = closure(n, edges.iter().copied());
        for u in 0..n {
            for v in 0..n {
                let same = p.component_of(u) == p.component_of(v);
                prop_assert_eq!(same, r[u][v] && r[v][u]);
            }
        }
        prop_assert_eq!(is_strongly_connected(&g), strongly_connected_by_closure(n, edges.iter().copied()));
    }

    #[test]
    fn full_rank_matches_permutation_search(n in 1usize..=6, raw in prop::collection::btree_set((0usize..6, 0usize..6), 0..20)) {
        let a = StructuredMatrix::new(n, n, raw.into_iter().filter(|&(i, j)| i < n && j < n)).unwrap();
        prop_assert_eq!(is_structurally_full_rank(&a).unwrap(), brute_full_rank(&a));
    }

    #[test]
    fn observability_is_output_connectivity(seed in 0u64..10_000, n in 1usize..=7) {
        let mut rng = rng(seed);
        let a = random_full_rank(&mut rng, n, 0.2);
        let measured: Vec<usize> = (0..n).filter(|_| rand::Rng::random_bool(&mut rng, 0.3)).collect();
        let h = StructuredMatrix::new(measured.len(), n, measured.iter().enumerate().map(|(r, &s)| (r, s))).unwrap();
        prop_assert_eq!(check_structural_observability(&a, &h).unwrap(), output_connected(&a, &measured));
    }
}

#[test]
fn partition_is_canonical() {
    // two 2-cycles, the first feeding the second
    let g = Digraph::new(4, [(3, 2), (2, 3), (1, 0), (0, 1), (1, 2)]);
    let p = scc_decompose(&g);
    assert_eq!(p.components(), &[vec![0, 1], vec![2, 3]]);
    assert_eq!(p.kind(0), SccKind::Child);
    assert_eq!(p.kind(1), SccKind::Parent);
    assert_eq!(p.parents(), vec![1]);
}

#[test]
fn rank_deficient_system_is_rejected() {
    let a = StructuredMatrix::new(2, 2, [(0, 0), (1, 0)]).unwrap();
    let h = StructuredMatrix::identity(2);
    assert!(matches!(
        check_structural_observability(&a, &h),
        Err(Error::NotStructurallyFullRank)
    ));
}

/// Explicit observability matrix for a 3-cycle: every single measured state
/// gives rank 3, and the verdict agrees.
#[test]
fn three_cycle_against_explicit_observability_matrix() {
    let pattern = StructuredMatrix::new(3, 3, [(0, 2), (1, 0), (2, 1)]).unwrap();
    let g = digraph_from_pattern(&pattern).unwrap();
    assert!(is_strongly_connected(&g));
    let a = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 1.3, 0.7, 0.0, 0.0, 0.0, 1.1, 0.0]);
    for state in 0..3 {
        let mut c = DMatrix::zeros(1, 3);
        c[(0, state)] = 0.9;
        let o = DMatrix::from_fn(3, 3, |r, col| (&c * a.pow(r as u32))[(0, col)]);
        assert_eq!(o.rank(1e-10), 3);
        assert!(kalman_rank_observable(&a, &c, 1e-8).observable);
        let h = StructuredMatrix::new(1, 3, [(0, state)]).unwrap();
        assert!(check_structural_observability(&pattern, &h).unwrap());
    }
}

#[test]
fn unmeasured_parent_is_unobservable_numerically() {
    // x1 -> x2 with self-loops; x2 is the only parent
    let a = DMatrix::from_row_slice(2, 2, &[0.8, 0.0, 1.2, 0.6]);
    let c_child = DMatrix::from_row_slice(1, 2, &[1.0, 0.0]);
    let c_parent = DMatrix::from_row_slice(1, 2, &[0.0, 1.0]);
    assert!(!kalman_rank_observable(&a, &c_child, 1e-8).observable);
    assert!(kalman_rank_observable(&a, &c_parent, 1e-8).observable);
    let pattern = StructuredMatrix::new(2, 2, [(0, 0), (1, 0), (1, 1)]).unwrap();
    let child = StructuredMatrix::new(1, 2, [(0, 0)]).unwrap();
    let parent = StructuredMatrix::new(1, 2, [(0, 1)]).unwrap();
    assert!(!check_structural_observability(&pattern, &child).unwrap());
    assert!(check_structural_observability(&pattern, &parent).unwrap());
}
