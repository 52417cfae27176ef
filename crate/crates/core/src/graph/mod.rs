//! Structured (0/1) matrices, digraphs and the problem/design data model.
//!
//! Everything here is 0-based. The 1-based indices used in documents are
//! converted in [`json`] and nowhere else.

mod dot;
mod instance;
pub mod json;

use std::collections::{BTreeMap, BTreeSet};

pub use dot::{export_dot, export_weighted_dot};
pub use instance::{DesignResult, NetworkOptimality, ProblemInstance};

use crate::error::{Error, Result};

/// Zero/nonzero pattern of a real matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredMatrix {
    rows: usize,
    cols: usize,
    nonzeros: BTreeSet<(usize, usize)>,
}

impl StructuredMatrix {
    /// Builds a pattern, rejecting out-of-range and duplicate entries.
    pub fn new(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut nonzeros = BTreeSet::new();
        for (k, (i, j)) in entries.into_iter().enumerate() {
            if i >= rows || j >= cols {
                return Err(Error::invalid(
                    format!("entry[{k}]"),
                    format!("({}, {}) outside {rows}x{cols}", i + 1, j + 1),
                ));
            }
            if !nonzeros.insert((i, j)) {
                return Err(Error::invalid(
                    format!("entry[{k}]"),
                    format!("duplicate entry ({}, {})", i + 1, j + 1),
                ));
            }
        }
        Ok(Self {
            rows,
            cols,
            nonzeros,
        })
    }

    pub fn empty(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            nonzeros: BTreeSet::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            nonzeros: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.nonzeros.len()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.nonzeros.contains(&(row, col))
    }

    /// Nonzeros in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nonzeros.iter().copied()
    }

    pub fn row(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        self.nonzeros
            .range((row, 0)..(row + 1, 0))
            .map(|&(_, j)| j)
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::Shape {
                expected: "square pattern".into(),
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub(crate) fn require_shape(&self, rows: usize, cols: usize) -> Result<()> {
        if self.rows == rows && self.cols == cols {
            Ok(())
        } else {
            Err(Error::Shape {
                expected: format!("{rows}x{cols} pattern"),
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

/// Unweighted digraph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Digraph {
    pub fn new(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut set: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nodes];
        for (u, v) in edges {
            assert!(u < nodes && v < nodes, "edge ({u}, {v}) out of range");
            set[u].insert(v);
        }
        let edge_count = set.iter().map(BTreeSet::len).sum();
        Self {
            out: set.into_iter().map(|s| s.into_iter().collect()).collect(),
            edge_count,
        }
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn successors(&self, node: usize) -> &[usize] {
        &self.out[node]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.node_count(), self.edges().map(|(u, v)| (v, u)))
    }
}

/// System digraph of a square pattern: nonzero `(i, j)` becomes edge `j -> i`.
pub fn digraph_from_pattern(pattern: &StructuredMatrix) -> Result<Digraph> {
    let n = pattern.require_square()?;
    Ok(Digraph::new(n, pattern.iter().map(|(i, j)| (j, i))))
}

/// Digraph with nonnegative arc costs. A missing arc is a forbidden link.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    nodes: usize,
    arcs: BTreeMap<(usize, usize), f64>,
}

impl WeightedDigraph {
    pub fn new(nodes: usize, arcs: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, (u, v, cost)) in arcs.into_iter().enumerate() {
            let path = format!("links[{k}]");
            if u >= nodes || v >= nodes {
                return Err(Error::invalid(
                    path,
                    format!("link {} -> {} outside {nodes} sensors", u + 1, v + 1),
                ));
            }
            if u == v {
                return Err(Error::invalid(path, format!("self-link at sensor {}", u + 1)));
            }
            if !cost.is_finite() || cost < 0.0 {
                return Err(Error::invalid(
                    format!("{path}.cost"),
                    format!("cost {cost} is not a finite nonnegative number"),
                ));
            }
            if map.insert((u, v), cost).is_some() {
                return Err(Error::invalid(
                    path,
                    format!("duplicate link {} -> {}", u + 1, v + 1),
                ));
            }
        }
        Ok(Self { nodes, arcs: map })
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn cost(&self, from: usize, to: usize) -> Option<f64> {
        self.arcs.get(&(from, to)).copied()
    }

    /// Arcs in lexicographic `(from, to)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.arcs.iter().map(|(&(u, v), &c)| (u, v, c))
    }

    pub fn topology(&self) -> Digraph {
        Digraph::new(self.nodes, self.arcs.keys().copied())
    }

    pub fn reversed(&self) -> Self {
        Self {
            nodes: self.nodes,
            arcs: self.arcs.iter().map(|(&(u, v), &c)| ((v, u), c)).collect(),
        }
    }

    /// True when every arc has an equal-cost reverse arc.
    pub fn is_symmetric(&self) -> bool {
        self.arcs
            .iter()
            .all(|(&(u, v), &c)| self.arcs.get(&(v, u)) == Some(&c))
    }
}
