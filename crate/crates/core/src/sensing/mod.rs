//! Sensing-cost optimisation.
//!
//! With one sensor per parent SCC the cheapest observable measurement
//! structure is a linear sum assignment of sensors to parent SCCs, where the
//! cost of giving parent SCC `j` to sensor `i` is the cheapest state sensor
//! `i` can measure inside that SCC.

mod brute;
pub mod lsap;

pub use brute::{brute_force_assignment, BRUTE_FORCE_MAX_SIZE};

use crate::error::{Error, Result};
use crate::graph::{ProblemInstance, StructuredMatrix};
use crate::structural::SccPartition;

/// Sensor-by-parent-SCC cost matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ParentCostMatrix {
    parents: Vec<Vec<usize>>,
    cost: Vec<Vec<Option<f64>>>,
    argmin_state: Vec<Vec<Option<usize>>>,
}

impl ParentCostMatrix {
    /// Builds a matrix directly from costs; the measured state for entry
    /// `(i, j)` is taken to be `j`. Used for plain assignment problems.
    pub fn from_costs(cost: Vec<Vec<Option<f64>>>) -> Result<Self> {
        let m = cost.len();
        if let Some(row) = cost.iter().find(|r| r.len() != m) {
            return Err(Error::Shape {
                expected: format!("square {m}x{m} cost matrix"),
                rows: m,
                cols: row.len(),
            });
        }
        for (i, row) in cost.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if let Some(c) = c {
                    if !c.is_finite() || *c < 0.0 {
                        return Err(Error::invalid(
                            format!("C[{}][{}]", i + 1, j + 1),
                            format!("cost {c} is not a finite nonnegative number"),
                        ));
                    }
                }
            }
        }
        let argmin_state = cost
            .iter()
            .map(|row| row.iter().enumerate().map(|(j, c)| c.map(|_| j)).collect())
            .collect();
        Ok(Self {
            parents: (0..m).map(|j| vec![j]).collect(),
            cost,
            argmin_state,
        })
    }

    pub fn size(&self) -> usize {
        self.cost.len()
    }

    /// `None` when sensor cannot measure any state of the parent SCC.
    pub fn cost(&self, sensor: usize, parent: usize) -> Option<f64> {
        self.cost[sensor][parent]
    }

    pub fn argmin_state(&self, sensor: usize, parent: usize) -> Option<usize> {
        self.argmin_state[sensor][parent]
    }

    pub fn costs(&self) -> &[Vec<Option<f64>>] {
        &self.cost
    }

    /// States of each parent SCC, in the column order of the matrix.
    pub fn parent_states(&self) -> &[Vec<usize>] {
        &self.parents
    }

    pub(crate) fn assignment_from(&self, assignment: Vec<usize>) -> Result<SensorAssignment> {
        let mut measured = Vec::with_capacity(assignment.len());
        let mut total = 0.0;
        for (sensor, &parent) in assignment.iter().enumerate() {
            let (Some(c), Some(state)) = (self.cost(sensor, parent), self.argmin_state(sensor, parent))
            else {
                return Err(Error::Internal(format!(
                    "assignment uses forbidden entry ({}, {})",
                    sensor + 1,
                    parent + 1
                )));
            };
            total += c;
            measured.push(state);
        }
        Ok(SensorAssignment {
            assignment,
            measured_state: measured,
            total_cost: total,
        })
    }
}

/// Bijection from sensors to parent SCCs with the state each sensor measures.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorAssignment {
    /// `assignment[sensor]` is a column of the [`ParentCostMatrix`].
    pub assignment: Vec<usize>,
    pub measured_state: Vec<usize>,
    pub total_cost: f64,
}

/// Reduces the sensing costs to one entry per (sensor, parent SCC). Ties in
/// the minimum go to the lowest state index.
pub fn build_parent_cost_matrix(
    instance: &ProblemInstance,
    partition: &SccPartition,
) -> Result<ParentCostMatrix> {
    let m = instance.sensors();
    let parent_ids = partition.parents();
    if parent_ids.len() != m {
        return Err(Error::CardinalityMismatch {
            parents: parent_ids.len(),
            sensors: m,
        });
    }
    let parents: Vec<Vec<usize>> = parent_ids
        .iter()
        .map(|&k| partition.component(k).to_vec())
        .collect();

    let mut cost = vec![vec![None; m]; m];
    let mut argmin_state = vec![vec![None; m]; m];
    for sensor in 0..m {
        for (j, states) in parents.iter().enumerate() {
            // states are sorted, so strict < keeps the lowest index on ties
            let mut best: Option<(f64, usize)> = None;
            for &state in states {
                if let Some(c) = instance.sensing_cost(sensor, state) {
                    if best.is_none_or(|(b, _)| c < b) {
                        best = Some((c, state));
                    }
                }
            }
            if let Some((c, state)) = best {
                cost[sensor][j] = Some(c);
                argmin_state[sensor][j] = Some(state);
            }
        }
    }
    Ok(ParentCostMatrix {
        parents,
        cost,
        argmin_state,
    })
}

/// Minimum-cost assignment of sensors to parent SCCs.
pub fn hungarian_solve(matrix: &ParentCostMatrix) -> Result<SensorAssignment> {
    let assignment = lsap::solve(matrix.costs())?;
    matrix.assignment_from(assignment)
}

/// One nonzero `(sensor, measured state)` per sensor.
pub fn recover_measurement_structure(
    assignment: &SensorAssignment,
    n: usize,
) -> Result<StructuredMatrix> {
    StructuredMatrix::new(
        assignment.measured_state.len(),
        n,
        assignment.measured_state.iter().copied().enumerate(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{digraph_from_pattern, WeightedDigraph};
    use crate::structural::{check_structural_observability, scc_decompose};
    use std::collections::BTreeMap;

    fn instance(a: StructuredMatrix, m: usize, costs: &[((usize, usize), f64)]) -> ProblemInstance {
        let c: BTreeMap<_, _> = costs.iter().copied().collect();
        ProblemInstance::new(a, m, c, WeightedDigraph::new(m, []).unwrap(), false).unwrap()
    }

    fn partition(inst: &ProblemInstance) -> SccPartition {
        scc_decompose(&digraph_from_pattern(inst.system()).unwrap())
    }

    #[test]
    fn min_over_parent_states() {
        let a = StructuredMatrix::new(2, 2, [(0, 1), (1, 0)]).unwrap();
        let inst = instance(a, 1, &[((0, 0), 5.0), ((0, 1), 3.0)]);
        let pcm = build_parent_cost_matrix(&inst, &partition(&inst)).unwrap();
        assert_eq!(pcm.cost(0, 0), Some(3.0));
        assert_eq!(pcm.argmin_state(0, 0), Some(1));
    }

    #[test]
    fn singleton_parents_copy_costs() {
        let inst = instance(
            StructuredMatrix::identity(2),
            2,
            &[((0, 0), 1.0), ((0, 1), 2.0), ((1, 0), 3.0), ((1, 1), 4.0)],
        );
        let pcm = build_parent_cost_matrix(&inst, &partition(&inst)).unwrap();
        assert_eq!(
            pcm.costs(),
            &[vec![Some(1.0), Some(2.0)], vec![Some(3.0), Some(4.0)]]
        );
    }

    #[test]
    fn tie_goes_to_lowest_state() {
        let a = StructuredMatrix::new(3, 3, [(1, 0), (2, 1), (0, 2)]).unwrap();
        let inst = instance(a, 1, &[((0, 0), 7.0), ((0, 1), 2.0), ((0, 2), 2.0)]);
        let pcm = build_parent_cost_matrix(&inst, &partition(&inst)).unwrap();
        assert_eq!(pcm.cost(0, 0), Some(2.0));
        assert_eq!(pcm.argmin_state(0, 0), Some(1));
    }

    #[test]
    fn cardinality_mismatch() {
        let inst = instance(StructuredMatrix::identity(3), 2, &[]);
        match build_parent_cost_matrix(&inst, &partition(&inst)).unwrap_err() {
            Error::CardinalityMismatch { parents, sensors } => {
                assert_eq!((parents, sensors), (3, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn forbidden_when_no_state_measurable() {
        let inst = instance(StructuredMatrix::identity(2), 2, &[((0, 0), 1.0), ((1, 0), 1.0)]);
        let pcm = build_parent_cost_matrix(&inst, &partition(&inst)).unwrap();
        assert_eq!(pcm.cost(0, 1), None);
        assert!(matches!(
            hungarian_solve(&pcm),
            Err(Error::AssignmentInfeasible { .. })
        ));
    }

    #[test]
    fn recover_single_sensor() {
        let sa = SensorAssignment {
            assignment: vec![0],
            measured_state: vec![2],
            total_cost: 1.0,
        };
        let h = recover_measurement_structure(&sa, 3).unwrap();
        assert_eq!(h.iter().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn recovered_structure_is_observable() {
        // child {1} feeds parents {2,3} and {4}
        let a = StructuredMatrix::new(
            4,
            4,
            [(0, 0), (1, 0), (1, 2), (2, 1), (3, 3), (3, 0)],
        )
        .unwrap();
        let mut costs = Vec::new();
        for i in 0..2 {
            for j in 0..4 {
                costs.push(((i, j), (1 + (i * 4 + j) % 5) as f64));
            }
        }
        let inst = instance(a.clone(), 2, &costs);
        let pcm = build_parent_cost_matrix(&inst, &partition(&inst)).unwrap();
        let sa = hungarian_solve(&pcm).unwrap();
        let h = recover_measurement_structure(&sa, 4).unwrap();
        assert!(check_structural_observability(&a, &h).unwrap());
        let cols: std::collections::BTreeSet<_> = h.iter().map(|(_, j)| j).collect();
        assert_eq!(cols.len(), 2);
        assert!((0..2).all(|i| h.row(i).count() == 1));
    }
}
