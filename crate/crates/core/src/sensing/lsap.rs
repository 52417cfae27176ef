//! Linear sum assignment by shortest augmenting paths with dual potentials
//! (the Jonker–Volgenant form of the Hungarian method), O(n^3).
//!
//! Forbidden entries are `None` and are never used. Feasibility is decided
//! up front with a maximum matching so infeasible inputs come back with a
//! Hall-violating sensor set instead of a big-M artefact.

use crate::error::{Error, Result};
use crate::structural::matching::hall_violator;

/// Returns `assignment[row] = column` minimising the summed cost.
pub fn solve(costs: &[Vec<Option<f64>>]) -> Result<Vec<usize>> {
    let n = costs.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if let Some(row) = costs.iter().position(|r| r.len() != n) {
        return Err(Error::Shape {
            expected: format!("square {n}x{n} cost matrix"),
            rows: n,
            cols: costs[row].len(),
        });
    }
    ensure_feasible(costs)?;

    let inf = f64::INFINITY;
    // 1-based with a virtual column 0, as in the classical formulation
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for row in 1..=n {
        owner[0] = row;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];

        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                if let Some(c) = costs[i0 - 1][j - 1] {
                    let reduced = c - u[i0] - v[j];
                    if reduced < minv[j] {
                        minv[j] = reduced;
                        way[j] = j0;
                    }
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if j1 == 0 {
                return Err(Error::Internal(
                    "augmenting path vanished despite a perfect matching".into(),
                ));
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }

        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[owner[j] - 1] = j - 1;
    }
    Ok(assignment)
}

pub(crate) fn ensure_feasible(costs: &[Vec<Option<f64>>]) -> Result<()> {
    let n = costs.len();
    let adj: Vec<Vec<usize>> = costs
        .iter()
        .map(|row| (0..n).filter(|&j| row[j].is_some()).collect())
        .collect();
    match hall_violator(&adj, n) {
        None => Ok(()),
        Some(h) => Err(Error::AssignmentInfeasible {
            sensors: h.left,
            parents: h.neighbours,
        }),
    }
}
