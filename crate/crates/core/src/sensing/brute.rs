use crate::error::{Error, Result};

use super::{lsap, ParentCostMatrix, SensorAssignment};

pub const BRUTE_FORCE_MAX_SIZE: usize = 10;

/// Exact assignment by enumerating permutations in lexicographic order.
/// Among equal-cost optima the lexicographically smallest permutation wins.
pub fn brute_force_assignment(matrix: &ParentCostMatrix) -> Result<SensorAssignment> {
    let m = matrix.size();
    if m > BRUTE_FORCE_MAX_SIZE {
        return Err(Error::GuardExceeded {
            what: "assignment size",
            actual: m,
            limit: BRUTE_FORCE_MAX_SIZE,
        });
    }
    let mut perm: Vec<usize> = (0..m).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    loop {
        let total = perm
            .iter()
            .enumerate()
            .try_fold(0.0, |acc, (i, &j)| matrix.cost(i, j).map(|c| acc + c));
        if let Some(total) = total {
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                best = Some((total, perm.clone()));
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    match best {
        Some((_, perm)) => matrix.assignment_from(perm),
        None => {
            // reuse the matching-based certificate
            lsap::ensure_feasible(matrix.costs())?;
            Err(Error::Internal("no permutation found for feasible matrix".into()))
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
