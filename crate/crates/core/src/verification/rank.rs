//! Kalman observability rank by Krylov-subspace expansion.
//!
//! The observable subspace of `(A, C)` is the smallest `A^T`-invariant
//! subspace containing the rows of `C`. It is grown from an orthonormal basis
//! of `C^T`, appending the part of `A^T * (new directions)` not already
//! spanned, until nothing new appears. This avoids forming `C A^k` for large
//! `k`.

use nalgebra::DMatrix;

/// Something that can apply `A^T` to a block of column vectors.
pub trait TransposeOperator {
    fn dim(&self) -> usize;
    fn apply_transpose(&self, block: &DMatrix<f64>) -> DMatrix<f64>;
}

impl TransposeOperator for DMatrix<f64> {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply_transpose(&self, block: &DMatrix<f64>) -> DMatrix<f64> {
        self.tr_mul(block)
    }
}

/// `W ⊗ A` applied implicitly.
///
/// With `v = [v_1; ...; v_m]` and `V = [v_1 ... v_m]` (n x m), the transpose
/// `(W ⊗ A)^T v` reshapes to `A^T V W`.
pub struct KroneckerOperator<'a> {
    pub w: &'a DMatrix<f64>,
    pub a: &'a DMatrix<f64>,
}

impl TransposeOperator for KroneckerOperator<'_> {
    fn dim(&self) -> usize {
        self.w.nrows() * self.a.nrows()
    }

    fn apply_transpose(&self, block: &DMatrix<f64>) -> DMatrix<f64> {
        let n = self.a.nrows();
        let m = self.w.nrows();
        let mut out = DMatrix::zeros(n * m, block.ncols());
        for c in 0..block.ncols() {
            let v = DMatrix::from_column_slice(n, m, block.column(c).as_slice());
            let image = self.a.tr_mul(&v) * self.w;
            out.column_mut(c).copy_from_slice(image.as_slice());
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankResult {
    pub observable: bool,
    pub rank: usize,
    pub dim: usize,
}

impl RankResult {
    pub fn deficit(&self) -> usize {
        self.dim - self.rank
    }
}

/// Kalman rank test for a dense pair `(a, c)`.
///
/// Directions are accepted when their singular value exceeds
/// `tolerance * largest` of the block they come from.
pub fn kalman_rank_observable(a: &DMatrix<f64>, c: &DMatrix<f64>, tolerance: f64) -> RankResult {
    assert_eq!(a.nrows(), a.ncols(), "system matrix must be square");
    assert_eq!(c.ncols(), a.nrows(), "output matrix width must match the state dimension");
    observable_subspace_rank(a, c, tolerance)
}

pub fn observable_subspace_rank(
    op: &dyn TransposeOperator,
    c: &DMatrix<f64>,
    tolerance: f64,
) -> RankResult {
    let dim = op.dim();
    let mut basis: Vec<DMatrix<f64>> = Vec::new();
    let mut rank = 0usize;
    let mut candidates = c.transpose();

    while rank < dim && candidates.ncols() > 0 {
        let Some(fresh) = new_directions(&basis, candidates, tolerance) else {
            break;
        };
        rank += fresh.ncols();
        candidates = op.apply_transpose(&fresh);
        basis.push(fresh);
    }
    RankResult {
        observable: rank == dim,
        rank: rank.min(dim),
        dim,
    }
}

fn new_directions(
    basis: &[DMatrix<f64>],
    candidates: DMatrix<f64>,
    tolerance: f64,
) -> Option<DMatrix<f64>> {
    let scale = candidates.clone().singular_values().max();
    if !(scale > 0.0) {
        return None;
    }
    let mut residual = candidates;
    // two passes of block Gram-Schmidt
    for _ in 0..2 {
        for q in basis {
            let coeffs = q.tr_mul(&residual);
            residual -= q * coeffs;
        }
    }
    let svd = residual.svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let keep: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > tolerance * scale)
        .map(|(k, _)| k)
        .collect();
    if keep.is_empty() {
        return None;
    }
    Some(u.select_columns(keep.iter()))
}
