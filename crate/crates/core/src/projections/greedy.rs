use crate::linalg::{axpy, dot, norm, top_k_indices, Matrix, C64};

/// Indices of the `k` atoms with the largest normalized correlation
/// `|⟨dⱼ, z⟩| / ‖dⱼ‖`.
pub fn threshold(matrix: &Matrix, col_norms: &[f64], z: &[C64], k: usize) -> Vec<usize> {
    let scores: Vec<f64> = matrix
        .adjoint_mul_vec(z)
        .iter()
        .zip(col_norms)
        .map(|(c, n)| c.norm() / n)
        .collect();
    top_k_indices(&scores, k)
}

/// Orthogonal matching pursuit for `k` steps. Each step picks the
/// unselected atom with the largest normalized correlation with the current
/// residual, then removes the new direction from the residual. Returns the
/// selected indices in selection order.
pub fn omp(matrix: &Matrix, col_norms: &[f64], z: &[C64], k: usize) -> Vec<usize> {
    let d = matrix.cols();
    let k = k.min(d);
    let mut residual = z.to_vec();
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(k);
    let mut selected: Vec<usize> = Vec::with_capacity(k);
    let mut taken = vec![false; d];
    for _ in 0..k {
        let corr = matrix.adjoint_mul_vec(&residual);
        let mut best = usize::MAX;
        let mut best_score = f64::NEG_INFINITY;
        for j in 0..d {
            if taken[j] {
                continue;
            }
            let s = corr[j].norm() / col_norms[j];
            if s > best_score {
                best = j;
                best_score = s;
            }
        }
        taken[best] = true;
        selected.push(best);

        // Two passes of Gram-Schmidt keep the basis orthonormal for
        // nearly dependent atoms.
        let atom = matrix.col(best);
        let mut q = atom.to_vec();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &q);
                axpy(-c, b, &mut q);
            }
        }
        let qn = norm(&q);
        if qn > 1e-12 * col_norms[best] {
            q.iter_mut().for_each(|v| *v /= qn);
            let c = dot(&q, &residual);
            axpy(-c, &q, &mut residual);
            basis.push(q);
        }
    }
    selected
}
