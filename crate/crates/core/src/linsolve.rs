use crate::scalar::Scalar;

/// Solves an overdetermined but consistent system `rows · x = rhs` whose
/// solution is unique. Returns `None` when the system is rank deficient or
/// inconsistent. Pivots on the largest magnitude, which for rationals only
/// matters in that it picks some nonzero entry.
pub(crate) fn solve_unique<S: Scalar>(mut rows: Vec<Vec<S>>, mut rhs: Vec<S>, tol: f64) -> Option<Vec<S>> {
    let n = rows.first().map_or(0, |r| r.len());
    let m = rows.len();
    let mut pivot_row = 0;
    let mut pivot_cols = Vec::with_capacity(n);
    for col in 0..n {
        let best = (pivot_row..m)
            .filter(|&r| rows[r][col].is_support(tol) || (-rows[r][col]).is_support(tol))
            .max_by(|&a, &b| {
                rows[a][col]
                    .magnitude()
                    .partial_cmp(&rows[b][col].magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(best) = best else {
            return None;
        };
        rows.swap(pivot_row, best);
        rhs.swap(pivot_row, best);
        let p = rows[pivot_row][col];
        for c in col..n {
            rows[pivot_row][c] = rows[pivot_row][c] / p;
        }
        rhs[pivot_row] = rhs[pivot_row] / p;
        for r in 0..m {
            if r == pivot_row {
                continue;
            }
            let factor = rows[r][col];
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let delta = factor * rows[pivot_row][c];
                rows[r][c] = rows[r][c] - delta;
            }
            let delta = factor * rhs[pivot_row];
            rhs[r] = rhs[r] - delta;
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    // leftover rows must read 0 = 0
    if rhs[pivot_row..].iter().any(|v| !v.close(S::zero(), tol.max(1e-9))) {
        return None;
    }
    Some(rhs[..n].to_vec())
}
