use crate::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LinearSolution<T> {
    Unique(Vec<T>),
    Inconsistent,
    /// Consistent with a positive-dimensional solution set.
    Underdetermined,
}

/// Gauss-Jordan elimination on a square system.
pub(crate) fn solve_square<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> LinearSolution<T> {
    let n = b.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        let Some(p) = (pivot_row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, p);
        b.swap(pivot_row, p);
        let pv = a[pivot_row][col].clone();
        for v in a[pivot_row].iter_mut() {
            *v = v.clone() / pv.clone();
        }
        b[pivot_row] = b[pivot_row].clone() / pv;
        for r in 0..n {
            if r == pivot_row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let pivot = a[pivot_row].clone();
            for (v, pv) in a[r].iter_mut().zip(&pivot) {
                if !pv.is_zero() {
                    *v = (v.clone() - f.clone() * pv.clone()).snap();
                }
            }
            b[r] = (b[r].clone() - f * b[pivot_row].clone()).snap();
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if b[pivot_row..].iter().any(|v| !v.is_zero()) {
        return LinearSolution::Inconsistent;
    }
    if pivot_row < n {
        return LinearSolution::Underdetermined;
    }
    LinearSolution::Unique(b)
}
