//! Dense two-phase simplex over an exact field, Bland's rule throughout.
//!
//! Problems are in standard form: minimise `c·y` subject to `E y = f`,
//! `y ≥ 0`. Polytope queries over free variables are answered through the
//! LP dual, which keeps the tableau at `ambient + 1` rows regardless of how
//! many halfspaces are stacked.

use crate::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Standard<T> {
    Infeasible,
    Unbounded,
    Optimal {
        y: Vec<T>,
        value: T,
        /// Optimal dual vector `π`, i.e. a solution of `Eᵀπ ≤ c` with `f·π = value`.
        duals: Vec<T>,
    },
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    /// Reduced costs; the last entry is minus the objective value.
    obj: Vec<T>,
    basis: Vec<usize>,
    structural: usize,
}

impl<T: Scalar> Tableau<T> {
    fn rhs(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() / p.clone();
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = (v.clone() - factor.clone() * pv.clone()).snap();
                }
            }
        }
        if !self.obj[col].is_zero() {
            let factor = self.obj[col].clone();
            for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = (v.clone() - factor.clone() * pv.clone()).snap();
                }
            }
        }
        self.basis[r] = col;
    }

    /// Runs simplex iterations over structural columns; `false` if unbounded.
    fn optimise(&mut self) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(col) = (0..self.structural).find(|&j| self.obj[j].lt_zero()) else {
                return true;
            };
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].gt_zero() {
                    continue;
                }
                let ratio = row[rhs].clone() / row[col].clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

/// Minimise `cost·y` subject to `rows·y = rhs`, `y ≥ 0`.
pub(crate) fn solve_standard<T: Scalar>(rows: &[Vec<T>], rhs: &[T], cost: &[T]) -> Standard<T> {
    let m = rows.len();
    let n = cost.len();
    debug_assert_eq!(rhs.len(), m);
    debug_assert!(rows.iter().all(|r| r.len() == n));

    // Flip rows so the right-hand side is nonnegative, then seed an
    // artificial basis.
    let signs: Vec<bool> = rhs.iter().map(|v| v.lt_zero()).collect();
    let width = n + m + 1;
    let mut t_rows = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let mut r = Vec::with_capacity(width);
        for v in row {
            r.push(if signs[i] { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            r.push(if k == i { T::one() } else { T::zero() });
        }
        r.push(if signs[i] {
            -rhs[i].clone()
        } else {
            rhs[i].clone()
        });
        t_rows.push(r);
    }
    // Phase one minimises the sum of artificials; their reduced costs start at zero.
    let mut obj = vec![T::zero(); width];
    for r in &t_rows {
        for j in 0..n {
            obj[j] = obj[j].clone() - r[j].clone();
        }
        obj[width - 1] = obj[width - 1].clone() - r[width - 1].clone();
    }
    let mut tab = Tableau {
        rows: t_rows,
        obj,
        basis: (n..n + m).collect(),
        structural: n,
    };

    let bounded = tab.optimise();
    debug_assert!(bounded, "phase one is bounded below by zero");
    if tab.obj[width - 1].lt_zero() {
        return Standard::Infeasible;
    }

    // Drive zero-level artificials out of the basis where possible; rows
    // where that fails are redundant and stay inert.
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    // Phase two.
    let mut obj = vec![T::zero(); width];
    obj[..n].clone_from_slice(cost);
    for (i, row) in tab.rows.iter().enumerate() {
        let b = tab.basis[i];
        if b >= n || cost[b].is_zero() {
            continue;
        }
        for j in 0..width {
            if !row[j].is_zero() {
                obj[j] = obj[j].clone() - cost[b].clone() * row[j].clone();
            }
        }
    }
    tab.obj = obj;
    if !tab.optimise() {
        return Standard::Unbounded;
    }

    let mut y = vec![T::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            y[b] = tab.rows[i][width - 1].clone();
        }
    }
    let value = -tab.obj[width - 1].clone();
    let duals = (0..m)
        .map(|i| {
            let p = -tab.obj[n + i].clone();
            if signs[i] {
                -p
            } else {
                p
            }
        })
        .collect();
    Standard::Optimal { y, value, duals }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Maximum<T> {
    /// Farkas multipliers `y ≥ 0` with `yᵀA = 0` and `yᵀb < 0`.
    Empty(Vec<T>),
    Unbounded,
    Optimal {
        x: Vec<T>,
        value: T,
    },
}

/// Farkas test for `{x : A x ≤ b}`. Returns a certificate of emptiness,
/// or `None` when the set is nonempty.
pub(crate) fn farkas_certificate<T: Scalar>(a: &[Vec<T>], b: &[T], dim: usize) -> Option<Vec<T>> {
    let r = a.len();
    let mut rows: Vec<Vec<T>> = (0..dim)
        .map(|k| a.iter().map(|row| row[k].clone()).collect())
        .collect();
    rows.push(vec![T::one(); r]);
    let mut rhs = vec![T::zero(); dim];
    rhs.push(T::one());
    match solve_standard(&rows, &rhs, b) {
        Standard::Optimal { y, value, .. } if value.lt_zero() => Some(y),
        _ => None,
    }
}

/// Maximise `c·x` over `{x : A x ≤ b}` with `x` free.
pub(crate) fn maximize<T: Scalar>(a: &[Vec<T>], b: &[T], c: &[T]) -> Maximum<T> {
    if let Some(y) = farkas_certificate(a, b, c.len()) {
        return Maximum::Empty(y);
    }
    maximize_feasible(a, b, c)
}

/// As [`maximize`] for a set already known to be nonempty.
pub(crate) fn maximize_feasible<T: Scalar>(a: &[Vec<T>], b: &[T], c: &[T]) -> Maximum<T> {
    let dim = c.len();
    let rows: Vec<Vec<T>> = (0..dim)
        .map(|k| a.iter().map(|row| row[k].clone()).collect())
        .collect();
    match solve_standard(&rows, c, b) {
        Standard::Optimal { value, duals, .. } => Maximum::Optimal { x: duals, value },
        // The primal is feasible, so an infeasible dual means an unbounded primal.
        Standard::Infeasible => Maximum::Unbounded,
        Standard::Unbounded => unreachable!("dual of a feasible maximisation is bounded below"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn standard_form_optimum() {
        // min -y0 - y1 s.t. y0 + 2 y1 + s = 4, 3 y0 + y1 + t = 6
        let rows = vec![ints(&[1, 2, 1, 0]), ints(&[3, 1, 0, 1])];
        let Standard::Optimal { y, value, duals } =
            solve_standard(&rows, &ints(&[4, 6]), &ints(&[-1, -1, 0, 0]))
        else {
            panic!("expected optimum");
        };
        assert_eq!(value, q(-14, 5));
        assert_eq!(&y[..2], &[q(8, 5), q(6, 5)]);
        // Strong duality.
        assert_eq!(&duals[0] * q(4, 1) + &duals[1] * q(6, 1), value);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let rows = vec![ints(&[1, 1])];
        assert_eq!(
            solve_standard(&rows, &ints(&[-1]), &ints(&[0, 0])),
            Standard::Infeasible
        );
        assert_eq!(
            solve_standard(&[ints(&[1, -1])], &ints(&[0]), &ints(&[-1, 0])),
            Standard::Unbounded
        );
    }

    #[test]
    fn negative_rhs_duals() {
        // min y s.t. -y = -3: dual max -3π s.t. -π ≤ 1, optimum π = -1.
        let Standard::Optimal { y, value, duals } =
            solve_standard(&[ints(&[-1])], &ints(&[-3]), &ints(&[1]))
        else {
            panic!()
        };
        assert_eq!(y, ints(&[3]));
        assert_eq!(value, q(3, 1));
        assert_eq!(duals, ints(&[-1]));
    }

    #[test]
    fn maximize_over_box() {
        let a = vec![ints(&[1, 0]), ints(&[-1, 0]), ints(&[0, 1]), ints(&[0, -1])];
        let b = ints(&[2, 0, 3, -1]);
        let Maximum::Optimal { x, value } = maximize(&a, &b, &ints(&[1, 1])) else {
            panic!()
        };
        assert_eq!(value, q(5, 1));
        assert_eq!(x, ints(&[2, 3]));
        assert_eq!(
            maximize(&a[..2], &b[..2], &ints(&[0, 1])),
            Maximum::Unbounded
        );
    }

    #[test]
    fn farkas_detects_empty() {
        let a = vec![ints(&[1]), ints(&[-1])];
        let b = ints(&[0, -1]);
        let y = farkas_certificate(&a, &b, 1).expect("x ≤ 0, x ≥ 1 is empty");
        let combo: Rational = y.iter().zip(&a).map(|(yi, r)| yi * &r[0]).sum();
        assert_eq!(combo, q(0, 1));
        let rhs: Rational = y.iter().zip(&b).map(|(yi, bi)| yi * bi).sum();
        assert!(rhs < q(0, 1));
        assert!(farkas_certificate(&a, &ints(&[0, 0]), 1).is_none());
        assert!(farkas_certificate::<Rational>(&[], &[], 2).is_none());
    }
}
