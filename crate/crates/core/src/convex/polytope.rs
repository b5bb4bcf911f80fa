use super::lp::{self, Maximum};
use super::Point;
use crate::error::{Error, Result};
use crate::Scalar;

/// `{x ∈ Rᵐ : A x ≤ b}`, possibly empty or unbounded.
#[derive(Debug, Clone, PartialEq)]
pub struct HPolytope<T> {
    dim: usize,
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
}

impl<T: Scalar> HPolytope<T> {
    pub fn new(dim: usize, rows: Vec<Vec<T>>, rhs: Vec<T>) -> Result<Self> {
        if rows.len() != rhs.len() {
            return Err(Error::DimensionMismatch {
                expected: rows.len(),
                found: rhs.len(),
            });
        }
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: r.len(),
            });
        }
        Ok(HPolytope { dim, rows, rhs })
    }

    /// The whole space.
    pub fn universe(dim: usize) -> Self {
        HPolytope {
            dim,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    /// Axis-parallel box `lo ≤ x ≤ hi`: rows `xᵢ ≤ hiᵢ`, `-xᵢ ≤ -loᵢ` per axis.
    pub fn from_box(lo: Vec<T>, hi: Vec<T>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        let dim = lo.len();
        let mut rows = Vec::with_capacity(2 * dim);
        let mut rhs = Vec::with_capacity(2 * dim);
        for (i, (l, h)) in lo.into_iter().zip(hi).enumerate() {
            let mut e = vec![T::zero(); dim];
            e[i] = T::one();
            rows.push(e.clone());
            rhs.push(h);
            e[i] = -T::one();
            rows.push(e);
            rhs.push(-l);
        }
        Ok(HPolytope { dim, rows, rhs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[T] {
        &self.rhs
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, row: Vec<T>, rhs: T) -> Result<()> {
        if row.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: row.len(),
            });
        }
        self.rows.push(row);
        self.rhs.push(rhs);
        Ok(())
    }

    /// Stacks the constraints of several polytopes into their intersection.
    pub fn intersection<'a, I>(dim: usize, parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a HPolytope<T>>,
    {
        let mut out = Self::universe(dim);
        for p in parts {
            if p.dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim,
                });
            }
            out.rows.extend(p.rows.iter().cloned());
            out.rhs.extend(p.rhs.iter().cloned());
        }
        Ok(out)
    }

    /// Index of the first row with `aᵢ·x > bᵢ`.
    pub fn first_violated_row(&self, x: &Point<T>) -> Result<Option<usize>> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(self
            .rows
            .iter()
            .zip(&self.rhs)
            .position(|(row, b)| dot(row, x.coords()) > *b))
    }

    pub fn contains(&self, x: &Point<T>) -> Result<bool> {
        Ok(self.first_violated_row(x)?.is_none())
    }

    pub fn is_empty(&self) -> bool {
        self.emptiness_certificate().is_some()
    }

    /// Farkas multipliers `y ≥ 0` with `yᵀA = 0`, `yᵀb < 0` when empty.
    pub fn emptiness_certificate(&self) -> Option<Vec<T>> {
        lp::farkas_certificate(&self.rows, &self.rhs, self.dim)
    }

    /// Checks a claimed Farkas certificate without solving anything.
    pub fn verify_emptiness_certificate(&self, y: &[T]) -> bool {
        if y.len() != self.rows.len() || y.iter().any(|v| v.lt_zero()) {
            return false;
        }
        let combo_zero = (0..self.dim).all(|k| {
            y.iter()
                .zip(&self.rows)
                .fold(T::zero(), |acc, (yi, r)| acc + yi.clone() * r[k].clone())
                .is_zero()
        });
        combo_zero && dot(y, &self.rhs).lt_zero()
    }

    /// Maximiser and value of `c·x`; errors if empty or unbounded.
    pub fn maximize(&self, c: &[T]) -> Result<(Point<T>, T)> {
        if c.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: c.len(),
            });
        }
        match lp::maximize(&self.rows, &self.rhs, c) {
            Maximum::Empty(_) => Err(Error::EmptyPolytope),
            Maximum::Unbounded => Err(Error::Unbounded),
            Maximum::Optimal { x, value } => Ok((Point::new(x), value)),
        }
    }

    /// Deterministic member point; see [`canonical_point_with_radius`](Self::canonical_point_with_radius).
    pub fn canonical_point(&self) -> Result<Point<T>> {
        self.canonical_point_with_radius().map(|(p, _)| p)
    }

    /// Two-stage canonical point.
    ///
    /// Stage one finds the largest `r ≥ 0` with `A x + r‖aᵢ‖₁ ≤ b` feasible,
    /// the radius of the largest inscribed L∞ ball. Stage two returns the
    /// lexicographically smallest centre of such a ball, fixing one
    /// coordinate per LP.
    pub fn canonical_point_with_radius(&self) -> Result<(Point<T>, T)> {
        if self.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        let m = self.dim;
        let norms: Vec<T> = self
            .rows
            .iter()
            .map(|r| r.iter().fold(T::zero(), |acc, v| acc + v.abs()))
            .collect();

        let mut lifted: Vec<Vec<T>> = self
            .rows
            .iter()
            .zip(&norms)
            .map(|(r, n)| {
                let mut row = r.clone();
                row.push(n.clone());
                row
            })
            .collect();
        let mut lifted_rhs = self.rhs.clone();
        let mut nonneg = vec![T::zero(); m + 1];
        nonneg[m] = -T::one();
        lifted.push(nonneg);
        lifted_rhs.push(T::zero());
        let mut objective = vec![T::zero(); m + 1];
        objective[m] = T::one();
        let radius = match lp::maximize_feasible(&lifted, &lifted_rhs, &objective) {
            Maximum::Optimal { value, .. } => value,
            Maximum::Unbounded => return Err(Error::Unbounded),
            Maximum::Empty(_) => unreachable!("r = 0 is feasible"),
        };

        // Shrunk body {A x ≤ b - r*‖a‖}; fix coordinates one at a time by substitution.
        let mut rhs: Vec<T> = self
            .rhs
            .iter()
            .zip(&norms)
            .map(|(b, n)| b.clone() - radius.clone() * n.clone())
            .collect();
        let mut fixed: Vec<T> = Vec::with_capacity(m);
        for k in 0..m {
            let free = m - k;
            let reduced: Vec<Vec<T>> = self.rows.iter().map(|r| r[k..].to_vec()).collect();
            let mut objective = vec![T::zero(); free];
            objective[0] = -T::one();
            let v = match lp::maximize_feasible(&reduced, &rhs, &objective) {
                Maximum::Optimal { x, .. } => x[0].clone(),
                Maximum::Unbounded => return Err(Error::Unbounded),
                Maximum::Empty(_) => unreachable!("stage-one optimum is feasible"),
            };
            for (b, r) in rhs.iter_mut().zip(&self.rows) {
                *b = b.clone() - r[k].clone() * v.clone();
            }
            fixed.push(v);
        }
        let point = Point::new(fixed);
        debug_assert!(self.contains(&point).unwrap());
        Ok((point, radius))
    }
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn boxed(lo: &[i64], hi: &[i64]) -> HPolytope<Rational> {
        HPolytope::from_box(
            lo.iter().map(|&v| q(v, 1)).collect(),
            hi.iter().map(|&v| q(v, 1)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn emptiness_examples() {
        let a = boxed(&[0, 0], &[1, 1]);
        let b = boxed(&[2, 2], &[3, 3]);
        let both = HPolytope::intersection(2, [&a, &b]).unwrap();
        let y = both.emptiness_certificate().expect("disjoint boxes");
        assert!(both.verify_emptiness_certificate(&y));

        let i = HPolytope::intersection(1, [&boxed(&[0], &[2]), &boxed(&[1], &[3])]).unwrap();
        assert!(!i.is_empty());

        let pt = HPolytope::new(
            1,
            vec![vec![q(1, 1)], vec![q(-1, 1)]],
            vec![q(0, 1), q(0, 1)],
        )
        .unwrap();
        assert!(!pt.is_empty());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(HPolytope::<Rational>::new(2, vec![vec![q(1, 1)]], vec![q(0, 1)]).is_err());
        assert!(HPolytope::<Rational>::new(1, vec![vec![q(1, 1)]], vec![]).is_err());
    }

    #[test]
    fn canonical_point_examples() {
        let (p, r) = boxed(&[0, 0], &[2, 2])
            .canonical_point_with_radius()
            .unwrap();
        assert_eq!(p, Point::from_ints(&[1, 1]));
        assert_eq!(r, q(1, 1));

        let (p, r) = boxed(&[1], &[2]).canonical_point_with_radius().unwrap();
        assert_eq!(p.coords(), &[q(3, 2)]);
        assert_eq!(r, q(1, 2));

        let seg = boxed(&[0, 0], &[0, 2]);
        let (p, r) = seg.canonical_point_with_radius().unwrap();
        assert_eq!(p, Point::from_ints(&[0, 0]));
        assert_eq!(r, q(0, 1));
    }

    #[test]
    fn canonical_point_errors() {
        let empty = HPolytope::intersection(1, [&boxed(&[0], &[1]), &boxed(&[2], &[3])]).unwrap();
        assert_eq!(empty.canonical_point(), Err(Error::EmptyPolytope));
        let half = HPolytope::new(1, vec![vec![q(1, 1)]], vec![q(0, 1)]).unwrap();
        assert_eq!(half.canonical_point(), Err(Error::Unbounded));
        // Bounded radius, unbounded lexicographic stage.
        let strip = HPolytope::new(
            2,
            vec![vec![q(0, 1), q(1, 1)], vec![q(0, 1), q(-1, 1)]],
            vec![q(1, 1), q(0, 1)],
        )
        .unwrap();
        assert_eq!(strip.canonical_point(), Err(Error::Unbounded));
    }

    #[test]
    fn triangle_canonical_point() {
        // x ≥ 0, y ≥ 0, x + y ≤ 2: inscribed L∞ ball has r = 1/2 centred at (1/2, 1/2)
        // and the lexicographic stage pins x first.
        let t = HPolytope::new(
            2,
            vec![
                vec![q(-1, 1), q(0, 1)],
                vec![q(0, 1), q(-1, 1)],
                vec![q(1, 1), q(1, 1)],
            ],
            vec![q(0, 1), q(0, 1), q(2, 1)],
        )
        .unwrap();
        let (p, r) = t.canonical_point_with_radius().unwrap();
        assert_eq!(r, q(1, 2));
        assert_eq!(p.coords(), &[q(1, 2), q(1, 2)]);
    }

    #[test]
    fn float_scalar() {
        let b = HPolytope::from_box(vec![0.0f64, 0.0], vec![2.0, 4.0]).unwrap();
        let (p, r) = b.canonical_point_with_radius().unwrap();
        assert_eq!(r, 1.0);
        assert_eq!(p.coords(), &[1.0, 1.0]);
        assert!(!b.is_empty());
    }
}
