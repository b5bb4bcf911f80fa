use super::linsolve::{solve_square, LinearSolution};
use super::lp::{solve_standard, Standard};
use super::Point;
use crate::error::{Error, Result};
use crate::Scalar;

fn common_dim<T: Scalar>(a: &[Point<T>], b: &[Point<T>]) -> Result<usize> {
    let first = a.first().or(b.first()).ok_or(Error::NoPoints)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::NoPoints);
    }
    let dim = first.dim();
    if let Some(p) = a.iter().chain(b).find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: p.dim(),
        });
    }
    Ok(dim)
}

/// A point of `conv(a) ∩ conv(b)`, or `None` when the hulls are disjoint.
///
/// Solves `Σλᵢaᵢ = Σμⱼbⱼ`, `Σλ = Σμ = 1`, `λ, μ ≥ 0` exactly.
pub fn hull_intersection<T: Scalar>(a: &[Point<T>], b: &[Point<T>]) -> Result<Option<Point<T>>> {
    let dim = common_dim(a, b)?;
    let n = a.len() + b.len();
    let mut rows = Vec::with_capacity(dim + 2);
    for k in 0..dim {
        let mut row = Vec::with_capacity(n);
        row.extend(a.iter().map(|p| p.coords()[k].clone()));
        row.extend(b.iter().map(|p| -p.coords()[k].clone()));
        rows.push(row);
    }
    let mut ones_a = vec![T::one(); a.len()];
    ones_a.resize(n, T::zero());
    let mut ones_b = vec![T::zero(); a.len()];
    ones_b.resize(n, T::one());
    rows.push(ones_a);
    rows.push(ones_b);
    let mut rhs = vec![T::zero(); dim];
    rhs.push(T::one());
    rhs.push(T::one());
    match solve_standard(&rows, &rhs, &vec![T::zero(); n]) {
        Standard::Optimal { y, .. } => Ok(Some(Point::combination(
            dim,
            y[..a.len()].iter().zip(a.iter()),
        ))),
        Standard::Infeasible => Ok(None),
        Standard::Unbounded => unreachable!("zero objective"),
    }
}

pub fn hulls_intersect<T: Scalar>(a: &[Point<T>], b: &[Point<T>]) -> Result<bool> {
    Ok(hull_intersection(a, b)?.is_some())
}

/// Membership of `p` in `conv(pts)`.
pub fn point_in_hull<T: Scalar>(p: &Point<T>, pts: &[Point<T>]) -> Result<bool> {
    hulls_intersect(std::slice::from_ref(p), pts)
}

/// Outcome of intersecting the affine spans of two `d`-simplices in `R^{2d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Crossing<T> {
    /// 1 iff the spans meet at a point interior to both simplices.
    pub parity: u8,
    /// Barycentric coordinates of the meeting point, `None` if the spans are disjoint.
    pub coordinates: Option<(Vec<T>, Vec<T>)>,
}

impl<T: Scalar> Crossing<T> {
    pub fn point(&self, sigma: &[Point<T>]) -> Option<Point<T>> {
        let (lambda, _) = self.coordinates.as_ref()?;
        Some(Point::combination(sigma[0].dim(), lambda.iter().zip(sigma)))
    }
}

/// Mod-2 intersection number of two straight `d`-simplices in `R^{2d}`.
///
/// The spans meet in a single point for generic input. Returns parity 1
/// when every barycentric coordinate of that point is strictly positive,
/// 0 when one is strictly negative or the spans are disjoint. Spans that
/// meet in more than a point, or a coordinate that is exactly zero, are
/// reported as [`Error::Genericity`].
pub fn generic_crossing_parity<T: Scalar>(
    sigma: &[Point<T>],
    tau: &[Point<T>],
) -> Result<Crossing<T>> {
    let ambient = common_dim(sigma, tau)?;
    let k = sigma.len();
    if tau.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: tau.len(),
        });
    }
    if ambient != 2 * (k - 1) {
        return Err(Error::DimensionMismatch {
            expected: 2 * (k - 1),
            found: ambient,
        });
    }
    let n = 2 * k;
    let mut a = Vec::with_capacity(n);
    for c in 0..ambient {
        let mut row = Vec::with_capacity(n);
        row.extend(sigma.iter().map(|p| p.coords()[c].clone()));
        row.extend(tau.iter().map(|p| -p.coords()[c].clone()));
        a.push(row);
    }
    let mut ones_s = vec![T::one(); k];
    ones_s.resize(n, T::zero());
    let mut ones_t = vec![T::zero(); k];
    ones_t.resize(n, T::one());
    a.push(ones_s);
    a.push(ones_t);
    let mut b = vec![T::zero(); ambient];
    b.push(T::one());
    b.push(T::one());

    match solve_square(a, b) {
        LinearSolution::Inconsistent => Ok(Crossing {
            parity: 0,
            coordinates: None,
        }),
        LinearSolution::Underdetermined => Err(Error::Genericity(
            "affine spans meet in more than one point".into(),
        )),
        LinearSolution::Unique(mut x) => {
            if x.iter().any(|v| v.is_zero()) {
                return Err(Error::Genericity(
                    "intersection lies on the boundary of a simplex".into(),
                ));
            }
            let parity = u8::from(x.iter().all(|v| v.gt_zero()));
            let mu = x.split_off(k);
            Ok(Crossing {
                parity,
                coordinates: Some((x, mu)),
            })
        }
    }
}
