use std::fmt;

use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point<T>(Vec<T>);

impl<T: Scalar> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Affine combination `Σ wᵢ pᵢ`.
    pub fn combination<'a, I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (&'a T, &'a Point<T>)>,
    {
        let mut out = vec![T::zero(); dim];
        for (w, p) in terms {
            for (o, c) in out.iter_mut().zip(&p.0) {
                *o = o.clone() + w.clone() * c.clone();
            }
        }
        Point(out)
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
