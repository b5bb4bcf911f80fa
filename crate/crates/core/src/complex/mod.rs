//! Abstract simplicial complexes.
//!
//! Faces are stored as strictly ascending vertex lists and ordered first by
//! cardinality, then lexicographically. Every enumeration in the crate walks
//! faces in that order, so all reports and witnesses are deterministic.

mod remote;
mod subdivision;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use remote::{
    disjoint_simplex_pairs, is_remote, remoteness_lemma_check, RemotenessReport,
    RemotenessViolation,
};
pub use subdivision::{
    barycentric_subdivision, chains_below, chains_within, maximal_chains, SdComplex,
};

/// Opaque vertex label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// A strictly ascending, duplicate-free set of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Face(Vec<VertexId>);

impl Face {
    /// Sorts the input; fails if a vertex repeats.
    pub fn new<I, V>(vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut v: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(v.iter().map(|x| x.0).collect()));
        }
        Ok(Face(v))
    }

    pub(crate) fn from_sorted(v: Vec<VertexId>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Face(v)
    }

    pub fn singleton(v: VertexId) -> Self {
        Face(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension, i.e. `len - 1`. Panics on the empty face.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut v: Vec<VertexId> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Face(v)
    }

    pub fn without(&self, v: VertexId) -> Face {
        Face(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// All nonempty subsets, in canonical order.
    pub fn nonempty_subsets(&self) -> Vec<Face> {
        let n = self.0.len();
        assert!(n < 32, "face too large to enumerate subsets");
        let mut out: Vec<Face> = (1u32..(1 << n))
            .map(|mask| {
                Face(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect();
        out.sort();
        out
    }

    /// Subsets obtained by dropping exactly one vertex.
    pub fn boundary(&self) -> impl Iterator<Item = Face> + '_ {
        self.0.iter().map(move |&v| self.without(v))
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl TryFrom<Vec<u32>> for Face {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Face::new(v)
    }
}

impl From<Face> for Vec<u32> {
    fn from(f: Face) -> Self {
        f.0.into_iter().map(|v| v.0).collect()
    }
}

/// Face counts by dimension; entry `i` counts the `i`-dimensional faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl PartialEq<[usize]> for FVector {
    fn eq(&self, other: &[usize]) -> bool {
        self.0 == other
    }
}

/// A downward-closed family of nonempty faces over a vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    vertices: BTreeSet<VertexId>,
    faces: BTreeSet<Face>,
}

impl SimplicialComplex {
    /// Downward closure of the given facets.
    pub fn from_facets<I, F, V>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut given = Vec::new();
        for f in facets {
            let face = Face::new(f)?;
            if face.is_empty() {
                return Err(Error::EmptyFacet);
            }
            given.push(face);
        }
        // Largest first: a facet that is already present has all its subsets present too.
        given.sort_by(|a, b| b.cmp(a));
        let mut faces = BTreeSet::new();
        for face in given {
            if faces.contains(&face) {
                continue;
            }
            faces.extend(face.nonempty_subsets());
        }
        Ok(Self::from_closed_faces(faces))
    }

    /// Callers guarantee the set is downward closed.
    pub(crate) fn from_closed_faces(faces: BTreeSet<Face>) -> Self {
        let vertices = faces
            .iter()
            .take_while(|f| f.len() == 1)
            .map(|f| f.vertices()[0])
            .collect();
        let out = SimplicialComplex { vertices, faces };
        debug_assert!(out.is_downward_closed());
        out
    }

    /// The `k`-skeleton of the `n`-simplex on vertices `0..=n`.
    pub fn skeleton(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::BadSkeleton { n, k });
        }
        let n = u32::try_from(n).map_err(|_| Error::BadSkeleton { n, k })?;
        Ok(Self::skeleton_on((0..=n).map(VertexId), k))
    }

    /// All faces of size at most `k + 1` on the given vertices.
    pub fn skeleton_on<I: IntoIterator<Item = VertexId>>(vertices: I, k: usize) -> Self {
        let vs: BTreeSet<VertexId> = vertices.into_iter().collect();
        let mut faces = BTreeSet::new();
        let mut level: Vec<Vec<VertexId>> = vs.iter().map(|&v| vec![v]).collect();
        for _ in 0..=k {
            if level.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for f in &level {
                let last = *f.last().unwrap();
                for &v in vs.range(VertexId(last.0 + 1)..) {
                    let mut g = f.clone();
                    g.push(v);
                    next.push(g);
                }
            }
            faces.extend(level.drain(..).map(Face::from_sorted));
            level = next;
        }
        Self::from_closed_faces(faces)
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    /// All nonempty faces in canonical order.
    pub fn faces(&self) -> impl Iterator<Item = &Face> + '_ {
        self.faces.iter()
    }

    pub fn face_set(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.faces.contains(face)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        let e = if a < b { vec![a, b] } else { vec![b, a] };
        self.faces.contains(&Face(e))
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.iter().next_back().map(Face::dim)
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = &Face> + '_ {
        self.faces.iter().filter(move |f| f.len() == d + 1)
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0; self.dim().map_or(0, |d| d + 1)];
        for f in &self.faces {
            counts[f.dim()] += 1;
        }
        FVector(counts)
    }

    /// Faces not contained in any other face, in canonical order.
    pub fn facets(&self) -> Vec<Face> {
        let mut maximal: Vec<Face> = Vec::new();
        for f in self.faces.iter().rev() {
            if !maximal.iter().any(|m| f.is_subset(m)) {
                maximal.push(f.clone());
            }
        }
        maximal.sort();
        maximal
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces
            .iter()
            .all(|f| f.len() == 1 || f.boundary().all(|g| self.faces.contains(&g)))
            && self
                .vertices
                .iter()
                .all(|&v| self.faces.contains(&Face::singleton(v)))
    }

    /// Faces of the subcomplex induced on the given face (its closure).
    pub fn closure_of(&self, face: &Face) -> Result<Vec<Face>> {
        if !self.contains(face) {
            return Err(Error::NotAFace(face.clone()));
        }
        Ok(face.nonempty_subsets())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(k: &SimplicialComplex) -> Vec<usize> {
        k.f_vector().0
    }

    #[test]
    fn facets_close_downward() {
        let tri = SimplicialComplex::from_facets([[1u32, 2, 3]]).unwrap();
        assert_eq!(fv(&tri), vec![3, 3, 1]);
        let path = SimplicialComplex::from_facets([[1u32, 2], [2, 3]]).unwrap();
        assert_eq!(fv(&path), vec![3, 2]);
        let pts = SimplicialComplex::from_facets([[1u32], [2]]).unwrap();
        assert_eq!(fv(&pts), vec![2]);
    }

    #[test]
    fn duplicate_vertex_rejected() {
        let err = SimplicialComplex::from_facets([vec![1u32, 2, 1]]).unwrap_err();
        assert!(matches!(err, Error::DuplicateVertex(_)));
        assert_eq!(
            SimplicialComplex::from_facets([Vec::<u32>::new()]).unwrap_err(),
            Error::EmptyFacet
        );
    }

    #[test]
    fn skeleton_counts() {
        assert_eq!(fv(&SimplicialComplex::skeleton(4, 1).unwrap()), vec![5, 10]);
        assert_eq!(
            fv(&SimplicialComplex::skeleton(6, 2).unwrap()),
            vec![7, 21, 35]
        );
        assert_eq!(
            fv(&SimplicialComplex::skeleton(2, 2).unwrap()),
            vec![3, 3, 1]
        );
        assert_eq!(fv(&SimplicialComplex::skeleton(0, 0).unwrap()), vec![1]);
        assert!(matches!(
            SimplicialComplex::skeleton(2, 3),
            Err(Error::BadSkeleton { n: 2, k: 3 })
        ));
    }

    #[test]
    fn canonical_face_order() {
        let a = Face::new([3u32, 1]).unwrap();
        let b = Face::new([2u32]).unwrap();
        let c = Face::new([1u32, 2]).unwrap();
        let mut v = vec![a.clone(), b.clone(), c.clone()];
        v.sort();
        assert_eq!(v, vec![b, c, a]);
        assert_eq!(Face::new([3u32, 1]).unwrap().to_string(), "{1,3}");
    }

    #[test]
    fn facets_of_closure() {
        let k = SimplicialComplex::from_facets([vec![1u32, 2], vec![2, 3, 4], vec![3]]).unwrap();
        let facets: Vec<String> = k.facets().iter().map(ToString::to_string).collect();
        assert_eq!(facets, vec!["{1,2}", "{2,3,4}"]);
        let again =
            SimplicialComplex::from_facets(k.facets().into_iter().map(Vec::<u32>::from)).unwrap();
        assert_eq!(again, k);
    }
}
