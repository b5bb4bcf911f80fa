use std::collections::{BTreeMap, BTreeSet};

use super::{Face, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

/// Barycentric subdivision together with its vertex labelling.
///
/// Vertex `i` (1-based) of the subdivision stands for the `i`-th nonempty
/// face of the original complex in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdComplex {
    complex: SimplicialComplex,
    labels: Vec<Face>,
    index: BTreeMap<Face, VertexId>,
}

impl SdComplex {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn into_complex(self) -> SimplicialComplex {
        self.complex
    }

    /// Face of the original complex represented by `v`.
    pub fn label(&self, v: VertexId) -> Option<&Face> {
        (v.0 as usize)
            .checked_sub(1)
            .and_then(|i| self.labels.get(i))
    }

    /// Subdivision vertex standing for an original face.
    pub fn vertex_of(&self, face: &Face) -> Option<VertexId> {
        self.index.get(face).copied()
    }

    /// `(vertex, original face)` pairs in vertex order.
    pub fn labels(&self) -> impl Iterator<Item = (VertexId, &Face)> + '_ {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, f)| (VertexId(i as u32 + 1), f))
    }

    /// True iff `face` was a face of the subdivided complex.
    pub fn base_contains(&self, face: &Face) -> bool {
        self.index.contains_key(face)
    }

    /// Maps a chain of original faces to the subdivision face it spans.
    pub fn chain_face(&self, chain: &[Face]) -> Result<Face> {
        let mut ids = chain
            .iter()
            .map(|f| self.vertex_of(f).ok_or_else(|| Error::NotAFace(f.clone())))
            .collect::<Result<Vec<_>>>()?;
        ids.sort_unstable();
        Face::new(ids)
    }

    /// Original faces labelling the vertices of `face`, largest first.
    pub fn chain_of(&self, face: &Face) -> Vec<Face> {
        let mut chain: Vec<Face> = face
            .vertices()
            .iter()
            .filter_map(|&v| self.label(v).cloned())
            .collect();
        chain.sort_by(|a, b| b.cmp(a));
        chain
    }

    /// Faces of the subdivision lying in `sd alpha`, in canonical order.
    pub fn subdivided_subcomplex(&self, alpha: &Face) -> Result<Vec<Face>> {
        if !self.base_contains(alpha) {
            return Err(Error::NotAFace(alpha.clone()));
        }
        let mut out: Vec<Face> = chains_within(alpha)
            .iter()
            .map(|c| self.chain_face(c).expect("subsets of a face are faces"))
            .collect();
        out.sort();
        Ok(out)
    }
}

/// Strict chains of nonempty subsets starting at `top`, each listed from
/// the largest face down.
pub fn chains_below(top: &Face) -> Vec<Vec<Face>> {
    let mut out = vec![vec![top.clone()]];
    if top.len() > 1 {
        for sub in top.nonempty_subsets() {
            if sub.len() == top.len() {
                continue;
            }
            for tail in chains_below(&sub) {
                let mut c = Vec::with_capacity(tail.len() + 1);
                c.push(top.clone());
                c.extend(tail);
                out.push(c);
            }
        }
    }
    out
}

/// Every strict chain of nonempty subsets of `alpha`; these are the faces of `sd alpha`.
pub fn chains_within(alpha: &Face) -> Vec<Vec<Face>> {
    alpha
        .nonempty_subsets()
        .iter()
        .flat_map(chains_below)
        .collect()
}

/// Full flags `alpha = F_0 ⊋ F_1 ⊋ ... ⊋ F_k` ending in a singleton; the
/// facets of `sd alpha`. There are `|alpha|!` of them.
pub fn maximal_chains(alpha: &Face) -> Vec<Vec<Face>> {
    if alpha.len() <= 1 {
        return vec![vec![alpha.clone()]];
    }
    let mut out = Vec::new();
    for &v in alpha.vertices() {
        for tail in maximal_chains(&alpha.without(v)) {
            let mut c = Vec::with_capacity(tail.len() + 1);
            c.push(alpha.clone());
            c.extend(tail);
            out.push(c);
        }
    }
    out
}

/// Barycentric subdivision: one vertex per nonempty face, one face per strict chain.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> SdComplex {
    let labels: Vec<Face> = k.faces().cloned().collect();
    let index: BTreeMap<Face, VertexId> = labels
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), VertexId(i as u32 + 1)))
        .collect();
    let mut faces = BTreeSet::new();
    for top in &labels {
        for chain in chains_below(top) {
            let mut ids: Vec<VertexId> = chain.iter().map(|f| index[f]).collect();
            ids.sort_unstable();
            faces.insert(Face::from_sorted(ids));
        }
    }
    SdComplex {
        complex: SimplicialComplex::from_closed_faces(faces),
        labels,
        index,
    }
}
