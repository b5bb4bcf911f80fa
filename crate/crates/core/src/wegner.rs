//! Piecewise-linear map from the subdivided nerve into the ambient space.
//!
//! Each face `F'` of the nerve gets a witness point `p(F')` inside the
//! common intersection of its bodies. The map `g` sends the subdivision
//! vertex of `F'` to `p(F')` and is linear on every face of `sd K`, so it is
//! fully described by the witnesses. Images of remote faces are disjoint;
//! the verifiers here check that exactly, piece by piece.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{
    barycentric_subdivision, is_remote, maximal_chains, Face, SdComplex, SimplicialComplex,
    VertexId,
};
use crate::convex::{hull_intersection, Point};
use crate::error::{Error, Result};
use crate::nerve::{nerve_matches_capped, ConvexFamily, NerveMatch, DEFAULT_CAP};
use crate::Scalar;

/// Witness point for every nonempty face of a nerve.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessAssignment<T> {
    points: BTreeMap<Face, Point<T>>,
}

impl<T: Scalar> WitnessAssignment<T> {
    pub fn new(points: BTreeMap<Face, Point<T>>) -> Self {
        WitnessAssignment { points }
    }

    pub fn get(&self, face: &Face) -> Option<&Point<T>> {
        self.points.get(face)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Face, &Point<T>)> + '_ {
        self.points.iter()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A witness outside one of the bodies it should lie in.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessViolation {
    pub face: Face,
    pub body: VertexId,
    pub row: usize,
}

/// First (face, body, row) where a witness leaves its intersection.
pub fn check_witnesses<T: Scalar>(
    family: &ConvexFamily<T>,
    witness: &WitnessAssignment<T>,
) -> Result<Option<WitnessViolation>> {
    for (face, p) in witness.iter() {
        for &v in face.vertices() {
            let body = family.body(v).ok_or(Error::LabelMismatch)?;
            if let Some(row) = body.first_violated_row(p)? {
                return Ok(Some(WitnessViolation {
                    face: face.clone(),
                    body: v,
                    row,
                }));
            }
        }
    }
    Ok(None)
}

/// Canonical points of every face's intersection, re-verified exactly.
///
/// Refuses to run unless the nerve of `family` is exactly `k`.
pub fn witness_points<T: Scalar>(
    family: &ConvexFamily<T>,
    k: &SimplicialComplex,
) -> Result<WitnessAssignment<T>> {
    witness_points_capped(family, k, DEFAULT_CAP)
}

pub fn witness_points_capped<T: Scalar>(
    family: &ConvexFamily<T>,
    k: &SimplicialComplex,
    cap: usize,
) -> Result<WitnessAssignment<T>> {
    match nerve_matches_capped(family, k, cap)? {
        NerveMatch::Equal => {}
        other => return Err(Error::NerveMismatch(other)),
    }
    let mut points = BTreeMap::new();
    for face in k.faces() {
        let p = family.intersection(face)?.canonical_point()?;
        points.insert(face.clone(), p);
    }
    let witness = WitnessAssignment { points };
    if let Some(v) = check_witnesses(family, &witness)? {
        return Err(Error::WitnessOutside {
            face: v.face,
            body: v.body,
            row: v.row,
        });
    }
    Ok(witness)
}

/// One linear simplex of an image: the chain of nerve faces spanning a
/// face of the subdivision, and their witness points.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece<T> {
    /// Nerve faces, largest first.
    pub chain: Vec<Face>,
    pub points: Vec<Point<T>>,
}

/// Union of linear simplices.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexImage<T> {
    pub pieces: Vec<Piece<T>>,
}

impl<T> SimplexImage<T> {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}

/// Remote faces whose images share a point.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaViolation<T> {
    pub alpha: Face,
    pub beta: Face,
    pub piece_alpha: Piece<T>,
    pub piece_beta: Piece<T>,
    pub point: Point<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointnessStats {
    pub remote_pairs: usize,
    pub piece_tests: usize,
}

/// A chain member whose witness is outside the body of the chain's bottom vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContainmentViolation {
    pub chain: Vec<Face>,
    pub member: Face,
    pub body: VertexId,
    pub row: usize,
}

/// The map `g : |sd K| → Rᵐ`, stored as its vertex images.
#[derive(Debug, Clone, PartialEq)]
pub struct WegnerMap<T> {
    nerve: SimplicialComplex,
    sd_nerve: SdComplex,
    witness: WitnessAssignment<T>,
    ambient: usize,
}

impl<T: Scalar> WegnerMap<T> {
    /// Builds `g` from honest witnesses of `family`, whose nerve must be `k`.
    pub fn build(family: &ConvexFamily<T>, k: &SimplicialComplex) -> Result<Self> {
        Self::build_capped(family, k, DEFAULT_CAP)
    }

    pub fn build_capped(
        family: &ConvexFamily<T>,
        k: &SimplicialComplex,
        cap: usize,
    ) -> Result<Self> {
        let witness = witness_points_capped(family, k, cap)?;
        Self::from_witnesses(k.clone(), witness, family.ambient())
    }

    /// Wraps arbitrary witnesses; nothing about the family is checked.
    pub fn from_witnesses(
        nerve: SimplicialComplex,
        witness: WitnessAssignment<T>,
        ambient: usize,
    ) -> Result<Self> {
        for face in nerve.faces() {
            let p = witness
                .get(face)
                .ok_or_else(|| Error::NotAFace(face.clone()))?;
            if p.dim() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: p.dim(),
                });
            }
        }
        if witness.len() != nerve.num_faces() {
            let stray = witness
                .iter()
                .map(|(f, _)| f)
                .find(|f| !nerve.contains(f))
                .expect("extra witness");
            return Err(Error::NotAFace(stray.clone()));
        }
        let sd_nerve = barycentric_subdivision(&nerve);
        Ok(WegnerMap {
            nerve,
            sd_nerve,
            witness,
            ambient,
        })
    }

    /// Test hook: the same map with one witness replaced.
    pub fn with_corrupted_witness(&self, face: &Face, point: Point<T>) -> Result<Self> {
        if !self.nerve.contains(face) {
            return Err(Error::NotAFace(face.clone()));
        }
        let mut points = self.witness.points.clone();
        points.insert(face.clone(), point);
        Self::from_witnesses(
            self.nerve.clone(),
            WitnessAssignment { points },
            self.ambient,
        )
    }

    pub fn nerve(&self) -> &SimplicialComplex {
        &self.nerve
    }

    pub fn sd_nerve(&self) -> &SdComplex {
        &self.sd_nerve
    }

    pub fn witness(&self) -> &WitnessAssignment<T> {
        &self.witness
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// `g` at a vertex of `sd K`.
    pub fn vertex_image(&self, v: VertexId) -> Option<&Point<T>> {
        self.sd_nerve.label(v).and_then(|f| self.witness.get(f))
    }

    fn piece(&self, chain: Vec<Face>) -> Piece<T> {
        let points = chain
            .iter()
            .map(|f| {
                self.witness
                    .get(f)
                    .expect("every face has a witness")
                    .clone()
            })
            .collect();
        Piece { chain, points }
    }

    /// `g(|sd α|)`: one piece per maximal chain of subsets of `α`.
    pub fn image_of_face(&self, alpha: &Face) -> Result<SimplexImage<T>> {
        if !self.nerve.contains(alpha) {
            return Err(Error::NotAFace(alpha.clone()));
        }
        Ok(SimplexImage {
            pieces: maximal_chains(alpha)
                .into_iter()
                .map(|c| self.piece(c))
                .collect(),
        })
    }

    /// Unordered remote pairs of nerve faces in canonical order.
    pub fn remote_pairs(&self) -> Vec<(Face, Face)> {
        let faces: Vec<&Face> = self.nerve.faces().collect();
        let mut out = Vec::new();
        for (i, a) in faces.iter().enumerate() {
            for b in &faces[i + 1..] {
                if is_remote(&self.nerve, a, b).expect("faces of the nerve") {
                    out.push(((*a).clone(), (*b).clone()));
                }
            }
        }
        out
    }

    /// Tests `g(|sd α|) ∩ g(|sd β|) = ∅` for every remote pair.
    ///
    /// Returns the first intersecting piece pair in canonical order.
    pub fn verify_remote_disjointness(
        &self,
    ) -> Result<std::result::Result<DisjointnessStats, LemmaViolation<T>>> {
        let mut images: BTreeMap<Face, SimplexImage<T>> = BTreeMap::new();
        let mut stats = DisjointnessStats {
            remote_pairs: 0,
            piece_tests: 0,
        };
        for (alpha, beta) in self.remote_pairs() {
            stats.remote_pairs += 1;
            for f in [&alpha, &beta] {
                if !images.contains_key(f) {
                    images.insert(f.clone(), self.image_of_face(f)?);
                }
            }
            for pa in &images[&alpha].pieces {
                for pb in &images[&beta].pieces {
                    stats.piece_tests += 1;
                    if let Some(point) = hull_intersection(&pa.points, &pb.points)? {
                        return Ok(Err(LemmaViolation {
                            alpha,
                            beta,
                            piece_alpha: pa.clone(),
                            piece_beta: pb.clone(),
                            point,
                        }));
                    }
                }
            }
        }
        Ok(Ok(stats))
    }

    /// Chain containment: along every maximal chain `α₁ ⊋ ⋯ ⊋ α_k` of
    /// `sd K`, each witness `p(αᵢ)` lies in `∩α_k`.
    ///
    /// Each (member, bottom vertex) pair is tested once; a violation is
    /// reported with one maximal chain realising it.
    pub fn verify_containment(
        &self,
        family: &ConvexFamily<T>,
    ) -> Result<std::result::Result<(), ContainmentViolation>> {
        let facets = self.nerve.facets();
        for (member, p) in self.witness.iter() {
            for &v in member.vertices() {
                let body = family.body(v).ok_or(Error::LabelMismatch)?;
                if let Some(row) = body.first_violated_row(p)? {
                    let top = facets
                        .iter()
                        .find(|f| member.is_subset(f))
                        .expect("every face lies in a facet");
                    return Ok(Err(ContainmentViolation {
                        chain: flag_through(top, member, v),
                        member: member.clone(),
                        body: v,
                        row,
                    }));
                }
            }
        }
        Ok(Ok(()))
    }

    /// `g(|γ|)` for a face `γ` of `L`, where the nerve is `sd L`.
    ///
    /// `|γ| = |sd sd γ|`, so the pieces are the maximal chains of
    /// `sd (sd γ)`: for each full flag of `γ` (a facet of `sd γ`, i.e. a
    /// nerve face), every maximal chain of its subsets.
    pub fn image_of_source_simplex(
        &self,
        l: &SimplicialComplex,
        gamma: &Face,
    ) -> Result<SimplexImage<T>> {
        let sd_l = barycentric_subdivision(l);
        if *sd_l.complex() != self.nerve {
            return Err(Error::NotSubdivision);
        }
        if !l.contains(gamma) {
            return Err(Error::NotAFace(gamma.clone()));
        }
        let mut pieces = Vec::new();
        for flag in maximal_chains(gamma) {
            let alpha = sd_l.chain_face(&flag)?;
            for chain in maximal_chains(&alpha) {
                pieces.push(self.piece(chain));
            }
        }
        Ok(SimplexImage { pieces })
    }
}

/// Maximal chain from `top` through `member` down to `{v}`.
fn flag_through(top: &Face, member: &Face, v: VertexId) -> Vec<Face> {
    let mut chain = vec![top.clone()];
    let mut cur = top.clone();
    for &w in top.vertices() {
        if !member.contains(w) {
            cur = cur.without(w);
            chain.push(cur.clone());
        }
    }
    for &w in member.vertices() {
        if w != v {
            cur = cur.without(w);
            chain.push(cur.clone());
        }
    }
    chain.dedup();
    chain
}
