//! Nerves of finite families of H-polytopes.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::convex::HPolytope;
use crate::error::{Error, Result};
use crate::Scalar;

pub const DEFAULT_CAP: usize = 20;

/// Labelled convex bodies sharing one ambient space.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexFamily<T> {
    ambient: usize,
    bodies: Vec<(VertexId, HPolytope<T>)>,
    index: BTreeMap<VertexId, usize>,
}

impl<T: Scalar> ConvexFamily<T> {
    pub fn new(ambient: usize, bodies: Vec<(VertexId, HPolytope<T>)>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, (label, body)) in bodies.iter().enumerate() {
            if body.dim() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: body.dim(),
                });
            }
            if index.insert(*label, i).is_some() {
                return Err(Error::DuplicateLabel(*label));
            }
        }
        Ok(ConvexFamily {
            ambient,
            bodies,
            index,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    pub fn bodies(&self) -> &[(VertexId, HPolytope<T>)] {
        &self.bodies
    }

    pub fn labels(&self) -> BTreeSet<VertexId> {
        self.index.keys().copied().collect()
    }

    pub fn body(&self, label: VertexId) -> Option<&HPolytope<T>> {
        self.index.get(&label).map(|&i| &self.bodies[i].1)
    }

    /// Stacked constraints of the bodies named by `face`.
    pub fn intersection(&self, face: &Face) -> Result<HPolytope<T>> {
        let parts = face
            .vertices()
            .iter()
            .map(|v| self.body(*v).ok_or(Error::LabelMismatch))
            .collect::<Result<Vec<_>>>()?;
        HPolytope::intersection(self.ambient, parts)
    }

    pub fn meets(&self, face: &Face) -> Result<bool> {
        Ok(!self.intersection(face)?.is_empty())
    }

    /// Replaces one body; used to shrink or perturb families in tests.
    pub fn with_body(&self, label: VertexId, body: HPolytope<T>) -> Result<Self> {
        let mut bodies = self.bodies.clone();
        let i = *self.index.get(&label).ok_or(Error::LabelMismatch)?;
        bodies[i].1 = body;
        Self::new(self.ambient, bodies)
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.bodies.len() > cap {
            return Err(Error::CapExceeded {
                size: self.bodies.len(),
                cap,
            });
        }
        Ok(())
    }
}

/// Outcome of comparing a family's nerve with a claimed complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "face", rename_all = "snake_case")]
pub enum NerveMatch {
    Equal,
    /// In the complex, but the bodies do not meet.
    MissingFace(Face),
    /// The bodies meet, but the complex lacks the face.
    ExtraFace(Face),
}

/// Candidate faces one size up: joins of faces sharing all but their last
/// vertex, kept only if every boundary face is already present.
fn next_candidates(level: &[Face], present: &BTreeSet<Face>) -> Vec<Face> {
    let mut out = Vec::new();
    for (i, a) in level.iter().enumerate() {
        let prefix = &a.vertices()[..a.len() - 1];
        for b in &level[i + 1..] {
            if &b.vertices()[..b.len() - 1] != prefix {
                break;
            }
            let joined = a.union(b);
            if joined.boundary().all(|f| present.contains(&f)) {
                out.push(joined);
            }
        }
    }
    out
}

fn level_wise<T, F>(family: &ConvexFamily<T>, mut include: F) -> Result<SimplicialComplex>
where
    T: Scalar,
    F: FnMut(&Face) -> Result<bool>,
{
    let mut present = BTreeSet::new();
    let mut level = Vec::new();
    for v in family.labels() {
        let f = Face::singleton(v);
        if include(&f)? {
            level.push(f);
        }
    }
    while !level.is_empty() {
        present.extend(level.iter().cloned());
        let mut next = Vec::new();
        for cand in next_candidates(&level, &present) {
            if include(&cand)? {
                next.push(cand);
            }
        }
        level = next;
    }
    Ok(SimplicialComplex::from_closed_faces(present))
}

/// Nerve by testing every subset whose boundary is already in the nerve.
pub fn nerve_exhaustive<T: Scalar>(family: &ConvexFamily<T>) -> Result<SimplicialComplex> {
    nerve_exhaustive_capped(family, DEFAULT_CAP)
}

pub fn nerve_exhaustive_capped<T: Scalar>(
    family: &ConvexFamily<T>,
    cap: usize,
) -> Result<SimplicialComplex> {
    family.check_cap(cap)?;
    level_wise(family, |f| family.meets(f))
}

/// Nerve via Helly closure: intersections are tested only up to `m + 1`
/// bodies in `Rᵐ`; larger faces are present iff all their subfaces are.
pub fn nerve_helly<T: Scalar>(family: &ConvexFamily<T>) -> Result<SimplicialComplex> {
    nerve_helly_capped(family, DEFAULT_CAP)
}

pub fn nerve_helly_capped<T: Scalar>(
    family: &ConvexFamily<T>,
    cap: usize,
) -> Result<SimplicialComplex> {
    family.check_cap(cap)?;
    let helly = family.ambient() + 1;
    // Candidates above the Helly number already have every boundary face,
    // hence (inductively) every (m+1)-subset, in the nerve.
    level_wise(family, |f| {
        if f.len() > helly {
            Ok(true)
        } else {
            family.meets(f)
        }
    })
}

/// Compares the nerve with `k` under the identity labelling.
///
/// The witness is the smallest face, in canonical order, of the symmetric
/// difference.
pub fn nerve_matches<T: Scalar>(
    family: &ConvexFamily<T>,
    k: &SimplicialComplex,
) -> Result<NerveMatch> {
    nerve_matches_capped(family, k, DEFAULT_CAP)
}

pub fn nerve_matches_capped<T: Scalar>(
    family: &ConvexFamily<T>,
    k: &SimplicialComplex,
    cap: usize,
) -> Result<NerveMatch> {
    if family.labels() != *k.vertices() {
        return Err(Error::LabelMismatch);
    }
    let nerve = nerve_helly_capped(family, cap)?;
    let extra = nerve.face_set().difference(k.face_set()).next();
    let missing = k.face_set().difference(nerve.face_set()).next();
    Ok(match (extra, missing) {
        (None, None) => NerveMatch::Equal,
        (Some(e), None) => NerveMatch::ExtraFace(e.clone()),
        (None, Some(m)) => NerveMatch::MissingFace(m.clone()),
        (Some(e), Some(m)) => {
            if e < m {
                NerveMatch::ExtraFace(e.clone())
            } else {
                NerveMatch::MissingFace(m.clone())
            }
        }
    })
}
