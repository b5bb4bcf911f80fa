use serde::Serialize;

use super::{barycentric_subdivision, Face, SimplicialComplex};
use crate::error::{Error, Result};

/// Two faces are remote when they share no vertex and no edge of `k`
/// joins them.
pub fn is_remote(k: &SimplicialComplex, alpha: &Face, beta: &Face) -> Result<bool> {
    for f in [alpha, beta] {
        if !k.contains(f) {
            return Err(Error::NotAFace(f.clone()));
        }
    }
    Ok(remote_unchecked(k, alpha, beta))
}

pub(crate) fn remote_unchecked(k: &SimplicialComplex, alpha: &Face, beta: &Face) -> bool {
    alpha.is_disjoint(beta)
        && alpha
            .vertices()
            .iter()
            .all(|&a| beta.vertices().iter().all(|&b| !k.has_edge(a, b)))
}

/// Unordered pairs of vertex-disjoint `d`-faces, smaller face first.
pub fn disjoint_simplex_pairs(k: &SimplicialComplex, d: usize) -> Vec<(Face, Face)> {
    let faces: Vec<&Face> = k.faces_of_dim(d).collect();
    let mut out = Vec::new();
    for (i, a) in faces.iter().enumerate() {
        for b in &faces[i + 1..] {
            if a.is_disjoint(b) {
                out.push(((*a).clone(), (*b).clone()));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemotenessViolation {
    pub gamma: Face,
    pub delta: Face,
    pub alpha: Face,
    pub beta: Face,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemotenessReport {
    pub simplex_pairs: usize,
    pub face_pairs: usize,
    pub violations: Vec<RemotenessViolation>,
}

impl RemotenessReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that subdivisions of disjoint `d`-faces of `l` are remote in `sd l`.
///
/// For every vertex-disjoint pair `{gamma, delta}` of `d`-faces, every face
/// of `sd gamma` and every face of `sd delta` must be remote in `sd l`.
pub fn remoteness_lemma_check(l: &SimplicialComplex, d: usize) -> RemotenessReport {
    let sd = barycentric_subdivision(l);
    let k = sd.complex();
    let pairs = disjoint_simplex_pairs(l, d);
    let mut face_pairs = 0;
    let mut violations = Vec::new();
    for (gamma, delta) in &pairs {
        let sd_gamma = sd.subdivided_subcomplex(gamma).expect("gamma is a face");
        let sd_delta = sd.subdivided_subcomplex(delta).expect("delta is a face");
        for alpha in &sd_gamma {
            for beta in &sd_delta {
                face_pairs += 1;
                if !remote_unchecked(k, alpha, beta) {
                    violations.push(RemotenessViolation {
                        gamma: gamma.clone(),
                        delta: delta.clone(),
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                    });
                }
            }
        }
    }
    RemotenessReport {
        simplex_pairs: pairs.len(),
        face_pairs,
        violations,
    }
}
