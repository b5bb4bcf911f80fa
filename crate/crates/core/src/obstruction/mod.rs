//! Mod-2 Van Kampen obstruction of a `d`-complex in `R^{2d}`.
//!
//! The obstruction cocycle lives on unordered pairs of disjoint `d`-faces:
//! its value on `{σ, τ}` is the parity of intersections of their images
//! under a generic straight-line map. Changing the map by a finger move of
//! a `(d-1)`-face `ρ` across a `d`-face `τ` adds the coboundary row for
//! `(ρ, τ)`. The obstruction vanishes iff the cocycle lies in the row space
//! of the coboundary matrix.

mod gf2;

use std::collections::{BTreeMap, BTreeSet};

pub use gf2::{gf2_solve, Gf2Matrix, Gf2Solution, Gf2Vector};

use crate::complex::{disjoint_simplex_pairs, Face, SimplicialComplex, VertexId};
use crate::convex::{generic_crossing_parity, Point};
use crate::error::{Error, Result};
use crate::Scalar;

/// Vertices placed on the moment curve `t ↦ (t, t², …, t^{2d})`.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement<T> {
    ambient: usize,
    params: BTreeMap<VertexId, T>,
    points: BTreeMap<VertexId, Point<T>>,
}

impl<T: Scalar> Placement<T> {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn param(&self, v: VertexId) -> Option<&T> {
        self.params.get(&v)
    }

    pub fn point(&self, v: VertexId) -> Option<&Point<T>> {
        self.points.get(&v)
    }

    pub fn points_of(&self, face: &Face) -> Result<Vec<Point<T>>> {
        face.vertices()
            .iter()
            .map(|v| {
                self.point(*v)
                    .cloned()
                    .ok_or_else(|| Error::NotAFace(Face::singleton(*v)))
            })
            .collect()
    }
}

/// Places the vertices of `k`, in ascending order, at the given parameters.
pub fn moment_curve_placement<T: Scalar>(
    k: &SimplicialComplex,
    d: usize,
    params: &[T],
) -> Result<Placement<T>> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if params.len() != k.vertices().len() {
        return Err(Error::ParameterCount {
            expected: k.vertices().len(),
            found: params.len(),
        });
    }
    let ambient = 2 * d;
    let mut by_vertex = BTreeMap::new();
    let mut points = BTreeMap::new();
    for (i, (&v, t)) in k.vertices().iter().zip(params).enumerate() {
        if params[..i].contains(t) {
            return Err(Error::DuplicateParameter(v));
        }
        let mut coords = Vec::with_capacity(ambient);
        let mut power = t.clone();
        for _ in 0..ambient {
            coords.push(power.clone());
            power = power * t.clone();
        }
        by_vertex.insert(v, t.clone());
        points.insert(v, Point::new(coords));
    }
    Ok(Placement {
        ambient,
        params: by_vertex,
        points,
    })
}

/// Parameters `1, 2, …, n` in vertex order.
pub fn default_params<T: Scalar>(k: &SimplicialComplex) -> Vec<T> {
    (1..=k.vertices().len() as i64).map(T::from_int).collect()
}

/// A mod-2 cochain on unordered disjoint `d`-face pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain2 {
    pub index: Vec<(Face, Face)>,
    pub bits: Gf2Vector,
}

impl Cochain2 {
    pub fn get(&self, a: &Face, b: &Face) -> Option<bool> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.index
            .iter()
            .position(|(x, y)| (x, y) == key)
            .map(|i| self.bits.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones()
    }
}

fn check_dimension(k: &SimplicialComplex, d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    match k.dim() {
        Some(dim) if dim > d => Err(Error::ComplexTooLarge { dim, d }),
        _ => Ok(()),
    }
}

/// Crossing parities of all disjoint `d`-face pairs under the placement.
pub fn intersection_cocycle<T: Scalar>(
    k: &SimplicialComplex,
    d: usize,
    placement: &Placement<T>,
) -> Result<Cochain2> {
    check_dimension(k, d)?;
    if placement.ambient() != 2 * d {
        return Err(Error::DimensionMismatch {
            expected: 2 * d,
            found: placement.ambient(),
        });
    }
    let index = disjoint_simplex_pairs(k, d);
    let mut bits = Gf2Vector::zeros(index.len());
    for (i, (s, t)) in index.iter().enumerate() {
        let c = generic_crossing_parity(&placement.points_of(s)?, &placement.points_of(t)?)
            .map_err(|e| match e {
                Error::Genericity(why) => Error::Genericity(format!("pair {s} / {t}: {why}")),
                other => other,
            })?;
        if c.parity == 1 {
            bits.flip(i);
        }
    }
    Ok(Cochain2 { index, bits })
}

/// Coboundaries of the finger moves, rows `(ρ, τ)` and columns the
/// disjoint `d`-face pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoboundaryMatrix {
    pub rows: Vec<(Face, Face)>,
    pub columns: Vec<(Face, Face)>,
    pub matrix: Gf2Matrix,
}

/// Row `(ρ, τ)` with `dim ρ = d-1`, `dim τ = d`, `ρ ∩ τ = ∅` has a one in
/// column `{σ, τ}` for every `d`-face `σ ⊃ ρ` disjoint from `τ`.
pub fn coboundary_matrix(k: &SimplicialComplex, d: usize) -> Result<CoboundaryMatrix> {
    check_dimension(k, d)?;
    let columns = disjoint_simplex_pairs(k, d);
    let column_of: BTreeMap<(&Face, &Face), usize> = columns
        .iter()
        .enumerate()
        .map(|(i, (a, b))| ((a, b), i))
        .collect();
    let top: Vec<&Face> = k.faces_of_dim(d).collect();
    let mut cofaces: BTreeMap<&Face, Vec<&Face>> = BTreeMap::new();
    for s in &top {
        for r in s.boundary() {
            let r = k
                .face_set()
                .get(&r)
                .expect("boundary faces are in the complex");
            cofaces.entry(r).or_default().push(s);
        }
    }
    let mut rows = Vec::new();
    let mut bits = Vec::new();
    for rho in k.faces_of_dim(d - 1) {
        for tau in &top {
            if !rho.is_disjoint(tau) {
                continue;
            }
            let ones: BTreeSet<usize> = cofaces
                .get(rho)
                .into_iter()
                .flatten()
                .filter(|s| s.is_disjoint(tau))
                .map(|s| {
                    let key = if *s < *tau { (*s, *tau) } else { (*tau, *s) };
                    column_of[&key]
                })
                .collect();
            rows.push((rho.clone(), (*tau).clone()));
            bits.push(Gf2Vector::from_ones(columns.len(), ones));
        }
    }
    Ok(CoboundaryMatrix {
        rows,
        matrix: Gf2Matrix::new(columns.len(), bits)?,
        columns,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionVerdict {
    /// Row indices whose coboundaries sum to the cocycle.
    Vanishes { combination: Vec<usize> },
    /// Column indices of a cycle orthogonal to every coboundary but not to the cocycle.
    Nonvanishing { witness: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionCertificate {
    pub cocycle: Cochain2,
    pub coboundary: CoboundaryMatrix,
    pub rank: usize,
    pub verdict: ObstructionVerdict,
}

impl ObstructionCertificate {
    pub fn vanishes(&self) -> bool {
        matches!(self.verdict, ObstructionVerdict::Vanishes { .. })
    }

    /// Re-checks the verdict against the stored matrix and cocycle.
    pub fn verify(&self) -> bool {
        let m = &self.coboundary.matrix;
        let v = &self.cocycle.bits;
        match &self.verdict {
            ObstructionVerdict::Vanishes { combination } => {
                combination.iter().all(|&i| i < m.nrows())
                    && m.left_mul(&Gf2Vector::from_ones(
                        m.nrows(),
                        combination.iter().copied(),
                    ))
                    .is_ok_and(|sum| sum == *v)
            }
            ObstructionVerdict::Nonvanishing { witness } => {
                if witness.iter().any(|&i| i >= m.ncols()) {
                    return false;
                }
                let y = Gf2Vector::from_ones(m.ncols(), witness.iter().copied());
                m.right_mul(&y).is_ok_and(|r| r.is_zero()) && v.dot(&y)
            }
        }
    }
}

/// Decides vanishing of the mod-2 obstruction from one generic placement.
pub fn obstruction_vanishes<T: Scalar>(
    k: &SimplicialComplex,
    d: usize,
    placement: &Placement<T>,
) -> Result<ObstructionCertificate> {
    let cocycle = intersection_cocycle(k, d, placement)?;
    let coboundary = coboundary_matrix(k, d)?;
    let (rank, verdict) = match gf2_solve(&coboundary.matrix, &cocycle.bits)? {
        Gf2Solution::Solvable { combination, rank } => (
            rank,
            ObstructionVerdict::Vanishes {
                combination: combination.ones().collect(),
            },
        ),
        Gf2Solution::Infeasible { witness, rank } => (
            rank,
            ObstructionVerdict::Nonvanishing {
                witness: witness.ones().collect(),
            },
        ),
    };
    Ok(ObstructionCertificate {
        cocycle,
        coboundary,
        rank,
        verdict,
    })
}
