//! JSON documents for complexes, convex families and witness assignments.
//!
//! Rationals are written as exact strings such as `"3/2"` or `"-4"`; on
//! input, plain JSON integers are accepted as well.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{Face, SdComplex, SimplicialComplex, VertexId};
use crate::convex::{HPolytope, Point};
use crate::error::{Error, Result};
use crate::nerve::ConvexFamily;
use crate::wegner::WitnessAssignment;
use crate::Rational;

/// A rational that serializes as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exact(pub Rational);

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Exact {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((_, den)) = s.split_once('/') {
            if den
                .trim()
                .trim_start_matches(['+', '-'])
                .chars()
                .all(|c| c == '0')
            {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
        }
        Rational::from_str(s)
            .map(Exact)
            .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Exact(Rational::from_integer(v.into()))),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

pub fn exact_vec(v: &[Rational]) -> Vec<Exact> {
    v.iter().cloned().map(Exact).collect()
}

pub fn rational_vec(v: &[Exact]) -> Vec<Rational> {
    v.iter().map(|e| e.0.clone()).collect()
}

pub fn exact_point(p: &Point<Rational>) -> Vec<Exact> {
    exact_vec(p.coords())
}

/// Original face represented by a vertex of a subdivision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelEntry {
    pub vertex: VertexId,
    pub face: Face,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub facets: Vec<Face>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<LabelEntry>>,
}

impl ComplexFile {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexFile {
            facets: k.facets(),
            labels: None,
        }
    }

    pub fn from_subdivision(sd: &SdComplex) -> Self {
        ComplexFile {
            facets: sd.complex().facets(),
            labels: Some(
                sd.labels()
                    .map(|(vertex, face)| LabelEntry {
                        vertex,
                        face: face.clone(),
                    })
                    .collect(),
            ),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets(self.facets.iter().map(|f| f.vertices().to_vec()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex files serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Box { lo: Vec<Exact>, hi: Vec<Exact> },
    Hpoly { a: Vec<Vec<Exact>>, b: Vec<Exact> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BodyEntry {
    pub label: VertexId,
    #[serde(flatten)]
    pub shape: Shape,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub ambient: usize,
    pub bodies: Vec<BodyEntry>,
}

impl FamilyFile {
    /// Every body is written in halfspace form, so reading it back gives
    /// the same constraint rows.
    pub fn from_family(family: &ConvexFamily<Rational>) -> Self {
        FamilyFile {
            ambient: family.ambient(),
            bodies: family
                .bodies()
                .iter()
                .map(|(label, body)| BodyEntry {
                    label: *label,
                    shape: Shape::Hpoly {
                        a: body.rows().iter().map(|r| exact_vec(r)).collect(),
                        b: exact_vec(body.rhs()),
                    },
                })
                .collect(),
        }
    }

    pub fn to_family(&self) -> Result<ConvexFamily<Rational>> {
        let mut bodies = Vec::with_capacity(self.bodies.len());
        for entry in &self.bodies {
            let body = match &entry.shape {
                Shape::Box { lo, hi } => {
                    if lo.len() != self.ambient || hi.len() != self.ambient {
                        return Err(Error::DimensionMismatch {
                            expected: self.ambient,
                            found: if lo.len() != self.ambient {
                                lo.len()
                            } else {
                                hi.len()
                            },
                        });
                    }
                    HPolytope::from_box(rational_vec(lo), rational_vec(hi))?
                }
                Shape::Hpoly { a, b } => HPolytope::new(
                    self.ambient,
                    a.iter().map(|r| rational_vec(r)).collect(),
                    rational_vec(b),
                )?,
            };
            bodies.push((entry.label, body));
        }
        ConvexFamily::new(self.ambient, bodies)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family files serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub face: Face,
    pub point: Vec<Exact>,
}

/// Witness points keyed by nerve face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub ambient: usize,
    pub points: Vec<WitnessEntry>,
}

impl WitnessFile {
    pub fn from_assignment(ambient: usize, w: &WitnessAssignment<Rational>) -> Self {
        WitnessFile {
            ambient,
            points: w
                .iter()
                .map(|(face, p)| WitnessEntry {
                    face: face.clone(),
                    point: exact_point(p),
                })
                .collect(),
        }
    }

    pub fn to_assignment(&self) -> Result<WitnessAssignment<Rational>> {
        let mut points = BTreeMap::new();
        for entry in &self.points {
            if entry.point.len() != self.ambient {
                return Err(Error::DimensionMismatch {
                    expected: self.ambient,
                    found: entry.point.len(),
                });
            }
            let p = Point::new(rational_vec(&entry.point));
            if points.insert(entry.face.clone(), p).is_some() {
                return Err(Error::Parse(format!("face {} listed twice", entry.face)));
            }
        }
        Ok(WitnessAssignment::new(points))
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness files serialize")
    }
}

/// Parses `"1,2,3"` or `"1/2, -3"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.parse::<Exact>().map(|e| e.0))
        .collect()
}
