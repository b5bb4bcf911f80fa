//! End-to-end certificate pipeline and independent re-checking.
//!
//! Given a family in `R^{2d}` claimed to represent `sd L`, the pipeline
//! either finds a concrete defect (nerve mismatch, bad witness, intersecting
//! remote images, intersecting images of disjoint simplices of `L`) or ends
//! with the obstruction of `L`. When that obstruction is nonzero a clean run
//! is impossible, so it is reported as a consistency failure.

use serde::{Deserialize, Serialize};

use crate::complex::{
    barycentric_subdivision, disjoint_simplex_pairs, is_remote, Face, SdComplex, SimplicialComplex,
    VertexId,
};
use crate::convex::{generic_crossing_parity, hull_intersection, point_in_hull, Point};
use crate::error::{Error, Result};
use crate::format::{exact_point, exact_vec, rational_vec, ComplexFile, Exact, FamilyFile};
use crate::nerve::{nerve_matches_capped, ConvexFamily, NerveMatch, DEFAULT_CAP};
use crate::obstruction::{
    coboundary_matrix, default_params, intersection_cocycle, moment_curve_placement,
    obstruction_vanishes, Gf2Matrix, Gf2Vector, ObstructionCertificate, ObstructionVerdict,
};
use crate::wegner::{check_witnesses, Piece, WegnerMap, WitnessAssignment};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// The bodies meet but the claimed complex lacks the face.
    Extra,
    /// The claimed complex has the face but the bodies do not meet.
    Missing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerveMismatch {
    pub family: FamilyFile,
    pub source: ComplexFile,
    pub subdivision: ComplexFile,
    pub direction: Direction,
    pub face: Face,
    /// Common point of the bodies, for `extra`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<Exact>>,
    /// Farkas multipliers over the stacked constraints, for `missing`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub farkas: Option<Vec<Exact>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessViolation {
    pub family: FamilyFile,
    pub source: ComplexFile,
    pub face: Face,
    pub point: Vec<Exact>,
    pub body: VertexId,
    pub row: usize,
}

/// A linear simplex of an image: spanned by `points`, which are the
/// witnesses of the faces in `chain` when the chain is known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<Face>>,
    pub points: Vec<Vec<Exact>>,
}

impl PieceRecord {
    fn from_piece(p: &Piece<Rational>) -> Self {
        PieceRecord {
            chain: Some(p.chain.clone()),
            points: p.points.iter().map(exact_point).collect(),
        }
    }

    fn points(&self) -> Vec<Point<Rational>> {
        self.points
            .iter()
            .map(|p| Point::new(rational_vec(p)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaViolation {
    pub source: ComplexFile,
    pub alpha: Face,
    pub beta: Face,
    pub piece_alpha: PieceRecord,
    pub piece_beta: PieceRecord,
    pub point: Vec<Exact>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VkfCertificate {
    pub complex: ComplexFile,
    pub d: usize,
    pub gamma: Face,
    pub delta: Face,
    pub piece_gamma: PieceRecord,
    pub piece_delta: PieceRecord,
    pub point: Vec<Exact>,
    /// Moment-curve parameters of a straight-line placement.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<Exact>>,
    /// Family whose witnesses define the pieces, for pipeline runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyFile>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Vanishes,
    Nonvanishing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineStats {
    pub sd_vertices: usize,
    pub remote_pairs: usize,
    pub piece_tests: usize,
    pub disjoint_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub complex: ComplexFile,
    pub d: usize,
    pub params: Vec<Exact>,
    pub rows: usize,
    pub columns: usize,
    pub rank: usize,
    pub verdict: Verdict,
    /// Disjoint pairs with odd crossing parity.
    pub cocycle: Vec<(Face, Face)>,
    /// Coboundary rows summing to the cocycle, when it vanishes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub combination: Option<Vec<(Face, Face)>>,
    /// Pairs forming a cycle that meets the cocycle oddly, when it does not.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<(Face, Face)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<PipelineStats>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certificate {
    NerveMismatch(NerveMismatch),
    WitnessViolation(WitnessViolation),
    LemmaViolation(LemmaViolation),
    VkfCertificate(VkfCertificate),
    ObstructionReport(ObstructionReport),
    ConsistencyFailure(ObstructionReport),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::NerveMismatch(_) => "NERVE_MISMATCH",
            Certificate::WitnessViolation(_) => "WITNESS_VIOLATION",
            Certificate::LemmaViolation(_) => "LEMMA_VIOLATION",
            Certificate::VkfCertificate(_) => "VKF_CERTIFICATE",
            Certificate::ObstructionReport(_) => "OBSTRUCTION_REPORT",
            Certificate::ConsistencyFailure(_) => "CONSISTENCY_FAILURE",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Certificate::NerveMismatch(_)
            | Certificate::WitnessViolation(_)
            | Certificate::LemmaViolation(_) => 2,
            Certificate::VkfCertificate(_) => 3,
            Certificate::ObstructionReport(r) => match r.verdict {
                Verdict::Vanishes => 0,
                Verdict::Nonvanishing => 3,
            },
            Certificate::ConsistencyFailure(_) => 5,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Exit code for a failed command.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Genericity(_) => 4,
        _ => 1,
    }
}

#[derive(Debug, Clone, Default)]
pub struct PipelineOptions {
    /// Largest family accepted by the nerve computation; `None` for the default.
    pub cap: Option<usize>,
    /// Placement parameters for the obstruction of `L`; `None` for `1..n`.
    pub params: Option<Vec<Rational>>,
    /// User-supplied witnesses instead of computed ones.
    pub witnesses: Option<WitnessAssignment<Rational>>,
    /// Replaces one witness after the membership check.
    pub corrupt: Option<(Face, Point<Rational>)>,
}

/// Runs the whole pipeline for a family claimed to represent `sd L`.
pub fn run_certificate(
    family: &ConvexFamily<Rational>,
    l: &SimplicialComplex,
    d: usize,
    opts: &PipelineOptions,
) -> Result<Certificate> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if family.ambient() != 2 * d {
        return Err(Error::DimensionMismatch {
            expected: 2 * d,
            found: family.ambient(),
        });
    }
    if let Some(dim) = l.dim().filter(|&dim| dim > d) {
        return Err(Error::ComplexTooLarge { dim, d });
    }
    let cap = opts.cap.unwrap_or(DEFAULT_CAP);
    let family_file = FamilyFile::from_family(family);
    let source = ComplexFile::from_complex(l);

    let sd = barycentric_subdivision(l);
    let nerve = sd.complex();
    match nerve_matches_capped(family, nerve, cap)? {
        NerveMatch::Equal => {}
        NerveMatch::ExtraFace(face) => {
            let meet = family.intersection(&face)?;
            let (point, _) =
                meet.maximize(&vec![Rational::from_integer(0.into()); family.ambient()])?;
            return Ok(Certificate::NerveMismatch(NerveMismatch {
                family: family_file,
                source,
                subdivision: ComplexFile::from_subdivision(&sd),
                direction: Direction::Extra,
                face,
                point: Some(exact_point(&point)),
                farkas: None,
            }));
        }
        NerveMatch::MissingFace(face) => {
            let y = family
                .intersection(&face)?
                .emptiness_certificate()
                .expect("a missing face has an empty intersection");
            return Ok(Certificate::NerveMismatch(NerveMismatch {
                family: family_file,
                source,
                subdivision: ComplexFile::from_subdivision(&sd),
                direction: Direction::Missing,
                face,
                point: None,
                farkas: Some(exact_vec(&y)),
            }));
        }
    }

    let witness = match &opts.witnesses {
        Some(w) => {
            let map = WegnerMap::from_witnesses(nerve.clone(), w.clone(), family.ambient())?;
            if let Some(v) = check_witnesses(family, map.witness())? {
                let point = exact_point(map.witness().get(&v.face).expect("checked face"));
                return Ok(Certificate::WitnessViolation(WitnessViolation {
                    family: family_file,
                    source,
                    face: v.face,
                    point,
                    body: v.body,
                    row: v.row,
                }));
            }
            map
        }
        None => WegnerMap::build_capped(family, nerve, cap)?,
    };
    let map = match &opts.corrupt {
        Some((face, point)) => witness.with_corrupted_witness(face, point.clone())?,
        None => witness,
    };

    let stats = match map.verify_remote_disjointness()? {
        Ok(stats) => stats,
        Err(v) => {
            return Ok(Certificate::LemmaViolation(LemmaViolation {
                source,
                alpha: v.alpha,
                beta: v.beta,
                piece_alpha: PieceRecord::from_piece(&v.piece_alpha),
                piece_beta: PieceRecord::from_piece(&v.piece_beta),
                point: exact_point(&v.point),
            }))
        }
    };

    let pairs = disjoint_simplex_pairs(l, d);
    for (gamma, delta) in &pairs {
        let image_gamma = map.image_of_source_simplex(l, gamma)?;
        let image_delta = map.image_of_source_simplex(l, delta)?;
        for pg in &image_gamma.pieces {
            for pd in &image_delta.pieces {
                if let Some(point) = hull_intersection(&pg.points, &pd.points)? {
                    return Ok(Certificate::VkfCertificate(VkfCertificate {
                        complex: source,
                        d,
                        gamma: gamma.clone(),
                        delta: delta.clone(),
                        piece_gamma: PieceRecord::from_piece(pg),
                        piece_delta: PieceRecord::from_piece(pd),
                        point: exact_point(&point),
                        params: None,
                        family: Some(family_file),
                    }));
                }
            }
        }
    }

    let params = opts.params.clone().unwrap_or_else(|| default_params(l));
    let mut report = obstruction_report(l, d, &params)?;
    report.pipeline = Some(PipelineStats {
        sd_vertices: nerve.vertices().len(),
        remote_pairs: stats.remote_pairs,
        piece_tests: stats.piece_tests,
        disjoint_pairs: pairs.len(),
    });
    Ok(match report.verdict {
        Verdict::Vanishes => Certificate::ObstructionReport(report),
        Verdict::Nonvanishing => Certificate::ConsistencyFailure(report),
    })
}

fn pairs_at(index: &[(Face, Face)], ones: &[usize]) -> Vec<(Face, Face)> {
    ones.iter().map(|&i| index[i].clone()).collect()
}

/// Obstruction of `k` in `R^{2d}` from the moment-curve placement at `params`.
pub fn obstruction_report(
    k: &SimplicialComplex,
    d: usize,
    params: &[Rational],
) -> Result<ObstructionReport> {
    let placement = moment_curve_placement(k, d, params)?;
    let cert = obstruction_vanishes(k, d, &placement)?;
    let cocycle = pairs_at(
        &cert.cocycle.index,
        &cert.cocycle.bits.ones().collect::<Vec<_>>(),
    );
    let (verdict, combination, witness) = match &cert.verdict {
        ObstructionVerdict::Vanishes { combination } => (
            Verdict::Vanishes,
            Some(pairs_at(&cert.coboundary.rows, combination)),
            None,
        ),
        ObstructionVerdict::Nonvanishing { witness } => (
            Verdict::Nonvanishing,
            None,
            Some(pairs_at(&cert.coboundary.columns, witness)),
        ),
    };
    Ok(ObstructionReport {
        complex: ComplexFile::from_complex(k),
        d,
        params: exact_vec(params),
        rows: cert.coboundary.matrix.nrows(),
        columns: cert.coboundary.matrix.ncols(),
        rank: cert.rank,
        verdict,
        cocycle,
        combination,
        witness,
        pipeline: None,
    })
}

/// The `d`-skeleton of the `(2d+2)`-simplex on vertices `1..=2d+3`.
pub fn flores_complex(d: usize) -> SimplicialComplex {
    SimplicialComplex::skeleton_on((1..=2 * d as u32 + 3).map(VertexId), d)
}

/// Places the flores complex on the moment curve and returns the first
/// disjoint `d`-face pair, in canonical order, whose images cross.
pub fn vkf_demo(d: usize, params: Option<Vec<Rational>>) -> Result<Certificate> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let k = flores_complex(d);
    let params = params.unwrap_or_else(|| default_params(&k));
    let placement = moment_curve_placement(&k, d, &params)?;
    for (gamma, delta) in disjoint_simplex_pairs(&k, d) {
        let pg = placement.points_of(&gamma)?;
        let pd = placement.points_of(&delta)?;
        let crossing = generic_crossing_parity(&pg, &pd).map_err(|e| match e {
            Error::Genericity(why) => Error::Genericity(format!("pair {gamma} / {delta}: {why}")),
            other => other,
        })?;
        if crossing.parity == 1 {
            let point = crossing.point(&pg).expect("odd crossings have coordinates");
            return Ok(Certificate::VkfCertificate(VkfCertificate {
                complex: ComplexFile::from_complex(&k),
                d,
                piece_gamma: PieceRecord {
                    chain: None,
                    points: pg.iter().map(exact_point).collect(),
                },
                piece_delta: PieceRecord {
                    chain: None,
                    points: pd.iter().map(exact_point).collect(),
                },
                gamma,
                delta,
                point: exact_point(&point),
                params: Some(exact_vec(&params)),
                family: None,
            }));
        }
    }
    Ok(Certificate::ConsistencyFailure(obstruction_report(
        &k, d, &params,
    )?))
}

/// `chain` runs from `top` down to a vertex, dropping one vertex per step.
fn is_full_flag(chain: &[Face], top: &Face) -> bool {
    chain.first() == Some(top)
        && chain.len() == top.len()
        && chain
            .windows(2)
            .all(|w| w[1].len() + 1 == w[0].len() && w[1].is_subset(&w[0]))
}

fn point_of(v: &[Exact]) -> Point<Rational> {
    Point::new(rational_vec(v))
}

/// Every point of the piece lies in the bodies of its chain member.
fn witnesses_in_family(
    family: &ConvexFamily<Rational>,
    chain: &[Face],
    points: &[Point<Rational>],
) -> Result<bool> {
    for (member, p) in chain.iter().zip(points) {
        for &v in member.vertices() {
            let Some(body) = family.body(v) else {
                return Ok(false);
            };
            if !body.contains(p)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `chain` is a maximal chain of a face of `sd L` lying in `sd γ`.
fn piece_in_source_simplex(sd: &SdComplex, gamma: &Face, chain: &[Face]) -> bool {
    let Some(top) = chain.first() else {
        return false;
    };
    sd.complex().contains(top)
        && top
            .vertices()
            .iter()
            .all(|&v| sd.label(v).is_some_and(|f| f.is_subset(gamma)))
        && is_full_flag(chain, top)
}

/// Re-runs the exact predicates behind a certificate. `Ok(false)` means the
/// data does not support the claim; `Err` means the data is malformed.
pub fn recheck(cert: &Certificate) -> Result<bool> {
    match cert {
        Certificate::NerveMismatch(c) => recheck_nerve(c),
        Certificate::WitnessViolation(c) => {
            let family = c.family.to_family()?;
            let l = c.source.to_complex()?;
            let sd = barycentric_subdivision(&l);
            let Some(body) = family.body(c.body) else {
                return Ok(false);
            };
            let p = point_of(&c.point);
            if !sd.complex().contains(&c.face)
                || !c.face.contains(c.body)
                || c.row >= body.num_rows()
                || p.dim() != family.ambient()
            {
                return Ok(false);
            }
            let lhs: Rational = body.rows()[c.row]
                .iter()
                .zip(p.coords())
                .map(|(a, x)| a * x)
                .sum();
            Ok(lhs > body.rhs()[c.row])
        }
        Certificate::LemmaViolation(c) => {
            let l = c.source.to_complex()?;
            let sd = barycentric_subdivision(&l);
            let nerve = sd.complex();
            if !nerve.contains(&c.alpha) || !nerve.contains(&c.beta) {
                return Ok(false);
            }
            if !is_remote(nerve, &c.alpha, &c.beta)? {
                return Ok(false);
            }
            for (piece, face) in [(&c.piece_alpha, &c.alpha), (&c.piece_beta, &c.beta)] {
                let Some(chain) = &piece.chain else {
                    return Ok(false);
                };
                if !is_full_flag(chain, face) || piece.points.len() != chain.len() {
                    return Ok(false);
                }
            }
            let x = point_of(&c.point);
            Ok(point_in_hull(&x, &c.piece_alpha.points())?
                && point_in_hull(&x, &c.piece_beta.points())?)
        }
        Certificate::VkfCertificate(c) => recheck_vkf(c),
        Certificate::ObstructionReport(r) => recheck_obstruction(r),
        Certificate::ConsistencyFailure(r) => {
            Ok(r.verdict == Verdict::Nonvanishing && recheck_obstruction(r)?)
        }
    }
}

fn recheck_nerve(c: &NerveMismatch) -> Result<bool> {
    let family = c.family.to_family()?;
    let l = c.source.to_complex()?;
    let sd = barycentric_subdivision(&l);
    if ComplexFile::from_subdivision(&sd) != c.subdivision {
        return Ok(false);
    }
    if !c.face.vertices().iter().all(|v| family.body(*v).is_some()) {
        return Ok(false);
    }
    let meet = family.intersection(&c.face)?;
    match c.direction {
        Direction::Extra => {
            let Some(point) = &c.point else {
                return Ok(false);
            };
            Ok(!sd.complex().contains(&c.face) && meet.contains(&point_of(point))?)
        }
        Direction::Missing => {
            let Some(y) = &c.farkas else {
                return Ok(false);
            };
            Ok(sd.complex().contains(&c.face)
                && meet.verify_emptiness_certificate(&rational_vec(y)))
        }
    }
}

fn recheck_vkf(c: &VkfCertificate) -> Result<bool> {
    let k = c.complex.to_complex()?;
    for f in [&c.gamma, &c.delta] {
        if !k.contains(f) || f.dim() != c.d {
            return Ok(false);
        }
    }
    if !c.gamma.is_disjoint(&c.delta) {
        return Ok(false);
    }
    let pg = c.piece_gamma.points();
    let pd = c.piece_delta.points();
    if pg.iter().chain(&pd).any(|p| p.dim() != 2 * c.d) {
        return Ok(false);
    }
    let x = point_of(&c.point);
    if !point_in_hull(&x, &pg)? || !point_in_hull(&x, &pd)? {
        return Ok(false);
    }
    match (&c.params, &c.family) {
        (Some(params), None) => {
            let placement = moment_curve_placement(&k, c.d, &rational_vec(params))?;
            if placement.points_of(&c.gamma)? != pg || placement.points_of(&c.delta)? != pd {
                return Ok(false);
            }
            Ok(generic_crossing_parity(&pg, &pd)?.parity == 1)
        }
        (None, Some(family_file)) => {
            let family = family_file.to_family()?;
            let sd = barycentric_subdivision(&k);
            for (piece, face, points) in [
                (&c.piece_gamma, &c.gamma, &pg),
                (&c.piece_delta, &c.delta, &pd),
            ] {
                let Some(chain) = &piece.chain else {
                    return Ok(false);
                };
                if chain.len() != points.len()
                    || !piece_in_source_simplex(&sd, face, chain)
                    || !witnesses_in_family(&family, chain, points)?
                {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Ok(false),
    }
}

fn index_of(index: &[(Face, Face)], pairs: &[(Face, Face)]) -> Option<Vec<usize>> {
    pairs
        .iter()
        .map(|p| index.iter().position(|q| q == p))
        .collect()
}

fn recheck_obstruction(r: &ObstructionReport) -> Result<bool> {
    let k = r.complex.to_complex()?;
    let placement = moment_curve_placement(&k, r.d, &rational_vec(&r.params))?;
    let cocycle = intersection_cocycle(&k, r.d, &placement)?;
    let coboundary = coboundary_matrix(&k, r.d)?;
    let Some(support) = index_of(&cocycle.index, &r.cocycle) else {
        return Ok(false);
    };
    if Gf2Vector::from_ones(cocycle.index.len(), support) != cocycle.bits {
        return Ok(false);
    }
    if (coboundary.matrix.nrows(), coboundary.matrix.ncols()) != (r.rows, r.columns) {
        return Ok(false);
    }
    let verdict = match (r.verdict, &r.combination, &r.witness) {
        (Verdict::Vanishes, Some(rows), None) => match index_of(&coboundary.rows, rows) {
            Some(combination) => ObstructionVerdict::Vanishes { combination },
            None => return Ok(false),
        },
        (Verdict::Nonvanishing, None, Some(cols)) => match index_of(&coboundary.columns, cols) {
            Some(witness) => ObstructionVerdict::Nonvanishing { witness },
            None => return Ok(false),
        },
        _ => return Ok(false),
    };
    let cert = ObstructionCertificate {
        cocycle,
        coboundary,
        rank: r.rank,
        verdict,
    };
    Ok(cert.verify() && rank_matches(&cert.coboundary.matrix, r.rank)?)
}

fn rank_matches(m: &Gf2Matrix, rank: usize) -> Result<bool> {
    let zero = Gf2Vector::zeros(m.ncols());
    let solution = crate::obstruction::gf2_solve(m, &zero)?;
    Ok(match solution {
        crate::obstruction::Gf2Solution::Solvable { rank: r, .. }
        | crate::obstruction::Gf2Solution::Infeasible { rank: r, .. } => r == rank,
    })
}
