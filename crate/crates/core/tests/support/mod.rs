#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use nervecert::{ConvexFamily, Face, HPolytope, Rational, SimplicialComplex, VertexId};
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn face(v: &[u32]) -> Face {
    Face::new(v.iter().copied()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fourier-Motzkin emptiness test for `{x : A x ≤ b}`.
///
/// Rows are scaled so their first nonzero coefficient is ±1 and parallel
/// rows keep only the tightest bound, which keeps the blow-up manageable
/// for the small boxes and polytopes used here.
pub fn fm_is_empty(rows: &[Vec<Rational>], rhs: &[Rational]) -> bool {
    let dim = rows.first().map_or(0, |r| r.len());
    let mut system = normalise(rows.iter().cloned().zip(rhs.iter().cloned()));
    for var in (0..dim).rev() {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for (row, b) in system {
            if row[var].is_positive() {
                pos.push((row, b));
            } else if row[var].is_negative() {
                neg.push((row, b));
            } else {
                rest.push((row, b));
            }
        }
        for (p, pb) in &pos {
            for (n, nb) in &neg {
                let cp = p[var].clone();
                let cn = -n[var].clone();
                let row: Vec<Rational> = p.iter().zip(n).map(|(a, c)| a * &cn + c * &cp).collect();
                rest.push((row, pb * &cn + nb * &cp));
            }
        }
        system = normalise(rest.into_iter());
    }
    system.iter().any(|(_, b)| b.is_negative())
}

fn normalise<I>(rows: I) -> Vec<(Vec<Rational>, Rational)>
where
    I: Iterator<Item = (Vec<Rational>, Rational)>,
{
    let mut tightest: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    for (row, b) in rows {
        let (row, b) = match row.iter().find(|v| !v.is_zero()) {
            Some(lead) => {
                let s = lead.abs();
                (row.iter().map(|v| v / &s).collect::<Vec<_>>(), b / &s)
            }
            None => (row, b),
        };
        tightest
            .entry(row)
            .and_modify(|old| {
                if b < *old {
                    *old = b.clone();
                }
            })
            .or_insert(b);
    }
    tightest.into_iter().collect()
}

pub fn fm_meets(family: &ConvexFamily<Rational>, f: &Face) -> bool {
    let meet = family.intersection(f).unwrap();
    !fm_is_empty(meet.rows(), meet.rhs())
}

/// Nerve by testing every subset of labels with Fourier-Motzkin.
pub fn brute_nerve(family: &ConvexFamily<Rational>) -> BTreeSet<Face> {
    let labels: Vec<VertexId> = family.labels().into_iter().collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << labels.len()) {
        let f = Face::new(
            (0..labels.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| labels[i]),
        )
        .unwrap();
        if fm_meets(family, &f) {
            out.insert(f);
        }
    }
    out
}

/// Two subdivision faces are remote iff no label of one is comparable with
/// a label of the other.
pub fn remote_by_labels(labels: &BTreeMap<VertexId, Face>, a: &Face, b: &Face) -> bool {
    a.vertices().iter().all(|u| {
        b.vertices().iter().all(|w| {
            let (fu, fw) = (&labels[u], &labels[w]);
            !fu.is_subset(fw) && !fw.is_subset(fu)
        })
    })
}

fn random_box(rng: &mut impl Rng, m: usize) -> (Vec<Rational>, Vec<Rational>) {
    let lo: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=16)).collect();
    let hi: Vec<i64> = lo.iter().map(|l| l + rng.gen_range(1..=8)).collect();
    (
        lo.iter().map(|&v| q(v, 2)).collect(),
        hi.iter().map(|&v| q(v, 2)).collect(),
    )
}

/// A bounded, nonempty body: a box, sometimes cut by halfspaces that keep
/// its centre.
pub fn random_body(rng: &mut impl Rng, m: usize) -> HPolytope<Rational> {
    let (lo, hi) = random_box(rng, m);
    let centre: Vec<Rational> = lo.iter().zip(&hi).map(|(l, h)| (l + h) / q(2, 1)).collect();
    let mut body = HPolytope::from_box(lo, hi).unwrap();
    if rng.gen_bool(0.5) {
        for _ in 0..rng.gen_range(1..=2) {
            let a: Vec<Rational> = loop {
                let a: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
                if a.iter().any(|&v| v != 0) {
                    break a.into_iter().map(|v| q(v, 1)).collect();
                }
            };
            let at_centre: Rational = a.iter().zip(&centre).map(|(x, c)| x * c).sum();
            let slack = q(rng.gen_range(0..=4), 2);
            body.push_row(a, at_centre + slack).unwrap();
        }
    }
    body
}

/// `n` bodies labelled `1..=n` in `Rᵐ`.
pub fn random_family(rng: &mut impl Rng, m: usize, n: usize) -> ConvexFamily<Rational> {
    ConvexFamily::new(
        m,
        (1..=n as u32)
            .map(|i| (VertexId(i), random_body(rng, m)))
            .collect(),
    )
    .unwrap()
}

/// Polytope from random constraints around a box; may well be empty.
pub fn random_polytope(rng: &mut impl Rng, m: usize) -> HPolytope<Rational> {
    let (lo, hi) = random_box(rng, m);
    let mut p = HPolytope::from_box(lo, hi).unwrap();
    for _ in 0..rng.gen_range(0..=4) {
        let a: Vec<Rational> = (0..m).map(|_| q(rng.gen_range(-4..=4), 1)).collect();
        p.push_row(a, q(rng.gen_range(-20..=40), 2)).unwrap();
    }
    p
}

/// Random complex given by up to `facets` random faces on `1..=n`.
pub fn random_complex(
    rng: &mut impl Rng,
    n: u32,
    facets: usize,
    max_size: usize,
) -> SimplicialComplex {
    let mut list = Vec::new();
    for _ in 0..facets {
        let size = rng.gen_range(1..=max_size);
        let mut vs = BTreeSet::new();
        while vs.len() < size.min(n as usize) {
            vs.insert(rng.gen_range(1..=n));
        }
        list.push(vs.into_iter().collect::<Vec<_>>());
    }
    SimplicialComplex::from_facets(list).unwrap()
}

pub struct LemmaRound {
    pub nerve_faces: usize,
    pub remote_pairs: usize,
    pub piece_tests: usize,
    /// Pair named by the violation after corrupting one witness.
    pub detected: Option<(Face, Face)>,
}

/// Builds the witness map of a random family's nerve, checks membership,
/// chain containment and remote disjointness, then corrupts one witness
/// and expects a named violation.
pub fn lemma_round(family: &ConvexFamily<Rational>) -> Result<LemmaRound, String> {
    use nervecert::complex::{is_remote, maximal_chains};
    use nervecert::convex::point_in_hull;
    use nervecert::nerve::nerve_helly;
    use nervecert::wegner::check_witnesses;
    use nervecert::WegnerMap;

    let nerve = nerve_helly(family).map_err(|e| e.to_string())?;
    let map = WegnerMap::build(family, &nerve).map_err(|e| e.to_string())?;
    if let Some(v) = check_witnesses(family, map.witness()).map_err(|e| e.to_string())? {
        return Err(format!("witness of {} leaves body {}", v.face, v.body));
    }
    // Every maximal chain of sd K lies in the bodies of its bottom face.
    for top in nerve.facets() {
        for chain in maximal_chains(&top) {
            let bottom = chain.last().unwrap();
            let meet = family.intersection(bottom).unwrap();
            for member in &chain {
                if !meet.contains(map.witness().get(member).unwrap()).unwrap() {
                    return Err(format!(
                        "witness of {member} outside the bodies of {bottom}"
                    ));
                }
            }
        }
    }
    if let Err(v) = map.verify_containment(family).map_err(|e| e.to_string())? {
        return Err(format!("containment fails at {}", v.member));
    }
    let stats = match map
        .verify_remote_disjointness()
        .map_err(|e| e.to_string())?
    {
        Ok(stats) => stats,
        Err(v) => return Err(format!("remote faces {} and {} meet", v.alpha, v.beta)),
    };

    let remote = map.remote_pairs();
    let detected = match remote.first() {
        None => None,
        Some((alpha, beta)) => {
            let target = map.witness().get(beta).unwrap().clone();
            let bad = map
                .with_corrupted_witness(alpha, target)
                .map_err(|e| e.to_string())?;
            match bad
                .verify_remote_disjointness()
                .map_err(|e| e.to_string())?
            {
                Ok(_) => return Err(format!("corruption of {alpha} went unnoticed")),
                Err(v) => {
                    let named_remote = is_remote(&nerve, &v.alpha, &v.beta).unwrap();
                    let in_both = point_in_hull(&v.point, &v.piece_alpha.points).unwrap()
                        && point_in_hull(&v.point, &v.piece_beta.points).unwrap();
                    if !named_remote || !in_both {
                        return Err(format!("bogus violation {} / {}", v.alpha, v.beta));
                    }
                    Some((v.alpha, v.beta))
                }
            }
        }
    };
    Ok(LemmaRound {
        nerve_faces: nerve.num_faces(),
        remote_pairs: stats.remote_pairs,
        piece_tests: stats.piece_tests,
        detected,
    })
}

/// Three collinear intervals in the plane that pairwise and jointly meet.
pub const INTERVALS_FAMILY: &str = r#"{"ambient": 2, "bodies": [
    {"label": 1, "box": {"lo": [0, 0], "hi": [2, 0]}},
    {"label": 2, "box": {"lo": [1, 0], "hi": [3, 0]}},
    {"label": 3, "box": {"lo": ["3/2", 0], "hi": ["5/2", 0]}}
]}"#;

pub const EDGE: &str = r#"{"facets": [[1, 2]]}"#;

/// Unit squares in a row, one per vertex of the subdivided path 1-2-3,
/// in the order {1}, {1,2}, {2}, {2,3}, {3}.
pub const PATH_FAMILY: &str = r#"{"ambient": 2, "bodies": [
    {"label": 1, "box": {"lo": [0, 0], "hi": [1, 1]}},
    {"label": 4, "box": {"lo": [1, 0], "hi": [2, 1]}},
    {"label": 2, "box": {"lo": [2, 0], "hi": [3, 1]}},
    {"label": 5, "box": {"lo": [3, 0], "hi": [4, 1]}},
    {"label": 3, "box": {"lo": [4, 0], "hi": [5, 1]}}
]}"#;

pub const PATH: &str = r#"{"facets": [[1, 2], [2, 3]]}"#;

pub fn bin() -> std::process::Command {
    std::process::Command::new(env!("CARGO_BIN_EXE_nervecert"))
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Run {
    let out = bin().args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}
