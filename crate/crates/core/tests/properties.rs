mod support;

use std::collections::BTreeMap;

use nervecert::complex::is_remote;
use nervecert::convex::{hull_intersection, point_in_hull};
use nervecert::nerve::{nerve_exhaustive, nerve_helly};
use nervecert::{
    barycentric_subdivision, Face, HPolytope, Point, Rational, SimplicialComplex, VertexId,
};
use proptest::prelude::*;
use support::*;

fn facets_strategy() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::btree_set(1u32..=7, 1..=4), 1..=6)
        .prop_map(|fs| fs.into_iter().map(|s| s.into_iter().collect()).collect())
}

fn points_strategy(k: usize) -> impl Strategy<Value = Vec<Point<Rational>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, 2), 1..=k)
        .prop_map(|ps| ps.into_iter().map(|p| Point::from_ints(&p)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn facets_close_downward(facets in facets_strategy()) {
        let k = SimplicialComplex::from_facets(facets.clone()).unwrap();
        prop_assert!(k.is_downward_closed());
        for f in &facets {
            prop_assert!(k.contains(&Face::new(f.iter().copied()).unwrap()));
        }
        let again = SimplicialComplex::from_facets(k.facets().iter().map(|f| f.vertices().to_vec())).unwrap();
        prop_assert_eq!(again, k);
    }

    #[test]
    fn subdivision_vertices_are_faces(facets in facets_strategy()) {
        let k = SimplicialComplex::from_facets(facets).unwrap();
        let sd = barycentric_subdivision(&k);
        prop_assert_eq!(sd.complex().vertices().len(), k.num_faces());
        prop_assert_eq!(sd.complex().dim(), k.dim());
        // Chains of nonempty subsets topped by a face of size s number
        // c(s) = 1 + sum_{t<s} C(s,t) c(t).
        let mut c = [0usize; 8];
        for s in 1..8 {
            let mut binom = 1usize;
            let mut total = 1;
            for (t, ct) in c.iter().enumerate().take(s).skip(1) {
                binom = binom * (s - t + 1) / t;
                total += binom * ct;
            }
            c[s] = total;
        }
        let chains: usize = k.faces().map(|f| c[f.len()]).sum();
        prop_assert_eq!(sd.complex().num_faces(), chains);
    }

    #[test]
    fn remoteness_is_symmetric_and_matches_labels(facets in facets_strategy()) {
        let k = SimplicialComplex::from_facets(facets).unwrap();
        let sd = barycentric_subdivision(&k);
        let labels: BTreeMap<VertexId, Face> = sd.labels().map(|(v, f)| (v, f.clone())).collect();
        let faces: Vec<&Face> = sd.complex().faces().take(40).collect();
        for a in &faces {
            for b in &faces {
                let ab = is_remote(sd.complex(), a, b).unwrap();
                prop_assert_eq!(ab, is_remote(sd.complex(), b, a).unwrap());
                prop_assert_eq!(ab, remote_by_labels(&labels, a, b));
            }
        }
    }

    #[test]
    fn hull_intersection_is_symmetric(a in points_strategy(3), b in points_strategy(3)) {
        let ab = hull_intersection(&a, &b).unwrap();
        let ba = hull_intersection(&b, &a).unwrap();
        prop_assert_eq!(ab.is_some(), ba.is_some());
        if let Some(p) = ab {
            prop_assert!(point_in_hull(&p, &a).unwrap());
            prop_assert!(point_in_hull(&p, &b).unwrap());
        }
        for p in &a {
            if point_in_hull(p, &b).unwrap() {
                prop_assert!(ba.is_some());
            }
        }
    }

    #[test]
    fn canonical_point_agrees_with_elimination(seed in any::<u64>(), m in 1usize..=3) {
        let mut r = rng(seed);
        let p = random_polytope(&mut r, m);
        let empty = fm_is_empty(p.rows(), p.rhs());
        prop_assert_eq!(p.is_empty(), empty);
        match p.canonical_point() {
            Ok(x) => {
                prop_assert!(!empty);
                prop_assert!(p.contains(&x).unwrap());
            }
            Err(_) => {
                prop_assert!(empty);
                let y = p.emptiness_certificate().unwrap();
                prop_assert!(p.verify_emptiness_certificate(&y));
            }
        }
    }

    #[test]
    fn canonical_point_is_deterministic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_polytope(&mut r, 2);
        let shuffled = HPolytope::new(2, p.rows().to_vec(), p.rhs().to_vec()).unwrap();
        prop_assert_eq!(p.canonical_point().ok(), shuffled.canonical_point().ok());
    }
}

#[test]
fn nerve_modes_match_elimination_oracle() {
    let mut r = rng(7);
    for round in 0..60 {
        let m = 1 + round % 3;
        let n = 2 + round % 5;
        let family = random_family(&mut r, m, n);
        let helly = nerve_helly(&family).unwrap();
        assert_eq!(helly, nerve_exhaustive(&family).unwrap(), "round {round}");
        assert_eq!(*helly.face_set(), brute_nerve(&family), "round {round}");
    }
}

#[test]
fn nerve_is_monotone_under_deletion() {
    let mut r = rng(11);
    for _ in 0..30 {
        let family = random_family(&mut r, 2, 6);
        let full = nerve_helly(&family).unwrap();
        let kept: Vec<_> = family.bodies()[1..].to_vec();
        let sub = nervecert::ConvexFamily::new(2, kept).unwrap();
        let sub_nerve = nerve_helly(&sub).unwrap();
        let induced: std::collections::BTreeSet<Face> = full
            .faces()
            .filter(|f| !f.contains(VertexId(1)))
            .cloned()
            .collect();
        assert_eq!(*sub_nerve.face_set(), induced);
    }
}
