mod common;

use common::{affine_dim_oracle, point, q, quad_fixture, r, rational_fixtures, rows};
use proptest::prelude::*;
use refinery_core::hexagon::{cycle_midpoints, hexagon_vertices};
use refinery_core::linalg::combine;
use refinery_core::{
    affine_dependencies, vertices_of_hsystem, Rational, Scalar, VPolytope, Vector,
};

fn roundtrip<S: Scalar>(points: Vec<Vector<S>>) -> (VPolytope<S>, VPolytope<S>) {
    let p = VPolytope::new(points).unwrap();
    let back = vertices_of_hsystem(p.facets().unwrap()).unwrap();
    (p, back)
}

#[test]
fn fixture_roundtrip() {
    let fixtures = rational_fixtures();
    assert!(fixtures.len() >= 6, "fixtures missing: {}", fixtures.len());
    for (name, points) in fixtures {
        let (p, back) = roundtrip(points);
        assert!(p.dimension().unwrap() <= 6, "{name}");
        assert_eq!(back.vertices(), p.vertices(), "{name}");
    }
    let (p, back) = roundtrip(quad_fixture("pentagon_sqrt5.txt"));
    assert_eq!(p.vertices().len(), 5);
    assert_eq!(back.vertices(), p.vertices());
}

#[test]
fn fixture_facet_counts() {
    let expect = [
        ("cross4.txt", 16),
        ("cube3.txt", 6),
        ("hexagon.txt", 6),
        ("octahedron3.txt", 8),
        ("prism3.txt", 5),
        ("simplex5.txt", 6),
        ("square_duplicates.txt", 4),
    ];
    let fixtures = rational_fixtures();
    for (name, count) in expect {
        let points = &fixtures.iter().find(|(n, _)| n == name).unwrap().1;
        let p = VPolytope::new(points.clone()).unwrap();
        assert_eq!(p.facets().unwrap().inequalities().len(), count, "{name}");
    }
}

#[test]
fn dependency_examples() {
    assert_eq!(affine_dependencies(&hexagon_vertices()).unwrap().len(), 3);

    let even = affine_dependencies(&cycle_midpoints::<Rational>(6)).unwrap();
    assert_eq!(even.len(), 1);
    let lead = even[0][0].clone();
    for (j, x) in even[0].iter().enumerate() {
        let sign = if j % 2 == 0 { r(1) } else { r(-1) };
        assert_eq!(x.clone(), sign * lead.clone());
    }
    for n in [3, 5, 7] {
        assert!(affine_dependencies(&cycle_midpoints::<Rational>(n))
            .unwrap()
            .is_empty());
    }
}

#[test]
fn minimal_faces_of_the_square() {
    let sq = VPolytope::new(rows(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])).unwrap();
    for v in sq.vertices() {
        let f = sq.minimal_face_containing(v).unwrap();
        assert_eq!(f.dimension, 0);
        assert_eq!(f.vertices.len(), 1);
    }
    let edge = sq.minimal_face_containing(&[q(1, 2), r(0)]).unwrap();
    assert_eq!(edge.dimension, 1);
    let centre = sq.minimal_face_containing(&[q(1, 2), q(1, 2)]).unwrap();
    assert_eq!(centre.vertices.len(), 4);
}

fn point_set() -> impl Strategy<Value = Vec<Vector<Rational>>> {
    (1usize..=4).prop_flat_map(|dim| prop::collection::vec(point(dim), 1..=8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dependency_count_matches_dimension(points in point_set()) {
        let deps = affine_dependencies(&points).unwrap();
        let dim = affine_dim_oracle(&points);
        prop_assert_eq!(deps.len(), points.len() - 1 - dim);
        for lambda in &deps {
            let total = lambda.iter().fold(r(0), |a, x| a + x);
            prop_assert_eq!(total, r(0));
            prop_assert!(combine(lambda, &points).iter().all(Scalar::is_zero));
        }
    }
}

fn full_dim_set(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vector<Rational>>> {
    prop::collection::vec(point(dim), dim + 1..=max)
        .prop_filter("full dimensional", move |pts| affine_dim_oracle(pts) == dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn v_h_roundtrip_planar(points in full_dim_set(2, 9)) {
        let (p, back) = roundtrip(points);
        prop_assert_eq!(back.vertices(), p.vertices());
    }

    #[test]
    fn v_h_roundtrip_spatial(points in full_dim_set(3, 8)) {
        let (p, back) = roundtrip(points);
        prop_assert_eq!(back.vertices(), p.vertices());
    }

    #[test]
    fn v_h_roundtrip_flat(points in prop::collection::vec(point(2), 2..=6)) {
        // Lift a planar set into a plane of R^3.
        let lifted: Vec<Vector<Rational>> = points
            .iter()
            .map(|p| vec![p[0].clone(), p[1].clone(), p[0].clone() + p[1].clone() + r(1)])
            .collect();
        let (p, back) = roundtrip(lifted);
        prop_assert_eq!(back.vertices(), p.vertices());
    }

    #[test]
    fn membership_agrees_with_facets(points in full_dim_set(2, 7), x in point(2)) {
        let p = VPolytope::new(points).unwrap();
        let x: Vector<Rational> = x.into_iter().map(|c| c / r(2)).collect();
        prop_assert_eq!(p.contains(&x), p.facets().unwrap().contains(&x));
    }

    #[test]
    fn minimal_face_is_singleton_exactly_at_vertices(points in full_dim_set(2, 7), pick in 0usize..7) {
        let p = VPolytope::new(points.clone()).unwrap();
        let x = &points[pick % points.len()];
        let face = p.minimal_face_containing(x).unwrap();
        prop_assert_eq!(face.vertices.len() == 1, p.is_extreme(x));
        if face.vertices.len() == 1 {
            prop_assert_eq!(&p.vertices()[face.vertices[0]], x);
        }
    }

    #[test]
    fn output_is_invariant_under_permutation(
        points in full_dim_set(2, 8),
        seed in any::<u64>(),
    ) {
        let mut shuffled = points.clone();
        // Deterministic Fisher-Yates from the seed.
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = VPolytope::new(points).unwrap();
        let b = VPolytope::new(shuffled).unwrap();
        prop_assert_eq!(a.vertices(), b.vertices());
        prop_assert_eq!(a.facets().unwrap(), b.facets().unwrap());
    }
}
