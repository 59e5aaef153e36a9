use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use inbody::metrics::{distance_to_boundary, hull_volume, inradius, volume};
use inbody::neighbourhood::{inner_parallel_body, vol_inner_neighbourhood};
use inbody::polytope::{
    contains_point, convex_hull, remove_redundant_halfspaces, vertex_enumeration,
};
use inbody::projective::{
    apply_projective, exponent_from_holes, generate_holes, hole_series, image_polytope,
    norm_series, norm_series_exponent, normalize_unimodular, simplex_chart, ChartPoint, MatrixNorm,
    ProjectiveIFS,
};
use inbody::shapes::random_polytope;
use inbody::{validate_body, Body, VertexSet};

fn body(n: usize, seed: u64) -> Body {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    validate_body(&random_polytope(n, &mut rng)).unwrap()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Interior point as a convex combination of vertices.
fn combination(b: &Body, weights: &[f64]) -> Vec<f64> {
    let verts = b.vertices();
    let total: f64 = weights.iter().take(verts.len()).sum();
    let mut x = vec![0.0; b.dim()];
    for (v, w) in verts.iter().zip(weights) {
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += vi * w / total;
        }
    }
    x
}

/// Two-map middle-gap family on `[0,1]`: `t ↦ t/k1` and `t ↦ 1 − (1−t)/k2`.
fn two_gap_ifs(k1: f64, k2: f64) -> ProjectiveIFS {
    ProjectiveIFS::from_rows(
        1,
        &[
            vec![vec![k1, k1 - 1.0], vec![0.0, 1.0]],
            vec![vec![1.0, 0.0], vec![k2 - 1.0, k2]],
        ],
    )
    .unwrap()
}

fn similarity_dimension(k1: f64, k2: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if k1.powf(-mid) + k2.powf(-mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hull_of_vertices_round_trips(n in 2usize..=4, seed in any::<u64>()) {
        let b = body(n, seed);
        let verts = vertex_enumeration(&b);
        let rebuilt = validate_body(&convex_hull(&verts).unwrap()).unwrap();
        prop_assert!(rel_close(volume(&b), volume(&rebuilt), 1e-9));
        prop_assert_eq!(rebuilt.vertices().len(), verts.vertices.len());
        prop_assert!(rel_close(hull_volume(&verts).unwrap(), volume(&b), 1e-9));
    }

    #[test]
    fn enumerated_vertices_satisfy_every_halfspace(n in 2usize..=4, seed in any::<u64>()) {
        let b = body(n, seed);
        for v in b.vertices() {
            prop_assert!(contains_point(b.system(), v, 1e-9 * b.scale()).unwrap());
        }
    }

    #[test]
    fn redundancy_removal_is_idempotent(n in 2usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_polytope(n, &mut rng);
        let once = remove_redundant_halfspaces(&h).unwrap();
        let twice = remove_redundant_halfspaces(&once).unwrap();
        prop_assert_eq!(once.halfspaces.len(), twice.halfspaces.len());
        prop_assert!(once.halfspaces.len() <= h.halfspaces.len());
    }

    #[test]
    fn scaled_copy_about_incentre_stays_inside(
        n in 2usize..=4,
        seed in any::<u64>(),
        lambda in 0.0f64..=1.0,
    ) {
        let b = body(n, seed);
        let copy = b.vertex_set().scale_about(b.chebyshev_center(), lambda).unwrap();
        for v in &copy.vertices {
            prop_assert!(contains_point(b.system(), v, 1e-9 * b.scale()).unwrap());
        }
    }

    #[test]
    fn boundary_distance_is_concave(
        n in 2usize..=3,
        seed in any::<u64>(),
        wx in prop::collection::vec(0.01f64..1.0, 12),
        wy in prop::collection::vec(0.01f64..1.0, 12),
    ) {
        let b = body(n, seed);
        let x = combination(&b, &wx);
        let y = combination(&b, &wy);
        let mid: Vec<f64> = x.iter().zip(&y).map(|(a, c)| 0.5 * (a + c)).collect();
        let dx = distance_to_boundary(&b, &x).unwrap();
        let dy = distance_to_boundary(&b, &y).unwrap();
        let dm = distance_to_boundary(&b, &mid).unwrap();
        prop_assert!(dm >= 0.5 * (dx + dy) - 1e-12);
        prop_assert!(dx <= inradius(&b) + 1e-12);
    }

    #[test]
    fn inner_volume_grows_with_eps(
        n in 2usize..=4,
        seed in any::<u64>(),
        a in 0.0f64..1.0,
        c in 0.0f64..1.0,
    ) {
        let b = body(n, seed);
        let r = inradius(&b);
        let (lo, hi) = if a <= c { (a * r, c * r) } else { (c * r, a * r) };
        let l_lo = vol_inner_neighbourhood(&b, lo).unwrap();
        let l_hi = vol_inner_neighbourhood(&b, hi).unwrap();
        prop_assert!(l_lo <= l_hi + 1e-9 * volume(&b));
        if let Some(inner) = inner_parallel_body(&b, hi).unwrap() {
            for v in inner.vertices() {
                let d = distance_to_boundary(&b, v).unwrap();
                prop_assert!(d >= hi - 1e-7 * b.scale());
            }
        }
    }

    #[test]
    fn word_action_composes(
        n in 1usize..=2,
        entries_a in prop::collection::vec(0.1f64..3.0, 9),
        entries_b in prop::collection::vec(0.1f64..3.0, 9),
    ) {
        let k = n + 1;
        let a = DMatrix::from_row_slice(k, k, &entries_a[..k * k]);
        let b = DMatrix::from_row_slice(k, k, &entries_b[..k * k]);
        let chart = simplex_chart(n);
        let nested = image_polytope(&a, &image_polytope(&b, &chart).unwrap()).unwrap();
        let direct = image_polytope(&(&a * &b), &chart).unwrap();
        for (p, q) in nested.vertices.iter().zip(&direct.vertices) {
            for (x, y) in p.iter().zip(q) {
                prop_assert!((x - y).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn unimodular_rescaling_keeps_the_action(
        k1 in 2.2f64..6.0,
        k2 in 2.2f64..6.0,
        t in 0.0f64..=1.0,
    ) {
        let ifs = two_gap_ifs(k1, k2);
        let uni = normalize_unimodular(&ifs).unwrap();
        let p = ChartPoint::new(vec![t]);
        for (m, u) in ifs.matrices.iter().zip(&uni.matrices) {
            prop_assert!((u.determinant().abs() - 1.0).abs() <= 1e-12);
            let x = apply_projective(m, &p).unwrap();
            let y = apply_projective(u, &p).unwrap();
            prop_assert!((x.coords[0] - y.coords[0]).abs() <= 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn holes_are_disjoint_and_fit_in_the_chart(
        k1 in 2.2f64..6.0,
        k2 in 2.2f64..6.0,
        depth in 1usize..=8,
    ) {
        let ifs = two_gap_ifs(k1, k2);
        let seed = VertexSet::new(1, vec![vec![1.0 / k1], vec![1.0 - 1.0 / k2]]);
        let holes = generate_holes(&ifs, &[seed], depth).unwrap();
        let mut intervals: Vec<(f64, f64)> = holes
            .iter()
            .map(|h| {
                let a = h.body.vertices[0][0];
                let b = h.body.vertices[1][0];
                (a.min(b), a.max(b))
            })
            .collect();
        intervals.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        prop_assert!(intervals[0].0 > 0.0);
        prop_assert!(intervals.last().unwrap().1 < 1.0);
        for w in intervals.windows(2) {
            prop_assert!(w[0].1 <= w[1].0 + 1e-12);
        }
        let total: f64 = holes.iter().map(|h| h.volume).sum();
        prop_assert!(total <= 1.0 + 1e-6);
    }

    #[test]
    fn series_rows_decrease_in_s(
        k1 in 2.2f64..6.0,
        k2 in 2.2f64..6.0,
        s1 in 0.0f64..1.0,
        s2 in 0.0f64..1.0,
    ) {
        let (lo, hi) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
        let ifs = two_gap_ifs(k1, k2);
        let seed = VertexSet::new(1, vec![vec![1.0 / k1], vec![1.0 - 1.0 / k2]]);
        let holes = generate_holes(&ifs, &[seed], 6).unwrap();
        let t_lo = hole_series(&holes, lo, 1);
        let t_hi = hole_series(&holes, hi, 1);
        for (a, b) in t_lo.per_depth.iter().zip(&t_hi.per_depth) {
            prop_assert!(b <= &(a * (1.0 + 1e-12)));
        }
        let uni = normalize_unimodular(&ifs).unwrap();
        let u_lo = norm_series(&uni, lo, 6, MatrixNorm::Spectral);
        let u_hi = norm_series(&uni, hi, 6, MatrixNorm::Spectral);
        for (a, b) in u_lo.per_depth.iter().zip(&u_hi.per_depth) {
            prop_assert!(b <= &(a * (1.0 + 1e-12)));
        }
    }

    #[test]
    fn two_gap_exponent_matches_similarity_dimension(
        k1 in 2.2f64..6.0,
        k2 in 2.2f64..6.0,
    ) {
        let ifs = two_gap_ifs(k1, k2);
        let seed = VertexSet::new(1, vec![vec![1.0 / k1], vec![1.0 - 1.0 / k2]]);
        let holes = generate_holes(&ifs, &[seed], 12).unwrap();
        let est = exponent_from_holes(&holes, 1, 12, 0.01).unwrap();
        let target = similarity_dimension(k1, k2);
        prop_assert!((0.0..=1.0).contains(&est.s_star));
        prop_assert!((est.s_star - target).abs() <= 0.01, "{} vs {}", est.s_star, target);
        let norms = norm_series_exponent(&ifs, 12, 0.01, MatrixNorm::Spectral).unwrap();
        prop_assert!(norms.s_star <= est.s_star + 0.02, "{} vs {}", norms.s_star, est.s_star);
    }
}
