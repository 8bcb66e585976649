mod common;

use proptest::prelude::*;
use rand::RngExt;
use rand_chacha::ChaCha8Rng;

use hyperwidth::body::polygon_sag;
use hyperwidth::{
    ball_body, geodesic_point, h_distance, hausdorff_distance, parallel_domain, Body, HPoint,
    Vector,
};

use common::*;

/// Random point of the body: a random convex combination of its Klein
/// vertices.
fn sample_in(rng: &mut ChaCha8Rng, k: &Body) -> HPoint {
    let kv = k.klein_vertices();
    let w: Vec<f64> = kv.iter().map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
    let total: f64 = w.iter().sum();
    let mut p = Vector::zeros(k.dim());
    for (v, wi) in kv.iter().zip(&w) {
        p = p.axpy(wi / total, v);
    }
    HPoint::from_klein(p.as_slice()).unwrap()
}

/// Evenly spaced Klein points along the boundary of a polygon.
fn boundary_samples(k: &Body, count: usize) -> Vec<HPoint> {
    let kv = k.klein_vertices();
    let n = kv.len();
    let per = count.div_ceil(n);
    let mut out = Vec::with_capacity(per * n);
    // Polygon vertices are stored in cyclic order, so consecutive pairs
    // are the edges.
    for i in 0..n {
        let (a, b) = (&kv[i], &kv[(i + 1) % n]);
        for j in 0..per {
            let s = j as f64 / per as f64;
            out.push(HPoint::from_klein(a.axpy(s, &(b.clone() - a.clone())).as_slice()).unwrap());
        }
    }
    out
}

fn same_vertices(a: &Body, b: &Body, tol: f64) -> bool {
    a.vertices().len() == b.vertices().len()
        && a.klein_vertices()
            .iter()
            .all(|v| b.klein_vertices().iter().any(|w| v.max_abs_diff(w) <= tol))
}

fn enlarge(rng: &mut ChaCha8Rng, k: &Body, extra: usize) -> Body {
    let mut pts: Vec<HPoint> = k.vertices().to_vec();
    for _ in 0..extra {
        pts.push(point(rng, k.dim(), 0.8));
    }
    Body::hull(&pts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn isometry_invariance(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let k = if n == 2 { polygon(&mut r) } else { polytope(&mut r) };
        let l = if n == 2 { polygon(&mut r) } else { polytope(&mut r) };
        let g = Isometry::random(&mut r, n, 1.0);
        let (gk, gl) = (g.body(&k), g.body(&l));
        prop_assert_eq!(gk.vertices().len(), k.vertices().len());
        prop_assert!((gk.diameter() - k.diameter()).abs() <= 1e-8);
        let h = hausdorff_distance(&k, &l).unwrap();
        prop_assert!((hausdorff_distance(&gk, &gl).unwrap() - h).abs() <= 1e-8);
        let ln = line(&mut r, n, 0.8);
        let (a, b) = k.support_along_line(&ln);
        let (ga, gb) = gk.support_along_line(&g.line(&ln));
        prop_assert!((a - ga).abs() <= 1e-8 && (b - gb).abs() <= 1e-8);
        let i = ideal(&mut r, n);
        let (lo, hi) = k.supporting_horoball_levels(&i);
        let (glo, ghi) = gk.supporting_horoball_levels(&g.ideal(&i));
        prop_assert!(((hi / lo).ln() - (ghi / glo).ln()).abs() <= 1e-8);
    }

    #[test]
    fn monotone_under_inclusion(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let k = if n == 2 { polygon(&mut r) } else { polytope(&mut r) };
        let l = enlarge(&mut r, &k, 3);
        prop_assert!(k.diameter() <= l.diameter() + 1e-12);
        for _ in 0..4 {
            let ln = line(&mut r, n, 0.8);
            let (a, b) = k.support_along_line(&ln);
            let (c, d) = l.support_along_line(&ln);
            prop_assert!(c <= a + 1e-12 && b <= d + 1e-12);
            let i = ideal(&mut r, n);
            let (lo, hi) = k.supporting_horoball_levels(&i);
            let (llo, lhi) = l.supporting_horoball_levels(&i);
            prop_assert!(llo <= lo * (1.0 + 1e-9) && hi <= lhi * (1.0 + 1e-9));
            prop_assert!((hi / lo).ln() <= (lhi / llo).ln() + 1e-9);
        }
    }

    #[test]
    fn diameter_bounds_sampled_pairs(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let k = if n == 2 { polygon(&mut r) } else { polytope(&mut r) };
        let d = k.diameter();
        let pts: Vec<HPoint> = (0..100).map(|_| sample_in(&mut r, &k)).collect();
        let mut best: f64 = 0.0;
        for p in &pts {
            for q in &pts {
                best = best.max(h_distance(p, q));
            }
        }
        for v in k.vertices() {
            for w in k.vertices() {
                best = best.max(h_distance(v, w));
            }
        }
        prop_assert!(best <= d + 1e-9);
        prop_assert!((best - d).abs() <= 1e-9);
    }

    #[test]
    fn hausdorff_is_a_metric(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let mk = |r: &mut ChaCha8Rng| if n == 2 { polygon(r) } else { polytope(r) };
        let (a, b, c) = (mk(&mut r), mk(&mut r), mk(&mut r));
        let ab = hausdorff_distance(&a, &b).unwrap();
        let ba = hausdorff_distance(&b, &a).unwrap();
        let bc = hausdorff_distance(&b, &c).unwrap();
        let ac = hausdorff_distance(&a, &c).unwrap();
        prop_assert!(ab >= 0.0);
        prop_assert!((ab - ba).abs() <= 1e-9);
        prop_assert!(ac <= ab + bc + 1e-9);
        prop_assert!(hausdorff_distance(&a, &a).unwrap() <= 1e-9);
    }

    #[test]
    fn hull_is_idempotent_and_contains_geodesics(seed in any::<u64>(), n in 2usize..=5) {
        let mut r = rng(seed);
        let pts: Vec<HPoint> = (0..(n + 8)).map(|_| point(&mut r, n, 0.8)).collect();
        let k = Body::hull(&pts).unwrap();
        let again = Body::hull(k.vertices()).unwrap();
        prop_assert!(same_vertices(&k, &again, 0.0));
        for p in &pts {
            prop_assert!(k.contains_point(p, 1e-9));
        }
        for _ in 0..20 {
            let p = &pts[r.random_range(0..pts.len())];
            let q = &pts[r.random_range(0..pts.len())];
            if h_distance(p, q) < 1e-9 {
                continue;
            }
            let u = hyperwidth::tangent_toward(p, q).unwrap();
            let t = r.random::<f64>() * h_distance(p, q);
            prop_assert!(k.contains_point(&geodesic_point(p, &u, t).unwrap(), 1e-9));
        }
    }

    #[test]
    fn distance_along_outward_facet_normal(seed in any::<u64>(), n in 2usize..=3, t in 0.01f64..2.0) {
        let mut r = rng(seed);
        let k = if n == 2 { polygon(&mut r) } else { polytope(&mut r) };
        let fs = k.facets().unwrap();
        let f = &fs[r.random_range(0..fs.len())];
        // Centroid of the facet's Klein vertices is a relative interior point.
        let mut c = Vector::zeros(n);
        for &i in f.vertices() {
            c = c.axpy(1.0 / f.vertices().len() as f64, &k.klein_vertices()[i]);
        }
        let v = HPoint::from_klein(c.as_slice()).unwrap();
        // B(u, u) = -1, so the facet normal read as a tangent points away
        // from the nonnegative side.
        let out = f.hyperplane().normal_at(&v).unwrap();
        let x = geodesic_point(&v, &out, t).unwrap();
        prop_assert!((k.distance_to(&x).unwrap() - t).abs() <= 1e-9);
        prop_assert!(!k.contains_point(&x, 0.9 * t));
        prop_assert!(k.contains_point(&x, 1.1 * t));
        prop_assert!(k.contains_point(&v, 0.0) || k.contains_point(&v, 1e-12));
        prop_assert_eq!(k.distance_to(&sample_in(&mut r, &k)).unwrap(), 0.0);
    }
}

#[test]
fn distance_matches_dense_boundary_sampling() {
    let mut r = rng(21);
    for _ in 0..20 {
        let k = polygon(&mut r);
        let boundary = boundary_samples(&k, 10_000);
        for _ in 0..10 {
            let x = point(&mut r, 2, 0.95);
            let d = k.distance_to(&x).unwrap();
            if k.contains_point(&x, 0.0) {
                assert_eq!(d, 0.0);
                continue;
            }
            let sampled = boundary
                .iter()
                .map(|p| h_distance(&x, p))
                .fold(f64::INFINITY, f64::min);
            assert!(d <= sampled + 1e-9, "{d} > {sampled}");
            assert!(sampled - d <= 2e-3, "{d} vs {sampled}");
        }
    }
}

#[test]
fn vertices_are_extreme_and_facets_support() {
    let mut r = rng(22);
    for n in [2, 3] {
        for _ in 0..30 {
            let k = if n == 2 { polygon(&mut r) } else { polytope(&mut r) };
            for kv in k.klein_vertices() {
                assert!(kv.norm() < 1.0 - 1e-9);
            }
            for f in k.facets().unwrap() {
                let on: usize = k
                    .vertices()
                    .iter()
                    .map(|v| f.hyperplane().side(v))
                    .inspect(|s| assert!(*s >= -1e-9))
                    .filter(|s| *s <= 1e-9)
                    .count();
                assert!(on >= n);
            }
            for (i, v) in k.vertices().iter().enumerate() {
                let others: Vec<HPoint> = k
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, w)| *w)
                    .collect();
                assert!(!Body::hull(&others).unwrap().contains_point(v, 0.0));
            }
        }
    }
}

#[test]
fn parallel_domain_matches_the_diameter_identity() {
    let mut r = rng(23);
    let m = 512;
    for _ in 0..10 {
        let k = polygon(&mut r);
        for rho in [0.1, 0.5] {
            let (p, err) = parallel_domain(&k, rho, m).unwrap();
            assert!(err >= polygon_sag(rho, m));
            assert!((p.diameter() - k.diameter() - 2.0 * rho).abs() <= 2.0 * err);
            for v in k.vertices() {
                assert!(p.contains_point(v, 0.0));
            }
            let h = hausdorff_distance(&k, &p).unwrap();
            assert!((h - rho).abs() <= err + 1e-9, "{h} vs {rho} (err {err})");
            let again = Body::hull(p.vertices()).unwrap();
            assert!(same_vertices(&p, &again, 0.0));
        }
    }
}

#[test]
fn parallel_domains_nest() {
    let mut r = rng(24);
    let m = 96;
    for _ in 0..5 {
        let k = polygon(&mut r);
        let (a, e1) = parallel_domain(&k, 0.2, m).unwrap();
        let (ab, e2) = parallel_domain(&a, 0.3, m).unwrap();
        let (direct, e3) = parallel_domain(&k, 0.5, m).unwrap();
        let gap = hausdorff_distance(&ab, &direct).unwrap();
        assert!(gap <= e1 + e2 + e3 + 1e-9, "gap {gap} vs {}", e1 + e2 + e3);
        for v in ab.vertices() {
            assert!(direct.contains_point(v, e1 + e2 + e3));
        }
    }
    let p = polytope(&mut r);
    let (q, _) = parallel_domain(&p, 0.0, m).unwrap();
    assert!(same_vertices(&p, &q, 0.0));
}

#[test]
fn parallel_domain_in_three_dimensions() {
    let mut r = rng(25);
    let k = polytope(&mut r);
    let (p, err) = parallel_domain(&k, 0.3, 32).unwrap();
    assert!((p.diameter() - k.diameter() - 0.6).abs() <= 2.0 * err);
    let h = hausdorff_distance(&k, &p).unwrap();
    assert!((h - 0.3).abs() <= err + 1e-9);
}

#[test]
fn two_balls_at_distance_d() {
    let mut r = rng(26);
    let m = 256;
    for _ in 0..10 {
        let d = 0.1 + 1.5 * r.random::<f64>();
        let rad = 0.2 + r.random::<f64>();
        let z = point(&mut r, 2, 0.5);
        let u = tangent(&mut r, &z);
        let w = geodesic_point(&z, &u, d).unwrap();
        let a = ball_body(&z, rad, m).unwrap();
        let b = ball_body(&w, rad, m).unwrap();
        let h = hausdorff_distance(&a, &b).unwrap();
        assert!((h - d).abs() <= 2.0 * polygon_sag(rad, m), "{h} vs {d}");
        for v in a.vertices() {
            assert!((h_distance(v, &z) - rad).abs() <= 1e-10);
        }
    }
}

#[test]
fn support_of_ball_through_center() {
    let mut r = rng(27);
    for n in [2, 3] {
        let z = point(&mut r, n, 0.5);
        let rad = 0.7;
        let m = if n == 2 { 512 } else { 48 };
        let b = ball_body(&z, rad, m).unwrap();
        let sag = hyperwidth::body::ball_sag(n, rad, m).unwrap();
        for _ in 0..10 {
            let l = hyperwidth::Line::new(tangent(&mut r, &z));
            let (lo, hi) = b.support_along_line(&l);
            assert!(lo <= -rad + sag + 1e-12 && lo >= -rad - 1e-12);
            assert!(hi >= rad - sag - 1e-12 && hi <= rad + 1e-12);
        }
    }
}

#[test]
fn degenerate_hulls() {
    let mut r = rng(28);
    let l = line(&mut r, 2, 0.5);
    let pts: Vec<HPoint> = [-0.5, 0.1, 0.7].iter().map(|t| l.point_at(*t)).collect();
    let seg = Body::hull(&pts).unwrap();
    assert_eq!(seg.vertices().len(), 2);
    assert!(seg.is_degenerate());
    assert!((seg.diameter() - 1.2).abs() < 1e-12);
    let single = Body::hull(&pts[..1]).unwrap();
    assert_eq!(single.diameter(), 0.0);
    let (a, b) = single.support_along_line(&l);
    assert!((a + 0.5).abs() < 1e-12 && (b + 0.5).abs() < 1e-12);
    assert!(Body::hull(&[]).is_err());
}
