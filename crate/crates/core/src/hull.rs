//! Euclidean convex hulls of Klein-model coordinates.
//!
//! Hyperbolic and Euclidean convexity agree in the Klein model, so the
//! extreme points and facets computed here are exactly those of the
//! hyperbolic convex hull.

use std::collections::HashMap;

use crate::minnorm::distance_to_hull;
use crate::vector::Vector;

/// Incidence / side tolerance in Klein coordinates.
pub(crate) const EPS_HULL: f64 = 1e-12;

/// A facet `{k : <a, k> = b}` with the hull on the side `<a, k> <= b`.
#[derive(Clone, Debug)]
pub(crate) struct KleinFacet {
    pub a: Vector,
    pub b: f64,
    /// Positions in the hull's vertex list; cyclic boundary order in 3D.
    pub verts: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct KleinHull {
    /// Indices into the input, in canonical order: cyclic from the
    /// lexicographically smallest point for polygons (also flat ones in 3D),
    /// lexicographic otherwise.
    pub vertices: Vec<usize>,
    /// Facets, available for full-dimensional hulls in dimensions 2 and 3.
    pub facets: Option<Vec<KleinFacet>>,
    pub affine_dim: usize,
}

pub(crate) fn hull(points: &[Vector]) -> KleinHull {
    assert!(!points.is_empty());
    let n = points[0].len();
    let idx = dedup(points);
    let affine_dim = affine_dimension(points, &idx);
    if idx.len() == 1 {
        return KleinHull {
            vertices: idx,
            facets: None,
            affine_dim: 0,
        };
    }
    match (n, affine_dim) {
        (_, 1) => {
            let (a, b) = segment_extremes(points, &idx);
            let mut v = vec![a, b];
            v.sort_by(|&x, &y| points[x].lex_cmp(&points[y]));
            KleinHull {
                vertices: v,
                facets: None,
                affine_dim,
            }
        }
        (2, 2) => hull2(points, &idx),
        (3, 3) => hull3(points, &idx),
        (3, 2) => {
            // Flat hull in 3D: compute the polygon inside its plane.
            let basis = affine_basis(points, &idx, 2);
            let origin = points[idx[0]];
            let projected: Vec<Vector> = idx
                .iter()
                .map(|&i| {
                    let d = points[i] - origin;
                    Vector::from_slice(&[d.dot(&basis[0]), d.dot(&basis[1])])
                })
                .collect();
            let local: Vec<usize> = (0..idx.len()).collect();
            let h = hull2(&projected, &local);
            // Keep the cyclic boundary order, starting from the smallest point.
            let mut v: Vec<usize> = h.vertices.iter().map(|&j| idx[j]).collect();
            let start = (0..v.len())
                .min_by(|&x, &y| points[v[x]].lex_cmp(&points[v[y]]))
                .unwrap();
            v.rotate_left(start);
            KleinHull {
                vertices: v,
                facets: None,
                affine_dim,
            }
        }
        _ => {
            let v = extremes_by_min_norm(points, &idx);
            KleinHull {
                vertices: v,
                facets: None,
                affine_dim,
            }
        }
    }
}

fn dedup(points: &[Vector]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].lex_cmp(&points[b]).then(a.cmp(&b)));
    let mut out: Vec<usize> = Vec::with_capacity(idx.len());
    for i in idx {
        // Near-duplicates are adjacent after a lexicographic sort only when
        // they agree in the leading coordinate; check a short window.
        let dup = out
            .iter()
            .rev()
            .take_while(|&&j| (points[j][0] - points[i][0]).abs() <= EPS_HULL)
            .any(|&j| points[j].max_abs_diff(&points[i]) <= EPS_HULL);
        if !dup {
            out.push(i);
        }
    }
    out
}

fn affine_basis(points: &[Vector], idx: &[usize], max: usize) -> Vec<Vector> {
    let origin = points[idx[0]];
    let mut basis: Vec<Vector> = Vec::new();
    loop {
        if basis.len() == max {
            break;
        }
        let mut best: Option<(f64, Vector)> = None;
        for &i in idx {
            let mut d = points[i] - origin;
            for b in &basis {
                d = d.axpy(-d.dot(b), b);
            }
            let r = d.norm();
            if best.as_ref().is_none_or(|(br, _)| r > *br) {
                best = Some((r, d));
            }
        }
        match best {
            Some((r, d)) if r > 1e-10 => basis.push(d * (1.0 / r)),
            _ => break,
        }
    }
    basis
}

fn affine_dimension(points: &[Vector], idx: &[usize]) -> usize {
    affine_basis(points, idx, points[0].len()).len()
}

fn segment_extremes(points: &[Vector], idx: &[usize]) -> (usize, usize) {
    let basis = affine_basis(points, idx, 1);
    let dir = basis[0];
    let key = |i: usize| points[i].dot(&dir);
    let lo = *idx.iter().min_by(|&&a, &&b| key(a).total_cmp(&key(b))).unwrap();
    let hi = *idx.iter().max_by(|&&a, &&b| key(a).total_cmp(&key(b))).unwrap();
    (lo, hi)
}

fn cross2(o: &Vector, a: &Vector, b: &Vector) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain with collinear points removed.
fn hull2(points: &[Vector], idx: &[usize]) -> KleinHull {
    let mut sorted = idx.to_vec();
    sorted.sort_by(|&a, &b| points[a].lex_cmp(&points[b]));
    let mut lower: Vec<usize> = Vec::new();
    for &i in &sorted {
        while lower.len() >= 2
            && cross2(&points[lower[lower.len() - 2]], &points[lower[lower.len() - 1]], &points[i])
                <= EPS_HULL
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in sorted.iter().rev() {
        while upper.len() >= 2
            && cross2(&points[upper[upper.len() - 2]], &points[upper[upper.len() - 1]], &points[i])
                <= EPS_HULL
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let verts = lower;
    let m = verts.len();
    if m < 3 {
        let (a, b) = segment_extremes(points, idx);
        return KleinHull {
            vertices: vec![a, b],
            facets: None,
            affine_dim: 1,
        };
    }
    let facets = (0..m)
        .map(|k| {
            let p = points[verts[k]];
            let q = points[verts[(k + 1) % m]];
            // Counter-clockwise boundary: outward normal is (dy, -dx).
            let mut a = Vector::from_slice(&[q[1] - p[1], p[0] - q[0]]);
            a = a * (1.0 / a.norm());
            KleinFacet {
                a,
                b: a.dot(&p),
                verts: vec![k, (k + 1) % m],
            }
        })
        .collect();
    KleinHull {
        vertices: verts,
        facets: Some(facets),
        affine_dim: 2,
    }
}

fn cross3(a: &Vector, b: &Vector) -> Vector {
    Vector::from_slice(&[
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])
}

#[derive(Clone)]
struct Tri {
    v: [usize; 3],
    n: Vector,
    d: f64,
    alive: bool,
}

fn make_tri(points: &[Vector], v: [usize; 3]) -> Tri {
    let n = cross3(&(points[v[1]] - points[v[0]]), &(points[v[2]] - points[v[0]]));
    let r = n.norm();
    let n = if r > 0.0 { n * (1.0 / r) } else { n };
    Tri {
        v,
        d: n.dot(&points[v[0]]),
        n,
        alive: true,
    }
}

/// Incremental 3D hull; triangles are merged into planar facets at the end.
fn hull3(points: &[Vector], idx: &[usize]) -> KleinHull {
    // Initial tetrahedron from extreme points.
    let p0 = idx[0];
    let p1 = *idx
        .iter()
        .max_by(|&&a, &&b| (points[a] - points[p0]).norm().total_cmp(&(points[b] - points[p0]).norm()))
        .unwrap();
    let dir = (points[p1] - points[p0]) * (1.0 / (points[p1] - points[p0]).norm());
    let off_line = |i: usize| {
        let d = points[i] - points[p0];
        d.axpy(-d.dot(&dir), &dir).norm()
    };
    let p2 = *idx
        .iter()
        .max_by(|&&a, &&b| off_line(a).total_cmp(&off_line(b)))
        .unwrap();
    let nrm = cross3(&(points[p1] - points[p0]), &(points[p2] - points[p0]));
    let nrm = nrm * (1.0 / nrm.norm());
    let off_plane = |i: usize| (points[i] - points[p0]).dot(&nrm);
    let p3 = *idx
        .iter()
        .max_by(|&&a, &&b| off_plane(a).abs().total_cmp(&off_plane(b).abs()))
        .unwrap();

    let centroid = (points[p0] + points[p1] + points[p2] + points[p3]) * 0.25;
    let mut tris: Vec<Tri> = Vec::new();
    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::new();
    let add_tri = |tris: &mut Vec<Tri>, edge_owner: &mut HashMap<(usize, usize), usize>, v: [usize; 3]| {
        let mut t = make_tri(points, v);
        if t.n.dot(&centroid) - t.d > 0.0 {
            t = make_tri(points, [v[0], v[2], v[1]]);
        }
        let id = tris.len();
        for k in 0..3 {
            edge_owner.insert((t.v[k], t.v[(k + 1) % 3]), id);
        }
        tris.push(t);
    };
    for f in [[p0, p1, p2], [p0, p1, p3], [p0, p2, p3], [p1, p2, p3]] {
        add_tri(&mut tris, &mut edge_owner, f);
    }

    for &p in idx {
        if p == p0 || p == p1 || p == p2 || p == p3 {
            continue;
        }
        let x = points[p];
        let visible: Vec<usize> = (0..tris.len())
            .filter(|&t| tris[t].alive && tris[t].n.dot(&x) - tris[t].d > EPS_HULL)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for &t in &visible {
            let v = tris[t].v;
            for k in 0..3 {
                let (a, b) = (v[k], v[(k + 1) % 3]);
                let twin = edge_owner.get(&(b, a)).copied();
                let twin_visible = twin.is_some_and(|o| {
                    tris[o].alive && tris[o].n.dot(&x) - tris[o].d > EPS_HULL
                });
                if !twin_visible {
                    horizon.push((a, b));
                }
            }
        }
        for &t in &visible {
            tris[t].alive = false;
            let v = tris[t].v;
            for k in 0..3 {
                let key = (v[k], v[(k + 1) % 3]);
                if edge_owner.get(&key) == Some(&t) {
                    edge_owner.remove(&key);
                }
            }
        }
        for (a, b) in horizon {
            let t = make_tri(points, [a, b, p]);
            let id = tris.len();
            for k in 0..3 {
                edge_owner.insert((t.v[k], t.v[(k + 1) % 3]), id);
            }
            tris.push(t);
        }
    }

    let live: Vec<Tri> = tris.into_iter().filter(|t| t.alive).collect();

    // Merge coplanar triangles into facets.
    let mut planes: Vec<(Vector, f64, Vec<usize>)> = Vec::new();
    for t in &live {
        let slot = planes
            .iter()
            .position(|(n, d, _)| n.dot(&t.n) > 1.0 - 1e-10 && (d - t.d).abs() < 1e-10);
        match slot {
            Some(s) => planes[s].2.extend_from_slice(&t.v),
            None => planes.push((t.n, t.d, t.v.to_vec())),
        }
    }
    for p in planes.iter_mut() {
        p.2.sort_unstable();
        p.2.dedup();
    }

    // A vertex is extreme iff the normals of its incident facets span R^3.
    let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
    for (f, p) in planes.iter().enumerate() {
        for &v in &p.2 {
            incident.entry(v).or_default().push(f);
        }
    }
    let mut extreme: Vec<usize> = incident
        .iter()
        .filter(|(_, fs)| {
            let normals: Vec<Vector> = fs.iter().map(|&f| planes[f].0).collect();
            rank(&normals) == 3
        })
        .map(|(&v, _)| v)
        .collect();
    extreme.sort_by(|&a, &b| points[a].lex_cmp(&points[b]));
    let pos: HashMap<usize, usize> = extreme.iter().enumerate().map(|(k, &v)| (v, k)).collect();

    let facets = planes
        .into_iter()
        .map(|(a, b, vs)| {
            let members: Vec<usize> = vs.into_iter().filter(|v| pos.contains_key(v)).collect();
            let ordered = cyclic_order(points, &members, &a);
            KleinFacet {
                a,
                b,
                verts: ordered.into_iter().map(|v| pos[&v]).collect(),
            }
        })
        .collect();
    KleinHull {
        vertices: extreme,
        facets: Some(facets),
        affine_dim: 3,
    }
}

fn rank(vs: &[Vector]) -> usize {
    let mut basis: Vec<Vector> = Vec::new();
    for v in vs {
        let mut w = *v;
        for b in &basis {
            w = w.axpy(-w.dot(b), b);
        }
        let r = w.norm();
        if r > 1e-9 {
            basis.push(w * (1.0 / r));
        }
    }
    basis.len()
}

/// Orders coplanar points counter-clockwise around `normal`.
fn cyclic_order(points: &[Vector], members: &[usize], normal: &Vector) -> Vec<usize> {
    if members.len() < 3 {
        return members.to_vec();
    }
    let mut c = Vector::zeros(3);
    for &m in members {
        c += points[m];
    }
    c = c * (1.0 / members.len() as f64);
    let mut u = points[members[0]] - c;
    u = u.axpy(-u.dot(normal), normal);
    u = u * (1.0 / u.norm());
    let w = cross3(normal, &u);
    let mut keyed: Vec<(f64, usize)> = members
        .iter()
        .map(|&m| {
            let d = points[m] - c;
            (d.dot(&w).atan2(d.dot(&u)), m)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    keyed.into_iter().map(|(_, m)| m).collect()
}

/// Extreme points for dimensions without facet enumeration.
fn extremes_by_min_norm(points: &[Vector], idx: &[usize]) -> Vec<usize> {
    let mut keep: Vec<usize> = Vec::new();
    for (k, &i) in idx.iter().enumerate() {
        let others: Vec<Vector> = idx
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &j)| points[j])
            .collect();
        if others.is_empty() || distance_to_hull(&others, &points[i]) > 1e-10 {
            keep.push(i);
        }
    }
    keep.sort_by(|&a, &b| points[a].lex_cmp(&points[b]));
    keep
}

/// Klein-space membership test usable in any dimension.
pub(crate) fn hull_contains(vertices: &[Vector], q: &Vector, tol: f64) -> bool {
    distance_to_hull(vertices, q) <= tol
}
