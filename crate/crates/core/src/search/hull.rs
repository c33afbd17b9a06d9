//! Convex hulls of cross-section points, computed in the affine coordinates
//! `(β̄, γ̄, δ̄)` of the weight simplex.

use std::collections::HashMap;
use std::fmt::Write as _;

type P3 = [f64; 3];

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: P3) -> f64 {
    dot(a, a).sqrt()
}

/// `(β̄, γ̄, δ̄)` of a weight quadruple.
pub fn to_bgd(w: [f64; 4]) -> P3 {
    [w[1], w[2], w[3]]
}

/// Weight quadruple with `ᾱ = 1 - β̄ - γ̄ - δ̄`.
pub fn from_bgd(x: P3) -> [f64; 4] {
    [1.0 - x[0] - x[1] - x[2], x[0], x[1], x[2]]
}

/// Points within this distance of a facet plane are treated as on it.
pub const HULL_EPS: f64 = 1e-12;

/// Convex hull of points of the weight simplex.
///
/// For full-dimensional input `facets` are outward-oriented triangles. For
/// lower-dimensional input `degenerate` is set, `dimension` gives the
/// affine dimension, `facets` is empty and `vertices` lists the extreme
/// points (in boundary order for a polygon).
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope3 {
    pub vertices: Vec<[f64; 4]>,
    pub facets: Vec<[usize; 3]>,
    pub degenerate: bool,
    pub dimension: usize,
}

impl Polytope3 {
    pub fn empty() -> Self {
        Self {
            vertices: Vec::new(),
            facets: Vec::new(),
            degenerate: true,
            dimension: 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn point(&self, k: usize) -> P3 {
        to_bgd(self.vertices[k])
    }

    /// Outward unit normal and offset of every facet.
    pub fn planes(&self) -> Vec<(P3, f64)> {
        self.facets
            .iter()
            .map(|&[a, b, c]| {
                let (pa, pb, pc) = (self.point(a), self.point(b), self.point(c));
                let n = cross(sub(pb, pa), sub(pc, pa));
                let l = norm(n);
                let n = [n[0] / l, n[1] / l, n[2] / l];
                (n, dot(n, pa))
            })
            .collect()
    }

    /// Volume in `(β̄, γ̄, δ̄)` coordinates; 0 for degenerate hulls.
    pub fn volume(&self) -> f64 {
        if self.degenerate || self.facets.is_empty() {
            return 0.0;
        }
        let o = self.point(self.facets[0][0]);
        self.facets
            .iter()
            .map(|&[a, b, c]| {
                let (pa, pb, pc) = (
                    sub(self.point(a), o),
                    sub(self.point(b), o),
                    sub(self.point(c), o),
                );
                dot(pa, cross(pb, pc))
            })
            .sum::<f64>()
            / 6.0
    }

    /// Whether `w` lies in the hull up to distance `tol`.
    pub fn contains(&self, w: [f64; 4], tol: f64) -> bool {
        let x = to_bgd(w);
        match (self.degenerate, self.dimension) {
            (_, _) if self.vertices.is_empty() => false,
            (false, _) => self.planes().iter().all(|(n, off)| dot(*n, x) - off <= tol),
            (true, 0) => norm(sub(x, self.point(0))) <= tol,
            (true, 1) => {
                let (a, b) = (self.point(0), self.point(1));
                let d = sub(b, a);
                let t = (dot(sub(x, a), d) / dot(d, d)).clamp(0.0, 1.0);
                let p = [a[0] + t * d[0], a[1] + t * d[1], a[2] + t * d[2]];
                norm(sub(x, p)) <= tol
            }
            (true, _) => {
                let m = self.vertices.len();
                let (a, b, c) = (self.point(0), self.point(1), self.point(2));
                let mut n = cross(sub(b, a), sub(c, a));
                let l = norm(n);
                n = [n[0] / l, n[1] / l, n[2] / l];
                if dot(n, sub(x, a)).abs() > tol {
                    return false;
                }
                (0..m).all(|k| {
                    let (p, q) = (self.point(k), self.point((k + 1) % m));
                    let inward = cross(n, sub(q, p));
                    let l = norm(inward);
                    dot(inward, sub(x, p)) / l >= -tol
                })
            }
        }
    }

    /// Wavefront-style text: `v β γ δ` lines, then 1-based `f a b c` lines.
    pub fn to_obj(&self) -> String {
        let mut s = String::new();
        for w in &self.vertices {
            let _ = writeln!(s, "v {} {} {}", w[1], w[2], w[3]);
        }
        for f in &self.facets {
            let _ = writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
        }
        s
    }
}

struct Face {
    v: [usize; 3],
    n: P3,
    off: f64,
    outside: Vec<usize>,
    alive: bool,
}

impl Face {
    fn new(v: [usize; 3], pts: &[P3]) -> Self {
        let n = cross(sub(pts[v[1]], pts[v[0]]), sub(pts[v[2]], pts[v[0]]));
        let l = norm(n);
        let n = if l > 0.0 {
            [n[0] / l, n[1] / l, n[2] / l]
        } else {
            n
        };
        Self {
            v,
            n,
            off: dot(n, pts[v[0]]),
            outside: Vec::new(),
            alive: true,
        }
    }

    fn dist(&self, p: P3) -> f64 {
        dot(self.n, p) - self.off
    }

    fn edges(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.v;
        [(a, b), (b, c), (c, a)]
    }
}

fn farthest(pts: &[P3], score: impl Fn(P3) -> f64) -> (usize, f64) {
    pts.iter()
        .enumerate()
        .map(|(k, p)| (k, score(*p)))
        .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
}

/// Convex hull of weight quadruples, by quickhull with conflict lists.
pub fn convex_hull_3d(points: &[[f64; 4]]) -> Polytope3 {
    let pts: Vec<P3> = points.iter().map(|w| to_bgd(*w)).collect();
    if pts.is_empty() {
        return Polytope3::empty();
    }
    // initial simplex: widest axis pair, farthest from that line, farthest from that plane
    let mut pair = (0, 0, -1.0);
    for axis in 0..3 {
        let (lo, _) = farthest(&pts, |p| -p[axis]);
        let (hi, _) = farthest(&pts, |p| p[axis]);
        let d = norm(sub(pts[hi], pts[lo]));
        if d > pair.2 {
            pair = (lo, hi, d);
        }
    }
    let (a, b, span) = pair;
    if span <= HULL_EPS {
        return lower_dim(points, &[a]);
    }
    let ab = sub(pts[b], pts[a]);
    let (c, dc) = farthest(&pts, |p| norm(cross(ab, sub(p, pts[a]))) / span);
    if dc <= HULL_EPS {
        return lower_dim(points, &[a, b]);
    }
    let n = cross(ab, sub(pts[c], pts[a]));
    let nl = norm(n);
    let (d, dd) = farthest(&pts, |p| (dot(n, sub(p, pts[a])) / nl).abs());
    if dd <= HULL_EPS {
        return planar(points, &pts, n);
    }

    let mut faces: Vec<Face> = Vec::new();
    let mut seeds = vec![[a, b, c], [a, c, d], [a, d, b], [b, d, c]];
    if dot(n, sub(pts[d], pts[a])) > 0.0 {
        seeds = seeds.into_iter().map(|[x, y, z]| [x, z, y]).collect();
    }
    let mut edge_face: HashMap<(usize, usize), usize> = HashMap::new();
    for v in seeds {
        let f = Face::new(v, &pts);
        for e in f.edges() {
            edge_face.insert(e, faces.len());
        }
        faces.push(f);
    }
    let simplex = [a, b, c, d];
    for (k, p) in pts.iter().enumerate() {
        if simplex.contains(&k) {
            continue;
        }
        assign(&mut faces, 0..4, k, *p);
    }

    let mut stack: Vec<usize> = (0..4).collect();
    while let Some(fi) = stack.pop() {
        if !faces[fi].alive || faces[fi].outside.is_empty() {
            continue;
        }
        let eye = *faces[fi]
            .outside
            .iter()
            .max_by(|&&x, &&y| {
                faces[fi]
                    .dist(pts[x])
                    .total_cmp(&faces[fi].dist(pts[y]))
                    .then(y.cmp(&x))
            })
            .expect("nonempty");
        let ep = pts[eye];

        let mut visible = vec![fi];
        let mut mark: HashMap<usize, bool> = HashMap::from([(fi, true)]);
        let mut k = 0;
        while k < visible.len() {
            let f = visible[k];
            k += 1;
            for (x, y) in faces[f].edges() {
                let g = edge_face[&(y, x)];
                if let std::collections::hash_map::Entry::Vacant(e) = mark.entry(g) {
                    let vis = faces[g].dist(ep) > HULL_EPS;
                    e.insert(vis);
                    if vis {
                        visible.push(g);
                    }
                }
            }
        }
        let mut horizon = Vec::new();
        for &f in &visible {
            for (x, y) in faces[f].edges() {
                let g = edge_face[&(y, x)];
                if !mark[&g] {
                    horizon.push((x, y));
                }
            }
        }
        let mut orphans = Vec::new();
        for &f in &visible {
            faces[f].alive = false;
            orphans.append(&mut faces[f].outside);
            for e in faces[f].edges() {
                edge_face.remove(&e);
            }
        }
        let first_new = faces.len();
        for (x, y) in horizon {
            let f = Face::new([x, y, eye], &pts);
            for e in f.edges() {
                edge_face.insert(e, faces.len());
            }
            faces.push(f);
        }
        let last = faces.len();
        for q in orphans {
            if q != eye {
                assign(&mut faces, first_new..last, q, pts[q]);
            }
        }
        stack.extend(first_new..last);
    }

    let mut index = HashMap::new();
    let mut vertices = Vec::new();
    let mut facets = Vec::new();
    for f in faces.iter().filter(|f| f.alive) {
        let tri = f.v.map(|v| {
            *index.entry(v).or_insert_with(|| {
                vertices.push(points[v]);
                vertices.len() - 1
            })
        });
        facets.push(tri);
    }
    Polytope3 {
        vertices,
        facets,
        degenerate: false,
        dimension: 3,
    }
}

fn assign(faces: &mut [Face], range: std::ops::Range<usize>, k: usize, p: P3) {
    let mut best = None;
    let mut best_d = HULL_EPS;
    for f in range {
        let d = faces[f].dist(p);
        if d > best_d {
            best_d = d;
            best = Some(f);
        }
    }
    if let Some(f) = best {
        faces[f].outside.push(k);
    }
}

fn lower_dim(points: &[[f64; 4]], idx: &[usize]) -> Polytope3 {
    Polytope3 {
        vertices: idx.iter().map(|&k| points[k]).collect(),
        facets: Vec::new(),
        degenerate: true,
        dimension: idx.len() - 1,
    }
}

/// Monotone-chain hull of coplanar points, in plane coordinates.
fn planar(points: &[[f64; 4]], pts: &[P3], n: P3) -> Polytope3 {
    let nl = norm(n);
    let n = [n[0] / nl, n[1] / nl, n[2] / nl];
    let helper = if n[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let u = cross(n, helper);
    let ul = norm(u);
    let u = [u[0] / ul, u[1] / ul, u[2] / ul];
    let v = cross(n, u);
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    let uv = |k: usize| (dot(pts[k], u), dot(pts[k], v));
    idx.sort_by(|&a, &b| {
        let (pa, pb) = (uv(a), uv(b));
        pa.0.total_cmp(&pb.0).then(pa.1.total_cmp(&pb.1))
    });
    let turn = |o: usize, a: usize, b: usize| {
        let (o, a, b) = (uv(o), uv(a), uv(b));
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<usize> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let seq: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &k in seq {
            while hull.len() >= start + 2
                && turn(hull[hull.len() - 2], hull[hull.len() - 1], k) <= HULL_EPS
            {
                hull.pop();
            }
            hull.push(k);
        }
        hull.pop();
    }
    Polytope3 {
        vertices: hull.iter().map(|&k| points[k]).collect(),
        facets: Vec::new(),
        degenerate: true,
        dimension: 2,
    }
}
