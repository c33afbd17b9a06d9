use serde_json::{json, Value};

use super::hull::{convex_hull_3d, from_bgd, Polytope3};
use crate::inequality::CrossSectionHalfspace;

/// Feasibility and coincidence tolerance for region vertices.
pub const REGION_TOL: f64 = 1e-9;

/// Determinants below this are treated as singular.
const SINGULAR: f64 = 1e-12;

/// A vertex of an outer region and the constraints tight at it.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionVertex {
    pub weights: [f64; 4],
    pub active: Vec<String>,
}

/// `{w in the weight simplex : every halfspace ≥ 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OuterRegion {
    pub vertices: Vec<RegionVertex>,
    pub polytope: Polytope3,
}

impl OuterRegion {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Largest `ᾱ` over vertices with `γ̄ = δ̄ = 0`, if any.
    pub fn max_alpha_on_edge_ab(&self) -> Option<f64> {
        self.vertices
            .iter()
            .filter(|v| v.weights[2].abs() <= REGION_TOL && v.weights[3].abs() <= REGION_TOL)
            .map(|v| v.weights[0])
            .reduce(f64::max)
    }

    /// `{"empty", "vertices": [{"weights", "active"}], "facets"}`.
    pub fn to_json_value(&self) -> Value {
        json!({
            "empty": self.is_empty(),
            "vertices": self.vertices.iter().map(|v| json!({"weights": v.weights, "active": v.active})).collect::<Vec<_>>(),
            "facets": self.polytope.facets,
        })
    }
}

/// `n·x + c ≥ 0` in `(β̄, γ̄, δ̄)` coordinates.
struct Constraint {
    name: String,
    n: [f64; 3],
    c: f64,
}

impl Constraint {
    fn value(&self, x: [f64; 3]) -> f64 {
        self.n[0] * x[0] + self.n[1] * x[1] + self.n[2] * x[2] + self.c
    }
}

fn constraints(bank: &[CrossSectionHalfspace]) -> Vec<Constraint> {
    let mut out = vec![
        Constraint {
            name: "alpha>=0".into(),
            n: [-1.0, -1.0, -1.0],
            c: 1.0,
        },
        Constraint {
            name: "beta>=0".into(),
            n: [1.0, 0.0, 0.0],
            c: 0.0,
        },
        Constraint {
            name: "gamma>=0".into(),
            n: [0.0, 1.0, 0.0],
            c: 0.0,
        },
        Constraint {
            name: "delta>=0".into(),
            n: [0.0, 0.0, 1.0],
            c: 0.0,
        },
    ];
    for h in bank {
        let [a, b, c, d] = h.abcd;
        // a(1 - β - γ - δ) + bβ + cγ + dδ
        out.push(Constraint {
            name: h.name.clone(),
            n: [b - a, c - a, d - a],
            c: a,
        });
    }
    out
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Solves `n_k·x = -c_k` for three constraints by Cramer's rule.
fn intersect(p: &Constraint, q: &Constraint, r: &Constraint) -> Option<[f64; 3]> {
    let m = [p.n, q.n, r.n];
    let rhs = [-p.c, -q.c, -r.c];
    let d = det3(m);
    let scale = [p.n, q.n, r.n]
        .iter()
        .map(|n| n.iter().map(|v| v * v).sum::<f64>().sqrt())
        .product::<f64>();
    if d.abs() <= SINGULAR * scale.max(1.0) {
        return None;
    }
    let mut x = [0.0; 3];
    for (col, xv) in x.iter_mut().enumerate() {
        let mut mc = m;
        for row in 0..3 {
            mc[row][col] = rhs[row];
        }
        *xv = det3(mc) / d;
    }
    Some(x)
}

/// Vertex enumeration of the weight simplex cut by `bank`: every
/// nonsingular triple of boundary planes is solved and kept when feasible.
///
/// An empty bank gives the whole simplex.
pub fn outer_region(bank: &[CrossSectionHalfspace]) -> OuterRegion {
    let cons = constraints(bank);
    let m = cons.len();
    let mut found: Vec<[f64; 3]> = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let Some(x) = intersect(&cons[a], &cons[b], &cons[c]) else {
                    continue;
                };
                if cons.iter().all(|k| k.value(x) >= -REGION_TOL * norm_of(k)) {
                    let dup = found
                        .iter()
                        .any(|y| (0..3).all(|i| (x[i] - y[i]).abs() <= REGION_TOL));
                    if !dup {
                        found.push(x);
                    }
                }
            }
        }
    }
    let vertices: Vec<RegionVertex> = found
        .iter()
        .map(|&x| RegionVertex {
            weights: from_bgd(x),
            active: cons
                .iter()
                .filter(|k| k.value(x).abs() <= REGION_TOL * norm_of(k))
                .map(|k| k.name.clone())
                .collect(),
        })
        .collect();
    let polytope = if vertices.is_empty() {
        Polytope3::empty()
    } else {
        convex_hull_3d(&vertices.iter().map(|v| v.weights).collect::<Vec<_>>())
    };
    OuterRegion { vertices, polytope }
}

fn norm_of(k: &Constraint) -> f64 {
    k.n.iter().map(|v| v * v).sum::<f64>().sqrt().max(1.0)
}
