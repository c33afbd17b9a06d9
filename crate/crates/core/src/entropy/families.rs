//! Two closed-form families of Ingleton-violating distributions on four
//! variables `i, j, k, l`.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use super::distribution::{kappa_unchecked as kappa, JointDistribution, MASS_TOL};
use crate::error::{domain, Result};
use crate::polymatroid::{GroundSet, SetFunction};

/// The four-atom family: `ξ_i, ξ_j` exchangeable fair bits with
/// `P(ξ_iξ_j = 00) = p`, `ξ_k = min`, `ξ_l = max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourAtomParams {
    p: f64,
}

impl FourAtomParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&p) {
            return domain(format!("four-atom parameter must lie in [0, 1/2], got {p}"));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

pub fn four_atom_distribution(params: FourAtomParams) -> JointDistribution {
    let p = params.p;
    JointDistribution::new(
        GroundSet::ijkl(),
        vec![2; 4],
        [
            (vec![0, 0, 0, 0], p),
            (vec![0, 1, 0, 1], 0.5 - p),
            (vec![1, 0, 0, 1], 0.5 - p),
            (vec![1, 1, 1, 1], p),
        ],
    )
    .expect("valid by construction")
}

/// Closed-form Ingleton score of the four-atom family:
/// `[(2p+1) ln 2 - 2κ(p) - 2κ(1-p)] / [2κ(p) + 2κ(1/2-p)]`.
pub fn four_atom_score(params: FourAtomParams) -> Result<f64> {
    let p = params.p;
    let num = (2.0 * p + 1.0) * LN_2 - 2.0 * kappa(p) - 2.0 * kappa(1.0 - p);
    let den = 2.0 * kappa(p) + 2.0 * kappa(0.5 - p);
    if den <= 0.0 {
        return domain("four-atom entropy vanishes");
    }
    Ok(num / den)
}

/// Parameters of the forty-configuration family; the five weights sum to 1/8.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExLParams {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub s: f64,
    pub t: f64,
}

impl ExLParams {
    pub fn new(p: f64, q: f64, r: f64, s: f64, t: f64) -> Result<Self> {
        let all = [p, q, r, s, t];
        if all.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return domain(format!("parameters must be nonnegative, got {all:?}"));
        }
        let sum: f64 = all.iter().sum();
        if (sum - 0.125).abs() > MASS_TOL {
            return domain(format!("parameters must sum to 1/8, got {sum}"));
        }
        Ok(Self { p, q, r, s, t })
    }

    /// `p = 0.09524, q = 0.02494, r = 0.00160, s = t = 0.00161`.
    pub fn published() -> Self {
        Self::new(0.09524, 0.02494, 0.00160, 0.00161, 0.00161).expect("sums to 1/8")
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.p, self.q, self.r, self.s, self.t]
    }
}

/// Column names of [`EXL_TABLE`].
pub const EXL_COLUMNS: [&str; 5] = ["p", "q", "r", "s", "t"];

/// The forty configurations `ξ_iξ_jξ_kξ_l`, eight per parameter column.
pub const EXL_TABLE: [[[u16; 4]; 8]; 5] = [
    [
        [0, 0, 0, 0],
        [0, 1, 0, 1],
        [1, 0, 1, 0],
        [1, 2, 1, 2],
        [2, 1, 2, 1],
        [2, 3, 2, 3],
        [3, 2, 3, 2],
        [3, 3, 3, 3],
    ],
    [
        [0, 2, 1, 0],
        [0, 3, 2, 1],
        [1, 1, 0, 0],
        [1, 3, 3, 2],
        [2, 0, 0, 1],
        [2, 2, 3, 3],
        [3, 0, 1, 2],
        [3, 1, 2, 3],
    ],
    [
        [0, 0, 1, 1],
        [0, 1, 2, 0],
        [1, 0, 0, 2],
        [1, 2, 3, 0],
        [2, 1, 0, 3],
        [2, 3, 3, 1],
        [3, 2, 1, 3],
        [3, 3, 2, 2],
    ],
    [
        [0, 0, 1, 0],
        [0, 1, 2, 1],
        [1, 0, 0, 0],
        [1, 2, 3, 2],
        [2, 1, 0, 1],
        [2, 3, 3, 3],
        [3, 2, 1, 2],
        [3, 3, 2, 3],
    ],
    [
        [0, 0, 0, 1],
        [0, 1, 0, 0],
        [1, 0, 1, 2],
        [1, 2, 1, 0],
        [2, 1, 2, 3],
        [2, 3, 2, 1],
        [3, 2, 3, 3],
        [3, 3, 3, 2],
    ],
];

pub fn exl_distribution(params: ExLParams) -> JointDistribution {
    let weights = params.as_array();
    let atoms = EXL_TABLE
        .iter()
        .zip(weights)
        .flat_map(|(col, w)| col.iter().map(move |c| (c.to_vec(), w)));
    JointDistribution::new(GroundSet::ijkl(), vec![4; 4], atoms).expect("valid by construction")
}

/// Entropy function of [`exl_distribution`] from its closed-form coordinates.
pub fn exl_closed_form(params: ExLParams) -> SetFunction {
    let ExLParams { p, q, r, s, t } = params;
    let k8 = |u: f64| 8.0 * kappa(u);
    let g = GroundSet::ijkl();
    let key = |k: &str| g.parse_subset(k).expect("static key");
    let mut v = vec![0.0; 16];
    for single in ["i", "j", "k", "l"] {
        v[key(single)] = 2.0 * LN_2;
    }
    v[key("il")] = 3.0 * LN_2;
    v[key("jk")] = 3.0 * LN_2;
    v[key("ij")] = k8(q) + k8(p + r + s + t);
    v[key("kl")] = k8(r) + k8(p + q + s + t);
    v[key("ik")] = 4.0 * kappa(2.0 * p + 2.0 * t) + k8(q + r + s);
    v[key("jl")] = 4.0 * kappa(2.0 * p + 2.0 * s) + k8(q + r + t);
    v[key("ikl")] = k8(p + t) + k8(q + s) + k8(r);
    v[key("jkl")] = k8(p + s) + k8(q + t) + k8(r);
    v[key("ijk")] = k8(p + t) + k8(r + s) + k8(q);
    v[key("ijl")] = k8(p + s) + k8(r + t) + k8(q);
    v[key("ijkl")] = k8(p) + k8(q) + k8(r) + k8(s) + k8(t);
    SetFunction::from_values(g, v).expect("finite")
}
