use serde::{Deserialize, Serialize};

use super::{ingleton_base, stv, IngletonFrame};
use crate::error::Result;
use crate::polymatroid::{matroid_rank, SetFunction};

/// Coordinates of a tight function in the eleven-generator basis of the
/// tight Ingleton-violating cone.
///
/// Each field is the coefficient of one generator; the comment names the
/// generator it multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisCoefficients {
    /// `r̄_ij`, equal to `-stv_ij`.
    pub c_bar: f64,
    /// `r_1`
    pub c_ij: f64,
    /// `r_3`
    pub c_kl_ij: f64,
    /// `r_1^i`
    pub c_kl_i: f64,
    /// `r_1^j`
    pub c_kl_j: f64,
    /// `r_2^l`
    pub c_ij_k: f64,
    /// `r_2^k`
    pub c_ij_l: f64,
    /// `r_1^{ik}`
    pub c_jl_k: f64,
    /// `r_1^{jk}`
    pub c_il_k: f64,
    /// `r_1^{il}`
    pub c_jk_l: f64,
    /// `r_1^{jl}`
    pub c_ik_l: f64,
}

/// Names of the generators in the order of [`BasisCoefficients::to_array`].
pub const GENERATOR_NAMES: [&str; 11] = [
    "rbar_ij", "r_1", "r_3", "r_1^i", "r_1^j", "r_2^l", "r_2^k", "r_1^ik", "r_1^jk", "r_1^il",
    "r_1^jl",
];

impl BasisCoefficients {
    pub fn to_array(&self) -> [f64; 11] {
        [
            self.c_bar,
            self.c_ij,
            self.c_kl_ij,
            self.c_kl_i,
            self.c_kl_j,
            self.c_ij_k,
            self.c_ij_l,
            self.c_jl_k,
            self.c_il_k,
            self.c_jk_l,
            self.c_ik_l,
        ]
    }

    pub fn from_array(c: [f64; 11]) -> Self {
        Self {
            c_bar: c[0],
            c_ij: c[1],
            c_kl_ij: c[2],
            c_kl_i: c[3],
            c_kl_j: c[4],
            c_ij_k: c[5],
            c_ij_l: c[6],
            c_jl_k: c[7],
            c_il_k: c[8],
            c_jk_l: c[9],
            c_ik_l: c[10],
        }
    }

    /// Smallest coefficient; nonnegative inside the cone.
    pub fn min(&self) -> f64 {
        self.to_array().into_iter().fold(f64::INFINITY, f64::min)
    }
}

/// The eleven generators, in the order of [`GENERATOR_NAMES`].
pub fn basis_generators(frame: &IngletonFrame) -> [SetFunction; 11] {
    let g = frame.ground();
    let r = |m: usize, loops: &str| matroid_rank(g, m, frame.mask(loops)).expect("rank in range");
    [
        ingleton_base(frame),
        r(1, ""),
        r(3, ""),
        r(1, "i"),
        r(1, "j"),
        r(2, "l"),
        r(2, "k"),
        r(1, "ik"),
        r(1, "jk"),
        r(1, "il"),
        r(1, "jl"),
    ]
}

/// Reads off the coordinate functionals. Total for any input; the read-off
/// reconstructs `g` exactly only when `g` is tight.
pub fn basis_coefficients(g: &SetFunction, frame: &IngletonFrame) -> Result<BasisCoefficients> {
    frame.check(g)?;
    let d = |pair: &str, cond: &str| frame.delta(g, pair, cond);
    Ok(BasisCoefficients {
        c_bar: -stv(g, frame),
        c_ij: d("ij", ""),
        c_kl_ij: d("kl", "ij"),
        c_kl_i: d("kl", "i"),
        c_kl_j: d("kl", "j"),
        c_ij_k: d("ij", "k"),
        c_ij_l: d("ij", "l"),
        c_jl_k: d("jl", "k"),
        c_il_k: d("il", "k"),
        c_jk_l: d("jk", "l"),
        c_ik_l: d("ik", "l"),
    })
}

/// `Σ coefficient · generator`.
pub fn reconstruct(coeffs: &BasisCoefficients, frame: &IngletonFrame) -> SetFunction {
    basis_generators(frame)
        .iter()
        .zip(coeffs.to_array())
        .fold(SetFunction::zero(frame.ground()), |acc, (gen, c)| {
            acc.add_scaled(c, gen).expect("same ground")
        })
}
