use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::maps::{c_sym, pipeline};
use super::{ingleton_base, stv, IngletonFrame};
use crate::error::{domain, Error, Result};
use crate::polymatroid::{matroid_rank, SetFunction};

/// Barycentric weights `(ᾱ, β̄, γ̄, δ̄)` of a normalized point, with a free-form
/// tag saying where it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossSectionPoint {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    #[serde(default)]
    pub source: String,
}

impl CrossSectionPoint {
    pub fn new(w: [f64; 4], source: impl Into<String>) -> Self {
        let [alpha, beta, gamma, delta] = w;
        Self {
            alpha,
            beta,
            gamma,
            delta,
            source: source.into(),
        }
    }

    pub fn weights(&self) -> [f64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    /// Coordinates used for plots and hulls: `(β̄, γ̄, δ̄)`.
    pub fn bgd(&self) -> [f64; 3] {
        [self.beta, self.gamma, self.delta]
    }

    /// All weights `≥ -tol` and summing to one within `tol`.
    pub fn in_tetrahedron(&self, tol: f64) -> bool {
        let w = self.weights();
        w.iter().all(|v| *v >= -tol) && (w.iter().sum::<f64>() - 1.0).abs() <= tol
    }
}

/// The four vertices of the cross-section:
/// `α = r̄/4`, `β = (r_1^i + r_1^j)/2`, `γ = (r_2^k + r_2^l)/4`,
/// `δ = (r_1^{ik} + r_1^{jk} + r_1^{il} + r_1^{jl})/4`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tetrahedron {
    pub alpha: SetFunction,
    pub beta: SetFunction,
    pub gamma: SetFunction,
    pub delta: SetFunction,
}

impl Tetrahedron {
    pub fn vertices(&self) -> [&SetFunction; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
    }
}

pub fn tetra_vertices(frame: &IngletonFrame) -> Tetrahedron {
    let r = |m: usize, loops: &str| {
        matroid_rank(frame.ground(), m, frame.mask(loops)).expect("rank in range")
    };
    let sum = |fs: &[SetFunction]| {
        fs.iter()
            .fold(SetFunction::zero(frame.ground()), |acc, f| &acc + f)
    };
    Tetrahedron {
        alpha: ingleton_base(frame).scale(0.25),
        beta: sum(&[r(1, "i"), r(1, "j")]).scale(0.5),
        gamma: sum(&[r(2, "k"), r(2, "l")]).scale(0.25),
        delta: sum(&[r(1, "ik"), r(1, "jk"), r(1, "il"), r(1, "jl")]).scale(0.25),
    }
}

/// `ᾱ = -4 stv`, `β̄ = Δ_{kl|i} + Δ_{kl|j}`, `γ̄ = 2Δ_{ij|k} + 2Δ_{ij|l}`,
/// `δ̄ = Δ_{jl|k} + Δ_{il|k} + Δ_{jk|l} + Δ_{ik|l}`.
pub fn weights_of(h: &SetFunction, frame: &IngletonFrame) -> Result<[f64; 4]> {
    frame.check(h)?;
    let d = |pair: &str, cond: &str| frame.delta(h, pair, cond);
    Ok([
        -4.0 * stv(h, frame),
        d("kl", "i") + d("kl", "j"),
        2.0 * (d("ij", "k") + d("ij", "l")),
        d("jl", "k") + d("il", "k") + d("jk", "l") + d("ik", "l"),
    ])
}

/// The image of `f` in the cross-section and the normalized function behind it.
#[derive(Debug, Clone)]
pub struct CrossSection {
    pub point: CrossSectionPoint,
    pub h: SetFunction,
}

/// Tighten, apply `B`, `A` and the symmetrization, divide by the value at
/// `N` and read off the weights.
pub fn cross_section_point(
    f: &SetFunction,
    frame: &IngletonFrame,
    tol: f64,
) -> Result<CrossSection> {
    let c = c_sym(&pipeline(f, frame)?, frame)?;
    let top = c.rank();
    if !(top > tol) {
        return Err(Error::Degenerate(format!(
            "reduced function vanishes at N ({top}); nothing to normalize"
        )));
    }
    let h = c.scale(1.0 / top);
    let w = weights_of(&h, frame)?;
    Ok(CrossSection {
        point: CrossSectionPoint::new(w, ""),
        h,
    })
}

/// `ᾱα + β̄β + γ̄γ + δ̄δ`; the weights must sum to one within `1e-6`.
pub fn point_from_weights(w: [f64; 4], frame: &IngletonFrame) -> Result<SetFunction> {
    let total: f64 = w.iter().sum();
    if !total.is_finite() || (total - 1.0).abs() > 1e-6 {
        return domain(format!("weights sum to {total}, expected 1"));
    }
    let t = tetra_vertices(frame);
    let mut acc = SetFunction::zero(frame.ground());
    for (v, c) in t.vertices().into_iter().zip(w) {
        acc = acc.add_scaled(c, v)?;
    }
    Ok(acc)
}

/// CSV with header `alpha,beta,gamma,delta,source`.
pub fn write_points_csv<W: Write>(writer: W, points: &[CrossSectionPoint]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for p in points {
        w.serialize(p)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_points_csv<R: Read>(reader: R) -> Result<Vec<CrossSectionPoint>> {
    let mut r = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for rec in r.deserialize() {
        out.push(rec?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::basis_generators;
    use crate::polymatroid::{modular_from, GroundSet};

    fn frame() -> IngletonFrame {
        IngletonFrame::standard(&GroundSet::ijkl()).unwrap()
    }

    #[test]
    fn vertices_are_unit_weights() {
        let f = frame();
        let t = tetra_vertices(&f);
        for (idx, v) in t.vertices().into_iter().enumerate() {
            assert_eq!(v.rank(), 1.0);
            let w = weights_of(v, &f).unwrap();
            for (k, x) in w.iter().enumerate() {
                assert!((x - if k == idx { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn every_generator_lands_on_a_vertex() {
        let f = frame();
        for g in basis_generators(&f) {
            let p = cross_section_point(&g, &f, 1e-12).unwrap().point;
            assert!(p.in_tetrahedron(1e-12), "{p:?}");
            assert_eq!(p.weights().iter().filter(|w| **w > 0.5).count(), 1);
        }
    }

    #[test]
    fn modular_input_is_degenerate() {
        let f = frame();
        let m = modular_from(f.ground(), &[1.0, 2.0, 0.5, 0.0]).unwrap();
        assert!(matches!(
            cross_section_point(&m, &f, 1e-12),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn weights_round_trip() {
        let f = frame();
        let w = [0.4, 0.1, 0.3, 0.2];
        let h = point_from_weights(w, &f).unwrap();
        let back = cross_section_point(&h, &f, 1e-12).unwrap();
        for (a, b) in back.point.weights().iter().zip(w) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(point_from_weights([0.5, 0.5, 0.5, 0.0], &f).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let pts = vec![
            CrossSectionPoint::new([0.25, 0.25, 0.25, 0.25], "centre"),
            CrossSectionPoint::new([1.0, 0.0, 0.0, 0.0], ""),
        ];
        let mut buf = Vec::new();
        write_points_csv(&mut buf, &pts).unwrap();
        assert!(String::from_utf8_lossy(&buf).starts_with("alpha,beta,gamma,delta,source"));
        assert_eq!(read_points_csv(buf.as_slice()).unwrap(), pts);
    }
}
