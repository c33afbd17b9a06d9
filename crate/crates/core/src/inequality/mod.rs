//! Linear information inequalities, stored as `Σ θ_I h(I) ≥ 0` on entropic
//! points, and their restrictions to the cross-section tetrahedron.

mod io;

pub use io::{load_bank, parse_bank, BankEntry};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::frame::{ingleton_terms, tetra_vertices, CrossSectionPoint, IngletonFrame};
use crate::polymatroid::{GroundSet, SetFunction, Subset};

/// Largest `s` accepted by [`dfz_halfspace`] and [`dfz_inequality`].
pub const DFZ_MAX_S: u32 = 20;

/// `Σ_I θ_I h(I) ≥ 0`, with one coefficient per nonempty subset.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearInequality {
    name: String,
    ground: GroundSet,
    coeffs: Vec<f64>,
}

impl LinearInequality {
    /// Sums repeated subsets. Rejects the empty set, subsets outside the
    /// ground set, non-finite coefficients and the all-zero functional.
    pub fn from_terms<I>(name: impl Into<String>, ground: &GroundSet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        let mut coeffs = vec![0.0; ground.size()];
        for (s, c) in terms {
            if s == 0 || !ground.contains(s) {
                return domain(format!(
                    "coefficient key {s:#b} is not a nonempty subset of the ground set"
                ));
            }
            if !c.is_finite() {
                return domain(format!("coefficient of {} is {c}", ground.format_subset(s)));
            }
            coeffs[s] += c;
        }
        if coeffs.iter().all(|c| *c == 0.0) {
            return domain("inequality has no nonzero coefficient");
        }
        Ok(Self {
            name: name.into(),
            ground: ground.clone(),
            coeffs,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Dense coefficients indexed by subset mask; entry 0 is always 0.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Nonzero `(subset, coefficient)` pairs in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(s, c)| (s, *c))
    }

    pub fn negated(&self) -> Self {
        Self {
            name: self.name.clone(),
            ground: self.ground.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn evaluate(&self, h: &SetFunction) -> Result<f64> {
        self.ground.check_same(h.ground())?;
        Ok(self.eval_unchecked(h))
    }

    fn eval_unchecked(&self, h: &SetFunction) -> f64 {
        self.coeffs.iter().zip(h.values()).map(|(c, v)| c * v).sum()
    }

    /// `Σ_{I ∋ i} θ_I = 0` for every element, within `1e-12`. Equivalent to
    /// vanishing on every modular function.
    pub fn is_balanced(&self) -> bool {
        (0..self.ground.len()).all(|b| {
            let sum: f64 = self
                .terms()
                .filter(|(s, _)| s >> b & 1 == 1)
                .map(|(_, c)| c)
                .sum();
            sum.abs() <= 1e-12
        })
    }

    /// Restriction to the cross-section: the values at the four vertices.
    pub fn to_halfspace(&self, frame: &IngletonFrame) -> Result<CrossSectionHalfspace> {
        self.ground.check_same(frame.ground())?;
        let t = tetra_vertices(frame);
        let abcd = t.vertices().map(|v| self.eval_unchecked(v));
        CrossSectionHalfspace::new(self.name.clone(), abcd)
    }
}

/// `a ᾱ + b β̄ + c γ̄ + d δ̄ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossSectionHalfspace {
    pub name: String,
    pub abcd: [f64; 4],
}

impl CrossSectionHalfspace {
    pub fn new(name: impl Into<String>, abcd: [f64; 4]) -> Result<Self> {
        if abcd.iter().any(|v| !v.is_finite()) || abcd.iter().all(|v| *v == 0.0) {
            return domain(format!(
                "halfspace coefficients {abcd:?} must be finite and not all zero"
            ));
        }
        Ok(Self {
            name: name.into(),
            abcd,
        })
    }

    pub fn margin(&self, w: [f64; 4]) -> f64 {
        self.abcd.iter().zip(w).map(|(a, x)| a * x).sum()
    }
}

fn delta_terms(frame: &IngletonFrame, pair: &str, cond: &str, scale: f64) -> [(Subset, f64); 4] {
    let k = frame.mask(cond);
    let mut it = pair.chars().map(|c| frame.mask(&c.to_string()));
    let (a, b) = (it.next().unwrap(), it.next().unwrap());
    [
        (a | k, scale),
        (b | k, scale),
        (a | b | k, -scale),
        (k, -scale),
    ]
}

fn collect(
    frame: &IngletonFrame,
    name: String,
    parts: &[(&str, &str, f64)],
    stv_scale: f64,
) -> Result<LinearInequality> {
    let mut terms: Vec<(Subset, f64)> = ingleton_terms(frame)
        .iter()
        .map(|&(s, c)| (s, c * stv_scale))
        .collect();
    for &(pair, cond, c) in parts {
        terms.extend(
            delta_terms(frame, pair, cond, c)
                .into_iter()
                .filter(|(s, _)| *s != 0),
        );
    }
    LinearInequality::from_terms(name, frame.ground(), terms)
}

/// The Ingleton expression as an inequality (valid for linear rank functions,
/// not for entropy functions).
pub fn stv_functional(frame: &IngletonFrame) -> LinearInequality {
    collect(frame, "ingleton".into(), &[], 1.0).expect("nonzero")
}

/// `2 stv + [Δ_{ik|l} + Δ_{il|k} + Δ_{kl|i}] + [Δ_{jk|l} + Δ_{jl|k} + Δ_{kl|j}] ≥ 0`.
pub fn symmetrized_zhang_yeung(frame: &IngletonFrame) -> LinearInequality {
    let parts = [
        ("ik", "l", 1.0),
        ("il", "k", 1.0),
        ("kl", "i", 1.0),
        ("jk", "l", 1.0),
        ("jl", "k", 1.0),
        ("kl", "j", 1.0),
    ];
    collect(frame, "zhang-yeung-sym".into(), &parts, 2.0).expect("nonzero")
}

fn check_s(s: u32) -> Result<()> {
    if !(1..=DFZ_MAX_S).contains(&s) {
        return domain(format!("DFZ index s must lie in 1..={DFZ_MAX_S}, got {s}"));
    }
    Ok(())
}

/// `(2^s-1) stv + Δ_{kl|i} + s 2^{s-1} [Δ_{ik|l} + Δ_{il|k}]
/// + ((s-2) 2^{s-1} + 1) [Δ_{jk|l} + Δ_{jl|k}] ≥ 0`.
pub fn dfz_inequality(frame: &IngletonFrame, s: u32) -> Result<LinearInequality> {
    check_s(s)?;
    let p = 2f64.powi(s as i32 - 1);
    let sf = s as f64;
    let (u, v) = (sf * p, (sf - 2.0) * p + 1.0);
    let parts = [
        ("kl", "i", 1.0),
        ("ik", "l", u),
        ("il", "k", u),
        ("jk", "l", v),
        ("jl", "k", v),
    ];
    collect(frame, format!("dfz-{s}"), &parts, 2.0 * p - 1.0)
}

/// The DFZ instance together with its `i ↔ j` image.
pub fn dfz_pair(frame: &IngletonFrame, s: u32) -> Result<[LinearInequality; 2]> {
    Ok([
        dfz_inequality(frame, s)?,
        dfz_inequality(&frame.swapped(true, false), s)?,
    ])
}

/// `β̄ + ((s-1) 2^s + 1) δ̄ - (2^s - 1)/2 · ᾱ ≥ 0`.
pub fn dfz_halfspace(s: u32) -> Result<CrossSectionHalfspace> {
    check_s(s)?;
    let p = 2f64.powi(s as i32);
    CrossSectionHalfspace::new(
        format!("dfz-{s}"),
        [-(p - 1.0) / 2.0, 1.0, 0.0, (s as f64 - 1.0) * p + 1.0],
    )
}

/// `β̄ + δ̄ - ᾱ/2 ≥ 0`.
pub fn symmetrized_zy_halfspace() -> CrossSectionHalfspace {
    CrossSectionHalfspace::new("zhang-yeung-sym", [-0.5, 1.0, 0.0, 1.0]).expect("nonzero")
}

/// `dfz_halfspace(1..=max_s)`.
pub fn dfz_bank(max_s: u32) -> Result<Vec<CrossSectionHalfspace>> {
    (1..=max_s).map(dfz_halfspace).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfspaceMargin {
    pub name: String,
    pub margin: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointReport {
    pub margins: Vec<HalfspaceMargin>,
}

impl PointReport {
    pub fn all_satisfied(&self) -> bool {
        self.margins.iter().all(|m| m.satisfied)
    }

    pub fn violated(&self) -> impl Iterator<Item = &HalfspaceMargin> {
        self.margins.iter().filter(|m| !m.satisfied)
    }

    pub fn min_margin(&self) -> f64 {
        self.margins
            .iter()
            .map(|m| m.margin)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Margin of every halfspace at `w`; satisfied means margin `≥ -tol`.
pub fn check_point(w: &CrossSectionPoint, bank: &[CrossSectionHalfspace], tol: f64) -> PointReport {
    let weights = w.weights();
    PointReport {
        margins: bank
            .iter()
            .map(|h| {
                let margin = h.margin(weights);
                HalfspaceMargin {
                    name: h.name.clone(),
                    margin,
                    satisfied: margin >= -tol,
                }
            })
            .collect(),
    }
}
