use serde::Serialize;

use super::ground::Subset;
use super::set_function::SetFunction;
use crate::error::{domain, Result};

/// Default tolerance for analytically constructed inputs.
pub const TOL_EXACT: f64 = 1e-9;
/// Default tolerance for entropy functions computed from distributions.
pub const TOL_ENTROPIC: f64 = 1e-7;

/// A pair of subsets whose check failed, with the offending slack.
///
/// For monotonicity the pair is `(I, I ∪ {i})` and the slack `f(I∪i) - f(I)`;
/// for submodularity it is `(iK, jK)` and the slack `Δ_{ij|K}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub first: Subset,
    pub second: Subset,
    pub slack: f64,
}

/// Outcome of [`check_axioms`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub is_monotone: bool,
    pub is_submodular: bool,
    /// Magnitude of the most negative monotonicity slack (0 when none is negative).
    pub worst_monotone_violation: f64,
    /// Magnitude of the most negative elemental submodularity slack.
    pub worst_submodular_violation: f64,
    /// Failing monotonicity checks, worst first.
    pub monotone_witnesses: Vec<Witness>,
    /// Failing submodularity checks, worst first.
    pub submodular_witnesses: Vec<Witness>,
}

impl AxiomReport {
    pub fn is_polymatroid(&self) -> bool {
        self.is_monotone && self.is_submodular
    }
}

/// Checks monotonicity and submodularity through elemental inequalities.
///
/// Monotonicity is checked on every covering pair `I ⊂ I ∪ {i}`, which also
/// catches negative values that the `f(N) ≥ f(N∖i)` family alone would
/// miss for non-submodular input. Submodularity is checked on the
/// `n(n-1)2^(n-3)` elemental pairs `Δ_{ij|K}`.
pub fn check_axioms(f: &SetFunction, tol: f64) -> Result<AxiomReport> {
    if !(tol >= 0.0) {
        return domain(format!("tolerance must be nonnegative, got {tol}"));
    }
    let n = f.n();
    let full = f.full();
    let mut mono = Vec::new();
    let mut worst_mono = 0.0f64;
    for s in 0..=full {
        for b in 0..n {
            if s >> b & 1 == 0 {
                let slack = f[s | 1 << b] - f[s];
                worst_mono = worst_mono.max(-slack);
                if slack < -tol {
                    mono.push(Witness {
                        first: s,
                        second: s | 1 << b,
                        slack,
                    });
                }
            }
        }
    }
    let mut sub = Vec::new();
    let mut worst_sub = 0.0f64;
    for a in 0..n {
        for b in a + 1..n {
            let rest = full & !(1 << a | 1 << b);
            for k in super::ground::submasks(rest) {
                let slack = f.delta_cond(a, b, k);
                worst_sub = worst_sub.max(-slack);
                if slack < -tol {
                    sub.push(Witness {
                        first: 1 << a | k,
                        second: 1 << b | k,
                        slack,
                    });
                }
            }
        }
    }
    let by_slack = |x: &Witness, y: &Witness| x.slack.total_cmp(&y.slack);
    mono.sort_by(by_slack);
    sub.sort_by(by_slack);
    Ok(AxiomReport {
        is_monotone: mono.is_empty(),
        is_submodular: sub.is_empty(),
        worst_monotone_violation: worst_mono,
        worst_submodular_violation: worst_sub,
        monotone_witnesses: mono,
        submodular_witnesses: sub,
    })
}

/// Convenience wrapper: monotone and submodular within `tol`.
pub fn is_polymatroid(f: &SetFunction, tol: f64) -> bool {
    check_axioms(f, tol)
        .map(|r| r.is_polymatroid())
        .unwrap_or(false)
}

/// Modular: passes the axioms and `f(N)` equals the sum of singleton values.
pub fn is_modular(f: &SetFunction, tol: f64) -> bool {
    let sum: f64 = (0..f.n()).map(|b| f[1 << b]).sum();
    (f.rank() - sum).abs() <= tol && is_polymatroid(f, tol)
}

/// Tight: `f(N) = f(N∖i)` for every element.
pub fn is_tight(f: &SetFunction, tol: f64) -> bool {
    let full = f.full();
    (0..f.n()).all(|b| (f[full] - f[full ^ 1 << b]).abs() <= tol)
}

/// `{i : f(iI) ≤ f(I) + tol}`.
pub fn closure_of(f: &SetFunction, s: Subset, tol: f64) -> Result<Subset> {
    if !f.ground().contains(s) {
        return domain("subset outside ground set");
    }
    if !(tol >= 0.0) {
        return domain("tolerance must be nonnegative");
    }
    Ok((0..f.n())
        .filter(|&b| f[s | 1 << b] <= f[s] + tol)
        .fold(0, |acc, b| acc | 1 << b))
}
