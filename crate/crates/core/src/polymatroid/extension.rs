use super::axioms::closure_of;
use super::ground::{bits, GroundSet, Subset, MAX_GROUND};
use super::set_function::SetFunction;
use crate::error::{domain, Error, Result};

/// Contraction along `along`: the function `J ↦ f(J ∪ I) - f(I)` on `N ∖ I`.
///
/// Remaining labels keep their relative order.
pub fn contraction(f: &SetFunction, along: Subset) -> Result<SetFunction> {
    let ground = f.ground();
    if !ground.contains(along) {
        return domain("contraction set outside ground set");
    }
    if along == ground.full() {
        return Err(Error::InvalidGround(
            "cannot contract the whole ground set".into(),
        ));
    }
    let kept: Vec<usize> = (0..f.n()).filter(|b| along >> b & 1 == 0).collect();
    let minor = ground.without(along)?;
    let base = f[along];
    Ok(SetFunction::from_fn(&minor, |j| {
        let old = bits(j).fold(along, |acc, b| acc | 1 << kept[b]);
        f[old] - base
    }))
}

fn extended_ground(f: &SetFunction, label: &str) -> Result<GroundSet> {
    if f.n() + 1 > MAX_GROUND {
        return Err(Error::InvalidGround(format!(
            "extension would exceed {MAX_GROUND} elements"
        )));
    }
    f.ground().with_label(label)
}

/// Extension by a new element (bit `n`) parallel to `parallel_to`:
/// `h(J) = f(J)`, `h(0 ∪ J) = f(L ∪ J)`.
pub fn parallel_extension(
    f: &SetFunction,
    parallel_to: Subset,
    label: &str,
) -> Result<SetFunction> {
    if !f.ground().contains(parallel_to) {
        return domain("parallel set outside ground set");
    }
    let ground = extended_ground(f, label)?;
    let new = 1 << f.n();
    Ok(SetFunction::from_fn(&ground, |s| {
        if s & new == 0 {
            f[s]
        } else {
            f[(s ^ new) | parallel_to]
        }
    }))
}

fn check_level(f: &SetFunction, on: Subset, t: f64) -> Result<()> {
    if !f.ground().contains(on) {
        return domain("extension set outside ground set");
    }
    if !(0.0..=f[on]).contains(&t) {
        return domain(format!("t = {t} outside [0, f(L)] = [0, {}]", f[on]));
    }
    Ok(())
}

/// Principal extension on `L` with value `t`, new element at bit `n`:
/// `h(J) = f(J)`, `h(0 ∪ I) = min{f(I) + t, f(L ∪ I)}`.
pub fn principal_extension(
    f: &SetFunction,
    on: Subset,
    t: f64,
    label: &str,
) -> Result<SetFunction> {
    check_level(f, on, t)?;
    let ground = extended_ground(f, label)?;
    let new = 1 << f.n();
    Ok(SetFunction::from_fn(&ground, |s| {
        if s & new == 0 {
            f[s]
        } else {
            let i = s ^ new;
            (f[i] + t).min(f[i | on])
        }
    }))
}

/// Contraction of the principal extension by its new element:
/// `f*_{L,t}(I) = min{f(I), f(L ∪ I) - t}`. With `L = N` this is the
/// truncation of `f` by `t`.
pub fn pe_contract(f: &SetFunction, on: Subset, t: f64) -> Result<SetFunction> {
    check_level(f, on, t)?;
    Ok(SetFunction::from_fn(f.ground(), |i| {
        f[i].min(f[i | on] - t)
    }))
}

/// Largest `t` for which [`pe_contract_by_closure`] agrees with
/// [`pe_contract`]: the minimum over `I` with `L ⊄ cl(I)` of
/// `max_{ℓ ∈ L∖cl(I)} f(ℓ ∪ I) - f(I)`. Infinite when every closure covers `L`.
pub fn principal_shift_bound(f: &SetFunction, on: Subset, tol: f64) -> Result<f64> {
    let mut bound = f64::INFINITY;
    for i in 0..=f.full() {
        let cl = closure_of(f, i, tol)?;
        let outside = on & !cl;
        if outside != 0 {
            let best = bits(outside)
                .map(|l| f[i | 1 << l] - f[i])
                .fold(f64::NEG_INFINITY, f64::max);
            bound = bound.min(best);
        }
    }
    Ok(bound)
}

/// Piecewise form of the contracted principal extension: `f(I) - t` when
/// `L ⊆ cl(I)`, else `f(I)`. Matches [`pe_contract`] whenever
/// `t ≤ principal_shift_bound(f, L)`.
pub fn pe_contract_by_closure(
    f: &SetFunction,
    on: Subset,
    t: f64,
    tol: f64,
) -> Result<SetFunction> {
    check_level(f, on, t)?;
    let mut values = f.values().to_vec();
    for (i, v) in values.iter_mut().enumerate().skip(1) {
        if on & !closure_of(f, i, tol)? == 0 {
            *v -= t;
        }
    }
    // the empty set has closure ⊇ L only if L consists of loops, where t = 0
    values[0] = 0.0;
    SetFunction::from_values(f.ground().clone(), values)
}
