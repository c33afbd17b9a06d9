use super::ground::{GroundSet, Subset};
use super::set_function::SetFunction;
use crate::error::{domain, Result};

/// Rank function `r_m^J(I) = min{m, |I ∖ J|}` of the uniform matroid of
/// rank `m` with loops `J`.
pub fn matroid_rank(ground: &GroundSet, m: usize, loops: Subset) -> Result<SetFunction> {
    if !ground.contains(loops) {
        return domain("loop set outside ground set");
    }
    let free = ground.len() - loops.count_ones() as usize;
    if m > free {
        return domain(format!("rank {m} exceeds the {free} non-loop elements"));
    }
    Ok(SetFunction::from_fn(ground, |s| {
        m.min((s & !loops).count_ones() as usize) as f64
    }))
}

/// Additive extension of singleton values, indexed by bit position.
pub fn modular_from(ground: &GroundSet, singletons: &[f64]) -> Result<SetFunction> {
    if singletons.len() != ground.len() {
        return domain(format!(
            "expected {} singleton values, got {}",
            ground.len(),
            singletons.len()
        ));
    }
    if let Some(b) = singletons
        .iter()
        .position(|v| !(*v >= 0.0) || !v.is_finite())
    {
        return domain(format!(
            "singleton value at {:?} must be finite and nonnegative, got {}",
            ground.label(b),
            singletons[b]
        ));
    }
    Ok(modular_unchecked(ground, singletons))
}

pub(crate) fn modular_unchecked(ground: &GroundSet, singletons: &[f64]) -> SetFunction {
    let mut values = vec![0.0; ground.size()];
    for s in 1..values.len() {
        let low = s.trailing_zeros() as usize;
        values[s] = values[s & (s - 1)] + singletons[low];
    }
    SetFunction::from_values(ground.clone(), values).expect("finite by construction")
}
