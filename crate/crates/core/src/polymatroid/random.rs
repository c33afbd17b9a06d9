//! Random instances for property tests and benchmarks.

use rand::Rng;

use super::generators::{matroid_rank, modular_unchecked};
use super::ground::GroundSet;
use super::set_function::SetFunction;

/// Arbitrary set function with values uniform in `[-1, 1]` (zero at `∅`).
pub fn random_set_function<R: Rng + ?Sized>(ground: &GroundSet, rng: &mut R) -> SetFunction {
    SetFunction::from_fn(ground, |_| rng.gen_range(-1.0..=1.0))
}

/// Modular polymatroid with singleton values uniform in `[0, scale)`.
pub fn random_modular<R: Rng + ?Sized>(ground: &GroundSet, scale: f64, rng: &mut R) -> SetFunction {
    let w: Vec<f64> = (0..ground.len())
        .map(|_| scale * rng.gen::<f64>())
        .collect();
    modular_unchecked(ground, &w)
}

/// Random polymatroid: a positive combination of a few uniform-up-to-loops
/// matroid rank functions plus a random modular part.
pub fn random_polymatroid<R: Rng + ?Sized>(ground: &GroundSet, rng: &mut R) -> SetFunction {
    let n = ground.len();
    let mut f = SetFunction::zero(ground);
    let terms = rng.gen_range(1..=2 * n);
    for _ in 0..terms {
        let loops = rng.gen_range(0..ground.size());
        let free = n - loops.count_ones() as usize;
        let m = rng.gen_range(0..=free);
        let r = matroid_rank(ground, m, loops).expect("rank within range");
        f = f
            .add_scaled(rng.gen_range(0.05..2.0), &r)
            .expect("same ground");
    }
    if rng.gen_bool(0.5) {
        f = &f + &random_modular(ground, 1.0, rng);
    }
    f
}
