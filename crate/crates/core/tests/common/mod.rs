#![allow(dead_code)]

use entropy_toolkit::entropy::JointDistribution;
use entropy_toolkit::frame::IngletonFrame;
use entropy_toolkit::polymatroid::{matroid_rank, modular_from};
use entropy_toolkit::{GroundSet, SetFunction};
use proptest::prelude::*;
use rand::Rng;

pub fn ground(n: usize) -> GroundSet {
    if n == 4 {
        GroundSet::ijkl()
    } else {
        GroundSet::new((0..n).map(|b| format!("e{b}"))).unwrap()
    }
}

pub fn frame() -> IngletonFrame {
    IngletonFrame::standard(&GroundSet::ijkl()).unwrap()
}

/// Nonnegative combination of uniform-up-to-loops rank functions plus an
/// optional modular part.
pub fn polymatroid(n: usize) -> impl Strategy<Value = SetFunction> {
    let full = (1usize << n) - 1;
    (
        prop::collection::vec((0..=full, 0..=n, 0.05f64..2.0), 1..=2 * n),
        prop::collection::vec(0.0f64..1.0, n),
        any::<bool>(),
    )
        .prop_map(move |(terms, modular, with_modular)| {
            let g = ground(n);
            let mut f = SetFunction::zero(&g);
            for (loops, m, w) in terms {
                let free = n - (loops as u32).count_ones() as usize;
                let r = matroid_rank(&g, m % (free + 1), loops).unwrap();
                f = f.add_scaled(w, &r).unwrap();
            }
            if with_modular {
                f = &f + &modular_from(&g, &modular).unwrap();
            }
            f
        })
}

pub fn set_function(n: usize) -> impl Strategy<Value = SetFunction> {
    prop::collection::vec(-1.0f64..1.0, 1 << n).prop_map(move |mut v| {
        v[0] = 0.0;
        SetFunction::from_values(ground(n), v).unwrap()
    })
}

/// A few random atoms on a random product alphabet over `i, j, k, l`.
pub fn random_distribution<R: Rng>(rng: &mut R) -> JointDistribution {
    let sizes: Vec<usize> = (0..4).map(|_| rng.gen_range(2..=4)).collect();
    let atoms = rng.gen_range(2..=9);
    let w: Vec<f64> = (0..atoms).map(|_| rng.gen_range(0.01..1.0)).collect();
    let total: f64 = w.iter().sum();
    JointDistribution::new(
        GroundSet::ijkl(),
        sizes.clone(),
        w.iter().map(|p| {
            let config = sizes.iter().map(|&s| rng.gen_range(0..s) as u16).collect();
            (config, p / total)
        }),
    )
    .unwrap()
}
