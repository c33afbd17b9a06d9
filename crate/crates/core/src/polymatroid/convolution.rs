use super::axioms::is_modular;
use super::ground::submasks;
use super::set_function::SetFunction;
use crate::error::{domain, Result};

/// `(f ∗ g)(I) = min_{J ⊆ I} f(J) + g(I ∖ J)` by exhaustive submask
/// enumeration, `O(3^n)` in total.
pub fn convolution(f: &SetFunction, g: &SetFunction) -> Result<SetFunction> {
    f.ground().check_same(g.ground())?;
    Ok(SetFunction::from_fn(f.ground(), |s| {
        submasks(s)
            .map(|j| f[j] + g[s ^ j])
            .fold(f64::INFINITY, f64::min)
    }))
}

/// Convolution with a modular `g` as a chain of single-element steps.
///
/// `g` is written as the convolution of modular functions `g_i` equal to `g`
/// at `i` and to a constant larger than every singleton value elsewhere.
/// Each step then only touches sets containing `i`:
/// `h'(iI) = min{h(I) + g(i), h(iI)}` for `I ⊆ N∖i`, valid while `h` is a
/// polymatroid. Costs `O(n 2^n)`.
pub fn convolve_modular_iterative(
    f: &SetFunction,
    g: &SetFunction,
    tol: f64,
) -> Result<SetFunction> {
    f.ground().check_same(g.ground())?;
    if !is_modular(g, tol) {
        return domain("second argument must be a modular polymatroid");
    }
    let mut values = f.values().to_vec();
    for b in 0..f.n() {
        let bit = 1 << b;
        let gi = g[bit];
        for s in 0..values.len() {
            if s & bit == 0 {
                let with = values[s] + gi;
                if with < values[s | bit] {
                    values[s | bit] = with;
                }
            }
        }
    }
    SetFunction::from_values(f.ground().clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymatroid::{matroid_rank, modular_from, GroundSet};

    #[test]
    fn modular_dominating_singletons_is_identity() {
        let g = GroundSet::ijkl();
        let r3 = matroid_rank(&g, 3, 0).unwrap();
        let big = modular_from(&g, &[1.0, 1.5, 2.0, 1.0]).unwrap();
        assert_eq!(convolution(&r3, &big).unwrap(), r3);
        assert_eq!(convolve_modular_iterative(&r3, &big, 0.0).unwrap(), r3);
    }

    #[test]
    fn rank_three_with_half_weights() {
        let g = GroundSet::ijkl();
        let r3 = matroid_rank(&g, 3, 0).unwrap();
        let half = modular_from(&g, &[0.5; 4]).unwrap();
        // brute force: for |I| <= 3 the best split is J = ∅ giving |I|/2;
        // for I = N, J = ∅ gives 2 and any J of size 1 gives 1 + 1.5.
        let got = convolution(&r3, &half).unwrap();
        assert_eq!(got, half);
    }

    #[test]
    fn modular_pair_takes_minimum() {
        let g = GroundSet::ijkl();
        let a = modular_from(&g, &[1.0, 0.2, 3.0, 0.0]).unwrap();
        let b = modular_from(&g, &[0.5, 0.7, 4.0, 1.0]).unwrap();
        let want = modular_from(&g, &[0.5, 0.2, 3.0, 0.0]).unwrap();
        assert_eq!(convolution(&a, &b).unwrap(), want);
        assert_eq!(convolution(&b, &a).unwrap(), want);
    }

    #[test]
    fn iterative_rejects_non_modular() {
        let g = GroundSet::ijkl();
        let r3 = matroid_rank(&g, 3, 0).unwrap();
        assert!(convolve_modular_iterative(&r3, &r3, 1e-9).is_err());
    }

    #[test]
    fn singleton_cut() {
        // f = r_2 + r_1: f(i) = 2 and max_j f(ij) - f(j) = 1, so any t in
        // [1, 2] only lowers the value at {i}.
        let g = GroundSet::ijkl();
        let f = &matroid_rank(&g, 2, 0).unwrap() + &matroid_rank(&g, 1, 0).unwrap();
        let m = modular_from(&g, &[1.5, 2.0, 2.0, 2.0]).unwrap();
        let got = convolve_modular_iterative(&f, &m, 0.0).unwrap();
        let mut want = f.values().to_vec();
        want[0b0001] = 1.5;
        assert_eq!(got.values(), &want[..]);
        assert_eq!(convolution(&f, &m).unwrap(), got);
    }
}
