use super::IngletonFrame;
use crate::error::Result;
use crate::polymatroid::{matroid_rank, tight_part, SetFunction};

fn rank(frame: &IngletonFrame, m: usize, loops: &str) -> SetFunction {
    matroid_rank(frame.ground(), m, frame.mask(loops)).expect("rank in range")
}

/// `A g = g + Δ_{ij|∅}(g) · (r_1^i - r_1)`.
///
/// Moves the `r_1` coordinate onto `r_1^i`; the Ingleton value is unchanged.
pub fn a_map(g: &SetFunction, frame: &IngletonFrame) -> Result<SetFunction> {
    frame.check(g)?;
    let c = frame.delta(g, "ij", "");
    let step = &rank(frame, 1, "i") - &rank(frame, 1, "");
    g.add_scaled(c, &step)
}

/// `B g = g + Δ_{kl|ij}(g) · (r_2^k - r_3)`.
pub fn b_map(g: &SetFunction, frame: &IngletonFrame) -> Result<SetFunction> {
    frame.check(g)?;
    let c = frame.delta(g, "kl", "ij");
    let step = &rank(frame, 2, "k") - &rank(frame, 3, "");
    g.add_scaled(c, &step)
}

/// Average of `g` over the swaps `i ↔ j`, `k ↔ l` and both.
pub fn c_sym(g: &SetFunction, frame: &IngletonFrame) -> Result<SetFunction> {
    frame.check(g)?;
    let [i, j, k, l] = frame.roles();
    let mut acc = g.clone();
    for (sij, skl) in [(true, false), (false, true), (true, true)] {
        let mut perm = [0, 1, 2, 3];
        if sij {
            perm.swap(i, j);
        }
        if skl {
            perm.swap(k, l);
        }
        acc = &acc + &g.permute(&perm)?;
    }
    Ok(acc.scale(0.25))
}

/// `A(B(f^{ti}))`: tighten, then apply `B` and `A`.
pub fn pipeline(f: &SetFunction, frame: &IngletonFrame) -> Result<SetFunction> {
    frame.check(f)?;
    a_map(&b_map(&tight_part(f), frame)?, frame)
}
