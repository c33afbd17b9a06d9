use serde::{Deserialize, Serialize};

use crate::entropy::JointDistribution;
use crate::frame::IngletonFrame;

/// The entropic corners of the cross-section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Vertex {
    Beta,
    Gamma,
    Delta,
}

/// Uniform distribution on `GF(2)^m` pushed through linear maps, one list of
/// parity masks per role `i, j, k, l`.
fn linear(frame: &IngletonFrame, m: u32, roles: [&[u32]; 4]) -> JointDistribution {
    let mut sizes = vec![1; 4];
    for (r, masks) in roles.iter().enumerate() {
        sizes[frame.roles()[r]] = 1 << masks.len();
    }
    let p = 1.0 / f64::from(1u32 << m);
    let atoms = (0..1u32 << m).map(|x| {
        let mut config = vec![0u16; 4];
        for (r, masks) in roles.iter().enumerate() {
            config[frame.roles()[r]] = masks
                .iter()
                .enumerate()
                .map(|(t, mask)| (((mask & x).count_ones() & 1) as u16) << t)
                .sum();
        }
        (config, p)
    });
    JointDistribution::new(frame.ground().clone(), sizes, atoms).expect("valid by construction")
}

/// A distribution whose cross-section point is the given vertex: sums of
/// rank-one and rank-two uniform matroids realized by independent bits.
pub fn vertex_distribution(vertex: Vertex, frame: &IngletonFrame) -> JointDistribution {
    match vertex {
        // r_1^i + r_1^j
        Vertex::Beta => linear(frame, 2, [&[2], &[1], &[1, 2], &[1, 2]]),
        // r_2^k + r_2^l
        Vertex::Gamma => linear(frame, 4, [&[1, 4], &[2, 8], &[4 ^ 8], &[1 ^ 2]]),
        // r_1^{ik} + r_1^{jk} + r_1^{il} + r_1^{jl}
        Vertex::Delta => linear(frame, 4, [&[2, 8], &[1, 4], &[4, 8], &[1, 2]]),
    }
}
