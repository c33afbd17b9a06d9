//! Four-variable machinery around the Ingleton expression.
//!
//! An [`IngletonFrame`] assigns the roles `i, j, k, l` to the four labels of
//! a ground set; every functional and map in this module is relative to it.

mod basis;
mod cross_section;
mod maps;

pub use basis::{
    basis_coefficients, basis_generators, reconstruct, BasisCoefficients, GENERATOR_NAMES,
};
pub use cross_section::{
    cross_section_point, point_from_weights, read_points_csv, tetra_vertices, weights_of,
    write_points_csv, CrossSection, CrossSectionPoint, Tetrahedron,
};
pub use maps::{a_map, b_map, c_sym, pipeline};

use crate::error::{domain, Error, Result};
use crate::polymatroid::{GroundSet, SetFunction, Subset};

/// Ordered role assignment `(i, j, k, l)` of the four ground-set labels.
///
/// The Ingleton instance studied is the one for the pair `{i, j}`; the
/// order inside `{i, j}` and inside `{k, l}` matters only for the maps `A`
/// and `B`, never for scores or cross-section weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngletonFrame {
    ground: GroundSet,
    roles: [usize; 4],
}

impl IngletonFrame {
    /// Frame from four labels of a four-element ground set.
    pub fn new(ground: &GroundSet, labels: [&str; 4]) -> Result<Self> {
        if ground.len() != 4 {
            return Err(Error::InvalidGround(format!(
                "Ingleton frames need exactly 4 labels, ground has {}",
                ground.len()
            )));
        }
        let mut roles = [0; 4];
        for (slot, label) in roles.iter_mut().zip(labels) {
            *slot = ground
                .index_of(label)
                .ok_or_else(|| Error::Parse(format!("label {label:?} not in ground set")))?;
        }
        Self::from_roles(ground, roles)
    }

    /// Frame from bit positions.
    pub fn from_roles(ground: &GroundSet, roles: [usize; 4]) -> Result<Self> {
        if ground.len() != 4 {
            return Err(Error::InvalidGround(
                "Ingleton frames need exactly 4 labels".into(),
            ));
        }
        let mask = roles.iter().fold(0usize, |acc, &b| acc | 1 << b);
        if roles.iter().any(|&b| b >= 4) || mask != 0b1111 {
            return domain(format!(
                "roles {roles:?} are not a permutation of the four elements"
            ));
        }
        Ok(Self {
            ground: ground.clone(),
            roles,
        })
    }

    /// Labels in ground order take the roles `i, j, k, l`.
    pub fn standard(ground: &GroundSet) -> Result<Self> {
        Self::from_roles(ground, [0, 1, 2, 3])
    }

    /// Parses `"a,b,c,d"`.
    pub fn parse(ground: &GroundSet, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let labels: [&str; 4] = parts
            .try_into()
            .map_err(|_| Error::Parse(format!("frame {text:?} must list four labels")))?;
        Self::new(ground, labels)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn roles(&self) -> [usize; 4] {
        self.roles
    }

    pub fn labels(&self) -> [&str; 4] {
        self.roles.map(|b| self.ground.label(b))
    }

    pub fn i(&self) -> usize {
        self.roles[0]
    }

    pub fn j(&self) -> usize {
        self.roles[1]
    }

    pub fn k(&self) -> usize {
        self.roles[2]
    }

    pub fn l(&self) -> usize {
        self.roles[3]
    }

    /// Mask of the given roles, e.g. `self.mask("ikl")`.
    pub fn mask(&self, roles: &str) -> Subset {
        roles.chars().fold(0, |acc, c| acc | 1 << self.role(c))
    }

    fn role(&self, c: char) -> usize {
        match c {
            'i' => self.i(),
            'j' => self.j(),
            'k' => self.k(),
            'l' => self.l(),
            _ => panic!("unknown role {c:?}"),
        }
    }

    /// Same instance with `i ↔ j` and/or `k ↔ l`.
    pub fn swapped(&self, swap_ij: bool, swap_kl: bool) -> Self {
        let [i, j, k, l] = self.roles;
        let (i, j) = if swap_ij { (j, i) } else { (i, j) };
        let (k, l) = if swap_kl { (l, k) } else { (k, l) };
        Self {
            ground: self.ground.clone(),
            roles: [i, j, k, l],
        }
    }

    fn check(&self, h: &SetFunction) -> Result<()> {
        self.ground.check_same(h.ground())
    }

    /// `Δ_{ab|L}` with roles named by characters, e.g. `delta(h, "kl", "ij")`.
    pub(crate) fn delta(&self, h: &SetFunction, pair: &str, cond: &str) -> f64 {
        let mut it = pair.chars().map(|c| self.role(c));
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        h.delta_cond(a, b, self.mask(cond))
    }
}

/// Signed terms of the Ingleton expression for the pair `{i, j}`.
pub fn ingleton_terms(frame: &IngletonFrame) -> [(Subset, f64); 10] {
    let m = |r: &str| frame.mask(r);
    [
        (m("ik"), 1.0),
        (m("jk"), 1.0),
        (m("il"), 1.0),
        (m("jl"), 1.0),
        (m("kl"), 1.0),
        (m("ij"), -1.0),
        (m("k"), -1.0),
        (m("l"), -1.0),
        (m("ikl"), -1.0),
        (m("jkl"), -1.0),
    ]
}

/// `h(ik)+h(jk)+h(il)+h(jl)+h(kl)-h(ij)-h(k)-h(l)-h(ikl)-h(jkl)`.
pub fn ingleton_value(h: &SetFunction, frame: &IngletonFrame) -> Result<f64> {
    frame.check(h)?;
    Ok(stv(h, frame))
}

#[inline]
pub(crate) fn stv(h: &SetFunction, frame: &IngletonFrame) -> f64 {
    let m = |r: &str| h[frame.mask(r)];
    m("ik") + m("jk") + m("il") + m("jl") + m("kl")
        - m("ij")
        - m("k")
        - m("l")
        - m("ikl")
        - m("jkl")
}

/// Ingleton score `stv_ij(h) / h(N)`.
pub fn ingleton_score(h: &SetFunction, frame: &IngletonFrame) -> Result<f64> {
    let value = ingleton_value(h, frame)?;
    let rank = h.rank();
    if !(rank > 0.0) {
        return domain(format!("Ingleton score needs h(N) > 0, got {rank}"));
    }
    Ok(value / rank)
}

/// All pairs `{a, b}` (as bit positions, `a < b`) whose Ingleton expression
/// is below `-tol`.
pub fn violated_instances(h: &SetFunction, tol: f64) -> Result<Vec<(usize, usize)>> {
    if h.n() != 4 {
        return Err(Error::InvalidGround(
            "Ingleton instances need 4 elements".into(),
        ));
    }
    let mut out = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            let rest: Vec<usize> = (0..4).filter(|&x| x != a && x != b).collect();
            let frame = IngletonFrame::from_roles(h.ground(), [a, b, rest[0], rest[1]])?;
            if stv(h, &frame) < -tol {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// The rank function `r̄_ij`: 3 on `ik, jk, il, jl, kl`, otherwise `min{4, 2|K|}`.
pub fn ingleton_base(frame: &IngletonFrame) -> SetFunction {
    let threes = ["ik", "jk", "il", "jl", "kl"].map(|r| frame.mask(r));
    SetFunction::from_fn(frame.ground(), |s| {
        if threes.contains(&s) {
            3.0
        } else {
            (2 * s.count_ones()).min(4) as f64
        }
    })
}

/// Membership in the face cut out by `Δ_{ij|k} = Δ_{ij|l} = Δ_{kl|i} =
/// Δ_{kl|j} = Δ_{kl|ij} = 0`, within `tol`.
pub fn in_special_face(h: &SetFunction, frame: &IngletonFrame, tol: f64) -> Result<bool> {
    frame.check(h)?;
    let d = [
        frame.delta(h, "ij", "k"),
        frame.delta(h, "ij", "l"),
        frame.delta(h, "kl", "i"),
        frame.delta(h, "kl", "j"),
        frame.delta(h, "kl", "ij"),
    ];
    Ok(d.iter().all(|v| v.abs() <= tol))
}
