use std::collections::BTreeMap;

use crate::error::{domain, Result};
use crate::polymatroid::{GroundSet, SetFunction};

/// Probabilities below this are treated as exact zeros inside [`kappa`].
pub const ZERO_PROB: f64 = 1e-15;
/// Largest product alphabet accepted by [`JointDistribution`].
pub const MAX_CELLS: usize = 10_000_000;
/// Tolerance on the total mass of a distribution.
pub const MASS_TOL: f64 = 1e-12;

/// `κ(u) = -u ln u` with `κ(0) = 0`.
pub fn kappa(u: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return domain(format!("κ is defined on [0, 1], got {u}"));
    }
    Ok(kappa_unchecked(u))
}

#[inline]
pub(crate) fn kappa_unchecked(u: f64) -> f64 {
    if u < ZERO_PROB {
        0.0
    } else {
        -u * u.ln()
    }
}

/// Probability mass function of a random vector with one finite alphabet
/// per ground-set element. Only atoms with positive mass are stored, in
/// lexicographic order of their configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    ground: GroundSet,
    alphabet_sizes: Vec<usize>,
    atoms: BTreeMap<Vec<u16>, f64>,
}

impl JointDistribution {
    /// Builds a distribution from `(configuration, probability)` pairs.
    /// Repeated configurations are merged.
    pub fn new<I>(ground: GroundSet, alphabet_sizes: Vec<usize>, atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u16>, f64)>,
    {
        check_alphabets(&ground, &alphabet_sizes)?;
        let mut map = BTreeMap::new();
        for (config, p) in atoms {
            if config.len() != ground.len() {
                return domain(format!("configuration {config:?} has the wrong length"));
            }
            if let Some(v) = config
                .iter()
                .zip(&alphabet_sizes)
                .position(|(&x, &size)| x as usize >= size)
            {
                return domain(format!(
                    "symbol {} of {config:?} outside alphabet of size {}",
                    config[v], alphabet_sizes[v]
                ));
            }
            if !(p >= 0.0) || !p.is_finite() {
                return domain(format!(
                    "probability {p} of {config:?} is not a finite nonnegative number"
                ));
            }
            if p > 0.0 {
                *map.entry(config).or_insert(0.0) += p;
            }
        }
        let total: f64 = map.values().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return domain(format!("probabilities sum to {total}, not 1"));
        }
        Ok(Self {
            ground,
            alphabet_sizes,
            atoms: map,
        })
    }

    /// Builds a distribution from a dense probability vector indexed in
    /// mixed radix, first variable most significant.
    pub fn from_dense(
        ground: GroundSet,
        alphabet_sizes: Vec<usize>,
        probs: &[f64],
    ) -> Result<Self> {
        check_alphabets(&ground, &alphabet_sizes)?;
        let cells: usize = alphabet_sizes.iter().product();
        if probs.len() != cells {
            return domain(format!("expected {cells} cells, got {}", probs.len()));
        }
        let atoms: Vec<_> = probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != 0.0)
            .map(|(c, &p)| (decode(c, &alphabet_sizes), p))
            .collect();
        Self::new(ground, alphabet_sizes, atoms)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn alphabet_sizes(&self) -> &[usize] {
        &self.alphabet_sizes
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&[u16], f64)> {
        self.atoms.iter().map(|(c, &p)| (c.as_slice(), p))
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn prob(&self, config: &[u16]) -> f64 {
        self.atoms.get(config).copied().unwrap_or(0.0)
    }

    pub fn cells(&self) -> usize {
        self.alphabet_sizes.iter().product()
    }

    /// Dense probability vector in mixed-radix order.
    pub fn dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.cells()];
        for (c, &p) in &self.atoms {
            out[encode(c, &self.alphabet_sizes)] = p;
        }
        out
    }
}

fn check_alphabets(ground: &GroundSet, sizes: &[usize]) -> Result<()> {
    if sizes.len() != ground.len() {
        return domain(format!(
            "{} alphabet sizes for {} variables",
            sizes.len(),
            ground.len()
        ));
    }
    if sizes.iter().any(|&s| s == 0 || s > u16::MAX as usize) {
        return domain("alphabet sizes must lie in 1..=65535");
    }
    let cells = sizes
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s))
        .filter(|&c| c <= MAX_CELLS);
    if cells.is_none() {
        return domain(format!("product alphabet exceeds {MAX_CELLS} cells"));
    }
    Ok(())
}

pub(crate) fn encode(config: &[u16], sizes: &[usize]) -> usize {
    config
        .iter()
        .zip(sizes)
        .fold(0, |acc, (&x, &s)| acc * s + x as usize)
}

pub(crate) fn decode(mut index: usize, sizes: &[usize]) -> Vec<u16> {
    let mut out = vec![0u16; sizes.len()];
    for v in (0..sizes.len()).rev() {
        out[v] = (index % sizes[v]) as u16;
        index /= sizes[v];
    }
    out
}

/// Shannon entropy (nats) of every marginal: the entropy function.
pub fn entropy_function(d: &JointDistribution) -> SetFunction {
    let n = d.ground.len();
    let sizes = &d.alphabet_sizes;
    let mut values = vec![0.0; 1 << n];
    for (mask, value) in values.iter_mut().enumerate().skip(1) {
        let vars: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
        let marginal_size: usize = vars.iter().map(|&v| sizes[v]).product();
        let index = |c: &[u16]| {
            vars.iter()
                .fold(0, |acc, &v| acc * sizes[v] + c[v] as usize)
        };
        *value = if marginal_size <= (1 << 20).max(4 * d.atoms.len()) {
            let mut buf = vec![0.0; marginal_size];
            for (c, &p) in &d.atoms {
                buf[index(c)] += p;
            }
            buf.iter().map(|&p| kappa_unchecked(p)).sum()
        } else {
            let mut buf = BTreeMap::new();
            for (c, &p) in &d.atoms {
                *buf.entry(index(c)).or_insert(0.0) += p;
            }
            buf.values().map(|&p| kappa_unchecked(p)).sum()
        };
    }
    SetFunction::from_values(d.ground.clone(), values).expect("entropies are finite")
}

/// Precomputed marginal index tables for repeated entropy evaluation of
/// dense distributions over a fixed product alphabet.
///
/// Gives the same result as [`entropy_function`] on the corresponding
/// [`JointDistribution`], bit for bit.
#[derive(Debug, Clone)]
pub struct EntropyKernel {
    ground: GroundSet,
    sizes: Vec<usize>,
    cells: usize,
    /// For each nonempty mask, marginal index of every cell.
    tables: Vec<Vec<u32>>,
    marginal_sizes: Vec<usize>,
}

impl EntropyKernel {
    pub fn new(ground: GroundSet, sizes: Vec<usize>) -> Result<Self> {
        check_alphabets(&ground, &sizes)?;
        let cells: usize = sizes.iter().product();
        if cells > 1 << 20 {
            return domain("dense entropy kernel limited to 2^20 cells");
        }
        let n = ground.len();
        let configs: Vec<Vec<u16>> = (0..cells).map(|c| decode(c, &sizes)).collect();
        let mut tables = vec![Vec::new()];
        let mut marginal_sizes = vec![1];
        for mask in 1..1usize << n {
            let vars: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
            marginal_sizes.push(vars.iter().map(|&v| sizes[v]).product());
            tables.push(
                configs
                    .iter()
                    .map(|c| {
                        vars.iter()
                            .fold(0, |acc, &v| acc * sizes[v] + c[v] as usize)
                            as u32
                    })
                    .collect(),
            );
        }
        Ok(Self {
            ground,
            sizes,
            cells,
            tables,
            marginal_sizes,
        })
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn alphabet_sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Entropy function of a dense probability vector (not validated).
    pub fn entropy(&self, probs: &[f64]) -> SetFunction {
        debug_assert_eq!(probs.len(), self.cells);
        let mut values = vec![0.0; self.tables.len()];
        let mut buf = Vec::new();
        for (mask, v) in values.iter_mut().enumerate().skip(1) {
            buf.clear();
            buf.resize(self.marginal_sizes[mask], 0.0);
            for (&m, &p) in self.tables[mask].iter().zip(probs) {
                buf[m as usize] += p;
            }
            *v = buf.iter().map(|&p| kappa_unchecked(p)).sum();
        }
        SetFunction::from_fn(&self.ground, |s| values[s])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(0.0).unwrap(), 0.0);
        assert_eq!(kappa(1.0).unwrap(), 0.0);
        assert!((kappa(0.5).unwrap() - std::f64::consts::LN_2 / 2.0).abs() < 1e-16);
        assert!(kappa(1.5).is_err());
        assert!(kappa(-0.1).is_err());
    }

    #[test]
    fn fair_bit() {
        let g = GroundSet::new(["x"]).unwrap();
        let d = JointDistribution::new(g, vec![2], [(vec![0], 0.5), (vec![1], 0.5)]).unwrap();
        let h = entropy_function(&d);
        assert!((h[1] - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn independent_bits_are_modular() {
        let g = GroundSet::ijkl();
        let d = JointDistribution::from_dense(g.clone(), vec![2; 4], &[1.0 / 16.0; 16]).unwrap();
        let h = entropy_function(&d);
        let m = crate::polymatroid::modular_from(&g, &[std::f64::consts::LN_2; 4]).unwrap();
        assert!(h.max_abs_diff(&m).unwrap() < 1e-14);
    }

    #[test]
    fn validation() {
        let g = GroundSet::from_chars("ab").unwrap();
        assert!(JointDistribution::new(g.clone(), vec![2, 2], [(vec![0, 0], 0.7)]).is_err());
        assert!(JointDistribution::new(g.clone(), vec![2, 2], [(vec![0, 2], 1.0)]).is_err());
        assert!(JointDistribution::new(
            g.clone(),
            vec![2, 2],
            [(vec![0, 0], -0.5), (vec![1, 1], 1.5)]
        )
        .is_err());
        assert!(JointDistribution::new(g.clone(), vec![2], [(vec![0, 0], 1.0)]).is_err());
        assert!(JointDistribution::new(g, vec![4000, 4000], [(vec![0, 0], 1.0)]).is_err());
    }

    #[test]
    fn dense_round_trip_and_kernel_agreement() {
        let g = GroundSet::from_chars("abc").unwrap();
        let sizes = vec![2, 3, 2];
        let raw: Vec<f64> = (0..12).map(|c| ((c * 7 + 3) % 5) as f64).collect();
        let total: f64 = raw.iter().sum();
        let probs: Vec<f64> = raw.iter().map(|p| p / total).collect();
        let d = JointDistribution::from_dense(g.clone(), sizes.clone(), &probs).unwrap();
        assert_eq!(d.dense(), probs);
        let kernel = EntropyKernel::new(g, sizes).unwrap();
        assert_eq!(kernel.entropy(&probs), entropy_function(&d));
    }

    #[test]
    fn point_mass_has_zero_entropy() {
        let g = GroundSet::ijkl();
        let d = JointDistribution::new(g.clone(), vec![3; 4], [(vec![1, 2, 0, 1], 1.0)]).unwrap();
        assert_eq!(entropy_function(&d), SetFunction::zero(&g));
    }
}
