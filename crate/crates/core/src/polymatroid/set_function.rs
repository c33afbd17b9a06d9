use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index, Mul, Sub};
use std::path::Path;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use super::ground::{GroundSet, Subset};
use crate::error::{domain, Error, Result};

/// A real function on the power set of a ground set, `f(∅) = 0`.
///
/// Values are stored densely, indexed by subset bitmask.
#[derive(Clone, PartialEq)]
pub struct SetFunction {
    ground: GroundSet,
    values: Vec<f64>,
}

impl SetFunction {
    /// Wraps a dense value vector. The value at the empty set must be exactly
    /// zero and every value finite.
    pub fn from_values(ground: GroundSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != ground.size() {
            return domain(format!(
                "expected {} values for {} labels, got {}",
                ground.size(),
                ground.len(),
                values.len()
            ));
        }
        if values[0] != 0.0 {
            return domain(format!(
                "value at the empty set must be 0, got {}",
                values[0]
            ));
        }
        if let Some(s) = values.iter().position(|v| !v.is_finite()) {
            return domain(format!("non-finite value at {:?}", ground.format_subset(s)));
        }
        Ok(Self { ground, values })
    }

    pub fn zero(ground: &GroundSet) -> Self {
        Self {
            values: vec![0.0; ground.size()],
            ground: ground.clone(),
        }
    }

    /// Builds a function by evaluating `f` on every subset; `f(0)` is ignored.
    pub fn from_fn(ground: &GroundSet, mut f: impl FnMut(Subset) -> f64) -> Self {
        let mut values: Vec<f64> = (0..ground.size()).map(&mut f).collect();
        values[0] = 0.0;
        Self {
            ground: ground.clone(),
            values,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn full(&self) -> Subset {
        self.ground.full()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Value at `s`, with a range check.
    pub fn get(&self, s: Subset) -> Result<f64> {
        self.values
            .get(s)
            .copied()
            .ok_or_else(|| Error::Domain(format!("subset mask {s:#b} outside ground set")))
    }

    /// Value at the subset named by its canonical text form.
    pub fn at(&self, key: &str) -> Result<f64> {
        Ok(self.values[self.ground.parse_subset(key)?])
    }

    /// Rank, the value at the whole ground set.
    pub fn rank(&self) -> f64 {
        self.values[self.full()]
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        let mut values: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        values[0] = 0.0;
        Self {
            ground: self.ground.clone(),
            values,
        }
    }

    /// `self + c * other`, coordinatewise.
    pub fn add_scaled(&self, c: f64, other: &SetFunction) -> Result<Self> {
        self.ground.check_same(&other.ground)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + c * b)
            .collect();
        Ok(Self {
            ground: self.ground.clone(),
            values,
        })
    }

    /// Largest coordinatewise absolute difference.
    pub fn max_abs_diff(&self, other: &SetFunction) -> Result<f64> {
        self.ground.check_same(&other.ground)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// `f(I) + f(J) - f(I ∪ J) - f(I ∩ J)`.
    pub fn delta(&self, i: Subset, j: Subset) -> Result<f64> {
        if !self.ground.contains(i) || !self.ground.contains(j) {
            return domain(format!(
                "subset mask outside ground set of size {}",
                self.n()
            ));
        }
        Ok(self.delta_unchecked(i, j))
    }

    #[inline]
    pub(crate) fn delta_unchecked(&self, i: Subset, j: Subset) -> f64 {
        let v = &self.values;
        v[i] + v[j] - v[i | j] - v[i & j]
    }

    /// Conditional form `Δ_{ab|L}`: delta of `a ∪ L` and `b ∪ L` for singletons
    /// given by bit positions.
    #[inline]
    pub fn delta_cond(&self, a: usize, b: usize, cond: Subset) -> f64 {
        self.delta_unchecked(1 << a | cond, 1 << b | cond)
    }

    /// Relabels elements: the result `g` satisfies `g(π(I)) = f(I)` where
    /// `perm[b]` is the image of bit `b`. Equivalently `g(J) = f(π⁻¹(J))`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return domain(format!("{perm:?} is not a permutation of 0..{n}"));
        }
        let mut values = vec![0.0; self.values.len()];
        for (s, &v) in self.values.iter().enumerate() {
            let image = super::ground::bits(s).fold(0, |acc, b| acc | 1 << perm[b]);
            values[image] = v;
        }
        Ok(Self {
            ground: self.ground.clone(),
            values,
        })
    }

    /// Moves the function onto another ground set of the same size, matching
    /// elements by position.
    pub fn with_ground(self, ground: GroundSet) -> Result<Self> {
        if ground.len() != self.n() {
            return domain("ground sets differ in size");
        }
        Ok(Self {
            ground,
            values: self.values,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SetFunctionFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}

impl Index<Subset> for SetFunction {
    type Output = f64;

    fn index(&self, s: Subset) -> &f64 {
        &self.values[s]
    }
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (s, v) in self.values.iter().enumerate() {
            m.entry(&self.ground.format_subset(s), v);
        }
        m.finish()
    }
}

impl Add for &SetFunction {
    type Output = SetFunction;

    /// Panics on ground-set mismatch; use [`SetFunction::add_scaled`] for a checked sum.
    fn add(self, rhs: &SetFunction) -> SetFunction {
        self.add_scaled(1.0, rhs).expect("ground sets must agree")
    }
}

impl Sub for &SetFunction {
    type Output = SetFunction;

    fn sub(self, rhs: &SetFunction) -> SetFunction {
        self.add_scaled(-1.0, rhs).expect("ground sets must agree")
    }
}

impl Mul<&SetFunction> for f64 {
    type Output = SetFunction;

    fn mul(self, rhs: &SetFunction) -> SetFunction {
        rhs.scale(self)
    }
}

#[derive(Deserialize)]
struct SetFunctionFile {
    labels: Vec<String>,
    values: BTreeMap<String, f64>,
}

impl TryFrom<SetFunctionFile> for SetFunction {
    type Error = Error;

    fn try_from(file: SetFunctionFile) -> Result<Self> {
        let ground = GroundSet::new(file.labels)?;
        let mut values = vec![f64::NAN; ground.size()];
        for (key, v) in &file.values {
            let s = ground.parse_subset(key)?;
            if !values[s].is_nan() {
                return Err(Error::Parse(format!("duplicate key {key:?}")));
            }
            values[s] = *v;
        }
        match values[0] {
            v if v.is_nan() => values[0] = 0.0,
            0.0 => {}
            v => return Err(Error::Parse(format!("value at \"\" must be 0, got {v}"))),
        }
        if let Some(s) = values.iter().position(|v| v.is_nan()) {
            return Err(Error::Parse(format!(
                "missing value for subset {:?}",
                ground.format_subset(s)
            )));
        }
        SetFunction::from_values(ground, values).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for SetFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Values<'a>(&'a SetFunction);

        impl Serialize for Values<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let f = self.0;
                let mut map = serializer.serialize_map(Some(f.values.len()))?;
                for (s, v) in f.values.iter().enumerate() {
                    map.serialize_entry(&f.ground.format_subset(s), v)?;
                }
                map.end()
            }
        }

        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("labels", self.ground.labels())?;
        map.serialize_entry("values", &Values(self))?;
        map.end()
    }
}
