use std::collections::BTreeMap;

use indexmap::IndexMap;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::TensorSpace;
use crate::error::{Error, Result};
use crate::families::{FamilyId, FamilyTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MuFamily {
    /// Exponent-p max-rank groups (including the Heisenberg group at d = 2).
    ExpP,
    /// Max-rank groups with `G^p = <x_1^p> = <y_12>`.
    Gp,
}

impl MuFamily {
    pub fn of(f: &FamilyId) -> Result<Self> {
        match f.tag {
            FamilyTag::MaxrankExpP | FamilyTag::Heis => Ok(MuFamily::ExpP),
            FamilyTag::MaxrankGpP => Ok(MuFamily::Gp),
            _ => Err(Error::Unsupported(format!("no μ-parametrisation for {}", f.tag.cli_name()))),
        }
    }

    fn json_name(self) -> &'static str {
        match self {
            MuFamily::ExpP => "maxrank-exp-p",
            MuFamily::Gp => "maxrank-gp",
        }
    }
}

/// Exponents `μ_abc ∈ Z/p` for keys `(a, b, c)` with `b < c` and `a <= c`:
/// the shapes `ijk`, `jik` (`i < j < k`), `iij` and `jij` (`i < j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuParameters {
    pub family: MuFamily,
    pub p: u32,
    pub d: u32,
    values: BTreeMap<(u32, u32, u32), u32>,
}

fn excluded(family: MuFamily, (a, b, c): (u32, u32, u32)) -> bool {
    family == MuFamily::Gp && ((a, b) == (2, 1) || (a, b, c) == (1, 1, 2))
}

fn shape_ok(d: u32, (a, b, c): (u32, u32, u32)) -> bool {
    a >= 1 && b >= 1 && b < c && a <= c && c <= d
}

impl MuParameters {
    pub fn zero(family: MuFamily, p: u32, d: u32) -> Self {
        MuParameters {
            family,
            p,
            d,
            values: BTreeMap::new(),
        }
    }

    /// Free keys in lexicographic order.
    pub fn free_keys(family: MuFamily, d: u32) -> Vec<(u32, u32, u32)> {
        let mut v = Vec::new();
        for a in 1..=d {
            for b in 1..=d {
                for c in b + 1..=d {
                    if shape_ok(d, (a, b, c)) && !excluded(family, (a, b, c)) {
                        v.push((a, b, c));
                    }
                }
            }
        }
        v
    }

    pub fn free_count(family: MuFamily, d: u32) -> usize {
        Self::free_keys(family, d).len()
    }

    pub fn set(&mut self, key: (u32, u32, u32), value: i64) -> Result<()> {
        if !shape_ok(self.d, key) {
            return Err(Error::InvalidParameters(format!(
                "μ key {},{},{} is not a valid index for d = {}",
                key.0, key.1, key.2, self.d
            )));
        }
        if excluded(self.family, key) {
            return Err(Error::InvalidParameters(format!(
                "μ key {},{},{} is excluded for the G^p = p family: (i,j) = (1,2) entries are fixed",
                key.0, key.1, key.2
            )));
        }
        let v = value.rem_euclid(self.p as i64) as u32;
        if v == 0 {
            self.values.remove(&key);
        } else {
            self.values.insert(key, v);
        }
        Ok(())
    }

    pub fn get(&self, key: (u32, u32, u32)) -> u32 {
        self.values.get(&key).copied().unwrap_or(0)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = ((u32, u32, u32), u32)> + '_ {
        self.values.iter().map(|(k, v)| (*k, *v))
    }

    /// One parameter set per free key, with that key set to 1.
    pub fn basis(family: MuFamily, p: u32, d: u32) -> Vec<Self> {
        Self::free_keys(family, d)
            .into_iter()
            .map(|k| {
                let mut m = Self::zero(family, p, d);
                m.values.insert(k, 1);
                m
            })
            .collect()
    }

    pub fn random(family: MuFamily, p: u32, d: u32, rng: &mut impl Rng) -> Self {
        let mut m = Self::zero(family, p, d);
        for k in Self::free_keys(family, d) {
            let v = rng.gen_range(0..p);
            if v != 0 {
                m.values.insert(k, v);
            }
        }
        m
    }

    /// `f(x_a ⊗ y_bc)` for `a <= c`, with the `G^p = p` identifications.
    fn lookup(&self, (a, b, c): (u32, u32, u32)) -> i64 {
        match self.family {
            MuFamily::Gp if (a, b, c) == (1, 1, 2) || (a, b, c) == (2, 1, 2) => 0,
            MuFamily::Gp if (a, b) == (2, 1) => self.get((1, 2, c)) as i64,
            _ => self.get((a, b, c)) as i64,
        }
    }

    /// The functional on `G/G' ⊗ G'` these parameters describe; it vanishes on
    /// the Jacobi vectors by construction.
    pub fn functional(&self, space: &TensorSpace) -> Result<Vec<u64>> {
        let p = self.p as i64;
        let mut f = vec![0u64; space.dim()];
        for a in 1..=self.d {
            for b in 1..=self.d {
                for c in b + 1..=self.d {
                    let Some(idx) = space.index_by_name(&format!("x{a}"), &format!("y{b}{c}")) else {
                        return Err(Error::PresentationMismatch);
                    };
                    let v = if a <= c {
                        self.lookup((a, b, c))
                    } else {
                        -self.lookup((b, c, a)) + self.lookup((c, b, a))
                    };
                    f[idx] = v.rem_euclid(p) as u64;
                }
            }
        }
        Ok(f)
    }

    /// Reads the free parameters off a functional.
    pub fn from_functional(family: MuFamily, p: u32, d: u32, space: &TensorSpace, f: &[u64]) -> Result<Self> {
        let mut m = Self::zero(family, p, d);
        for (a, b, c) in Self::free_keys(family, d) {
            let idx = space
                .index_by_name(&format!("x{a}"), &format!("y{b}{c}"))
                .ok_or(Error::PresentationMismatch)?;
            m.set((a, b, c), f[idx] as i64)?;
        }
        Ok(m)
    }

    pub fn to_json(&self) -> MuJson {
        MuJson {
            family: self.family.json_name().to_string(),
            p: self.p,
            d: self.d,
            mu: self
                .values
                .iter()
                .map(|(&(a, b, c), &v)| (format!("{a},{b},{c}"), v as i64))
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("μ serialises")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: MuJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let family = match j.family.as_str() {
            "maxrank-exp-p" | "heis" => MuFamily::ExpP,
            "maxrank-gp" => MuFamily::Gp,
            other => return Err(Error::Parse(format!("unknown μ family {other:?}"))),
        };
        let mut m = Self::zero(family, j.p, j.d);
        for (key, &v) in &j.mu {
            let parts: Vec<&str> = key.split(',').map(str::trim).collect();
            let nums: Vec<u32> = parts
                .iter()
                .map(|s| s.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad μ key {key:?}")))?;
            if nums.len() != 3 {
                return Err(Error::Parse(format!("bad μ key {key:?}")));
            }
            m.set((nums[0], nums[1], nums[2]), v)?;
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuJson {
    pub family: String,
    pub p: u32,
    pub d: u32,
    pub mu: IndexMap<String, i64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_counts() {
        let e: Vec<usize> = (3..=5).map(|d| MuParameters::free_count(MuFamily::ExpP, d)).collect();
        let g: Vec<usize> = (3..=5).map(|d| MuParameters::free_count(MuFamily::Gp, d)).collect();
        assert_eq!(e, vec![8, 20, 40]);
        assert_eq!(g, vec![5, 16, 35]);
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let mut m = MuParameters::zero(MuFamily::ExpP, 3, 3);
        m.set((1, 2, 3), 1).unwrap();
        m.set((3, 1, 3), 2).unwrap();
        let s = m.to_json_string();
        assert_eq!(MuParameters::from_json_str(&s).unwrap(), m);
        assert!(MuParameters::from_json_str(r#"{"family":"maxrank-exp-p","p":3,"d":3,"mu":{},"x":1}"#).is_err());
        let e = MuParameters::from_json_str(r#"{"family":"maxrank-gp","p":3,"d":3,"mu":{"2,1,3":1}}"#).unwrap_err();
        assert!(e.to_string().contains("excluded for the G^p = p family"));
        assert!(MuParameters::from_json_str(r#"{"family":"maxrank-exp-p","p":3,"d":3,"mu":{"3,1,2":1}}"#).is_err());
    }
}
