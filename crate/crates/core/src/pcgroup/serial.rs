use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{PcPresentation, PresentationBuilder, Word};
use crate::error::{Error, Result};

/// JSON form of a presentation. Words are lists of `[index, exponent]` pairs
/// with 0-based generator indices. Power keys are generator names, commutator
/// keys read `"[gj,gi]"` with `j > i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    pub prime: u32,
    pub generators: Vec<GeneratorJson>,
    #[serde(default)]
    pub powers: IndexMap<String, Vec<[i64; 2]>>,
    #[serde(default)]
    pub commutators: IndexMap<String, Vec<[i64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    pub name: String,
    pub order: u32,
    pub depth: u8,
}

fn word_json(e: &[u32]) -> Vec<[i64; 2]> {
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| [i as i64, x as i64])
        .collect()
}

impl PcPresentation {
    pub fn to_json(&self) -> PresentationJson {
        let n = self.num_generators();
        let mut powers = IndexMap::new();
        let mut commutators = IndexMap::new();
        for i in 0..n {
            if self.power[i].iter().any(|&x| x != 0) {
                powers.insert(self.gens[i].name.clone(), word_json(&self.power[i]));
            }
        }
        for j in 0..n {
            for i in 0..j {
                if let Some(c) = &self.comm[j][i] {
                    commutators.insert(format!("[{},{}]", self.gens[j].name, self.gens[i].name), word_json(c));
                }
            }
        }
        PresentationJson {
            prime: self.p,
            generators: self
                .gens
                .iter()
                .map(|g| GeneratorJson {
                    name: g.name.clone(),
                    order: g.rel_order,
                    depth: g.depth,
                })
                .collect(),
            powers,
            commutators,
        }
    }

    pub fn from_json(j: &PresentationJson) -> Result<PcPresentation> {
        let mut b = PresentationBuilder::new(j.prime);
        for g in &j.generators {
            if b.num_generators() > 0 && j.generators[..b.num_generators()].iter().any(|h| h.name == g.name) {
                return Err(Error::Parse(format!("duplicate generator name {}", g.name)));
            }
            b.generator_with_order(g.name.clone(), g.depth, g.order);
        }
        let index = |name: &str| -> Result<usize> {
            j.generators
                .iter()
                .position(|g| g.name == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name}")))
        };
        let word = |w: &[[i64; 2]]| -> Result<Word> {
            w.iter()
                .map(|&[i, e]| {
                    if i < 0 || i as usize >= j.generators.len() {
                        Err(Error::Parse(format!("generator index {i} out of range")))
                    } else {
                        Ok((i as usize, e))
                    }
                })
                .collect()
        };
        for (name, w) in &j.powers {
            b.power(index(name)?, word(w)?);
        }
        for (key, w) in &j.commutators {
            let inner = key
                .strip_prefix('[')
                .and_then(|k| k.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad commutator key {key}")))?;
            let (a, c) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad commutator key {key}")))?;
            b.commutator(index(a.trim())?, index(c.trim())?, word(w)?);
        }
        b.build()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("presentation serialises")
    }

    pub fn from_json_str(s: &str) -> Result<PcPresentation> {
        let j: PresentationJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut b = PresentationBuilder::new(3);
        let x1 = b.generator("x1", 1);
        let x2 = b.generator("x2", 1);
        let y = b.generator("y12", 2);
        b.commutator(x1, x2, vec![(y, 1)]);
        b.power(x1, vec![(y, 1)]);
        let g = b.build().unwrap();
        let s = g.to_json_string();
        let h = PcPresentation::from_json_str(&s).unwrap();
        assert_eq!(g, h);
        assert_eq!(g.fingerprint(), h.fingerprint());
    }

    #[test]
    fn unknown_field_rejected() {
        let s = r#"{"prime":3,"generators":[],"extra":1}"#;
        assert!(matches!(PcPresentation::from_json_str(s), Err(Error::Parse(_))));
    }
}
