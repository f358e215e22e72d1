use serde::Serialize;

use super::{PcPresentation, SubgroupSpec};
use crate::error::{Error, Result};

/// Structural summary. Parts needing enumeration are `None` when the group
/// exceeds the budget.
#[derive(Clone, Debug)]
pub struct Structure {
    pub order_log_p: u32,
    pub derived: SubgroupSpec,
    pub center: Option<SubgroupSpec>,
    pub agemo: Option<SubgroupSpec>,
    pub exponent: Option<u64>,
    /// `G/G'` elementary abelian, decidable from generators alone.
    pub frattini_is_derived: bool,
    pub is_special: Option<bool>,
    pub rank: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureSummary {
    pub order_log_p: u32,
    pub derived_log_p: usize,
    pub center_log_p: Option<usize>,
    pub agemo_log_p: Option<usize>,
    pub exponent: Option<u64>,
    pub is_special: Option<bool>,
    pub rank: Option<u32>,
}

impl Structure {
    pub fn summary(&self) -> StructureSummary {
        StructureSummary {
            order_log_p: self.order_log_p,
            derived_log_p: self.derived.order_log_p(),
            center_log_p: self.center.as_ref().map(|c| c.order_log_p()),
            agemo_log_p: self.agemo.as_ref().map(|c| c.order_log_p()),
            exponent: self.exponent,
            is_special: self.is_special,
            rank: self.rank,
        }
    }
}

impl PcPresentation {
    pub fn structure(&self, budget: u128) -> Result<Structure> {
        if !self.consistency_check().is_consistent() {
            return Err(Error::NotConsistent);
        }
        let n = self.num_generators();
        let p = self.prime() as i64;
        let derived = self.derived_subgroup();
        let frattini_is_derived = (0..n).all(|i| {
            let mut gi = vec![0u32; n];
            gi[i] = 1;
            derived.contains_raw(self, &self.pow_raw(&gi, p))
        });

        let (center, agemo, exponent) = match self.all_elements_raw(budget) {
            Ok(all) => {
                let gens: Vec<Vec<u32>> = (0..n)
                    .map(|i| {
                        let mut gi = vec![0u32; n];
                        gi[i] = 1;
                        gi
                    })
                    .collect();
                let central: Vec<Vec<u32>> = all
                    .iter()
                    .filter(|e| gens.iter().all(|g| self.comm_raw(e, g).iter().all(|&x| x == 0)))
                    .cloned()
                    .collect();
                let powers: Vec<Vec<u32>> = all.iter().map(|e| self.pow_raw(e, p)).collect();
                let exponent = all.iter().map(|e| self.order_raw(e)).max().unwrap_or(1);
                (
                    Some(SubgroupSpec::from_raw(self, &central, false)),
                    Some(SubgroupSpec::from_raw(self, &powers, false)),
                    Some(exponent),
                )
            }
            Err(_) => (None, None, None),
        };
        let is_special = center.as_ref().map(|z| {
            frattini_is_derived
                && z.order_log_p() == derived.order_log_p()
                && derived.is_subgroup_of(self, z)
                && derived.order_log_p() > 0
        });
        let rank = is_special.and_then(|s| s.then_some(derived.order_log_p() as u32));
        Ok(Structure {
            order_log_p: self.order_log_p(),
            derived,
            center,
            agemo,
            exponent,
            frattini_is_derived,
            is_special,
            rank,
        })
    }
}
