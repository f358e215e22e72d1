use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::cyclo::RootExp;
use super::linear::{linear_character_with, linear_characters};
use super::monorep::{conjugate_rep, extend, induce_step, monomial_intertwiner, GenSubset, MonomialRep, NeedFinerRoot};
use crate::error::{Error, Result};
use crate::pcgroup::{PcPresentation, SubgroupSpec};

/// Counts for one index-`p` step of the ladder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepStats {
    pub generator: String,
    pub order_log_p: usize,
    pub inputs: usize,
    pub invariant: usize,
    pub induced_orbits: usize,
    pub outputs: usize,
}

#[derive(Clone, Debug)]
pub struct IrrSet {
    /// Domain of the representations (the last ladder term reached).
    pub domain: GenSubset,
    pub q: u32,
    pub reps: Vec<MonomialRep>,
    pub steps: Vec<StepStats>,
    /// False when a budget stopped the ladder before its top term.
    pub complete: bool,
}

impl IrrSet {
    pub fn degree_profile(&self) -> Vec<(usize, usize)> {
        let mut m: std::collections::BTreeMap<usize, usize> = Default::default();
        for r in &self.reps {
            *m.entry(r.degree()).or_default() += 1;
        }
        m.into_iter().collect()
    }

    pub fn sum_of_squares(&self) -> u128 {
        self.reps.iter().map(|r| (r.degree() as u128).pow(2)).sum()
    }
}

/// Irreducible representations of the top term of `series` by walking up
/// from the linear characters of its abelian bottom term. Each term must be
/// spanned by pc-generators, contain `G'` of the top term (so all terms are
/// normal in it) and have index `p` in the next.
pub fn irr_ladder(g: &PcPresentation, series: &[SubgroupSpec], budget: u128) -> Result<IrrSet> {
    let first = series.first().ok_or_else(|| Error::InvalidParameters("empty series".into()))?;
    for s in series {
        if !s.is_generator_subset() {
            return Err(Error::InvalidParameters("ladder terms must be spanned by pc-generators".into()));
        }
    }
    if !first.is_abelian(g) {
        return Err(Error::InvalidParameters("bottom ladder term is not abelian".into()));
    }
    let p = g.prime();
    let exp_bottom = first
        .leading_positions()
        .iter()
        .map(|&i| g.order_raw(&g.generator(i).into_exponents()) as u32)
        .max()
        .unwrap_or(1);
    let mut q = p * exp_bottom;
    for _ in 0..4 {
        match run(g, series, q, budget)? {
            Ok(set) => return Ok(set),
            Err(NeedFinerRoot) => q *= p,
        }
    }
    Err(Error::Internal("ladder kept requiring finer roots of unity".into()))
}

fn run(
    g: &PcPresentation,
    series: &[SubgroupSpec],
    q: u32,
    budget: u128,
) -> Result<std::result::Result<IrrSet, NeedFinerRoot>> {
    let n = g.num_generators();
    let bottom = &series[0];
    if bottom.order(g) > budget {
        return Err(Error::budget("irreducible enumeration", bottom.order(g), budget));
    }
    let mut reps: Vec<MonomialRep> = linear_characters(g, bottom, q)
        .iter()
        .map(|l| MonomialRep::from_linear(g, l))
        .collect::<Result<_>>()?;
    let mut domain = GenSubset::new(g, bottom.leading_positions());
    let mut steps = Vec::new();
    for next in &series[1..] {
        let new: Vec<usize> = next
            .leading_positions()
            .into_iter()
            .filter(|i| !domain.gens.contains(i))
            .collect();
        let [x] = new[..] else {
            return Err(Error::InvalidParameters("consecutive ladder terms must differ by one generator".into()));
        };
        if next.order(g) > budget {
            return Ok(Ok(IrrSet {
                domain,
                q,
                reps,
                steps,
                complete: false,
            }));
        }
        let mut xv = vec![0u32; n];
        xv[x] = 1;
        // χ^x(m) = χ(x m x^-1) as a permutation of element indices
        let conj: Vec<usize> = domain.elements().map(|m| domain.index_of(&g.conj_raw(&m, &xv))).collect();
        let hashes: Vec<(u64, u64)> = reps.par_iter().map(|r| r.character_hashes(&conj)).collect();
        let mut by_hash: HashMap<u64, Vec<usize>> = HashMap::new();
        for (i, (h, _)) in hashes.iter().enumerate() {
            by_hash.entry(*h).or_default().push(i);
        }
        // image of each θ under conjugation, confirmed by exact character comparison
        let image = |i: usize| -> Result<usize> {
            let chi = reps[i].character();
            let target: Vec<_> = conj.iter().map(|&j| chi[j].clone()).collect();
            for &j in by_hash.get(&hashes[i].1).map(|v| v.as_slice()).unwrap_or(&[]) {
                if j == i && chi == target || j != i && reps[j].character() == target {
                    return Ok(j);
                }
            }
            Err(Error::Internal("conjugate representation missing from the list".into()))
        };
        let mut done = vec![false; reps.len()];
        let mut plan: Vec<(usize, bool)> = Vec::new();
        for i in 0..reps.len() {
            if done[i] {
                continue;
            }
            let j = image(i)?;
            if j == i {
                plan.push((i, true));
                done[i] = true;
                continue;
            }
            let mut cur = i;
            for _ in 0..g.prime() {
                if done[cur] {
                    return Err(Error::Internal("conjugation orbit has the wrong length".into()));
                }
                done[cur] = true;
                cur = image(cur)?;
            }
            if cur != i {
                return Err(Error::Internal("conjugation orbit does not close".into()));
            }
            plan.push((i, false));
        }
        let built: Vec<Result<std::result::Result<Vec<MonomialRep>, NeedFinerRoot>>> = plan
            .par_iter()
            .map(|&(i, invariant)| {
                if invariant {
                    extend(g, &reps[i], x)
                } else {
                    induce_step(g, &reps[i], x).map(|r| Ok(vec![r]))
                }
            })
            .collect();
        let mut out = Vec::new();
        for b in built {
            match b? {
                Ok(v) => out.extend(v),
                Err(e) => return Ok(Err(e)),
            }
        }
        let invariant = plan.iter().filter(|(_, inv)| *inv).count();
        steps.push(StepStats {
            generator: g.generators()[x].name.clone(),
            order_log_p: next.order_log_p(),
            inputs: reps.len(),
            invariant,
            induced_orbits: plan.len() - invariant,
            outputs: out.len(),
        });
        reps = out;
        domain = GenSubset::new(g, next.leading_positions());
    }
    let top_order = domain.order();
    let set = IrrSet {
        domain,
        q,
        reps,
        steps,
        complete: true,
    };
    if set.sum_of_squares() != top_order {
        return Err(Error::Internal(format!(
            "sum of squared degrees {} differs from the group order {top_order}",
            set.sum_of_squares()
        )));
    }
    Ok(Ok(set))
}

/// One irreducible of the top term of `series`, found by following a single
/// path up the ladder from the first linear character of the bottom term with
/// the prescribed values on the given pc-generators (which must lie in the
/// bottom term). Invariance is decided by the monomial intertwiner search:
/// all terms are normal in the top term and every representation built here
/// restricts to each lower term as a block sum of irreducibles, so an
/// equivalent conjugate always admits a monomial intertwiner.
pub fn irr_chain(g: &PcPresentation, series: &[SubgroupSpec], fixed: &[(usize, RootExp)]) -> Result<MonomialRep> {
    let bottom = series.first().ok_or_else(|| Error::InvalidParameters("empty series".into()))?;
    let pos = bottom.leading_positions();
    let p = g.prime();
    let exp_bottom = pos
        .iter()
        .map(|&i| g.order_raw(&g.generator(i).into_exponents()) as u32)
        .max()
        .unwrap_or(1);
    let mut q = p * exp_bottom;
    let mut slots = Vec::with_capacity(fixed.len());
    for (gen, v) in fixed {
        let k = pos
            .iter()
            .position(|x| x == gen)
            .ok_or_else(|| Error::InvalidParameters(format!("{} is not in the bottom term", g.generators()[*gen].name)))?;
        q = q.max(v.modulus);
        slots.push((k, *v));
    }
    let lambda = linear_character_with(g, bottom, q, &slots)
        .ok_or_else(|| Error::InvalidParameters("prescribed values extend to no linear character".into()))?;
    let mut theta = MonomialRep::from_linear(g, &lambda)?;
    for next in &series[1..] {
        let x = *next
            .leading_positions()
            .iter()
            .find(|i| !theta.domain.gens.contains(i))
            .ok_or_else(|| Error::InvalidParameters("ladder terms must grow".into()))?;
        let mut xv = vec![0u32; g.num_generators()];
        xv[x] = 1;
        let conj = conjugate_rep(g, &theta, &xv)?;
        theta = if monomial_intertwiner(&theta, &conj).is_some() {
            match extend(g, &theta, x)? {
                Ok(mut v) => v.swap_remove(0),
                Err(NeedFinerRoot) => {
                    let lifted = theta.lift(theta.q * p);
                    match extend(g, &lifted, x)? {
                        Ok(mut v) => v.swap_remove(0),
                        Err(NeedFinerRoot) => return Err(Error::Internal("extension needs an unexpected root".into())),
                    }
                }
            }
        } else {
            induce_step(g, &theta, x)?
        };
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, ladder_series, FamilyId};

    fn ladder(f: FamilyId) -> (PcPresentation, IrrSet) {
        let g = families::build(&f).unwrap();
        let s = ladder_series(&f, &g);
        let set = irr_ladder(&g, &s, 6561).unwrap();
        (g, set)
    }

    #[test]
    fn heisenberg_degrees() {
        let (g, set) = ladder(FamilyId::heis(3));
        assert!(set.complete);
        assert_eq!(set.degree_profile(), vec![(1, 9), (3, 2)]);
        for r in &set.reps {
            r.verify_relations(&g).unwrap();
            assert!(r.is_irreducible());
        }
    }

    #[test]
    fn elementary_abelian_is_all_linear() {
        let (_, set) = ladder(FamilyId::elem_ab(3, 3));
        assert_eq!(set.degree_profile(), vec![(1, 27)]);
    }

    #[test]
    fn extraspecial_p5() {
        let (_, set) = ladder(FamilyId::es_p(5, 1));
        assert_eq!(set.degree_profile(), vec![(1, 25), (5, 4)]);
    }

    #[test]
    fn budget_gives_partial_result() {
        let f = FamilyId::heis(3);
        let g = families::build(&f).unwrap();
        let set = irr_ladder(&g, &ladder_series(&f, &g), 9).unwrap();
        assert!(!set.complete);
    }
}
