use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cyclo::RootExp;
use super::monomial::MonomialMatrix;
use super::monorep::MonomialRep;
use crate::cohomology::{
    chi_bar, coboundary_solve, cocycle_from_mu, random_element, CentralExtension, Cocycle, MuContext, MuParameters,
    Provenance,
};
use crate::error::{Error, Result};
use crate::pcgroup::PcPresentation;

/// An `α`-representation of a base group, stored as one matrix per element
/// in element-index order.
#[derive(Clone)]
pub struct ProjectiveRep {
    pub base: PcPresentation,
    pub cocycle: Cocycle,
    pub matrices: Vec<MonomialMatrix>,
}

impl std::fmt::Debug for ProjectiveRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProjectiveRep")
            .field("degree", &self.degree())
            .field("elements", &self.matrices.len())
            .finish()
    }
}

impl ProjectiveRep {
    pub fn degree(&self) -> usize {
        self.matrices.first().map(|m| m.dim()).unwrap_or(0)
    }

    /// Same representation with the matrix of element `idx` multiplied by `ζ^k`
    /// on its first column.
    pub fn with_corrupted_matrix(&self, idx: usize, k: u32) -> ProjectiveRep {
        let mut out = self.clone();
        let m = &mut out.matrices[idx];
        m.exps[0] = (m.exps[0] + k) % m.q;
        out
    }

    pub fn with_cocycle(&self, cocycle: Cocycle) -> ProjectiveRep {
        ProjectiveRep {
            base: self.base.clone(),
            cocycle,
            matrices: self.matrices.clone(),
        }
    }
}

/// `ρ(g) = ρ*(s(g))` for an irreducible `ρ*` of the representation group
/// lying over the kernel character `χ` (values on the kernel generators), with
/// cocycle `α(g, h) = χ(s(g) s(h) s(gh)^{-1})`.
pub fn proj_from_repgroup(
    ext: &Arc<CentralExtension>,
    rho: &MonomialRep,
    chi: &[RootExp],
    budget: u128,
) -> Result<ProjectiveRep> {
    let r = &ext.rep;
    if rho.domain.gens.len() != r.num_generators() {
        return Err(Error::InvalidParameters("representation is not of the whole representation group".into()));
    }
    if chi.len() != ext.kernel.len() {
        return Err(Error::InvalidParameters(format!(
            "{} character values for a kernel with {} generators",
            chi.len(),
            ext.kernel.len()
        )));
    }
    let q = rho.q;
    for (&k, c) in ext.kernel.iter().zip(chi) {
        let v = rho.central_value(&r.generator(k).into_exponents())?;
        if v != c.lift(q) {
            return Err(Error::NotIsotypic(format!(
                "{} acts by ζ^{} instead of the requested character",
                r.generators()[k].name,
                v.value
            )));
        }
    }
    let order = ext.base.group_order()?;
    if order > budget {
        return Err(Error::budget("projective representation", order, budget));
    }
    let matrices = (0..order as usize)
        .map(|i| rho.eval_raw(&ext.lift_raw(&ext.base.element_at(i))))
        .collect::<Result<Vec<_>>>()?;
    let e = q.ilog(ext.base.prime());
    let values: Vec<u64> = chi.iter().map(|c| c.lift(q).value as u64).collect();
    Ok(ProjectiveRep {
        base: ext.base.clone(),
        cocycle: ext.transgression(values, e),
        matrices,
    })
}

#[derive(Clone, Copy, Debug)]
pub enum ProjCheck {
    Exhaustive,
    Sampled { n: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjVerdict {
    pub pass: bool,
    pub checked: u64,
    pub witness: Option<(Vec<u32>, Vec<u32>)>,
}

/// Checks `ρ(g) ρ(h) = ζ^{α(g,h)} ρ(gh)` exactly.
pub fn verify_projective_rep(rho: &ProjectiveRep, mode: ProjCheck) -> Result<ProjVerdict> {
    let g = &rho.base;
    let q = rho.matrices.first().map(|m| m.q).unwrap_or(1) as u64;
    let m = rho.cocycle.modulus();
    if q != m {
        return Err(Error::InvalidParameters(format!("matrix roots mod {q} but cocycle mod {m}")));
    }
    let n = rho.matrices.len();
    let check = |x: usize, y: usize| -> bool {
        let (gx, gy) = (g.element_at(x), g.element_at(y));
        let xy = g.index_of(&g.mul_raw(&gx, &gy));
        let a = rho.cocycle.eval(&gx, &gy) as u32;
        rho.matrices[x].mul(&rho.matrices[y]) == rho.matrices[xy].scaled(a)
    };
    let mut checked = 0u64;
    let pairs: Box<dyn Iterator<Item = (usize, usize)>> = match mode {
        ProjCheck::Exhaustive => Box::new((0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))),
        ProjCheck::Sampled { n: count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v: Vec<(usize, usize)> = (0..count)
                .map(|_| {
                    let a = random_element(g, &mut rng);
                    let b = random_element(g, &mut rng);
                    (g.index_of(&a), g.index_of(&b))
                })
                .collect();
            Box::new(v.into_iter())
        }
    };
    for (x, y) in pairs {
        checked += 1;
        if !check(x, y) {
            return Ok(ProjVerdict {
                pass: false,
                checked,
                witness: Some((g.element_at(x), g.element_at(y))),
            });
        }
    }
    Ok(ProjVerdict {
        pass: true,
        checked,
        witness: None,
    })
}

/// The μ-parameters of the class of `alpha`: read off `χ̄(α)` in the tensor
/// basis, then certified by showing `α - cocycle_from_mu(μ)` is a coboundary.
pub fn match_class(ctx: &MuContext, alpha: &Cocycle, budget: u128) -> Result<MuParameters> {
    let g = &ctx.group;
    let f = chi_bar(alpha, g)?;
    let mu = MuParameters::from_functional(ctx.family, ctx.id.p, ctx.id.d, ctx.space(), &f)?;
    let beta = cocycle_from_mu(ctx, &mu)?;
    let m = alpha.modulus();
    let scale = m / beta.modulus();
    let (a, b) = (alpha.clone(), beta.clone());
    let diff = Cocycle::new(g, alpha.e, Provenance::FromTable, move |x, y| {
        (a.eval(x, y) + m - b.eval(x, y) * scale % m) % m
    });
    if !coboundary_solve(&diff, g, budget)?.is_coboundary() {
        return Err(Error::Certification("pullback is not cohomologous to the matched μ-cocycle".into()));
    }
    Ok(mu)
}
