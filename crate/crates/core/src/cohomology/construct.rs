use std::sync::Arc;

use super::{Cocycle, MuFamily, MuParameters, Provenance, TensorSpace, XSubspace};
use crate::error::{Error, Result};
use crate::families::{self, FamilyId, FamilyTag};
use crate::pcgroup::PcPresentation;

/// A central extension `1 -> K -> R -> Q -> 1` where `K` is spanned by
/// pc-generators of `R` and every generator of `Q` lifts to a generator of `R`
/// of the same name.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub rep: PcPresentation,
    pub base: PcPresentation,
    /// `section[i]`: generator of `rep` lifting generator `i` of `base`.
    pub section: Vec<usize>,
    /// Generators of `rep` spanning the kernel.
    pub kernel: Vec<usize>,
}

impl CentralExtension {
    /// The extension given by a representation-group family.
    pub fn from_family(f: &FamilyId) -> Result<Self> {
        let rep = families::build(f)?;
        let proj = families::base_projection(f, &rep)?;
        let kernel = families::kernel_generators(f, &rep)?;
        Ok(CentralExtension {
            rep,
            base: proj.base,
            section: proj.section,
            kernel,
        })
    }

    pub fn lift_raw(&self, g: &[u32]) -> Vec<u32> {
        let mut e = vec![0u32; self.rep.num_generators()];
        for (i, &k) in g.iter().enumerate() {
            e[self.section[i]] = k;
        }
        e
    }

    pub fn kernel_part(&self, e: &[u32]) -> Vec<u32> {
        self.kernel.iter().map(|&k| e[k]).collect()
    }

    /// Kernel coordinates of `s(g) s(h) s(gh)^-1`.
    pub fn factor_set_raw(&self, g: &[u32], h: &[u32]) -> Vec<u32> {
        let prod = self.rep.mul_raw(&self.lift_raw(g), &self.lift_raw(h));
        self.kernel_part(&prod)
    }

    /// The transgressed cocycle `χ(s(g) s(h) s(gh)^-1)` for a character of the
    /// kernel given by its values (mod `p^e`) on the kernel generators.
    pub fn transgression(self: &Arc<Self>, chi: Vec<u64>, e: u32) -> Cocycle {
        let m = (self.base.prime() as u64).pow(e);
        let ext = self.clone();
        Cocycle::new(&self.base, e, Provenance::FromPullback, move |g, h| {
            let k = ext.factor_set_raw(g, h);
            k.iter().zip(&chi).map(|(&a, &c)| a as u64 * c % m).sum::<u64>() % m
        })
    }
}

/// Everything needed to turn μ-parameters or X-invariant functionals into
/// cocycles of a max-rank group.
#[derive(Clone, Debug)]
pub struct MuContext {
    pub family: MuFamily,
    pub id: FamilyId,
    pub group: PcPresentation,
    pub x: XSubspace,
    /// `H_d*`, `Ĥ` or `K_d*` over the exponent-p group `Q` (`G` itself, or
    /// `G/G^p`).
    pub ext: Arc<CentralExtension>,
    /// For every generator of `Q`, the generator of `G` with the same name.
    to_quotient: Vec<usize>,
}

impl MuContext {
    pub fn new(f: &FamilyId) -> Result<Self> {
        let family = MuFamily::of(f)?;
        let group = families::build(f)?;
        let x = super::x_subspace(&group)?;
        let rep_id = match f.tag {
            FamilyTag::Heis => FamilyId::hath(f.p),
            FamilyTag::MaxrankExpP => FamilyId::hstar(f.p, f.d),
            FamilyTag::MaxrankGpP => FamilyId::kstar(f.p, f.d),
            _ => unreachable!("checked by MuFamily::of"),
        };
        let ext = CentralExtension::from_family(&rep_id)?;
        let to_quotient = ext
            .base
            .generators()
            .iter()
            .map(|q| {
                group
                    .generator_index(&q.name)
                    .ok_or_else(|| Error::Internal(format!("no generator {} in base", q.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MuContext {
            family,
            id: *f,
            group,
            x,
            ext: Arc::new(ext),
            to_quotient,
        })
    }

    pub fn space(&self) -> &TensorSpace {
        &self.x.space
    }

    pub fn p(&self) -> u32 {
        self.group.prime()
    }

    /// Checks that `f` vanishes on every generator of `X`.
    pub fn check_x_invariant(&self, f: &[u64]) -> Result<()> {
        let p = self.p() as u64;
        if f.len() != self.space().dim() {
            return Err(Error::InvalidParameters(format!(
                "functional has {} entries, tensor space has dimension {}",
                f.len(),
                self.space().dim()
            )));
        }
        for (i, v) in self.x.generators.iter().enumerate() {
            let s: u64 = v.iter().zip(f).map(|(&a, &b)| a * (b % p)).sum::<u64>() % p;
            if s != 0 {
                return Err(Error::NotXInvariant(i));
            }
        }
        Ok(())
    }

    /// Character of the representation group's kernel with
    /// `χ([x_a, y_bc]) = f(x_a ⊗ y_bc)`; the kernel generator `y12` of `K_d*`
    /// gets 0.
    fn kernel_character(&self, f: &[u64]) -> Result<Vec<u64>> {
        let gens = self.ext.rep.generators();
        self.ext
            .kernel
            .iter()
            .map(|&k| {
                let name = &gens[k].name;
                if name.starts_with('y') {
                    return Ok(0);
                }
                let digits: Vec<char> = name[1..].chars().collect();
                let idx = self
                    .space()
                    .index_by_name(&format!("x{}", digits[0]), &format!("y{}{}", digits[1], digits[2]))
                    .ok_or_else(|| Error::Internal(format!("kernel generator {name} has no tensor label")))?;
                Ok(f[idx])
            })
            .collect()
    }

    fn project(&self, g: &[u32]) -> Vec<u32> {
        self.to_quotient.iter().map(|&i| g[i]).collect()
    }

    /// `B(r, s) = Σ f(x_a ⊗ y_b) r_a s_b` on normal forms of `Q`.
    fn bilinear(&self, f: &[u64]) -> impl Fn(&[u32], &[u32]) -> u64 + Send + Sync + 'static {
        let p = self.p() as u64;
        let q = &self.ext.base;
        let gens = q.generators();
        let mut terms = Vec::new();
        for (a, ga) in gens.iter().enumerate() {
            if ga.depth != 1 {
                continue;
            }
            for (b, gb) in gens.iter().enumerate() {
                if gb.depth != 2 {
                    continue;
                }
                if let Some(i) = self.space().index_by_name(&ga.name, &gb.name) {
                    if f[i] % p != 0 {
                        terms.push((a, b, f[i] % p));
                    }
                }
            }
        }
        move |r: &[u32], s: &[u32]| terms.iter().map(|&(a, b, c)| r[a] as u64 * s[b] as u64 * c).sum::<u64>() % p
    }
}

/// The cocycle attached to an X-invariant functional `f` on `G/G' ⊗ G'`.
///
/// It is the transgression of `χ_f` through the representation group,
/// adjusted by the coboundary of `g ↦ -B(r_g, s_g)`, which gives
/// `α(g, h) = B(r_g, s_h) + C(r_g, r_h)` with `C` vanishing whenever either
/// argument lies in `G'`. Hence `χ̄(α) = f`.
pub fn eta(ctx: &MuContext, f: &[u64]) -> Result<Cocycle> {
    ctx.check_x_invariant(f)?;
    let p = ctx.p() as u64;
    let chi = ctx.kernel_character(f)?;
    let beta = ctx.ext.transgression(chi, 1);
    let b = ctx.bilinear(f);
    let c = Arc::new(ctx.clone());
    let mut alpha = Cocycle::new(&ctx.group, 1, Provenance::FromMu, move |g, h| {
        let (qg, qh) = (c.project(g), c.project(h));
        let qgh = c.ext.base.mul_raw(&qg, &qh);
        let phi = |x: &[u32]| (p - b(x, x)) % p;
        (beta.eval(&qg, &qh) + phi(&qg) + phi(&qh) + p - phi(&qgh)) % p
    });
    alpha.provenance = Provenance::FromMu;
    Ok(alpha)
}

pub fn cocycle_from_mu(ctx: &MuContext, mu: &MuParameters) -> Result<Cocycle> {
    if mu.family != ctx.family || mu.p != ctx.p() || mu.d != ctx.id.d {
        return Err(Error::InvalidParameters(format!(
            "μ for {:?} (p={}, d={}) does not match {}",
            mu.family,
            mu.p,
            mu.d,
            ctx.id
        )));
    }
    eta(ctx, &mu.functional(ctx.space())?)
}

/// The bilinear expression `Π μ^{(...)}` read literally: `B(r_g, s_h)` with
/// `r` from the first argument and `s` from the second. This is generally
/// *not* a cocycle; it agrees with [`eta`] whenever either argument lies in
/// `G'`.
pub fn bilinear_candidate(ctx: &MuContext, mu: &MuParameters) -> Result<Cocycle> {
    let f = mu.functional(ctx.space())?;
    let b = ctx.bilinear(&f);
    let c = Arc::new(ctx.clone());
    Ok(Cocycle::new(&ctx.group, 1, Provenance::FromMu, move |g, h| {
        b(&c.project(g), &c.project(h))
    }))
}

/// `χ̄(α)(x ⊗ y) = α(x, y) - α(y, x)`, rescaled from `Z/p^e` to `Z/p`.
pub fn chi_bar(alpha: &Cocycle, g: &PcPresentation) -> Result<Vec<u64>> {
    if alpha.fingerprint() != g.fingerprint() {
        return Err(Error::PresentationMismatch);
    }
    let t = TensorSpace::for_group(g)?;
    let m = alpha.modulus();
    let scale = m / alpha.p as u64;
    let mut f = vec![0u64; t.dim()];
    for (a, &xa) in t.xs.iter().enumerate() {
        for (b, &yb) in t.ys.iter().enumerate() {
            let x = g.generator(xa).into_exponents();
            let y = g.generator(yb).into_exponents();
            let v = (alpha.eval(&x, &y) + m - alpha.eval(&y, &x)) % m;
            if v % scale != 0 {
                return Err(Error::Certification(format!(
                    "commutator pairing value {v} at {} is not a p-th root of unity",
                    t.basis_label(t.index(a, b))
                )));
            }
            f[t.index(a, b)] = v / scale;
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cocycle_identity_check, CheckMode};

    fn el(g: &PcPresentation, name: &str) -> Vec<u32> {
        g.generator_by_name(name).unwrap().into_exponents()
    }

    #[test]
    fn documented_values_for_mu123() {
        let ctx = MuContext::new(&FamilyId::maxrank_exp_p(3, 3)).unwrap();
        let mut mu = MuParameters::zero(MuFamily::ExpP, 3, 3);
        mu.set((1, 2, 3), 1).unwrap();
        let a = cocycle_from_mu(&ctx, &mu).unwrap();
        let g = &ctx.group;
        assert_eq!(a.eval(&el(g, "x1"), &el(g, "y23")), 1);
        assert_eq!(a.eval(&el(g, "y23"), &el(g, "x1")), 0);
        assert_eq!(a.eval(&el(g, "x3"), &el(g, "y12")), 2);
        assert_eq!(a.eval(&el(g, "x2"), &el(g, "y13")), 0);
        let v = cocycle_identity_check(&a, g, CheckMode::Sampled { n: 2000, seed: 1 }).unwrap();
        assert!(v.pass);
    }

    #[test]
    fn literal_bilinear_form_is_not_a_cocycle() {
        let ctx = MuContext::new(&FamilyId::maxrank_exp_p(3, 3)).unwrap();
        let mut mu = MuParameters::zero(MuFamily::ExpP, 3, 3);
        mu.set((1, 2, 3), 1).unwrap();
        let b = bilinear_candidate(&ctx, &mu).unwrap();
        let g = &ctx.group;
        let v = cocycle_identity_check(&b, g, CheckMode::Generators).unwrap();
        assert!(!v.pass);
        // x1, x3, x2 violates the identity
        let (x, y, z) = (el(g, "x1"), el(g, "x3"), el(g, "x2"));
        let lhs = b.eval(&x, &y) + b.eval(&g.mul_raw(&x, &y), &z);
        let rhs = b.eval(&y, &z) + b.eval(&x, &g.mul_raw(&y, &z));
        assert_ne!(lhs % 3, rhs % 3);
    }

    #[test]
    fn non_invariant_functional_rejected() {
        let ctx = MuContext::new(&FamilyId::maxrank_exp_p(3, 3)).unwrap();
        let mut f = vec![0u64; ctx.space().dim()];
        f[ctx.space().index_by_name("x1", "y23").unwrap()] = 1;
        assert!(matches!(eta(&ctx, &f), Err(Error::NotXInvariant(_))));
        f[ctx.space().index_by_name("x3", "y12").unwrap()] = 2;
        let a = eta(&ctx, &f).unwrap();
        assert_eq!(chi_bar(&a, &ctx.group).unwrap(), f);
    }
}
