use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::cyclo::{CycInt, RootExp};
use super::linear::LinearCharacter;
use super::monomial::MonomialMatrix;
use crate::error::{Error, Result};
use crate::pcgroup::{PcPresentation, SubgroupSpec};

/// Elements of the subgroup spanned by a set of pc-generators, indexed in
/// mixed radix with the first generator varying slowest.
#[derive(Clone, Debug)]
pub struct GenSubset {
    pub gens: Vec<usize>,
    radices: Vec<u32>,
    n: usize,
}

impl GenSubset {
    pub fn new(g: &PcPresentation, mut gens: Vec<usize>) -> Self {
        gens.sort_unstable();
        gens.dedup();
        let radices = gens.iter().map(|&i| g.relative_order(i)).collect();
        GenSubset {
            gens,
            radices,
            n: g.num_generators(),
        }
    }

    pub fn order(&self) -> u128 {
        self.radices.iter().map(|&r| r as u128).product()
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        x.iter().enumerate().all(|(i, &e)| e == 0 || self.gens.binary_search(&i).is_ok())
    }

    pub fn index_of(&self, x: &[u32]) -> usize {
        self.gens
            .iter()
            .zip(&self.radices)
            .fold(0usize, |acc, (&i, &r)| acc * r as usize + x[i] as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> Vec<u32> {
        let mut x = vec![0u32; self.n];
        for (&i, &r) in self.gens.iter().zip(&self.radices).rev() {
            x[i] = (idx % r as usize) as u32;
            idx /= r as usize;
        }
        x
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.order() as usize).map(|i| self.element_at(i))
    }
}

/// A monomial representation of the subgroup spanned by `domain.gens`,
/// given by one matrix per generator.
#[derive(Clone, Debug)]
pub struct MonomialRep {
    pub domain: GenSubset,
    pub q: u32,
    pub matrices: Vec<MonomialMatrix>,
    /// `(H, λ)` with this representation equal to `Ind_H λ` when known.
    pub inducing: Option<LinearCharacter>,
}

impl MonomialRep {
    pub fn degree(&self) -> usize {
        self.matrices.first().map(|m| m.dim()).unwrap_or(1)
    }

    pub fn from_linear(g: &PcPresentation, lambda: &LinearCharacter) -> Result<Self> {
        if !lambda.subgroup.is_generator_subset() {
            return Err(Error::Unsupported("linear character on a subgroup not spanned by pc-generators".into()));
        }
        let domain = GenSubset::new(g, lambda.subgroup.leading_positions());
        let q = lambda.modulus();
        let matrices = lambda
            .values
            .iter()
            .map(|v| MonomialMatrix::scalar(1, q, v.value))
            .collect();
        Ok(MonomialRep {
            domain,
            q,
            matrices,
            inducing: Some(lambda.clone()),
        })
    }

    fn slot(&self, gen: usize) -> Option<usize> {
        self.domain.gens.binary_search(&gen).ok()
    }

    /// `ρ(x)` for `x` in the domain.
    pub fn eval_raw(&self, x: &[u32]) -> Result<MonomialMatrix> {
        if !self.domain.contains(x) {
            return Err(Error::InvalidParameters("element outside the representation's domain".into()));
        }
        let mut acc = MonomialMatrix::identity(self.degree(), self.q);
        for (k, &i) in self.domain.gens.iter().enumerate() {
            if x[i] > 0 {
                acc = acc.mul(&self.matrices[k].pow(x[i] as u64));
            }
        }
        Ok(acc)
    }

    /// Checks every power and commutator relation among the domain generators.
    pub fn verify_relations(&self, g: &PcPresentation) -> Result<()> {
        let gens = &self.domain.gens;
        for (k, &i) in gens.iter().enumerate() {
            let lhs = self.matrices[k].pow(g.relative_order(i) as u64);
            if lhs != self.eval_raw(g.power_relation(i))? {
                return Err(Error::RelationViolated(format!("power relation of {}", g.generators()[i].name)));
            }
            for (l, &j) in gens.iter().enumerate().skip(k + 1) {
                let lhs = self.matrices[l].mul(&self.matrices[k]);
                let mut rhs = self.matrices[k].mul(&self.matrices[l]);
                if let Some(c) = g.commutator_relation(j, i) {
                    rhs = rhs.mul(&self.eval_raw(c)?);
                }
                if lhs != rhs {
                    let names = g.generators();
                    return Err(Error::RelationViolated(format!(
                        "commutator relation [{},{}]",
                        names[j].name, names[i].name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Calls `f(index, ρ(x))` for every element of the domain in index order.
    pub fn for_each_matrix(&self, mut f: impl FnMut(usize, &MonomialMatrix)) {
        fn rec(
            rep: &MonomialRep,
            k: usize,
            acc: MonomialMatrix,
            idx: usize,
            f: &mut dyn FnMut(usize, &MonomialMatrix),
        ) {
            if k == rep.domain.gens.len() {
                f(idx, &acc);
                return;
            }
            let r = rep.domain.radices[k] as usize;
            let mut cur = acc;
            for e in 0..r {
                let next = cur.mul(&rep.matrices[k]);
                rec(rep, k + 1, cur, idx * r + e, f);
                cur = next;
            }
        }
        rec(self, 0, MonomialMatrix::identity(self.degree(), self.q), 0, &mut f);
    }

    /// Character values on the domain in index order.
    pub fn character(&self) -> Vec<CycInt> {
        let mut out = vec![CycInt::zero(self.q); self.domain.order() as usize];
        self.for_each_matrix(|i, m| out[i] = m.trace());
        out
    }

    /// Hash of the character, and of the character composed with `perm`.
    pub(crate) fn character_hashes(&self, perm: &[usize]) -> (u64, u64) {
        let chi = self.character();
        let mut h1 = DefaultHasher::new();
        for c in &chi {
            c.hash(&mut h1);
        }
        let mut h2 = DefaultHasher::new();
        for &j in perm {
            chi[j].hash(&mut h2);
        }
        (h1.finish(), h2.finish())
    }

    /// `⟨χ, χ⟩ = 1`.
    pub fn is_irreducible(&self) -> bool {
        let mut s = CycInt::zero(self.q);
        for c in self.character() {
            s = s.add(&c.mul(&c.conj()));
        }
        s.as_integer() == Some(self.domain.order() as i64)
    }

    /// Scalar by which a central element acts.
    pub fn central_value(&self, z: &[u32]) -> Result<RootExp> {
        let m = self.eval_raw(z)?;
        m.as_scalar()
            .map(|k| RootExp::new(k as i64, self.q))
            .ok_or_else(|| Error::NotIsotypic("central element does not act by a scalar".into()))
    }

    pub fn lift(&self, m: u32) -> MonomialRep {
        MonomialRep {
            domain: self.domain.clone(),
            q: m,
            matrices: self.matrices.iter().map(|a| a.lift(m)).collect(),
            inducing: self.inducing.clone(),
        }
    }
}

/// `n ↦ ρ(t n t^{-1})`.
pub fn conjugate_rep(g: &PcPresentation, rho: &MonomialRep, t: &[u32]) -> Result<MonomialRep> {
    let mut matrices = Vec::with_capacity(rho.matrices.len());
    for &i in &rho.domain.gens {
        let mut s = vec![0u32; g.num_generators()];
        s[i] = 1;
        let c = g.conj_raw(&s, t);
        if !rho.domain.contains(&c) {
            return Err(Error::InvalidParameters("conjugating element does not normalise the domain".into()));
        }
        matrices.push(rho.eval_raw(&c)?);
    }
    Ok(MonomialRep {
        domain: rho.domain.clone(),
        q: rho.q,
        matrices,
        inducing: None,
    })
}

/// Exact equivalence test by comparing characters on every element.
pub fn equivalent(rho: &MonomialRep, sigma: &MonomialRep, budget: u128) -> Result<bool> {
    if rho.domain.gens != sigma.domain.gens {
        return Err(Error::InvalidParameters("representations of different groups".into()));
    }
    let order = rho.domain.order();
    if order > budget {
        return Err(Error::budget("equivalence", order, budget));
    }
    if rho.degree() != sigma.degree() {
        return Ok(false);
    }
    let (a, b) = if rho.q == sigma.q {
        (rho.clone(), sigma.clone())
    } else {
        let m = rho.q.max(sigma.q);
        (rho.lift(m), sigma.lift(m))
    };
    Ok(a.character() == b.character())
}

/// Monomial `T` with `T θ(n) = θ'(n) T` on the generators, normalised so the
/// first basis vector is sent to a vector with exponent 0. Both must act
/// transitively on basis lines (true for irreducible monomial reps).
pub fn monomial_intertwiner(theta: &MonomialRep, theta2: &MonomialRep) -> Option<MonomialMatrix> {
    let n = theta.degree();
    let q = theta.q as i64;
    'candidate: for k in 0..n {
        let mut tau: Vec<Option<u32>> = vec![None; n];
        let mut t = vec![0i64; n];
        tau[0] = Some(k as u32);
        let mut stack = vec![0usize];
        while let Some(j) = stack.pop() {
            let tj = tau[j].expect("assigned") as usize;
            for (a, b) in theta.matrices.iter().zip(&theta2.matrices) {
                // T e_{π_a(j)} must be ζ^{t_j + b_{τ j} - a_j} e_{π_b(τ j)}
                let j2 = a.perm[j] as usize;
                let img = b.perm[tj];
                let val = (t[j] + b.exps[tj] as i64 - a.exps[j] as i64).rem_euclid(q);
                match tau[j2] {
                    None => {
                        tau[j2] = Some(img);
                        t[j2] = val;
                        stack.push(j2);
                    }
                    Some(cur) if cur == img && t[j2] == val => {}
                    Some(_) => continue 'candidate,
                }
            }
        }
        if tau.iter().any(|x| x.is_none()) {
            return None;
        }
        let perm: Vec<u32> = tau.into_iter().map(|x| x.expect("assigned")).collect();
        let mut seen = vec![false; n];
        if perm.iter().any(|&p| std::mem::replace(&mut seen[p as usize], true)) {
            continue;
        }
        return Some(MonomialMatrix {
            q: theta.q,
            perm,
            exps: t.into_iter().map(|v| v as u32).collect(),
        });
    }
    None
}

/// Result of one index-`p` step.
#[derive(Debug)]
pub enum StepOutcome {
    Extended(Vec<MonomialRep>),
    Induced(MonomialRep),
}

/// Signals that a `p`-th root outside `ζ_q` is needed.
#[derive(Debug)]
pub(crate) struct NeedFinerRoot;

/// The `p` extensions of a `θ` with `θ^x ≅ θ` to `⟨N, x⟩`: `ρ(x) = ζ^γ T`
/// with `T` the normalised intertwiner and `γ` the least exponent making
/// `ρ(x)^p = θ(x^p)`; the others are its twists by `ζ^{k q/p}`.
pub(crate) fn extend(g: &PcPresentation, theta: &MonomialRep, x: usize) -> Result<std::result::Result<Vec<MonomialRep>, NeedFinerRoot>> {
    let p = g.prime();
    let n = g.num_generators();
    let mut xv = vec![0u32; n];
    xv[x] = 1;
    let conj = conjugate_rep(g, theta, &xv)?;
    let t = monomial_intertwiner(theta, &conj)
        .ok_or_else(|| Error::Internal("no monomial intertwiner for an invariant representation".into()))?;
    let xp = g.pow_raw(&xv, p as i64);
    let s = t
        .pow(p as u64)
        .mul(&theta.eval_raw(&xp)?.inverse())
        .as_scalar()
        .ok_or_else(|| Error::Internal("T^p θ(x^p)^-1 is not scalar".into()))?;
    let q = theta.q;
    let minus_s = (q - s) % q;
    if minus_s % p != 0 {
        return Ok(Err(NeedFinerRoot));
    }
    let gamma = minus_s / p;
    let domain = GenSubset::new(g, theta.domain.gens.iter().copied().chain([x]).collect());
    let mut out = Vec::with_capacity(p as usize);
    for k in 0..p {
        let rx = t.scaled(gamma + k * (q / p));
        let matrices = domain
            .gens
            .iter()
            .map(|&i| if i == x { rx.clone() } else { theta.matrices[theta.slot(i).expect("old generator")].clone() })
            .collect();
        out.push(MonomialRep {
            domain: domain.clone(),
            q,
            matrices,
            inducing: None,
        });
    }
    Ok(Ok(out))
}

/// `Ind_N^{⟨N,x⟩} θ` on the basis `x^i ⊗ v`, `0 ≤ i < p`.
pub(crate) fn induce_step(g: &PcPresentation, theta: &MonomialRep, x: usize) -> Result<MonomialRep> {
    let p = g.prime() as usize;
    let n = g.num_generators();
    let d = theta.degree();
    let mut xv = vec![0u32; n];
    xv[x] = 1;
    let domain = GenSubset::new(g, theta.domain.gens.iter().copied().chain([x]).collect());
    let conjugates: Vec<MonomialRep> = (0..p)
        .map(|i| conjugate_rep(g, theta, &g.pow_raw(&xv, -(i as i64))))
        .collect::<Result<_>>()?;
    let theta_xp = theta.eval_raw(&g.pow_raw(&xv, p as i64))?;
    let mut matrices = Vec::with_capacity(domain.gens.len());
    for &i in &domain.gens {
        if i == x {
            let mut perm = vec![0u32; p * d];
            let mut exps = vec![0u32; p * d];
            for b in 0..p {
                for j in 0..d {
                    let (to, e) = if b + 1 < p {
                        ((b + 1) * d + j, 0)
                    } else {
                        (theta_xp.perm[j] as usize, theta_xp.exps[j])
                    };
                    perm[b * d + j] = to as u32;
                    exps[b * d + j] = e;
                }
            }
            matrices.push(MonomialMatrix { q: theta.q, perm, exps });
        } else {
            let k = theta.slot(i).expect("old generator");
            let blocks: Vec<MonomialMatrix> = conjugates.iter().map(|c| c.matrices[k].clone()).collect();
            matrices.push(MonomialMatrix::direct_sum(&blocks));
        }
    }
    Ok(MonomialRep {
        domain,
        q: theta.q,
        matrices,
        inducing: theta.inducing.clone(),
    })
}

/// One step of the ladder for a single `θ ∈ Irr(N)`, `N` of index `p` in
/// `⟨N, x⟩`: the `p` extensions when `θ` is `x`-invariant, else the induced
/// representation.
pub fn extend_or_induce(g: &PcPresentation, theta: &MonomialRep, x: usize, budget: u128) -> Result<StepOutcome> {
    let mut xv = vec![0u32; g.num_generators()];
    xv[x] = 1;
    let conj = conjugate_rep(g, theta, &xv)?;
    if equivalent(theta, &conj, budget)? {
        match extend(g, theta, x)? {
            Ok(v) => Ok(StepOutcome::Extended(v)),
            Err(NeedFinerRoot) => {
                let lifted = theta.lift(theta.q * g.prime());
                match extend(g, &lifted, x)? {
                    Ok(v) => Ok(StepOutcome::Extended(v)),
                    Err(NeedFinerRoot) => Err(Error::Internal("extension needs an unexpected root of unity".into())),
                }
            }
        }
    } else {
        Ok(StepOutcome::Induced(induce_step(g, theta, x)?))
    }
}

/// `Ind_H^G λ` for an arbitrary subgroup `H` of `p`-power index, on the
/// transversal of least-index coset representatives.
pub fn induce(g: &PcPresentation, lambda: &LinearCharacter, budget: u128) -> Result<MonomialRep> {
    let h = &lambda.subgroup;
    let order = g.group_order()?;
    if order > budget {
        return Err(Error::budget("induction", order, budget));
    }
    let n = order as usize;
    let q = lambda.modulus();
    let mut h_elems = vec![g.identity().into_exponents()];
    for (gen, pos) in h.generators(g).iter().zip(h.leading_positions()) {
        let r = g.relative_order(pos);
        let mut next = Vec::with_capacity(h_elems.len() * r as usize);
        for k in 0..r {
            let gk = g.pow_raw(gen.exponents(), k as i64);
            next.extend(h_elems.iter().map(|a| g.mul_raw(a, &gk)));
        }
        h_elems = next;
    }
    let mut coset = vec![usize::MAX; n];
    let mut reps: Vec<Vec<u32>> = Vec::new();
    for i in 0..n {
        if coset[i] != usize::MAX {
            continue;
        }
        let y = g.element_at(i);
        for hh in &h_elems {
            coset[g.index_of(&g.mul_raw(&y, hh))] = reps.len();
        }
        reps.push(y);
    }
    let d = reps.len();
    let mut matrices = Vec::with_capacity(g.num_generators());
    for i in 0..g.num_generators() {
        let gi = g.generator(i).into_exponents();
        let mut perm = vec![0u32; d];
        let mut exps = vec![0u32; d];
        for (k, t) in reps.iter().enumerate() {
            let gt = g.mul_raw(&gi, t);
            let l = coset[g.index_of(&gt)];
            let hh = g.mul_raw(&g.inverse_raw(&reps[l]), &gt);
            perm[k] = l as u32;
            exps[k] = lambda.eval_raw(g, &hh)?.value;
        }
        matrices.push(MonomialMatrix { q, perm, exps });
    }
    let rep = MonomialRep {
        domain: GenSubset::new(g, (0..g.num_generators()).collect()),
        q,
        matrices,
        inducing: Some(lambda.clone()),
    };
    rep.verify_relations(g)?;
    Ok(rep)
}

/// Subgroup spanned by the generators of a representation's domain.
pub fn domain_subgroup(g: &PcPresentation, rho: &MonomialRep) -> SubgroupSpec {
    SubgroupSpec::from_generator_indices(g, &rho.domain.gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, FamilyId};
    use crate::reps::linear::linear_characters;

    fn heis() -> PcPresentation {
        families::build(&FamilyId::heis(3)).unwrap()
    }

    #[test]
    fn heisenberg_degree_three_by_induction() {
        let g = heis();
        // ⟨x2, y12⟩ with λ(y12) = ζ_3
        let h = SubgroupSpec::from_generator_indices(&g, &[1, 2]);
        let lambda = LinearCharacter::new(&g, h, vec![RootExp::new(0, 3), RootExp::new(1, 3)]).unwrap();
        let rho = induce(&g, &lambda, 1000).unwrap();
        assert_eq!(rho.degree(), 3);
        assert!(rho.is_irreducible());
        let whole = SubgroupSpec::from_generator_indices(&g, &[0, 1, 2]);
        let triv = LinearCharacter::new(&g, whole, vec![RootExp::new(1, 3), RootExp::new(0, 3), RootExp::new(0, 3)]).unwrap();
        let lin = induce(&g, &triv, 1000).unwrap();
        assert_eq!(lin.degree(), 1);
        assert_eq!(lin.matrices[0].exps, vec![1]);
    }

    #[test]
    fn two_degree_three_irreducibles_are_inequivalent() {
        let g = heis();
        let h = SubgroupSpec::from_generator_indices(&g, &[1, 2]);
        let mk = |k| {
            let l = LinearCharacter::new(&g, h.clone(), vec![RootExp::new(0, 3), RootExp::new(k, 3)]).unwrap();
            induce(&g, &l, 1000).unwrap()
        };
        let (a, b) = (mk(1), mk(2));
        assert!(equivalent(&a, &a, 1000).unwrap());
        assert!(!equivalent(&a, &b, 1000).unwrap());
        let y = g.generator(2).into_exponents();
        let c = conjugate_rep(&g, &a, &y).unwrap();
        assert_eq!(c.character(), a.character());
        let x1 = g.generator(0).into_exponents();
        let c = conjugate_rep(&g, &a, &x1).unwrap();
        assert!(equivalent(&a, &c, 1000).unwrap());
    }

    #[test]
    fn bottom_step_of_heisenberg() {
        let g = heis();
        let n = SubgroupSpec::from_generator_indices(&g, &[1, 2]);
        let chars = linear_characters(&g, &n, 3);
        let mut degrees = Vec::new();
        for l in &chars {
            let theta = MonomialRep::from_linear(&g, l).unwrap();
            match extend_or_induce(&g, &theta, 0, 1000).unwrap() {
                StepOutcome::Extended(v) => {
                    for r in &v {
                        r.verify_relations(&g).unwrap();
                    }
                    degrees.extend(v.iter().map(|r| r.degree()));
                }
                StepOutcome::Induced(r) => {
                    r.verify_relations(&g).unwrap();
                    assert!(r.is_irreducible());
                    degrees.push(r.degree());
                }
            }
        }
        // 3 invariant characters give 9 linear; 6 others give 6 inductions (2 orbits counted thrice)
        assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 9);
        assert_eq!(degrees.iter().filter(|&&d| d == 3).count(), 6);
    }

    #[test]
    fn intertwiner_of_conjugate() {
        let g = heis();
        let h = SubgroupSpec::from_generator_indices(&g, &[1, 2]);
        let l = LinearCharacter::new(&g, h, vec![RootExp::new(2, 3), RootExp::new(1, 3)]).unwrap();
        let a = induce(&g, &l, 1000).unwrap();
        let x2 = g.generator(1).into_exponents();
        let c = conjugate_rep(&g, &a, &x2).unwrap();
        let t = monomial_intertwiner(&a, &c).unwrap();
        for (m, mc) in a.matrices.iter().zip(&c.matrices) {
            assert_eq!(t.mul(m), mc.mul(&t));
        }
    }
}
