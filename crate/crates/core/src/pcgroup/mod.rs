//! Finite p-groups given by power-commutator presentations.
//!
//! A presentation lists generators `g_0 .. g_{n-1}` with relative orders,
//! power relations `g_i^{r_i} = w_i` and commutator relations
//! `[g_j, g_i] = w_ji` (`j > i`), where every right-hand side only involves
//! generators of larger index. Omitted relations are trivial. Every element
//! then has a unique normal form `g_0^{e_0} ... g_{n-1}^{e_{n-1}}` with
//! `0 <= e_i < r_i`, which [`PcPresentation::collect`] computes.
//!
//! The commutator convention is `[a, b] = a^-1 b^-1 a b`, so that
//! `g_j g_i = g_i g_j [g_j, g_i]`.

mod classes;
mod consistency;
mod homomorphism;
mod quotient;
mod serial;
mod structure;
mod subgroup;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use classes::ConjugacyClass;
pub use consistency::ConsistencyReport;
pub use homomorphism::HomVerdict;
pub use serial::{GeneratorJson, PresentationJson};
pub use structure::Structure;
pub use subgroup::SubgroupSpec;

/// A word as `(generator index, exponent)` pairs; exponents may be negative.
pub type Word = Vec<(usize, i64)>;

/// Default enumeration budget: `3^8` elements.
pub const DEFAULT_BUDGET: u128 = 6561;

/// Enumeration budget, honouring `PROJREP_BUDGET_LOG3` when set.
pub fn default_budget() -> u128 {
    std::env::var("PROJREP_BUDGET_LOG3")
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map(|k| 3u128.pow(k))
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub rel_order: u32,
    /// Weight tag: 1 for "x"-type, 2 for "y"-type, 3 for "z"-type generators.
    pub depth: u8,
}

/// An element in normal form, tagged with the fingerprint of its presentation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    group: u64,
    exps: Vec<u32>,
}

impl Element {
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn fingerprint(&self) -> u64 {
        self.group
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// A power-commutator presentation with precomputed collection tables.
pub struct PcPresentation {
    p: u32,
    gens: Vec<Generator>,
    /// Normal form of `g_i^{r_i}`.
    power: Vec<Vec<u32>>,
    /// `comm[j][i]` (j > i) is the normal form of `[g_j, g_i]`, `None` when trivial.
    comm: Vec<Vec<Option<Vec<u32>>>>,
    power_letters: Vec<Vec<(usize, u32)>>,
    comm_letters: Vec<Vec<Vec<(usize, u32)>>>,
    inv_gen: Vec<Vec<u32>>,
    fingerprint: u64,
    consistency: OnceLock<ConsistencyReport>,
}

impl Clone for PcPresentation {
    fn clone(&self) -> Self {
        let consistency = OnceLock::new();
        if let Some(r) = self.consistency.get() {
            let _ = consistency.set(r.clone());
        }
        PcPresentation {
            p: self.p,
            gens: self.gens.clone(),
            power: self.power.clone(),
            comm: self.comm.clone(),
            power_letters: self.power_letters.clone(),
            comm_letters: self.comm_letters.clone(),
            inv_gen: self.inv_gen.clone(),
            fingerprint: self.fingerprint,
            consistency,
        }
    }
}

impl fmt::Debug for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PcPresentation")
            .field("p", &self.p)
            .field("generators", &self.gens.iter().map(|g| &g.name).collect::<Vec<_>>())
            .finish()
    }
}

impl PartialEq for PcPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.gens == other.gens && self.power == other.power && self.comm == other.comm
    }
}

fn letters(exps: &[u32]) -> Vec<(usize, u32)> {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| (i, e))
        .collect()
}

/// Builder for presentations; relations may be given with arbitrary words,
/// they are normalised from the bottom generator upwards on `build`.
#[derive(Clone, Debug)]
pub struct PresentationBuilder {
    p: u32,
    gens: Vec<Generator>,
    powers: HashMap<usize, Word>,
    comms: HashMap<(usize, usize), Word>,
}

impl PresentationBuilder {
    pub fn new(p: u32) -> Self {
        PresentationBuilder {
            p,
            gens: Vec::new(),
            powers: HashMap::new(),
            comms: HashMap::new(),
        }
    }

    /// Adds a generator of relative order p.
    pub fn generator(&mut self, name: impl Into<String>, depth: u8) -> usize {
        let p = self.p;
        self.generator_with_order(name, depth, p)
    }

    pub fn generator_with_order(&mut self, name: impl Into<String>, depth: u8, rel_order: u32) -> usize {
        self.gens.push(Generator {
            name: name.into(),
            rel_order,
            depth,
        });
        self.gens.len() - 1
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    /// `g_i^{rel_order} = word`.
    pub fn power(&mut self, i: usize, word: Word) -> &mut Self {
        self.powers.insert(i, word);
        self
    }

    /// `[g_a, g_b] = word`, for either order of `a` and `b`.
    pub fn commutator(&mut self, a: usize, b: usize, word: Word) -> &mut Self {
        self.comms.insert((a, b), word);
        self
    }

    pub fn build(&self) -> Result<PcPresentation> {
        let n = self.gens.len();
        let p = self.p;
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidPresentation(format!("prime must be odd, got {p}")));
        }
        for g in &self.gens {
            if g.rel_order < 2 || !is_power_of(g.rel_order, p) {
                return Err(Error::InvalidPresentation(format!(
                    "relative order of {} must be a power of {p}",
                    g.name
                )));
            }
        }
        let check_word = |w: &Word, above: usize, what: &str| -> Result<()> {
            for &(g, _) in w {
                if g >= n {
                    return Err(Error::InvalidPresentation(format!("{what}: generator index {g} out of range")));
                }
                if g <= above {
                    return Err(Error::InvalidPresentation(format!(
                        "{what}: right-hand side mentions {} which is not above the left-hand side",
                        self.gens[g].name
                    )));
                }
            }
            Ok(())
        };
        for (&i, w) in &self.powers {
            if i >= n {
                return Err(Error::InvalidPresentation(format!("power relation for unknown generator {i}")));
            }
            check_word(w, i, &format!("power of {}", self.gens[i].name))?;
        }
        for (&(a, b), w) in &self.comms {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidPresentation(format!("bad commutator indices ({a},{b})")));
            }
            check_word(w, a.max(b), &format!("[{},{}]", self.gens[a].name, self.gens[b].name))?;
        }

        let mut pres = PcPresentation {
            p,
            gens: self.gens.clone(),
            power: vec![vec![0; n]; n],
            comm: (0..n).map(|j| vec![None; j]).collect(),
            power_letters: vec![Vec::new(); n],
            comm_letters: (0..n).map(|j| vec![Vec::new(); j]).collect(),
            inv_gen: vec![vec![0; n]; n],
            fingerprint: 0,
            consistency: OnceLock::new(),
        };
        for i in (0..n).rev() {
            if let Some(w) = self.powers.get(&i) {
                let e = pres.collect_raw(w);
                pres.power_letters[i] = letters(&e);
                pres.power[i] = e;
            }
            for j in i + 1..n {
                let e = if let Some(w) = self.comms.get(&(j, i)) {
                    Some(pres.collect_raw(w))
                } else if let Some(w) = self.comms.get(&(i, j)) {
                    let e = pres.collect_raw(w);
                    Some(pres.inverse_raw(&e))
                } else {
                    None
                };
                let e = e.filter(|e| e.iter().any(|&x| x != 0));
                pres.comm_letters[j][i] = e.as_deref().map(letters).unwrap_or_default();
                pres.comm[j][i] = e;
            }
            let mut gi = vec![0; n];
            gi[i] = 1;
            pres.inv_gen[i] = pres.inverse_raw(&gi);
        }
        pres.fingerprint = pres.compute_fingerprint();
        Ok(pres)
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn is_power_of(mut n: u32, p: u32) -> bool {
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

impl PcPresentation {
    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn relative_order(&self, i: usize) -> u32 {
        self.gens[i].rel_order
    }

    /// Normal form of `g_i^{r_i}`.
    pub fn power_relation(&self, i: usize) -> &[u32] {
        &self.power[i]
    }

    /// Normal form of `[g_j, g_i]` for `j > i`; `None` if trivial.
    pub fn commutator_relation(&self, j: usize, i: usize) -> Option<&[u32]> {
        self.comm[j][i].as_deref()
    }

    fn compute_fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.p.hash(&mut h);
        self.gens.hash(&mut h);
        self.power.hash(&mut h);
        self.comm.hash(&mut h);
        h.finish()
    }

    pub(crate) fn wrap(&self, exps: Vec<u32>) -> Element {
        Element {
            group: self.fingerprint,
            exps,
        }
    }

    pub fn identity(&self) -> Element {
        self.wrap(vec![0; self.gens.len()])
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut e = vec![0; self.gens.len()];
        e[i] = 1;
        self.wrap(e)
    }

    pub fn generator_by_name(&self, name: &str) -> Option<Element> {
        self.generator_index(name).map(|i| self.generator(i))
    }

    /// Builds an element from an exponent vector, validating ranges.
    pub fn element(&self, exps: &[u32]) -> Result<Element> {
        if exps.len() != self.gens.len() {
            return Err(Error::PresentationMismatch);
        }
        for (i, &e) in exps.iter().enumerate() {
            if e >= self.gens[i].rel_order {
                return Err(Error::InvalidParameters(format!(
                    "exponent {e} of {} out of range",
                    self.gens[i].name
                )));
            }
        }
        Ok(self.wrap(exps.to_vec()))
    }

    fn check(&self, a: &Element) -> Result<()> {
        if a.group != self.fingerprint {
            Err(Error::PresentationMismatch)
        } else {
            Ok(())
        }
    }

    /// Collection from the left: normal form of a word.
    pub fn collect(&self, word: &[(usize, i64)]) -> Result<Element> {
        for &(g, _) in word {
            if g >= self.gens.len() {
                return Err(Error::InvalidParameters(format!("generator index {g} out of range")));
            }
        }
        Ok(self.wrap(self.collect_raw(word)))
    }

    pub(crate) fn collect_raw(&self, word: &[(usize, i64)]) -> Vec<u32> {
        let mut e = vec![0u32; self.gens.len()];
        let mut stack = Vec::new();
        for &(g, k) in word.iter().rev() {
            push_signed(self, &mut stack, g, k);
        }
        self.run(&mut e, &mut stack);
        e
    }

    /// Multiplies `e` on the right by the letters on `stack` (processed LIFO).
    fn run(&self, e: &mut [u32], stack: &mut Vec<(usize, u32)>) {
        while let Some((g, c)) = stack.pop() {
            if c == 0 {
                continue;
            }
            let rel = self.gens[g].rel_order;
            let tail_empty = e[g + 1..].iter().all(|&x| x == 0);
            if tail_empty {
                let total = e[g] + c;
                e[g] = total % rel;
                for _ in 0..total / rel {
                    push_letters_rev(stack, &self.power_letters[g]);
                }
                continue;
            }
            // one letter of g; the tail is conjugated past it
            if c > 1 {
                stack.push((g, c - 1));
            }
            for j in (g + 1..e.len()).rev() {
                let ej = e[j];
                if ej == 0 {
                    continue;
                }
                e[j] = 0;
                let cw = &self.comm_letters[j][g];
                if cw.is_empty() {
                    stack.push((j, ej));
                } else {
                    for _ in 0..ej {
                        push_letters_rev(stack, cw);
                        stack.push((j, 1));
                    }
                }
            }
            e[g] += 1;
            if e[g] == rel {
                e[g] = 0;
                push_letters_rev(stack, &self.power_letters[g]);
            }
        }
    }

    pub(crate) fn mul_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut e = a.to_vec();
        let mut stack: Vec<(usize, u32)> = Vec::new();
        for (i, &x) in b.iter().enumerate().rev() {
            if x != 0 {
                stack.push((i, x));
            }
        }
        self.run(&mut e, &mut stack);
        e
    }

    pub(crate) fn inverse_raw(&self, a: &[u32]) -> Vec<u32> {
        let n = a.len();
        let mut cur = a.to_vec();
        let mut r = vec![0u32; n];
        while let Some(i) = cur.iter().position(|&x| x != 0) {
            let k = self.gens[i].rel_order - cur[i];
            let mut stack = vec![(i, k)];
            self.run(&mut cur, &mut stack);
            let mut stack = vec![(i, k)];
            self.run(&mut r, &mut stack);
        }
        r
    }

    pub(crate) fn pow_raw(&self, a: &[u32], k: i64) -> Vec<u32> {
        let base = if k < 0 { self.inverse_raw(a) } else { a.to_vec() };
        let mut k = k.unsigned_abs();
        let mut acc = vec![0u32; a.len()];
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_raw(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul_raw(&sq, &sq);
            }
        }
        acc
    }

    pub(crate) fn comm_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let ai = self.inverse_raw(a);
        let bi = self.inverse_raw(b);
        let ab = self.mul_raw(a, b);
        let t = self.mul_raw(&ai, &bi);
        self.mul_raw(&t, &ab)
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.mul_raw(&a.exps, &b.exps)))
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.wrap(self.inverse_raw(&a.exps)))
    }

    pub fn power(&self, a: &Element, k: i64) -> Result<Element> {
        self.check(a)?;
        Ok(self.wrap(self.pow_raw(&a.exps, k)))
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.comm_raw(&a.exps, &b.exps)))
    }

    /// Conjugate `t a t^-1`.
    pub fn conjugate(&self, a: &Element, t: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(t)?;
        Ok(self.wrap(self.conj_raw(&a.exps, &t.exps)))
    }

    pub(crate) fn conj_raw(&self, a: &[u32], t: &[u32]) -> Vec<u32> {
        let ti = self.inverse_raw(t);
        self.mul_raw(&self.mul_raw(t, a), &ti)
    }

    pub fn element_order(&self, a: &Element) -> Result<u64> {
        self.check(a)?;
        Ok(self.order_raw(&a.exps))
    }

    pub(crate) fn order_raw(&self, a: &[u32]) -> u64 {
        let mut k = 1u64;
        let mut cur = a.to_vec();
        while cur.iter().any(|&x| x != 0) {
            cur = self.pow_raw(&cur, self.p as i64);
            k *= self.p as u64;
        }
        k
    }

    /// The word of an element's normal form.
    pub fn word_of(&self, a: &Element) -> Word {
        a.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e as i64))
            .collect()
    }

    /// Product of relative orders; requires a passing consistency check.
    pub fn group_order(&self) -> Result<u128> {
        if !self.consistency_check().is_consistent() {
            return Err(Error::NotConsistent);
        }
        Ok(self.order_unchecked())
    }

    pub(crate) fn order_unchecked(&self) -> u128 {
        self.gens.iter().map(|g| g.rel_order as u128).product()
    }

    /// log_p of the group order.
    pub fn order_log_p(&self) -> u32 {
        let mut n = self.order_unchecked();
        let mut k = 0;
        while n > 1 {
            n /= self.p as u128;
            k += 1;
        }
        k
    }

    /// Mixed-radix index of an element (lexicographic on exponents).
    pub fn index_of(&self, exps: &[u32]) -> usize {
        let mut idx = 0usize;
        for (i, &e) in exps.iter().enumerate() {
            idx = idx * self.gens[i].rel_order as usize + e as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> Vec<u32> {
        let n = self.gens.len();
        let mut e = vec![0; n];
        for i in (0..n).rev() {
            let r = self.gens[i].rel_order as usize;
            e[i] = (idx % r) as u32;
            idx /= r;
        }
        e
    }

    /// Iterates over all elements in lexicographic exponent order.
    pub fn enumerate_elements(&self, budget: u128) -> Result<impl Iterator<Item = Element> + '_> {
        let order = self.group_order()?;
        if order > budget {
            return Err(Error::budget("enumeration", order, budget));
        }
        Ok((0..order as usize).map(move |i| self.wrap(self.element_at(i))))
    }

    pub(crate) fn all_elements_raw(&self, budget: u128) -> Result<Vec<Vec<u32>>> {
        let order = self.order_unchecked();
        if order > budget {
            return Err(Error::budget("enumeration", order, budget));
        }
        Ok((0..order as usize).map(|i| self.element_at(i)).collect())
    }

    /// Human readable form such as `x1^2*y12`.
    pub fn format_element(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.gens[i].name.clone()
                } else {
                    format!("{}^{}", self.gens[i].name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn push_signed(pres: &PcPresentation, stack: &mut Vec<(usize, u32)>, g: usize, k: i64) {
    if k >= 0 {
        stack.push((g, k as u32));
    } else {
        let inv = &pres.inv_gen[g];
        for _ in 0..k.unsigned_abs() {
            for (i, &x) in inv.iter().enumerate().rev() {
                if x != 0 {
                    stack.push((i, x));
                }
            }
        }
    }
}

fn push_letters_rev(stack: &mut Vec<(usize, u32)>, w: &[(usize, u32)]) {
    for &l in w.iter().rev() {
        stack.push(l);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// G(exp p, d=3) with generators x1 x2 x3 y12 y13 y23.
    fn maxrank3(p: u32) -> PcPresentation {
        let mut b = PresentationBuilder::new(p);
        let x: Vec<usize> = (1..=3).map(|i| b.generator(format!("x{i}"), 1)).collect();
        let y12 = b.generator("y12", 2);
        let y13 = b.generator("y13", 2);
        let y23 = b.generator("y23", 2);
        b.commutator(x[0], x[1], vec![(y12, 1)]);
        b.commutator(x[0], x[2], vec![(y13, 1)]);
        b.commutator(x[1], x[2], vec![(y23, 1)]);
        b.build().unwrap()
    }

    #[test]
    fn empty_word_is_identity() {
        let g = maxrank3(3);
        assert!(g.collect(&[]).unwrap().is_identity());
    }

    #[test]
    fn swap_produces_inverse_commutator() {
        let g = maxrank3(3);
        let e = g.collect(&[(1, 1), (0, 1)]).unwrap();
        assert_eq!(e.exponents(), &[1, 1, 0, 2, 0, 0]);
    }

    #[test]
    fn inverse_and_identity() {
        let g = maxrank3(5);
        let a = g.collect(&[(2, 3), (0, 2), (1, -1), (4, 2)]).unwrap();
        let ai = g.inverse(&a).unwrap();
        assert!(g.multiply(&a, &ai).unwrap().is_identity());
        assert!(g.multiply(&ai, &a).unwrap().is_identity());
        assert_eq!(g.multiply(&g.identity(), &a).unwrap(), a);
    }

    #[test]
    fn commutator_matches_definition() {
        let g = maxrank3(3);
        let c = g.commutator(&g.generator(0), &g.generator(1)).unwrap();
        assert_eq!(c, g.generator(3));
    }

    #[test]
    fn mismatch_is_reported() {
        let g = maxrank3(3);
        let h = maxrank3(5);
        assert_eq!(g.multiply(&g.generator(0), &h.generator(0)), Err(Error::PresentationMismatch));
    }

    #[test]
    fn rhs_must_be_higher() {
        let mut b = PresentationBuilder::new(3);
        let a = b.generator("a", 1);
        let c = b.generator("c", 1);
        b.commutator(a, c, vec![(a, 1)]);
        assert!(matches!(b.build(), Err(Error::InvalidPresentation(_))));
    }

    #[test]
    fn element_orders() {
        let g = maxrank3(3);
        assert_eq!(g.element_order(&g.identity()).unwrap(), 1);
        assert_eq!(g.element_order(&g.generator(0)).unwrap(), 3);
    }
}
