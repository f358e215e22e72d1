use super::{Element, PcPresentation};
use crate::error::{Error, Result};

/// A subgroup held as an induced polycyclic sequence: one generator per
/// leading position, each with leading exponent 1. Membership is decided by
/// sifting; the order is the product of the relative orders at the leading
/// positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    /// `(leading position, element)` sorted by position.
    seq: Vec<(usize, Vec<u32>)>,
    group: u64,
    /// Whether the generators handed in were all central.
    pub central: Option<bool>,
    /// Whether the subgroup lies in the derived subgroup.
    pub derived_contained: Option<bool>,
}

fn depth(e: &[u32]) -> Option<usize> {
    e.iter().position(|&x| x != 0)
}

fn inv_mod(a: u32, m: u32) -> u32 {
    (1..m).find(|&x| (a as u64 * x as u64) % m as u64 == 1).unwrap_or(1)
}

impl SubgroupSpec {
    pub fn trivial(g: &PcPresentation) -> Self {
        SubgroupSpec {
            seq: Vec::new(),
            group: g.fingerprint(),
            central: Some(true),
            derived_contained: Some(true),
        }
    }

    /// Subgroup generated by the given elements.
    pub fn generated(g: &PcPresentation, gens: &[Element]) -> Result<Self> {
        for e in gens {
            if e.fingerprint() != g.fingerprint() {
                return Err(Error::PresentationMismatch);
            }
        }
        let raw: Vec<Vec<u32>> = gens.iter().map(|e| e.exponents().to_vec()).collect();
        Ok(Self::from_raw(g, &raw, false))
    }

    /// Normal closure of the given elements.
    pub fn normal_closure(g: &PcPresentation, gens: &[Element]) -> Result<Self> {
        let raw: Vec<Vec<u32>> = gens.iter().map(|e| e.exponents().to_vec()).collect();
        Ok(Self::from_raw(g, &raw, true))
    }

    /// Subgroup generated by a set of pc-generators.
    pub fn from_generator_indices(g: &PcPresentation, idx: &[usize]) -> Self {
        let raw: Vec<Vec<u32>> = idx.iter().map(|&i| g.generator(i).into_exponents()).collect();
        Self::from_raw(g, &raw, false)
    }

    pub(crate) fn from_raw(g: &PcPresentation, gens: &[Vec<u32>], normal: bool) -> Self {
        let mut s = SubgroupSpec::trivial(g);
        s.central = None;
        s.derived_contained = None;
        let mut queue: Vec<Vec<u32>> = gens.to_vec();
        let n = g.num_generators();
        while let Some(x) = queue.pop() {
            let Some(new) = s.sift_insert(g, x) else { continue };
            queue.push(g.pow_raw(&new, g.prime() as i64));
            for (_, h) in &s.seq {
                queue.push(g.comm_raw(&new, h));
            }
            if normal {
                for i in 0..n {
                    let mut gi = vec![0u32; n];
                    gi[i] = 1;
                    queue.push(g.comm_raw(&new, &gi));
                }
            }
        }
        s
    }

    /// Sifts `x`; if a nontrivial remainder is left it is normalised,
    /// inserted and returned.
    fn sift_insert(&mut self, g: &PcPresentation, x: Vec<u32>) -> Option<Vec<u32>> {
        let r = self.sift(g, x);
        let d = depth(&r)?;
        let m = g.relative_order(d);
        let lead = r[d];
        let r = if lead == 1 {
            r
        } else {
            g.pow_raw(&r, inv_mod(lead, m) as i64)
        };
        let pos = self.seq.partition_point(|(k, _)| *k < d);
        self.seq.insert(pos, (d, r.clone()));
        Some(r)
    }

    /// Exponents `a_i` with `x = h_m^{a_m} ... h_1^{a_1}` over the induced
    /// sequence, or `None` if `x` is not in the subgroup.
    pub(crate) fn coordinates(&self, g: &PcPresentation, x: &[u32]) -> Option<Vec<u32>> {
        let mut x = x.to_vec();
        let mut out = vec![0u32; self.seq.len()];
        for (k, (d, h)) in self.seq.iter().enumerate() {
            match depth(&x) {
                None => break,
                Some(dx) if dx > *d => continue,
                Some(dx) if dx < *d => return None,
                Some(_) => {
                    let a = x[*d];
                    out[k] = a;
                    x = g.mul_raw(&x, &g.pow_raw(h, -(a as i64)));
                }
            }
        }
        depth(&x).is_none().then_some(out)
    }

    fn sift(&self, g: &PcPresentation, mut x: Vec<u32>) -> Vec<u32> {
        for (d, h) in &self.seq {
            match depth(&x) {
                None => break,
                Some(dx) if dx > *d => continue,
                Some(dx) if dx < *d => break,
                Some(_) => {
                    let a = x[*d];
                    let hinv = g.pow_raw(h, -(a as i64));
                    x = g.mul_raw(&x, &hinv);
                }
            }
        }
        x
    }

    pub fn contains(&self, g: &PcPresentation, x: &Element) -> bool {
        self.contains_raw(g, x.exponents())
    }

    pub(crate) fn contains_raw(&self, g: &PcPresentation, x: &[u32]) -> bool {
        depth(&self.sift(g, x.to_vec())).is_none()
    }

    pub fn order(&self, g: &PcPresentation) -> u128 {
        self.seq.iter().map(|(d, _)| g.relative_order(*d) as u128).product()
    }

    pub fn order_log_p(&self) -> usize {
        self.seq.len()
    }

    pub fn generators(&self, g: &PcPresentation) -> Vec<Element> {
        self.seq.iter().map(|(_, e)| g.wrap(e.clone())).collect()
    }

    pub(crate) fn raw_generators(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.seq.iter().map(|(_, e)| e)
    }

    /// Leading positions of the induced sequence.
    pub fn leading_positions(&self) -> Vec<usize> {
        self.seq.iter().map(|(d, _)| *d).collect()
    }

    pub fn is_subgroup_of(&self, g: &PcPresentation, other: &SubgroupSpec) -> bool {
        self.seq.iter().all(|(_, e)| other.contains_raw(g, e))
    }

    pub fn is_central(&self, g: &PcPresentation) -> bool {
        let n = g.num_generators();
        self.seq.iter().all(|(_, e)| {
            (0..n).all(|i| {
                let mut gi = vec![0u32; n];
                gi[i] = 1;
                g.comm_raw(e, &gi).iter().all(|&x| x == 0)
            })
        })
    }

    pub fn is_abelian(&self, g: &PcPresentation) -> bool {
        self.seq
            .iter()
            .all(|(_, a)| self.seq.iter().all(|(_, b)| g.comm_raw(a, b).iter().all(|&x| x == 0)))
    }

    /// Whether the pc-generators at the leading positions generate the subgroup
    /// with trivial sequence tails, i.e. the subgroup is spanned by pc-generators.
    pub fn is_generator_subset(&self) -> bool {
        self.seq
            .iter()
            .all(|(d, e)| e.iter().enumerate().all(|(i, &x)| if i == *d { x == 1 } else { x == 0 }))
    }
}

impl PcPresentation {
    /// Derived subgroup: normal closure of the commutators of pc-generators.
    pub fn derived_subgroup(&self) -> SubgroupSpec {
        let n = self.num_generators();
        let mut gens = Vec::new();
        for j in 0..n {
            for i in 0..j {
                if let Some(c) = &self.comm[j][i] {
                    gens.push(c.clone());
                }
            }
        }
        SubgroupSpec::from_raw(self, &gens, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::PresentationBuilder;

    #[test]
    fn heisenberg_subgroups() {
        let mut b = PresentationBuilder::new(3);
        let x1 = b.generator("x1", 1);
        let x2 = b.generator("x2", 1);
        let y = b.generator("y12", 2);
        b.commutator(x1, x2, vec![(y, 1)]);
        let g = b.build().unwrap();
        let d = g.derived_subgroup();
        assert_eq!(d.order(&g), 3);
        assert!(d.is_central(&g));
        let s = SubgroupSpec::generated(&g, &[g.generator(0), g.generator(1)]).unwrap();
        assert_eq!(s.order(&g), 27);
        let m = SubgroupSpec::from_generator_indices(&g, &[1, 2]);
        assert_eq!(m.order(&g), 9);
        assert!(m.contains(&g, &g.collect(&[(2, 2), (1, 1)]).unwrap()));
        assert!(!m.contains(&g, &g.generator(0)));
    }
}
