use serde::{Deserialize, Serialize};

use super::cyclo::CycInt;

/// `n × n` monomial matrix with `M e_j = ζ_q^{exps[j]} e_{perm[j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialMatrix {
    #[serde(skip)]
    pub q: u32,
    pub perm: Vec<u32>,
    pub exps: Vec<u32>,
}

impl MonomialMatrix {
    pub fn identity(n: usize, q: u32) -> Self {
        MonomialMatrix {
            q,
            perm: (0..n as u32).collect(),
            exps: vec![0; n],
        }
    }

    pub fn scalar(n: usize, q: u32, k: u32) -> Self {
        MonomialMatrix {
            q,
            perm: (0..n as u32).collect(),
            exps: vec![k % q; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// `self · other`.
    pub fn mul(&self, other: &MonomialMatrix) -> MonomialMatrix {
        debug_assert_eq!(self.q, other.q);
        let n = self.dim();
        let mut perm = vec![0u32; n];
        let mut exps = vec![0u32; n];
        for j in 0..n {
            let k = other.perm[j] as usize;
            perm[j] = self.perm[k];
            exps[j] = (other.exps[j] + self.exps[k]) % self.q;
        }
        MonomialMatrix { q: self.q, perm, exps }
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let n = self.dim();
        let mut perm = vec![0u32; n];
        let mut exps = vec![0u32; n];
        for j in 0..n {
            let k = self.perm[j] as usize;
            perm[k] = j as u32;
            exps[k] = (self.q - self.exps[j]) % self.q;
        }
        MonomialMatrix { q: self.q, perm, exps }
    }

    pub fn pow(&self, mut k: u64) -> MonomialMatrix {
        let mut base = self.clone();
        let mut acc = MonomialMatrix::identity(self.dim(), self.q);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// `ζ^k · self`.
    pub fn scaled(&self, k: u32) -> MonomialMatrix {
        MonomialMatrix {
            q: self.q,
            perm: self.perm.clone(),
            exps: self.exps.iter().map(|&e| (e + k) % self.q).collect(),
        }
    }

    /// The exponent `k` if `self = ζ^k · I`.
    pub fn as_scalar(&self) -> Option<u32> {
        let k = *self.exps.first()?;
        (self.perm.iter().enumerate().all(|(j, &p)| p as usize == j) && self.exps.iter().all(|&e| e == k))
            .then_some(k)
    }

    pub fn is_identity(&self) -> bool {
        self.as_scalar() == Some(0)
    }

    /// Roots of unity on the diagonal.
    pub fn diagonal_roots(&self) -> impl Iterator<Item = u32> + '_ {
        self.perm
            .iter()
            .enumerate()
            .filter(|(j, &p)| p as usize == *j)
            .map(|(j, _)| self.exps[j])
    }

    pub fn trace(&self) -> CycInt {
        CycInt::from_roots(self.q, self.diagonal_roots())
    }

    /// The same matrix over `ζ_m`, `m` a multiple of `q`.
    pub fn lift(&self, m: u32) -> MonomialMatrix {
        let f = m / self.q;
        MonomialMatrix {
            q: m,
            perm: self.perm.clone(),
            exps: self.exps.iter().map(|&e| e * f).collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[MonomialMatrix]) -> MonomialMatrix {
        let q = blocks[0].q;
        let mut perm = Vec::new();
        let mut exps = Vec::new();
        let mut off = 0u32;
        for b in blocks {
            perm.extend(b.perm.iter().map(|&p| p + off));
            exps.extend(&b.exps);
            off += b.dim() as u32;
        }
        MonomialMatrix { q, perm, exps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb(n: usize, q: u32) -> impl Strategy<Value = MonomialMatrix> {
        (Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(0..q, n))
            .prop_map(move |(perm, exps)| MonomialMatrix { q, perm, exps })
    }

    proptest! {
        #[test]
        fn group_laws(a in arb(5, 9), b in arb(5, 9), c in arb(5, 9)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.mul(&a.inverse()).is_identity());
            prop_assert_eq!(a.pow(3), a.mul(&a).mul(&a));
            prop_assert_eq!(a.mul(&b).trace(), b.mul(&a).trace());
        }
    }

    #[test]
    fn scalar_detection() {
        assert_eq!(MonomialMatrix::scalar(3, 9, 4).as_scalar(), Some(4));
        let mut m = MonomialMatrix::identity(3, 9);
        m.perm.swap(0, 1);
        assert_eq!(m.as_scalar(), None);
        assert_eq!(m.trace(), CycInt::from_roots(9, [0]));
    }
}
