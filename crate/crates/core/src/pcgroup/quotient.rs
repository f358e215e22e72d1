use super::{Element, PcPresentation, PresentationBuilder, SubgroupSpec, Word};
use crate::error::{Error, Result};

/// A quotient together with the images of the original pc-generators.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: PcPresentation,
    pub images: Vec<Element>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| (a as u64 * x as u64) % p as u64 == 1).unwrap_or(1)
}

impl PcPresentation {
    /// `G/S` for a central subgroup `S` lying in an elementary abelian
    /// coordinate block: the generators occurring in `S` must commute
    /// pairwise and have trivial `p`-th powers.
    pub fn quotient_by_central(&self, s: &SubgroupSpec) -> Result<Quotient> {
        if !s.is_central(self) {
            return Err(Error::NotCentral);
        }
        let n = self.num_generators();
        let p = self.prime();
        let rows: Vec<Vec<u32>> = s.raw_generators().cloned().collect();
        let support: Vec<usize> = (0..n).filter(|&i| rows.iter().any(|r| r[i] != 0)).collect();
        for &a in &support {
            if self.gens[a].rel_order != p || self.power[a].iter().any(|&x| x != 0) {
                return Err(Error::Unsupported(format!(
                    "quotient support generator {} is not of order p",
                    self.gens[a].name
                )));
            }
            for &b in &support {
                if b > a && self.comm[b][a].is_some() {
                    return Err(Error::Unsupported("quotient support generators do not commute".into()));
                }
            }
        }

        // reduced row echelon form over Z/p, leftmost pivots
        let mut m = rows;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(k) = (r..m.len()).find(|&k| m[k][c] != 0) else { continue };
            m.swap(r, k);
            let inv = inv_mod(m[r][c], p);
            for x in m[r].iter_mut() {
                *x = (*x * inv) % p;
            }
            for k in 0..m.len() {
                if k != r && m[k][c] != 0 {
                    let f = m[k][c];
                    for j in 0..n {
                        m[k][j] = (m[k][j] + (p - f) * m[r][j]) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        m.truncate(r);

        // new index of each surviving generator; pivots map to words in the others
        let mut new_index = vec![usize::MAX; n];
        let mut b = PresentationBuilder::new(p);
        for i in 0..n {
            if !pivots.contains(&i) {
                new_index[i] = b.generator_with_order(self.gens[i].name.clone(), self.gens[i].depth, self.gens[i].rel_order);
            }
        }
        let subst: Vec<Word> = (0..n)
            .map(|i| match pivots.iter().position(|&c| c == i) {
                Some(k) => (0..n)
                    .filter(|&j| j != i && m[k][j] != 0)
                    .map(|j| (new_index[j], -(m[k][j] as i64)))
                    .collect(),
                None => vec![(new_index[i], 1)],
            })
            .collect();
        let map_word = |e: &[u32]| -> Word {
            let mut w = Word::new();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    w.extend(subst[i].iter().copied());
                }
            }
            w
        };
        for i in 0..n {
            if new_index[i] == usize::MAX {
                continue;
            }
            if self.power[i].iter().any(|&x| x != 0) {
                b.power(new_index[i], map_word(&self.power[i]));
            }
            for j in i + 1..n {
                if new_index[j] == usize::MAX {
                    continue;
                }
                if let Some(c) = &self.comm[j][i] {
                    b.commutator(new_index[j], new_index[i], map_word(c));
                }
            }
        }
        let q = b.build()?;
        if let Some(f) = &q.consistency_check().failure {
            return Err(Error::Inconsistent(format!("quotient presentation: {f}")));
        }
        let images = subst.iter().map(|w| q.wrap(q.collect_raw(w))).collect();
        Ok(Quotient { group: q, images })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_mod_center_is_elementary() {
        let mut b = PresentationBuilder::new(3);
        let x1 = b.generator("x1", 1);
        let x2 = b.generator("x2", 1);
        let y = b.generator("y12", 2);
        b.commutator(x1, x2, vec![(y, 1)]);
        let g = b.build().unwrap();
        let q = g.quotient_by_central(&g.derived_subgroup()).unwrap();
        assert_eq!(q.group.group_order().unwrap(), 9);
        let v = g.check_homomorphism(&q.group, &q.images).unwrap();
        assert!(v.is_homomorphism);
        assert_eq!(v.kernel_log_p, Some(1));
    }

    #[test]
    fn non_central_rejected() {
        let mut b = PresentationBuilder::new(3);
        let x1 = b.generator("x1", 1);
        let x2 = b.generator("x2", 1);
        let y = b.generator("y12", 2);
        b.commutator(x1, x2, vec![(y, 1)]);
        let g = b.build().unwrap();
        let s = SubgroupSpec::from_generator_indices(&g, &[1]);
        assert_eq!(g.quotient_by_central(&s).unwrap_err(), Error::NotCentral);
    }
}
