use super::{Element, PcPresentation};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Lexicographically smallest member.
    pub representative: Element,
    pub size: u64,
}

impl PcPresentation {
    /// Conjugacy classes by orbit enumeration under the pc-generators.
    pub fn conjugacy_classes(&self, budget: u128) -> Result<Vec<ConjugacyClass>> {
        let order = self.group_order()?;
        let all = self.all_elements_raw(budget)?;
        let n = self.num_generators();
        let gens: Vec<Vec<u32>> = (0..n).map(|i| self.generator(i).into_exponents()).collect();
        let mut seen = vec![false; order as usize];
        let mut out = Vec::new();
        for (idx, e) in all.iter().enumerate() {
            if seen[idx] {
                continue;
            }
            seen[idx] = true;
            let mut stack = vec![e.clone()];
            let mut size = 1u64;
            while let Some(x) = stack.pop() {
                for g in &gens {
                    let y = self.conj_raw(&x, g);
                    let j = self.index_of(&y);
                    if !seen[j] {
                        seen[j] = true;
                        size += 1;
                        stack.push(y);
                    }
                }
            }
            out.push(ConjugacyClass {
                representative: self.wrap(e.clone()),
                size,
            });
        }
        Ok(out)
    }

    pub fn class_count(&self, budget: u128) -> Result<usize> {
        Ok(self.conjugacy_classes(budget)?.len())
    }
}

#[cfg(test)]
mod tests {
    use crate::pcgroup::PresentationBuilder;

    #[test]
    fn heisenberg_has_eleven_classes() {
        let mut b = PresentationBuilder::new(3);
        let x1 = b.generator("x1", 1);
        let x2 = b.generator("x2", 1);
        let y = b.generator("y12", 2);
        b.commutator(x1, x2, vec![(y, 1)]);
        let g = b.build().unwrap();
        let cl = g.conjugacy_classes(1000).unwrap();
        assert_eq!(cl.len(), 11);
        assert_eq!(cl.iter().map(|c| c.size).sum::<u64>(), 27);
    }
}
