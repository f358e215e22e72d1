use serde::Serialize;

use super::PcPresentation;

/// Outcome of the overlap tests. `failure` names the first overlap whose two
/// collections disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub checked: usize,
    pub failure: Option<String>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.failure.is_none()
    }
}

impl PcPresentation {
    /// Runs the standard overlap battery once and caches the verdict.
    ///
    /// * `g_k (g_j g_i) = (g_k g_j) g_i` for `k > j > i`
    /// * `g_j^{r} g_i = g_j^{r-1} (g_j g_i)` for `j > i`
    /// * `g_j g_i^{r} = (g_j g_i) g_i^{r-1}` for `j > i`
    /// * `g_i g_i^{r} = g_i^{r} g_i`
    pub fn consistency_check(&self) -> &ConsistencyReport {
        self.consistency.get_or_init(|| self.run_overlaps())
    }

    fn run_overlaps(&self) -> ConsistencyReport {
        let n = self.num_generators();
        let gen = |i: usize| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            e
        };
        let name = |i: usize| self.gens[i].name.as_str();
        let mut checked = 0usize;
        let fail = |what: String, checked: usize| ConsistencyReport {
            checked,
            failure: Some(what),
        };

        for i in 0..n {
            let gi = gen(i);
            let r = self.gens[i].rel_order as i64;
            let left = self.mul_raw(&gi, &self.power[i]);
            let right = self.mul_raw(&self.power[i], &gi);
            checked += 1;
            if left != right {
                return fail(format!("{0} {0}^{1} != {0}^{1} {0}", name(i), r), checked);
            }
        }
        for j in 0..n {
            for i in 0..j {
                let gj = gen(j);
                let gi = gen(i);
                let gjgi = self.mul_raw(&gj, &gi);
                // g_j^r g_i
                let rj = self.gens[j].rel_order as i64;
                let left = self.mul_raw(&self.power[j], &gi);
                let right = self.mul_raw(&self.pow_raw(&gj, rj - 1), &gjgi);
                checked += 1;
                if left != right {
                    return fail(format!("({0}^{2}) {1} != {0}^{3} ({0} {1})", name(j), name(i), rj, rj - 1), checked);
                }
                let ri = self.gens[i].rel_order as i64;
                let left = self.mul_raw(&gj, &self.power[i]);
                let right = self.mul_raw(&gjgi, &self.pow_raw(&gi, ri - 1));
                checked += 1;
                if left != right {
                    return fail(format!("{0} ({1}^{2}) != ({0} {1}) {1}^{3}", name(j), name(i), ri, ri - 1), checked);
                }
            }
        }
        for k in 0..n {
            for j in 0..k {
                let gkgj = self.mul_raw(&gen(k), &gen(j));
                for i in 0..j {
                    let gjgi = self.mul_raw(&gen(j), &gen(i));
                    let left = self.mul_raw(&gen(k), &gjgi);
                    let right = self.mul_raw(&gkgj, &gen(i));
                    checked += 1;
                    if left != right {
                        return fail(
                            format!("{0} ({1} {2}) != ({0} {1}) {2}", name(k), name(j), name(i)),
                            checked,
                        );
                    }
                }
            }
        }
        ConsistencyReport {
            checked,
            failure: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::pcgroup::PresentationBuilder;

    #[test]
    fn elementary_abelian_passes() {
        let mut b = PresentationBuilder::new(3);
        for i in 0..3 {
            b.generator(format!("a{i}"), 1);
        }
        let g = b.build().unwrap();
        assert!(g.consistency_check().is_consistent());
        assert_eq!(g.group_order().unwrap(), 27);
    }

    #[test]
    fn non_central_power_is_caught() {
        // a^3 = b with [a, b] = c makes a^3 fail to commute with a.
        let mut b = PresentationBuilder::new(3);
        let a = b.generator("a", 1);
        let bb = b.generator("b", 2);
        let c = b.generator("c", 3);
        b.power(a, vec![(bb, 1)]);
        b.commutator(a, bb, vec![(c, 1)]);
        let g = b.build().unwrap();
        assert!(!g.consistency_check().is_consistent());
        assert!(g.group_order().is_err());
    }
}
