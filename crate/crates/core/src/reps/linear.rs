use super::cyclo::RootExp;
use crate::error::{Error, Result};
use crate::pcgroup::{PcPresentation, SubgroupSpec};

/// A homomorphism from a subgroup to the `q`-th roots of unity, given by its
/// values on the induced generators of the subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCharacter {
    pub subgroup: SubgroupSpec,
    pub values: Vec<RootExp>,
    q: u32,
}

/// Relations of the induced sequence `h_1..h_m` of a subgroup, as rows of
/// coefficients on the `λ(h_i)` that must vanish mod `q`.
fn relation_rows(g: &PcPresentation, h: &SubgroupSpec) -> Vec<Vec<i64>> {
    let seq: Vec<Vec<u32>> = h.raw_generators().cloned().collect();
    let lead = h.leading_positions();
    let m = seq.len();
    let mut rows = Vec::new();
    for i in 0..m {
        let r = g.relative_order(lead[i]) as i64;
        let c = h.coordinates(g, &g.pow_raw(&seq[i], r)).expect("closed under powers");
        let mut row: Vec<i64> = c.iter().map(|&v| -(v as i64)).collect();
        row[i] += r;
        rows.push(row);
        for j in i + 1..m {
            let c = h.coordinates(g, &g.comm_raw(&seq[j], &seq[i])).expect("closed under commutators");
            rows.push(c.iter().map(|&v| v as i64).collect());
        }
    }
    rows
}

impl LinearCharacter {
    /// Validates the values against every relation of the subgroup.
    pub fn new(g: &PcPresentation, subgroup: SubgroupSpec, values: Vec<RootExp>) -> Result<Self> {
        if values.len() != subgroup.order_log_p() {
            return Err(Error::InvalidParameters(format!(
                "{} values for a subgroup with {} generators",
                values.len(),
                subgroup.order_log_p()
            )));
        }
        let q = values.first().map(|v| v.modulus).unwrap_or(1);
        if values.iter().any(|v| v.modulus != q) {
            return Err(Error::InvalidParameters("mixed root moduli".into()));
        }
        for row in relation_rows(g, &subgroup) {
            let s: i64 = row.iter().zip(&values).map(|(c, v)| c * v.value as i64).sum();
            if s.rem_euclid(q as i64) != 0 {
                return Err(Error::RelationViolated("linear character violates a subgroup relation".into()));
            }
        }
        Ok(LinearCharacter { subgroup, values, q })
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.value == 0)
    }

    /// Value at an element of the subgroup.
    pub fn eval_raw(&self, g: &PcPresentation, x: &[u32]) -> Result<RootExp> {
        let q = self.modulus();
        let c = self
            .subgroup
            .coordinates(g, x)
            .ok_or_else(|| Error::InvalidParameters("element outside the character's subgroup".into()))?;
        let s: i64 = c.iter().zip(&self.values).map(|(&a, v)| a as i64 * v.value as i64).sum();
        Ok(RootExp::new(s, q))
    }
}

/// All `q`-th-root-valued linear characters of `subgroup`, in lexicographic
/// order of the value vectors read from the last generator. When `q` is a
/// multiple of the exponent of the abelianisation this is all of
/// `Hom(H, C^×)`.
pub fn linear_characters(g: &PcPresentation, subgroup: &SubgroupSpec, q: u32) -> Vec<LinearCharacter> {
    search(g, subgroup, q, &[], usize::MAX)
}

/// The first linear character (same order as [`linear_characters`]) taking
/// the prescribed values at the given positions of the induced sequence.
pub fn linear_character_with(
    g: &PcPresentation,
    subgroup: &SubgroupSpec,
    q: u32,
    fixed: &[(usize, RootExp)],
) -> Option<LinearCharacter> {
    search(g, subgroup, q, fixed, 1).pop()
}

fn search(g: &PcPresentation, subgroup: &SubgroupSpec, q: u32, fixed: &[(usize, RootExp)], limit: usize) -> Vec<LinearCharacter> {
    let m = subgroup.order_log_p();
    let rows = relation_rows(g, subgroup);
    // rows checked once their lowest nonzero coefficient gets assigned
    let mut by_level: Vec<Vec<&Vec<i64>>> = vec![Vec::new(); m];
    for r in &rows {
        if let Some(i) = r.iter().position(|&c| c != 0) {
            by_level[i].push(r);
        }
    }
    let mut pinned: Vec<Option<i64>> = vec![None; m];
    for (i, v) in fixed {
        pinned[*i] = Some(v.lift(q).value as i64);
    }
    struct Ctx<'a> {
        q: i64,
        by_level: Vec<Vec<&'a Vec<i64>>>,
        pinned: Vec<Option<i64>>,
        limit: usize,
        out: Vec<Vec<i64>>,
    }
    fn dfs(i: usize, vals: &mut Vec<i64>, c: &mut Ctx) {
        if c.out.len() >= c.limit {
            return;
        }
        if i == 0 {
            c.out.push(vals.clone());
            return;
        }
        let k = i - 1;
        let range = match c.pinned[k] {
            Some(v) => v..v + 1,
            None => 0..c.q,
        };
        for v in range {
            vals[k] = v;
            let ok = c.by_level[k]
                .iter()
                .all(|r| r.iter().zip(vals.iter()).map(|(a, x)| a * x).sum::<i64>().rem_euclid(c.q) == 0);
            if ok {
                dfs(k, vals, c);
            }
        }
        vals[k] = 0;
    }
    let mut ctx = Ctx {
        q: q as i64,
        by_level,
        pinned,
        limit,
        out: Vec::new(),
    };
    dfs(m, &mut vec![0i64; m], &mut ctx);
    ctx.out
        .into_iter()
        .map(|v| LinearCharacter {
            subgroup: subgroup.clone(),
            values: v.into_iter().map(|x| RootExp::new(x, q)).collect(),
            q,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, FamilyId};

    #[test]
    fn counts_match_abelianisation() {
        let g = families::build(&FamilyId::elem_ab(3, 2)).unwrap();
        let all = SubgroupSpec::from_generator_indices(&g, &[0, 1]);
        assert_eq!(linear_characters(&g, &all, 3).len(), 9);

        let h = families::build(&FamilyId::heis(3)).unwrap();
        let all = SubgroupSpec::from_generator_indices(&h, &[0, 1, 2]);
        let chars = linear_characters(&h, &all, 9);
        assert_eq!(chars.len(), 9);
        assert!(chars.iter().all(|c| c.values[2].value == 0));
    }

    #[test]
    fn gp_family_values_have_order_three() {
        let g = families::build(&FamilyId::maxrank_gp(3, 3)).unwrap();
        let all = SubgroupSpec::from_generator_indices(&g, &(0..g.num_generators()).collect::<Vec<_>>());
        let chars = linear_characters(&g, &all, 9);
        assert_eq!(chars.len(), 27);
        assert!(chars.iter().all(|c| c.values[0].order() <= 3));
    }

    #[test]
    fn violating_values_rejected() {
        let h = families::build(&FamilyId::heis(3)).unwrap();
        let all = SubgroupSpec::from_generator_indices(&h, &[0, 1, 2]);
        let v = vec![RootExp::new(0, 3), RootExp::new(0, 3), RootExp::new(1, 3)];
        assert!(matches!(LinearCharacter::new(&h, all, v), Err(Error::RelationViolated(_))));
    }
}
