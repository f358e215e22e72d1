use crate::error::{Error, Result};
use crate::families::{self, FamilyId, FamilyTag};
use crate::modlin::ModSpan;
use crate::pcgroup::{PcPresentation, SubgroupSpec};

/// `G/G' ⊗ G'` for a class-2 group whose derived subgroup is the central,
/// elementary abelian span of its depth-2 generators. Basis `x_a ⊗ y_b` is
/// indexed `a * |ys| + b`.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub p: u32,
    /// Indices of depth-1 generators.
    pub xs: Vec<usize>,
    /// Indices of depth-2 generators, a basis of `G'`.
    pub ys: Vec<usize>,
    x_names: Vec<String>,
    y_names: Vec<String>,
}

impl TensorSpace {
    pub fn for_group(g: &PcPresentation) -> Result<Self> {
        let gens = g.generators();
        let xs: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].depth == 1).collect();
        let ys: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].depth == 2).collect();
        if xs.len() + ys.len() != gens.len() || ys.iter().any(|&i| gens[i].rel_order != g.prime()) {
            return Err(Error::Unsupported("tensor space needs a two-layer group".into()));
        }
        let span = SubgroupSpec::from_generator_indices(g, &ys);
        if !span.is_central(g) || !g.derived_subgroup().is_subgroup_of(g, &span) {
            return Err(Error::Unsupported("derived subgroup is not inside the central depth-2 layer".into()));
        }
        Ok(TensorSpace {
            p: g.prime(),
            x_names: xs.iter().map(|&i| gens[i].name.clone()).collect(),
            y_names: ys.iter().map(|&i| gens[i].name.clone()).collect(),
            xs,
            ys,
        })
    }

    pub fn dim(&self) -> usize {
        self.xs.len() * self.ys.len()
    }

    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.ys.len() + b
    }

    /// Basis index of `x ⊗ y` by generator names.
    pub fn index_by_name(&self, x: &str, y: &str) -> Option<usize> {
        let a = self.x_names.iter().position(|n| n == x)?;
        let b = self.y_names.iter().position(|n| n == y)?;
        Some(self.index(a, b))
    }

    pub fn basis_label(&self, idx: usize) -> String {
        let (a, b) = (idx / self.ys.len(), idx % self.ys.len());
        format!("{}⊗{}", self.x_names[a], self.y_names[b])
    }

    /// Coordinates of an element of `G'` (normal form) in the `ys` basis.
    fn derived_coords(&self, e: &[u32]) -> Vec<u64> {
        self.ys.iter().map(|&j| e[j] as u64).collect()
    }

    /// `x ⊗ w` for an `x`-exponent vector `r` and `w ∈ G'`.
    fn tensor(&self, r: &[u64], w: &[u64]) -> Vec<u64> {
        let p = self.p as u64;
        let mut v = vec![0u64; self.dim()];
        for (a, &ra) in r.iter().enumerate() {
            for (b, &wb) in w.iter().enumerate() {
                let i = self.index(a, b);
                v[i] = (v[i] + ra * wb) % p;
            }
        }
        v
    }

    fn add(&self, a: &[u64], b: &[u64], sign: u64) -> Vec<u64> {
        let p = self.p as u64;
        a.iter().zip(b).map(|(&x, &y)| (x + sign * y) % p).collect()
    }
}

/// The subspace `X` spanned by Jacobi-type tensors
/// `x ⊗ [y,z] + y ⊗ [z,x] + z ⊗ [x,y]` and power-type tensors `x ⊗ x^p`.
#[derive(Clone, Debug)]
pub struct XSubspace {
    pub space: TensorSpace,
    /// Generating vectors in a fixed order: Jacobi vectors for `a < b < c`,
    /// then `x_a ⊗ x_a^p`, then the polarised `x_a ⊗ x_b^p + x_b ⊗ x_a^p`.
    pub generators: Vec<Vec<u64>>,
    pub span: ModSpan,
}

impl XSubspace {
    pub fn rank(&self) -> usize {
        self.span.len()
    }

    /// Row-reduced basis ordered by pivot column.
    pub fn basis(&self) -> Vec<Vec<u64>> {
        self.span.rows().map(|(_, r)| r.clone()).collect()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.span.contains(v)
    }
}

/// Builds `X` from the group's commutators and `p`-th powers.
pub fn x_subspace(g: &PcPresentation) -> Result<XSubspace> {
    let t = TensorSpace::for_group(g)?;
    let d = t.xs.len();
    let p = g.prime() as u64;
    let unit = |a: usize| {
        let mut r = vec![0u64; d];
        r[a] = 1;
        r
    };
    let xg = |a: usize| g.generator(t.xs[a]).into_exponents();
    let comm = |a: usize, b: usize| t.derived_coords(&g.comm_raw(&xg(a), &xg(b)));
    let mut gens = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            for c in b + 1..d {
                let v1 = t.tensor(&unit(a), &comm(b, c));
                let v2 = t.tensor(&unit(b), &comm(c, a));
                let v3 = t.tensor(&unit(c), &comm(a, b));
                gens.push(t.add(&t.add(&v1, &v2, 1), &v3, 1));
            }
        }
    }
    let pth = |e: &[u32]| t.derived_coords(&g.pow_raw(e, p as i64));
    let powers: Vec<Vec<u64>> = (0..d).map(|a| pth(&xg(a))).collect();
    for a in 0..d {
        gens.push(t.tensor(&unit(a), &powers[a]));
    }
    for a in 0..d {
        for b in a + 1..d {
            let prod = g.mul_raw(&xg(a), &xg(b));
            let full = t.tensor(&t.add(&unit(a), &unit(b), 1), &pth(&prod));
            let v = t.add(&t.add(&full, &t.tensor(&unit(a), &powers[a]), p - 1), &t.tensor(&unit(b), &powers[b]), p - 1);
            gens.push(v);
        }
    }
    let mut span = ModSpan::new(p, 1, t.dim());
    for v in &gens {
        span.insert(v.clone());
    }
    Ok(XSubspace {
        space: t,
        generators: gens,
        span,
    })
}

/// `X` for a max-rank family member.
pub fn build_x(f: &FamilyId) -> Result<XSubspace> {
    match f.tag {
        FamilyTag::MaxrankExpP | FamilyTag::MaxrankGpP | FamilyTag::Heis => x_subspace(&families::build(f)?),
        _ => Err(Error::Unsupported(format!("X is built for max-rank families, not {}", f.tag.cli_name()))),
    }
}

fn binom(n: u32, k: u32) -> u32 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64) as u32
}

/// `log_p |H²(G, C^×)|` from the closed forms.
pub fn h2_log(f: &FamilyId) -> Result<u32> {
    let d = f.d;
    match f.tag {
        FamilyTag::MaxrankExpP => Ok(d * (d - 1) * (d + 1) / 3),
        FamilyTag::MaxrankGpP => Ok(d * (d - 1) * (d + 1) / 3 - d),
        FamilyTag::ElemAb => Ok(binom(d, 2)),
        FamilyTag::Heis => Ok(2),
        _ => Err(Error::Unsupported(format!("no closed-form Schur multiplier for {}", f.tag.cli_name()))),
    }
}

/// Closed form for the exponent-p quotient `G/G^p` of the `G^p = p` family.
pub fn h2_log_gp_quotient(d: u32) -> u32 {
    d * (d - 1) * (d + 1) / 3 - d + 1
}

pub fn h2_order(f: &FamilyId) -> Result<u128> {
    Ok((f.p as u128).pow(h2_log(f)?))
}

/// `log_p |H²|` for a two-layer group with elementary abelian `G/G'`:
/// `C(d,2) - dim G' + dim (G/G' ⊗ G')/X`.
pub fn h2_log_from_x(g: &PcPresentation) -> Result<u32> {
    let x = x_subspace(g)?;
    let d = x.space.xs.len() as u32;
    let k = x.space.ys.len() as u32;
    let frattini = (0..g.num_generators()).all(|i| {
        let e = g.pow_raw(&g.generator(i).into_exponents(), g.prime() as i64);
        x.space.xs.iter().all(|&a| e[a] == 0)
    });
    if !frattini {
        return Err(Error::Unsupported("G/G' is not elementary abelian".into()));
    }
    Ok(binom(d, 2) + d * k - k - x.rank() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_vector_at_d3() {
        let x = build_x(&FamilyId::maxrank_exp_p(3, 3)).unwrap();
        assert_eq!(x.rank(), 1);
        let t = &x.space;
        let mut v = vec![0u64; t.dim()];
        v[t.index_by_name("x1", "y23").unwrap()] = 1;
        v[t.index_by_name("x2", "y13").unwrap()] = 2;
        v[t.index_by_name("x3", "y12").unwrap()] = 1;
        assert!(x.contains(&v));
    }

    #[test]
    fn ranks_and_orders() {
        for d in 3..=5 {
            let e = build_x(&FamilyId::maxrank_exp_p(3, d)).unwrap();
            let g = build_x(&FamilyId::maxrank_gp(3, d)).unwrap();
            assert_eq!(e.rank() as u32, binom(d, 3));
            assert_eq!(g.rank() as u32, binom(d, 3) + d);
            let dim = d * binom(d, 2);
            assert_eq!(dim - e.rank() as u32, h2_log(&FamilyId::maxrank_exp_p(3, d)).unwrap());
            assert_eq!(dim - g.rank() as u32, h2_log(&FamilyId::maxrank_gp(3, d)).unwrap());
        }
    }

    #[test]
    fn small_groups() {
        let h = |f: FamilyId| h2_log_from_x(&families::build(&f).unwrap()).unwrap();
        assert_eq!(h(FamilyId::heis(3)), 2);
        assert_eq!(h(FamilyId::elem_ab(3, 3)), 3);
        assert_eq!(h(FamilyId::es_times_ab(3, 1, 3)), 4);
        assert_eq!(h(FamilyId::maxrank_exp_p(3, 3)), 8);
    }
}
