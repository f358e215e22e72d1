use std::collections::VecDeque;

use serde::Serialize;

use super::Cocycle;
use crate::error::{Error, Result};
use crate::modlin::ModSpan;
use crate::pcgroup::PcPresentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum CoboundaryResult {
    /// `β(x, y) = f(x) + f(y) - f(xy)`; `f` is indexed like the elements.
    Coboundary { f: Vec<u64> },
    /// The equations imply `0 = value` with `value != 0`.
    NotCoboundary { value: u64, equations: u64 },
}

impl CoboundaryResult {
    pub fn is_coboundary(&self) -> bool {
        matches!(self, CoboundaryResult::Coboundary { .. })
    }
}

/// Decides whether `β = δf` for some `f: G -> Z/p^e`.
///
/// Every `f(x)` is first written as an affine expression in the unknowns
/// `f(g_i)` (pc-generators) by walking the Cayley graph, using the equations
/// along the spanning tree. The remaining `|G|^2` equations become rows of a
/// small system over `Z/p^e`; a solution is verified by re-evaluation.
pub fn coboundary_solve(beta: &Cocycle, g: &PcPresentation, budget: u128) -> Result<CoboundaryResult> {
    beta.check(g)?;
    let n = g.order_unchecked();
    if n > budget {
        return Err(Error::budget("coboundary system", n, budget));
    }
    let n = n as usize;
    let k = g.num_generators();
    let m = beta.modulus();
    let elems: Vec<Vec<u32>> = (0..n).map(|i| g.element_at(i)).collect();
    // evaluated lazily so that an early inconsistency skips most of the table
    let at = |x: usize, y: usize| match beta.table() {
        Some(t) => t[x * n + y],
        None => beta.eval(&elems[x], &elems[y]),
    };

    // affine forms: coefficients on f(g_0..g_{k-1}) and a constant
    let mut coef: Vec<Option<(Vec<u64>, u64)>> = vec![None; n];
    // f(1) = β(1, 1)
    coef[0] = Some((vec![0; k], at(0, 0)));
    let gen_idx: Vec<usize> = (0..k).map(|i| g.index_of(&g.generator(i).into_exponents())).collect();
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (i, &gi) in gen_idx.iter().enumerate() {
            let xy = g.index_of(&g.mul_raw(&elems[x], &elems[gi]));
            if coef[xy].is_some() {
                continue;
            }
            // f(x g_i) = f(x) + f(g_i) - β(x, g_i)
            let (mut c, mut k0) = coef[x].clone().expect("visited");
            c[i] = (c[i] + 1) % m;
            k0 = (k0 + m - at(x, gi)) % m;
            coef[xy] = Some((c, k0));
            queue.push_back(xy);
        }
    }
    let coef: Vec<(Vec<u64>, u64)> = coef.into_iter().map(|c| c.expect("group is generated")).collect();

    let mut span = ModSpan::new(g.prime() as u64, beta.e, k + 1);
    let mut equations = 0u64;
    let mut row = vec![0u64; k + 1];
    for x in 0..n {
        for y in 0..n {
            let xy = g.index_of(&g.mul_raw(&elems[x], &elems[y]));
            let (cx, kx) = &coef[x];
            let (cy, ky) = &coef[y];
            let (cxy, kxy) = &coef[xy];
            for j in 0..k {
                row[j] = (cx[j] + cy[j] + m - cxy[j]) % m;
            }
            // Σ row_j u_j = β(x,y) - kx - ky + kxy
            row[k] = (at(x, y) + 2 * m - kx - ky + kxy) % m;
            equations += 1;
            if row.iter().any(|&v| v != 0) && span.insert(row.clone()) && span.rows().any(|(c, _)| c == k) {
                let value = span.rows().find(|(c, _)| *c == k).map(|(_, r)| r[k]).unwrap_or(0);
                return Ok(CoboundaryResult::NotCoboundary { value, equations });
            }
        }
    }
    let Some(u) = span.solve_augmented() else {
        let value = span.rows().find(|(c, _)| *c == k).map(|(_, r)| r[k]).unwrap_or(0);
        return Ok(CoboundaryResult::NotCoboundary { value, equations });
    };
    let f: Vec<u64> = coef
        .iter()
        .map(|(c, k0)| (c.iter().zip(&u).map(|(&a, &b)| a * b % m).sum::<u64>() + k0) % m)
        .collect();
    for x in 0..n {
        for y in 0..n {
            let xy = g.index_of(&g.mul_raw(&elems[x], &elems[y]));
            if (f[x] + f[y] + m - f[xy]) % m != at(x, y) {
                return Err(Error::Internal("coboundary solution failed re-evaluation".into()));
            }
        }
    }
    Ok(CoboundaryResult::Coboundary { f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::Provenance;
    use crate::families::{self, FamilyId};
    use rand::{Rng, SeedableRng};

    #[test]
    fn random_coboundary_recovered() {
        let g = families::build(&FamilyId::heis(3)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f: Vec<u64> = (0..27).map(|_| rng.gen_range(0..9)).collect();
        let gc = g.clone();
        let fc = f.clone();
        let beta = Cocycle::new(&g, 2, Provenance::FromTable, move |x, y| {
            let xy = gc.mul_raw(x, y);
            (fc[gc.index_of(x)] + fc[gc.index_of(y)] + 9 - fc[gc.index_of(&xy)]) % 9
        });
        let r = coboundary_solve(&beta, &g, 1000).unwrap();
        assert!(r.is_coboundary());
    }

    #[test]
    fn trivial_is_coboundary() {
        let g = families::build(&FamilyId::elem_ab(3, 2)).unwrap();
        let beta = Cocycle::new(&g, 1, Provenance::FromTable, |_, _| 0);
        assert_eq!(coboundary_solve(&beta, &g, 100).unwrap(), CoboundaryResult::Coboundary { f: vec![0; 9] });
    }

    #[test]
    fn nontrivial_class_on_elementary_abelian() {
        // α(a, b) = a_1 b_2 is the generator of H²((Z/3)^2)
        let g = families::build(&FamilyId::elem_ab(3, 2)).unwrap();
        let beta = Cocycle::new(&g, 1, Provenance::FromTable, |x, y| (x[0] * y[1]) as u64 % 3);
        assert!(!coboundary_solve(&beta, &g, 100).unwrap().is_coboundary());
    }
}
