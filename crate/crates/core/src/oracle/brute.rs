use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use super::howell::HowellSpan;
use super::rewrite::{naive_rewrite, STEP_LIMIT};
use crate::error::{Error, Result};
use crate::pcgroup::PcPresentation;

/// Default order bound for [`brute_h2`].
pub const BRUTE_BUDGET: u128 = 81;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteH2Report {
    pub group: String,
    pub e: u32,
    pub z2_log: u32,
    pub b2_log: u32,
    pub h2_log: u32,
    /// `log_p |H²(G, C^×)| = log_p |H²(G, μ_{p^e})| - log_p |Hom(G, μ_{p^e})|`,
    /// valid once `p^e` kills both groups.
    pub corrected_h2_log: u32,
}

/// Multiplication table computed with the rewriting oracle only.
fn mul_table(g: &PcPresentation) -> Result<Vec<usize>> {
    let n = g.order_unchecked() as usize;
    let word = |x: &[u32]| x.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (i, k as i64)).collect::<Vec<_>>();
    let elems: Vec<Vec<u32>> = (0..n).map(|i| g.element_at(i)).collect();
    (0..n * n)
        .into_par_iter()
        .map(|t| {
            let mut w = word(&elems[t / n]);
            w.extend(word(&elems[t % n]));
            Ok(g.index_of(naive_rewrite(g, &w, STEP_LIMIT)?.exponents()))
        })
        .collect()
}

fn sub_into(acc: &mut [u32], a: &[u32], m: u32, sign: bool) {
    for (x, &y) in acc.iter_mut().zip(a) {
        *x = if sign { (*x + y) % m } else { (*x + m - y) % m };
    }
}

/// Spanning tree of the Cayley graph on the pc-generators: for each element
/// other than 1, its parent and the generator index leading to it.
fn cayley_tree(n: usize, gens: &[usize], mul: &[usize]) -> Vec<(usize, usize)> {
    let mut parent = vec![None; n];
    parent[0] = Some((0, usize::MAX));
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (i, &gi) in gens.iter().enumerate() {
            let y = mul[x * n + gi];
            if parent[y].is_none() {
                parent[y] = Some((x, i));
                queue.push_back(y);
            }
        }
    }
    parent.into_iter().map(|p| p.expect("generated")).collect()
}

fn bfs_order(n: usize, tree: &[(usize, usize)]) -> Vec<usize> {
    let mut depth = vec![usize::MAX; n];
    depth[0] = 0;
    fn d(x: usize, tree: &[(usize, usize)], depth: &mut [usize]) -> usize {
        if depth[x] == usize::MAX {
            depth[x] = d(tree[x].0, tree, depth) + 1;
        }
        depth[x]
    }
    for x in 0..n {
        d(x, tree, &mut depth);
    }
    let mut ord: Vec<usize> = (0..n).collect();
    ord.sort_by_key(|&x| (depth[x], x));
    ord
}

/// `log_p |Hom(G, Z/p^e)|`.
fn hom_log(p: u64, e: u32, n: usize, gens: &[usize], mul: &[usize], tree: &[(usize, usize)]) -> u32 {
    let k = gens.len();
    let m = p.pow(e) as u32;
    // f(x) as a form in f(g_0..g_{k-1}); f(1) = 0
    let mut f = vec![vec![0u32; k]; n];
    for x in bfs_order(n, tree).into_iter().skip(1) {
        let (par, i) = tree[x];
        let mut v = f[par].clone();
        v[i] = (v[i] + 1) % m;
        f[x] = v;
    }
    let mut span = HowellSpan::new(p, e, k);
    for x in 0..n {
        for (i, &gi) in gens.iter().enumerate() {
            // f(x g_i) - f(x) - f(g_i)
            let mut r = f[mul[x * n + gi]].clone();
            sub_into(&mut r, &f[x], m, false);
            r[i] = (r[i] + m - 1) % m;
            if r.iter().any(|&v| v != 0) {
                span.insert(r);
            }
        }
    }
    k as u32 * e - span.log_size()
}

/// Counts `H²(G, Z/p^e)` with trivial action by brute-force linear algebra.
///
/// Unknowns are `α(x, 1)` and `α(x, g_i)` for all `x`; every other value is
/// forced by the cocycle identity `δα(x, w, g_i) = 0` along a spanning tree.
/// A 2-cochain satisfying `δα(x, y, z) = 0` for all `x, y` and `z ∈ {1} ∪ {g_i}`
/// is a cocycle, since `δα` is itself a 3-cocycle. Sizes of `Z²` and `B²`
/// come from Howell spans; `|B²| = p^{e|G|} / |Hom(G, Z/p^e)|`.
pub fn brute_h2(label: &str, g: &PcPresentation, e: u32, budget: u128) -> Result<BruteH2Report> {
    let order = g.order_unchecked();
    if order > budget {
        return Err(Error::budget("brute_h2 group order", order, budget));
    }
    if e == 0 {
        return Err(Error::InvalidParameters("e must be at least 1".into()));
    }
    let p = g.prime() as u64;
    let m = p.pow(e) as u32;
    let n = order as usize;
    let k = g.num_generators();
    let mul = mul_table(g)?;
    let gens: Vec<usize> = (0..k).map(|i| g.index_of(g.generator(i).exponents())).collect();
    let tree = cayley_tree(n, &gens, &mul);
    let order_bfs = bfs_order(n, &tree);

    // unknown index: x * (k + 1) + slot, slot 0 for z = 1 and 1 + i for g_i
    let nu = n * (k + 1);
    let unknown = |x: usize, slot: usize| x * (k + 1) + slot;
    // expr[x][w]: α(x, w) as a form in the unknowns
    let mut expr: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        let mut v = vec![0u32; nu];
        v[unknown(x, 0)] = 1;
        expr[x][0] = v;
    }
    for &w in order_bfs.iter().skip(1) {
        let (par, i) = tree[w];
        for x in 0..n {
            let v = if par == 0 {
                let mut v = vec![0u32; nu];
                v[unknown(x, 1 + i)] = 1;
                v
            } else {
                // α(x, par g) = α(x, par) + α(x par, g) - α(par, g)
                let mut v = expr[x][par].clone();
                sub_into(&mut v, &expr[mul[x * n + par]][gens[i]], m, true);
                sub_into(&mut v, &expr[par][gens[i]], m, false);
                v
            };
            expr[x][w] = v;
        }
    }

    let zs: Vec<usize> = std::iter::once(0).chain(gens.iter().copied()).collect();
    let rows: Vec<Vec<u32>> = (0..n * n)
        .into_par_iter()
        .flat_map_iter(|t| {
            let (x, y) = (t / n, t % n);
            let (xy, expr, mul) = (mul[x * n + y], &expr, &mul);
            zs.iter().filter_map(move |&z| {
                // α(y,z) - α(xy,z) + α(x,yz) - α(x,y)
                let mut r = expr[y][z].clone();
                sub_into(&mut r, &expr[xy][z], m, false);
                sub_into(&mut r, &expr[x][mul[y * n + z]], m, true);
                sub_into(&mut r, &expr[x][y], m, false);
                r.iter().any(|&v| v != 0).then_some(r)
            })
        })
        .collect();
    let mut span = HowellSpan::new(p, e, nu);
    for r in rows {
        span.insert(r);
    }
    let z2_log = e * nu as u32 - span.log_size();
    let hom = hom_log(p, e, n, &gens, &mul, &tree);
    let b2_log = e * n as u32 - hom;
    if b2_log > z2_log {
        return Err(Error::Internal("coboundaries larger than cocycles".into()));
    }
    let h2_log = z2_log - b2_log;
    let corrected_h2_log = h2_log.checked_sub(hom).ok_or_else(|| Error::Internal("H¹ larger than H²".into()))?;
    Ok(BruteH2Report {
        group: label.to_string(),
        e,
        z2_log,
        b2_log,
        h2_log,
        corrected_h2_log,
    })
}

/// Runs [`brute_h2`] at `e = 2` and `e = 3` and requires the corrected
/// values to agree.
pub fn brute_h2_stable(label: &str, g: &PcPresentation, budget: u128) -> Result<(BruteH2Report, BruteH2Report)> {
    let a = brute_h2(label, g, 2, budget)?;
    let b = brute_h2(label, g, 3, budget)?;
    if a.corrected_h2_log != b.corrected_h2_log {
        return Err(Error::Certification(format!(
            "{label}: corrected H² log {} at e = 2 but {} at e = 3",
            a.corrected_h2_log, b.corrected_h2_log
        )));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, FamilyId};

    fn corrected(f: FamilyId) -> u32 {
        let g = families::build(&f).unwrap();
        brute_h2_stable(&f.to_string(), &g, BRUTE_BUDGET).unwrap().0.corrected_h2_log
    }

    #[test]
    fn small_groups() {
        assert_eq!(corrected(FamilyId::elem_ab(3, 2)), 1);
        assert_eq!(corrected(FamilyId::elem_ab(3, 3)), 3);
        assert_eq!(corrected(FamilyId::heis(3)), 2);
    }

    #[test]
    fn cyclic_has_trivial_multiplier() {
        let g = families::build(&FamilyId::elem_ab(3, 1)).unwrap();
        let r = brute_h2("Z/3", &g, 2, 100).unwrap();
        assert_eq!((r.h2_log, r.corrected_h2_log), (1, 0));
    }

    #[test]
    fn budget_enforced() {
        let g = families::build(&FamilyId::elem_ab(3, 5)).unwrap();
        assert!(matches!(brute_h2("x", &g, 2, BRUTE_BUDGET), Err(Error::Budget { .. })));
    }
}
