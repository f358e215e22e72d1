use crate::error::{Error, Result};
use crate::pcgroup::{Element, PcPresentation};

/// Default number of rewriting steps before giving up.
pub const STEP_LIMIT: usize = 5_000_000;

/// Letters of `g^-1`: `g^{r-1} · (g^r)^-1`, recursing into the power word.
fn inverse_letter(p: &PcPresentation, g: usize, out: &mut Vec<usize>) {
    let r = p.relative_order(g) as usize;
    out.extend(std::iter::repeat_n(g, r - 1));
    let w = p.power_relation(g);
    for (i, &k) in w.iter().enumerate().rev() {
        for _ in 0..k {
            inverse_letter(p, i, out);
        }
    }
}

fn normal_letters(e: &[u32], out: &mut Vec<usize>) {
    for (i, &k) in e.iter().enumerate() {
        out.extend(std::iter::repeat_n(i, k as usize));
    }
}

/// Rewrites a word to normal form by applying the relations as rules on a
/// flat list of letters: an adjacent pair `g_a g_b` with `a > b` becomes
/// `g_b g_a [g_a, g_b]`, and `r` consecutive copies of `g` become the power
/// word. The lowest generator that is out of place is always moved left first.
pub fn naive_rewrite(p: &PcPresentation, word: &[(usize, i64)], step_limit: usize) -> Result<Element> {
    let n = p.num_generators();
    let mut w: Vec<usize> = Vec::new();
    for &(g, k) in word {
        if g >= n {
            return Err(Error::InvalidParameters(format!("generator index {g} out of range")));
        }
        if k >= 0 {
            w.extend(std::iter::repeat_n(g, k as usize));
        } else {
            for _ in 0..k.unsigned_abs() {
                inverse_letter(p, g, &mut w);
            }
        }
    }
    let mut steps = 0usize;
    loop {
        steps += 1;
        if steps > step_limit {
            return Err(Error::StepLimit);
        }
        if reduce_power(p, &mut w) {
            continue;
        }
        // lowest generator that has a larger letter directly to its left
        let mut best: Option<(usize, usize)> = None;
        for i in 1..w.len() {
            if w[i - 1] > w[i] && best.is_none_or(|(g, _)| w[i] < g) {
                best = Some((w[i], i));
            }
        }
        let Some((_, i)) = best else { break };
        let (a, b) = (w[i - 1], w[i]);
        let mut repl = vec![b, a];
        if let Some(c) = p.commutator_relation(a, b) {
            normal_letters(c, &mut repl);
        }
        w.splice(i - 1..=i, repl);
    }
    let mut e = vec![0u32; n];
    for &g in &w {
        e[g] += 1;
    }
    p.element(&e)
}

/// Replaces the first run of `r_g` copies of a letter `g` by its power word.
fn reduce_power(p: &PcPresentation, w: &mut Vec<usize>) -> bool {
    let mut start = 0;
    while start < w.len() {
        let g = w[start];
        let mut end = start;
        while end < w.len() && w[end] == g {
            end += 1;
        }
        let r = p.relative_order(g) as usize;
        if end - start >= r {
            let mut repl = Vec::new();
            normal_letters(p.power_relation(g), &mut repl);
            w.splice(start..start + r, repl);
            return true;
        }
        start = end;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, FamilyId};

    #[test]
    fn swap_in_heisenberg() {
        let g = families::build(&FamilyId::heis(3)).unwrap();
        let e = naive_rewrite(&g, &[(1, 1), (0, 1)], STEP_LIMIT).unwrap();
        assert_eq!(e.exponents(), &[1, 1, 2]);
        assert!(naive_rewrite(&g, &[], STEP_LIMIT).unwrap().is_identity());
    }

    #[test]
    fn inverse_letters_with_power_relation() {
        let g = families::build(&FamilyId::maxrank_gp(3, 3)).unwrap();
        let w = [(0, -1), (1, 2), (0, -2), (4, -1)];
        assert_eq!(naive_rewrite(&g, &w, STEP_LIMIT).unwrap(), g.collect(&w).unwrap());
    }

    #[test]
    fn step_limit_reported() {
        let g = families::build(&FamilyId::hstar(3, 3)).unwrap();
        let w: Vec<(usize, i64)> = (0..10).map(|i| (2 - i % 3, 1)).collect();
        assert_eq!(naive_rewrite(&g, &w, 3), Err(Error::StepLimit));
    }
}
