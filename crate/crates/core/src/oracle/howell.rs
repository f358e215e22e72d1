use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Sparse matrix over `Z/p^e`, stored as `(row, col) -> value` with no zero
/// entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseModMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub p: u64,
    pub e: u32,
    entries: BTreeMap<(usize, usize), u64>,
}

impl SparseModMatrix {
    pub fn new(nrows: usize, ncols: usize, p: u64, e: u32) -> Self {
        SparseModMatrix {
            nrows,
            ncols,
            p,
            e,
            entries: BTreeMap::new(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.e)
    }

    /// Adds `v` to entry `(r, c)`.
    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.nrows && c < self.ncols, "entry ({r},{c}) out of range");
        let m = self.modulus() as i64;
        let cur = self.entries.get(&(r, c)).copied().unwrap_or(0) as i64;
        let new = (cur + v).rem_euclid(m) as u64;
        if new == 0 {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), new);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries.get(&(r, c)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    fn dense_rows(&self) -> Vec<Vec<u64>> {
        let mut rows = vec![vec![0u64; self.ncols]; self.nrows];
        for (&(r, c), &v) in &self.entries {
            rows[r][c] = v;
        }
        rows
    }

    /// `A x` mod `p^e`.
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let m = self.modulus();
        let mut out = vec![0u64; self.nrows];
        for (&(r, c), &v) in &self.entries {
            out[r] = (out[r] + v * x[c]) % m;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum HowellOutcome {
    Solution { x: Vec<u64> },
    /// `Σ coeff_i · row_i(A) = 0` while `Σ coeff_i · b_i = value != 0`.
    Inconsistent { combination: Vec<(usize, u64)>, value: u64 },
}

fn val(mut a: u64, p: u64) -> u32 {
    let mut v = 0;
    while a % p == 0 {
        a /= p;
        v += 1;
    }
    v
}

fn unit_inverse(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1, mut s0, mut s1) = (m as i64, (a % m) as i64, 0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "not a unit");
    s0.rem_euclid(m as i64) as u64
}

struct Row {
    coef: Vec<u64>,
    rhs: u64,
    track: Vec<u64>,
}

/// Solves `A x = b` over `Z/p^e` by column-wise elimination that pivots on
/// the entry of least valuation (units first) and adds the `p^{e-v}` multiple
/// of each pivot row back, which yields a Howell form.
pub fn howell_solve(a: &SparseModMatrix, b: &[u64]) -> Result<HowellOutcome> {
    if b.len() != a.nrows {
        return Err(Error::InvalidParameters(format!(
            "right-hand side has {} entries, matrix has {} rows",
            b.len(),
            a.nrows
        )));
    }
    let (p, e, m) = (a.p, a.e, a.modulus());
    let nr = a.nrows;
    let mut active: Vec<Row> = a
        .dense_rows()
        .into_iter()
        .enumerate()
        .map(|(i, coef)| {
            let mut track = vec![0u64; nr];
            track[i] = 1;
            Row {
                coef,
                rhs: b[i] % m,
                track,
            }
        })
        .collect();
    let sub = |x: &mut Row, y: &Row, f: u64| {
        for (u, v) in x.coef.iter_mut().zip(&y.coef) {
            *u = (*u + m - f * v % m) % m;
        }
        x.rhs = (x.rhs + m - f * y.rhs % m) % m;
        for (u, v) in x.track.iter_mut().zip(&y.track) {
            *u = (*u + m - f * v % m) % m;
        }
    };
    let mut pivots: Vec<(usize, u32, Row)> = Vec::new();
    for c in 0..a.ncols {
        let best = active
            .iter()
            .enumerate()
            .filter(|(_, r)| r.coef[c] != 0)
            .min_by_key(|(i, r)| (val(r.coef[c], p), *i))
            .map(|(i, _)| i);
        let Some(bi) = best else { continue };
        let mut piv = active.remove(bi);
        let v = val(piv.coef[c], p);
        let u = unit_inverse(piv.coef[c] / p.pow(v), m);
        piv.coef.iter_mut().for_each(|x| *x = *x * u % m);
        piv.rhs = piv.rhs * u % m;
        piv.track.iter_mut().for_each(|x| *x = *x * u % m);
        let pv = p.pow(v);
        for r in active.iter_mut() {
            if r.coef[c] != 0 {
                let f = r.coef[c] / pv;
                sub(r, &piv, f);
            }
        }
        if v > 0 {
            let k = p.pow(e - v);
            let closure = Row {
                coef: piv.coef.iter().map(|x| x * k % m).collect(),
                rhs: piv.rhs * k % m,
                track: piv.track.iter().map(|x| x * k % m).collect(),
            };
            active.push(closure);
        }
        active.retain(|r| r.coef.iter().any(|&x| x != 0) || r.rhs != 0);
        pivots.push((c, v, piv));
    }
    if let Some(bad) = active.iter().find(|r| r.rhs != 0) {
        let combination: Vec<(usize, u64)> =
            bad.track.iter().enumerate().filter(|(_, &t)| t != 0).map(|(i, &t)| (i, t)).collect();
        return Ok(HowellOutcome::Inconsistent {
            combination,
            value: bad.rhs,
        });
    }
    let mut x = vec![0u64; a.ncols];
    for (c, v, row) in pivots.iter().rev() {
        let mut t = row.rhs;
        for j in c + 1..a.ncols {
            t = (t + m - row.coef[j] * x[j] % m) % m;
        }
        let pv = p.pow(*v);
        if t % pv != 0 {
            return Err(Error::Internal("back substitution hit a non-divisible value".into()));
        }
        x[*c] = t / pv;
    }
    if a.apply(&x) != b.iter().map(|v| v % m).collect::<Vec<_>>() {
        return Err(Error::Internal("solution failed substitution".into()));
    }
    Ok(HowellOutcome::Solution { x })
}

/// Re-verifies an inconsistency certificate.
pub fn verify_certificate(a: &SparseModMatrix, b: &[u64], combination: &[(usize, u64)], value: u64) -> bool {
    let m = a.modulus();
    let mut row = vec![0u64; a.ncols];
    for (r, c, v) in a.entries() {
        if let Some(&(_, k)) = combination.iter().find(|(i, _)| *i == r) {
            row[c] = (row[c] + k * v) % m;
        }
    }
    let rhs = combination.iter().map(|&(i, k)| k * (b[i] % m) % m).sum::<u64>() % m;
    row.iter().all(|&x| x == 0) && rhs == value % m && value % m != 0
}

/// Row span over `Z/p^e` kept in Howell form: one row per pivot column,
/// leading entry a power of `p`, and every `p^{e-v}` multiple of a pivot row
/// reduced back into the span. Rows are dense `u32` vectors.
pub struct HowellSpan {
    p: u64,
    e: u32,
    m: u64,
    ncols: usize,
    pivots: Vec<Option<(u32, Vec<u32>)>>,
}

impl HowellSpan {
    pub fn new(p: u64, e: u32, ncols: usize) -> Self {
        HowellSpan {
            p,
            e,
            m: p.pow(e),
            ncols,
            pivots: vec![None; ncols],
        }
    }

    /// `log_p` of the number of elements in the span.
    pub fn log_size(&self) -> u32 {
        self.pivots.iter().flatten().map(|(v, _)| self.e - v).sum()
    }

    fn normalize(&self, r: &mut [u32], c: usize) -> u32 {
        let v = val(r[c] as u64, self.p);
        let u = unit_inverse(r[c] as u64 / self.p.pow(v), self.m);
        for x in r[c..].iter_mut() {
            *x = (*x as u64 * u % self.m) as u32;
        }
        v
    }

    fn closure(&self, r: &[u32], v: u32) -> Option<Vec<u32>> {
        if v == 0 {
            return None;
        }
        let k = self.p.pow(self.e - v);
        let out: Vec<u32> = r.iter().map(|&x| (x as u64 * k % self.m) as u32).collect();
        out.iter().any(|&x| x != 0).then_some(out)
    }

    pub fn insert(&mut self, row: Vec<u32>) {
        assert_eq!(row.len(), self.ncols);
        let m = self.m;
        let mut stack = vec![row];
        while let Some(mut r) = stack.pop() {
            let mut c = 0;
            while c < self.ncols {
                if r[c] == 0 {
                    c += 1;
                    continue;
                }
                let v = val(r[c] as u64, self.p);
                match &self.pivots[c] {
                    Some((w, piv)) if v >= *w => {
                        let f = r[c] as u64 / self.p.pow(*w);
                        for (x, &y) in r[c..].iter_mut().zip(&piv[c..]) {
                            *x = ((*x as u64 + m - f * y as u64 % m) % m) as u32;
                        }
                        c += 1;
                    }
                    _ => {
                        let v = self.normalize(&mut r, c);
                        if let Some(cl) = self.closure(&r, v) {
                            stack.push(cl);
                        }
                        if let Some((_, old)) = self.pivots[c].replace((v, r)) {
                            stack.push(old);
                        }
                        break;
                    }
                }
            }
        }
    }
}

/// `log_p` of the size of the row span of `rows` over `Z/p^e`.
pub fn row_span_log(rows: Vec<Vec<u32>>, ncols: usize, p: u64, e: u32) -> u32 {
    let mut span = HowellSpan::new(p, e, ncols);
    for r in rows {
        span.insert(r);
    }
    span.log_size()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn identity_system_returns_rhs() {
        let mut a = SparseModMatrix::new(3, 3, 3, 2);
        for i in 0..3 {
            a.add(i, i, 1);
        }
        let b = vec![4, 0, 8];
        assert_eq!(howell_solve(&a, &b).unwrap(), HowellOutcome::Solution { x: b.clone() });
    }

    #[test]
    fn zero_divisor_system() {
        let mut a = SparseModMatrix::new(1, 1, 3, 2);
        a.add(0, 0, 3);
        match howell_solve(&a, &[3]).unwrap() {
            HowellOutcome::Solution { x } => assert_eq!(3 * x[0] % 9, 3),
            other => panic!("{other:?}"),
        }
        match howell_solve(&a, &[1]).unwrap() {
            HowellOutcome::Inconsistent { combination, value } => {
                assert!(verify_certificate(&a, &[1], &combination, value))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn random_solvable_system() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let (nr, nc) = (200, 300);
        let mut a = SparseModMatrix::new(nr, nc, 3, 2);
        for r in 0..nr {
            for _ in 0..6 {
                a.add(r, rng.gen_range(0..nc), rng.gen_range(1..9));
            }
        }
        let x0: Vec<u64> = (0..nc).map(|_| rng.gen_range(0..9)).collect();
        let b = a.apply(&x0);
        match howell_solve(&a, &b).unwrap() {
            HowellOutcome::Solution { x } => assert_eq!(a.apply(&x), b),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn span_log_over_z9() {
        assert_eq!(row_span_log(vec![vec![3, 1]], 2, 3, 2), 2);
        assert_eq!(row_span_log(vec![vec![1, 0], vec![0, 3]], 2, 3, 2), 3);
        assert_eq!(row_span_log(vec![vec![3, 0], vec![1, 1], vec![0, 6]], 2, 3, 2), 3);
    }
}
