//! Linear algebra over `Z/p^e`.
//!
//! [`ModSpan`] keeps a Howell-form basis of a submodule of `(Z/p^e)^n`: every
//! row has a pivot `p^v` in a distinct column, and the module is closed under
//! multiplication by `p` within the basis. Membership and solving then reduce
//! to a single left-to-right sweep.

use std::collections::BTreeMap;

/// Inverse of a unit modulo `m`.
pub fn inv_unit(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "{a} is not a unit mod {m}");
    s0.rem_euclid(m as i128) as u64
}

/// `p`-adic valuation of a nonzero residue.
pub fn valuation(mut a: u64, p: u64) -> u32 {
    let mut v = 0;
    while a % p == 0 {
        a /= p;
        v += 1;
    }
    v
}

#[derive(Clone, Debug)]
pub struct ModSpan {
    p: u64,
    e: u32,
    modulus: u64,
    ncols: usize,
    rows: BTreeMap<usize, Vec<u64>>,
}

impl ModSpan {
    pub fn new(p: u64, e: u32, ncols: usize) -> Self {
        ModSpan {
            p,
            e,
            modulus: p.pow(e),
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Rows of the basis keyed by pivot column; pivots are powers of `p`.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &Vec<u64>)> {
        self.rows.iter().map(|(c, r)| (*c, r))
    }

    /// Number of rows; equals the rank when `e = 1`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `log_p` of the number of elements in the span.
    pub fn log_size(&self) -> u32 {
        self.rows
            .iter()
            .map(|(&c, r)| self.e - valuation(r[c], self.p))
            .sum()
    }

    fn scale(&self, x: &[u64], f: u64) -> Vec<u64> {
        x.iter().map(|&a| (a as u128 * f as u128 % self.modulus as u128) as u64).collect()
    }

    fn sub_multiple(&self, x: &mut [u64], r: &[u64], f: u64, from: usize) {
        let m = self.modulus as u128;
        for j in from..self.ncols {
            if r[j] != 0 {
                let t = (r[j] as u128 * f as u128) % m;
                x[j] = ((x[j] as u128 + m - t) % m) as u64;
            }
        }
    }

    /// Adds a vector; returns whether the span grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let mut grew = false;
        let mut queue = vec![v.iter().map(|&a| a % self.modulus).collect::<Vec<_>>()];
        while let Some(mut x) = queue.pop() {
            let mut c = 0;
            while c < self.ncols {
                let a = x[c];
                if a == 0 {
                    c += 1;
                    continue;
                }
                let va = valuation(a, self.p);
                let pa = self.p.pow(va);
                let normalised = self.scale(&x, inv_unit(a / pa, self.modulus));
                let closure = self.scale(&normalised, self.p.pow(self.e - va));
                match self.rows.get(&c) {
                    Some(r) => {
                        let vr = valuation(r[c], self.p);
                        if va >= vr {
                            let f = a / self.p.pow(vr);
                            let r = r.clone();
                            self.sub_multiple(&mut x, &r, f, c);
                            c += 1;
                            continue;
                        }
                        let old = self.rows.insert(c, normalised).expect("row present");
                        queue.push(old);
                    }
                    None => {
                        self.rows.insert(c, normalised);
                    }
                }
                if closure.iter().any(|&t| t != 0) {
                    queue.push(closure);
                }
                grew = true;
                break;
            }
        }
        grew
    }

    /// Residue of `v` after reduction; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let mut x: Vec<u64> = v.iter().map(|&a| a % self.modulus).collect();
        for (&c, r) in &self.rows {
            let a = x[c];
            if a == 0 {
                continue;
            }
            let pv = r[c];
            if a % pv != 0 {
                continue;
            }
            self.sub_multiple(&mut x, r, a / pv, c);
        }
        x
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&a| a == 0)
    }

    /// Treats the last column as the right-hand side of `sum_j a_j u_j = b`
    /// and returns one solution, or `None` if the system is inconsistent.
    pub fn solve_augmented(&self) -> Option<Vec<u64>> {
        let k = self.ncols - 1;
        if self.rows.contains_key(&k) {
            return None;
        }
        let m = self.modulus as u128;
        let mut u = vec![0u64; k];
        for (&c, r) in self.rows.iter().rev() {
            let mut t = r[k] as u128;
            for j in c + 1..k {
                t = (t + m - (r[j] as u128 * u[j] as u128) % m) % m;
            }
            let pv = r[c] as u128;
            if t % pv != 0 {
                return None;
            }
            u[c] = (t / pv) as u64;
        }
        Some(u)
    }
}

/// Basis of `{f : rows · f = 0}` over `Z/p`.
pub fn kernel_mod_p(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&a| a % p).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..m.len()).find(|&k| m[k][c] != 0) else { continue };
        m.swap(r, k);
        let inv = inv_unit(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for k in 0..m.len() {
            if k != r && m[k][c] != 0 {
                let f = m[k][c];
                for j in 0..ncols {
                    m[k][j] = (m[k][j] + (p - f) * m[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][fc]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_size_over_z9() {
        let mut s = ModSpan::new(3, 2, 2);
        s.insert(vec![3, 1]);
        // <(3,1)> = {k(3,1)} has 9 elements
        assert_eq!(s.log_size(), 2);
        assert!(s.contains(&[0, 3]));
        assert!(!s.contains(&[1, 0]));
    }

    #[test]
    fn inconsistent_system_detected() {
        // 3u = 1 mod 9
        let mut s = ModSpan::new(3, 2, 2);
        s.insert(vec![3, 1]);
        assert_eq!(s.solve_augmented(), None);
        let mut s = ModSpan::new(3, 2, 2);
        s.insert(vec![3, 6]);
        let u = s.solve_augmented().unwrap();
        assert_eq!(3 * u[0] % 9, 6);
    }

    #[test]
    fn kernel_dimension() {
        let k = kernel_mod_p(&[vec![1, 1, 1]], 3, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!((v[0] + v[1] + v[2]) % 3, 0);
        }
    }

    #[test]
    fn inverse() {
        assert_eq!(inv_unit(2, 9) * 2 % 9, 1);
        assert_eq!(inv_unit(7, 27) * 7 % 27, 1);
    }
}
