use std::fmt;

use serde::Serialize;

/// A `q`-th root of unity `ζ_q^value`, `q` a prime power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootExp {
    pub value: u32,
    pub modulus: u32,
}

impl RootExp {
    pub fn new(value: i64, modulus: u32) -> Self {
        RootExp {
            value: value.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    pub fn one(modulus: u32) -> Self {
        RootExp { value: 0, modulus }
    }

    pub fn mul(self, other: RootExp) -> RootExp {
        assert_eq!(self.modulus, other.modulus, "root moduli differ");
        RootExp::new(self.value as i64 + other.value as i64, self.modulus)
    }

    pub fn inv(self) -> RootExp {
        RootExp::new(-(self.value as i64), self.modulus)
    }

    pub fn pow(self, k: i64) -> RootExp {
        RootExp::new(self.value as i64 * k, self.modulus)
    }

    /// The same root written with exponent modulus `m`, a multiple of ours.
    pub fn lift(self, m: u32) -> RootExp {
        assert_eq!(m % self.modulus, 0);
        RootExp {
            value: self.value * (m / self.modulus),
            modulus: m,
        }
    }

    /// Multiplicative order.
    pub fn order(self) -> u32 {
        self.modulus / gcd(self.value, self.modulus)
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_of(q: u32) -> u32 {
    (2..=q).find(|d| q % d == 0).expect("q > 1")
}

/// An element of `Z[ζ_q]`, stored as its coefficient vector reduced modulo
/// the `q`-th cyclotomic polynomial, so equality of values is equality of
/// vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    q: u32,
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(q: u32) -> Self {
        let phi = if q == 1 { 1 } else { q - q / prime_of(q) };
        CycInt {
            q,
            coeffs: vec![0; phi as usize],
        }
    }

    /// `Σ_k counts[k] ζ^k` for a vector of length `q`.
    pub fn from_counts(q: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), q as usize);
        if q == 1 {
            return CycInt {
                q,
                coeffs: vec![counts[0]],
            };
        }
        let p = prime_of(q);
        let step = (q / p) as usize;
        let phi = q as usize - step;
        let mut c = counts.to_vec();
        // ζ^{(p-1)q/p} = -Σ_{i<p-1} ζ^{i q/p}
        for k in (phi..q as usize).rev() {
            let v = c[k];
            if v != 0 {
                let base = k - phi;
                for i in 0..p as usize - 1 {
                    c[base + i * step] -= v;
                }
                c[k] = 0;
            }
        }
        c.truncate(phi);
        CycInt { q, coeffs: c }
    }

    pub fn from_roots(q: u32, roots: impl IntoIterator<Item = u32>) -> Self {
        let mut counts = vec![0i64; q as usize];
        for r in roots {
            counts[(r % q) as usize] += 1;
        }
        Self::from_counts(q, &counts)
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Rational integer value, if the element lies in `Z`.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.q, other.q);
        CycInt {
            q: self.q,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    /// Product with `ζ^k`.
    pub fn times_root(&self, k: u32) -> CycInt {
        let mut counts = vec![0i64; self.q as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            counts[(i + k as usize) % self.q as usize] += c;
        }
        Self::from_counts(self.q, &counts)
    }

    /// Complex conjugate (`ζ -> ζ^{-1}`).
    pub fn conj(&self) -> CycInt {
        let mut counts = vec![0i64; self.q as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            counts[(self.q as usize - i) % self.q as usize] += c;
        }
        Self::from_counts(self.q, &counts)
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.q, other.q);
        let q = self.q as usize;
        let mut counts = vec![0i64; q];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                counts[(i + j) % q] += a * b;
            }
        }
        Self::from_counts(self.q, &counts)
    }

    /// Field trace from `Q(ζ_q)` to `Q`.
    pub fn trace(&self) -> i64 {
        // Tr(ζ^k) is φ(q) for k ≡ 0, -q/p when ζ^k has order p, 0 otherwise
        let q = self.q;
        if q == 1 {
            return self.coeffs[0];
        }
        let p = prime_of(q);
        let phi = (q - q / p) as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                let ord = q / gcd(k as u32, q);
                let t = match ord {
                    1 => phi,
                    o if o == p => -((q / p) as i64),
                    _ => 0,
                };
                c * t
            })
            .sum()
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| if k == 0 { format!("{c}") } else { format!("{c}*z^{k}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_all_roots_vanishes() {
        for q in [3, 9, 5, 25, 27] {
            assert!(CycInt::from_roots(q, 0..q).is_zero(), "q = {q}");
            assert!(!CycInt::from_roots(q, 0..q - 1).is_zero());
        }
    }

    #[test]
    fn cube_roots() {
        // 1 + ζ_3 = -ζ_3^2
        let a = CycInt::from_roots(3, [0, 1]);
        assert_eq!(a.add(&CycInt::from_roots(3, [2])), CycInt::zero(3));
        assert_eq!(CycInt::from_roots(3, [1]).times_root(2), CycInt::from_roots(3, [0]));
        assert_eq!(CycInt::from_roots(9, [3, 6, 0]), CycInt::zero(9));
    }

    #[test]
    fn norm_via_trace() {
        // |1 + ζ_9|² traced over Q(ζ_9): Σ_σ (2 + ζ^k + ζ^-k) = 2·6 + 0
        let a = CycInt::from_roots(9, [0, 1]);
        assert_eq!(a.mul(&a.conj()).trace(), 12);
        assert_eq!(CycInt::from_roots(9, [0]).trace(), 6);
    }

    #[test]
    fn root_exp_arithmetic() {
        let z = RootExp::new(2, 9);
        assert_eq!(z.pow(5), RootExp::new(1, 9));
        assert_eq!(z.mul(z.inv()), RootExp::one(9));
        assert_eq!(RootExp::new(3, 9).order(), 3);
        assert_eq!(RootExp::new(1, 3).lift(9), RootExp::new(3, 9));
    }
}
