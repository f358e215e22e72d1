//! Second cohomology with values in roots of unity.
//!
//! Cocycle values are exponents of a fixed primitive `p^e`-th root of unity,
//! so `α(x,y)α(xy,z) = α(y,z)α(x,yz)` becomes an additive identity mod `p^e`.

mod coboundary;
mod construct;
mod mu;
mod tensor;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pcgroup::PcPresentation;

pub use coboundary::{coboundary_solve, CoboundaryResult};
pub use construct::{bilinear_candidate, chi_bar, cocycle_from_mu, eta, CentralExtension, MuContext};
pub use mu::{MuFamily, MuParameters};
pub use tensor::{
    build_x, h2_log, h2_log_from_x, h2_log_gp_quotient, h2_order, x_subspace, TensorSpace, XSubspace,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    FromMu,
    FromPullback,
    FromTable,
}

type Evaluator = dyn Fn(&[u32], &[u32]) -> u64 + Send + Sync;

/// A function `G × G -> Z/p^e`, evaluated on normal forms.
#[derive(Clone)]
pub struct Cocycle {
    pub p: u32,
    pub e: u32,
    pub provenance: Provenance,
    group: u64,
    eval: Arc<Evaluator>,
    table: Option<Arc<Vec<u64>>>,
    order: usize,
}

impl fmt::Debug for Cocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cocycle")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("provenance", &self.provenance)
            .field("tabulated", &self.table.is_some())
            .finish()
    }
}

impl Cocycle {
    pub fn new(
        g: &PcPresentation,
        e: u32,
        provenance: Provenance,
        eval: impl Fn(&[u32], &[u32]) -> u64 + Send + Sync + 'static,
    ) -> Self {
        Cocycle {
            p: g.prime(),
            e,
            provenance,
            group: g.fingerprint(),
            eval: Arc::new(eval),
            table: None,
            order: g.order_unchecked() as usize,
        }
    }

    /// Dense table indexed `index_of(x) * |G| + index_of(y)`.
    pub fn from_table(g: &PcPresentation, e: u32, table: Vec<u64>) -> Result<Self> {
        let n = g.order_unchecked() as usize;
        if table.len() != n * n {
            return Err(Error::InvalidParameters(format!("table has {} entries, expected {}", table.len(), n * n)));
        }
        let m = (g.prime() as u64).pow(e);
        let table: Arc<Vec<u64>> = Arc::new(table.into_iter().map(|v| v % m).collect());
        let t = table.clone();
        let gc = g.clone();
        let mut c = Cocycle::new(g, e, Provenance::FromTable, move |x, y| {
            t[gc.index_of(x) * n + gc.index_of(y)]
        });
        c.table = Some(table);
        Ok(c)
    }

    pub fn modulus(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }

    pub fn fingerprint(&self) -> u64 {
        self.group
    }

    pub fn eval(&self, x: &[u32], y: &[u32]) -> u64 {
        (self.eval)(x, y) % self.modulus()
    }

    pub fn table(&self) -> Option<&[u64]> {
        self.table.as_deref().map(|v| v.as_slice())
    }

    /// Fills the dense table (in parallel) if `|G| <= budget`.
    pub fn tabulated(&self, g: &PcPresentation, budget: u128) -> Result<Cocycle> {
        self.check(g)?;
        if self.table.is_some() {
            return Ok(self.clone());
        }
        let n = g.order_unchecked();
        if n > budget {
            return Err(Error::budget("cocycle table", n, budget));
        }
        let n = n as usize;
        let elems: Vec<Vec<u32>> = (0..n).map(|i| g.element_at(i)).collect();
        let table: Vec<u64> = (0..n * n)
            .into_par_iter()
            .map(|k| self.eval(&elems[k / n], &elems[k % n]))
            .collect();
        let mut c = self.clone();
        c.table = Some(Arc::new(table));
        Ok(c)
    }

    /// Pointwise sum with a scalar multiple of another cocycle.
    pub fn add_scaled(&self, other: &Cocycle, k: u64) -> Result<Cocycle> {
        if self.group != other.group || self.modulus() != other.modulus() {
            return Err(Error::PresentationMismatch);
        }
        let (a, b) = (self.eval.clone(), other.eval.clone());
        let m = self.modulus();
        Ok(Cocycle {
            p: self.p,
            e: self.e,
            provenance: self.provenance,
            group: self.group,
            eval: Arc::new(move |x, y| (a(x, y) % m + k % m * (b(x, y) % m)) % m),
            table: None,
            order: self.order,
        })
    }

    /// Returns a copy whose value at `(x, y)` is shifted by `delta`; used for
    /// mutation tests.
    pub fn corrupted(&self, g: &PcPresentation, x: &[u32], y: &[u32], delta: u64) -> Cocycle {
        let m = self.modulus();
        let (xi, yi) = (g.index_of(x), g.index_of(y));
        let base = self.eval.clone();
        let gc = g.clone();
        Cocycle {
            p: self.p,
            e: self.e,
            provenance: Provenance::FromTable,
            group: self.group,
            eval: Arc::new(move |a, b| {
                let v = base(a, b);
                if gc.index_of(a) == xi && gc.index_of(b) == yi {
                    (v + delta) % m
                } else {
                    v
                }
            }),
            table: None,
            order: self.order,
        }
    }

    fn check(&self, g: &PcPresentation) -> Result<()> {
        if g.fingerprint() != self.group {
            Err(Error::PresentationMismatch)
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// All `|G|^3` triples; requires `|G|^3 <= budget`.
    Exhaustive { budget: u128 },
    /// All triples drawn from the identity and the pc-generators.
    Generators,
    Sampled { n: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityVerdict {
    pub pass: bool,
    pub checked: u64,
    /// A triple `(x, y, z)` violating the identity, as exponent vectors.
    pub witness: Option<[Vec<u32>; 3]>,
}

fn identity_holds(g: &PcPresentation, a: &Cocycle, x: &[u32], y: &[u32], z: &[u32]) -> bool {
    let m = a.modulus();
    let xy = g.mul_raw(x, y);
    let yz = g.mul_raw(y, z);
    (a.eval(x, y) + a.eval(&xy, z)) % m == (a.eval(y, z) + a.eval(x, &yz)) % m
}

const SAMPLE_CHUNK: usize = 4096;

/// Checks the 2-cocycle identity.
pub fn cocycle_identity_check(a: &Cocycle, g: &PcPresentation, mode: CheckMode) -> Result<IdentityVerdict> {
    a.check(g)?;
    let found = |checked: u64, w: Option<[Vec<u32>; 3]>| IdentityVerdict {
        pass: w.is_none(),
        checked,
        witness: w,
    };
    match mode {
        CheckMode::Exhaustive { budget } => {
            let n = g.group_order()?;
            if n.saturating_pow(3) > budget {
                return Err(Error::budget("exhaustive triples", n.saturating_pow(3), budget));
            }
            let n = n as usize;
            let elems: Vec<Vec<u32>> = (0..n).map(|i| g.element_at(i)).collect();
            let w = (0..n * n).into_par_iter().find_first(|&k| {
                let (x, y) = (&elems[k / n], &elems[k % n]);
                elems.iter().any(|z| !identity_holds(g, a, x, y, z))
            });
            let w = w.map(|k| {
                let (x, y) = (&elems[k / n], &elems[k % n]);
                let z = elems.iter().find(|z| !identity_holds(g, a, x, y, z)).expect("witness");
                [x.clone(), y.clone(), z.clone()]
            });
            Ok(found((n * n * n) as u64, w))
        }
        CheckMode::Generators => {
            let mut pool = vec![g.identity().into_exponents()];
            pool.extend((0..g.num_generators()).map(|i| g.generator(i).into_exponents()));
            let k = pool.len();
            for x in &pool {
                for y in &pool {
                    for z in &pool {
                        if !identity_holds(g, a, x, y, z) {
                            return Ok(found((k * k * k) as u64, Some([x.clone(), y.clone(), z.clone()])));
                        }
                    }
                }
            }
            Ok(found((k * k * k) as u64, None))
        }
        CheckMode::Sampled { n, seed } => {
            let chunks = n.div_ceil(SAMPLE_CHUNK);
            let w = (0..chunks).into_par_iter().find_map_first(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (c as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                let len = SAMPLE_CHUNK.min(n - c * SAMPLE_CHUNK);
                (0..len).find_map(|_| {
                    let [x, y, z] = [0; 3].map(|_| random_element(g, &mut rng));
                    (!identity_holds(g, a, &x, &y, &z)).then_some([x, y, z])
                })
            });
            Ok(found(n as u64, w))
        }
    }
}

pub(crate) fn random_element(g: &PcPresentation, rng: &mut impl Rng) -> Vec<u32> {
    (0..g.num_generators()).map(|i| rng.gen_range(0..g.relative_order(i))).collect()
}
