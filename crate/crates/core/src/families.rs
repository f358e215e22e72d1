//! Constructors for the named groups.
//!
//! Generator order is always depth-1 generators first (`x_i`, `a_i`/`b_i`,
//! `y_r` in `G*`), then commutator generators, then the central third layer.
//! Names are `x1`, `y12`, `z123` and so on, so indices up to 9 read cleanly.

use std::fmt;

use crate::error::{Error, Result};
use crate::pcgroup::{is_prime, Element, PcPresentation, PresentationBuilder, SubgroupSpec, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    ElemAb,
    Heis,
    EsP,
    EsP2,
    MaxrankExpP,
    MaxrankGpP,
    HStar,
    KStar,
    GStar,
    RepkElemAb,
    HatH,
    EsTimesAb,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 12] = [
        FamilyTag::ElemAb,
        FamilyTag::Heis,
        FamilyTag::EsP,
        FamilyTag::EsP2,
        FamilyTag::MaxrankExpP,
        FamilyTag::MaxrankGpP,
        FamilyTag::HStar,
        FamilyTag::KStar,
        FamilyTag::GStar,
        FamilyTag::RepkElemAb,
        FamilyTag::HatH,
        FamilyTag::EsTimesAb,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            FamilyTag::ElemAb => "elab",
            FamilyTag::Heis => "heis",
            FamilyTag::EsP => "es-p",
            FamilyTag::EsP2 => "es-p2",
            FamilyTag::MaxrankExpP => "maxrank-exp-p",
            FamilyTag::MaxrankGpP => "maxrank-gp",
            FamilyTag::HStar => "hstar",
            FamilyTag::KStar => "kstar",
            FamilyTag::GStar => "gstar",
            FamilyTag::RepkElemAb => "repk",
            FamilyTag::HatH => "hath",
            FamilyTag::EsTimesAb => "es-times-ab",
        }
    }

    pub fn from_cli_name(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.cli_name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown family {s:?}")))
    }
}

/// A family member. `d` is the number of minimal generators (for
/// `ES_TIMES_AB` the total `2m + t`, for `REPK_ELEM_AB` the rank `n`); `m` is
/// only read by the extraspecial families and `G_STAR`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyId {
    pub tag: FamilyTag,
    pub p: u32,
    pub d: u32,
    pub m: u32,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            FamilyTag::Heis | FamilyTag::HatH => write!(f, "{}(p={})", self.tag.cli_name(), self.p),
            FamilyTag::EsP | FamilyTag::EsP2 => write!(f, "{}(p={},m={})", self.tag.cli_name(), self.p, self.m),
            FamilyTag::GStar | FamilyTag::EsTimesAb => {
                write!(f, "{}(p={},d={},m={})", self.tag.cli_name(), self.p, self.d, self.m)
            }
            _ => write!(f, "{}(p={},d={})", self.tag.cli_name(), self.p, self.d),
        }
    }
}

impl FamilyId {
    pub fn new(tag: FamilyTag, p: u32, d: u32, m: u32) -> Result<Self> {
        let (d, m) = match tag {
            FamilyTag::Heis | FamilyTag::HatH => (2, 1),
            FamilyTag::EsP | FamilyTag::EsP2 => (2 * m, m),
            _ => (d, m),
        };
        let f = FamilyId { tag, p, d, m };
        f.validate()?;
        Ok(f)
    }

    pub fn elem_ab(p: u32, d: u32) -> Self {
        FamilyId { tag: FamilyTag::ElemAb, p, d, m: 1 }
    }
    pub fn heis(p: u32) -> Self {
        FamilyId { tag: FamilyTag::Heis, p, d: 2, m: 1 }
    }
    pub fn es_p(p: u32, m: u32) -> Self {
        FamilyId { tag: FamilyTag::EsP, p, d: 2 * m, m }
    }
    pub fn es_p2(p: u32, m: u32) -> Self {
        FamilyId { tag: FamilyTag::EsP2, p, d: 2 * m, m }
    }
    pub fn maxrank_exp_p(p: u32, d: u32) -> Self {
        FamilyId { tag: FamilyTag::MaxrankExpP, p, d, m: 1 }
    }
    pub fn maxrank_gp(p: u32, d: u32) -> Self {
        FamilyId { tag: FamilyTag::MaxrankGpP, p, d, m: 1 }
    }
    pub fn hstar(p: u32, d: u32) -> Self {
        FamilyId { tag: FamilyTag::HStar, p, d, m: 1 }
    }
    pub fn kstar(p: u32, d: u32) -> Self {
        FamilyId { tag: FamilyTag::KStar, p, d, m: 1 }
    }
    pub fn gstar(p: u32, d: u32) -> Self {
        FamilyId { tag: FamilyTag::GStar, p, d, m: 1 }
    }
    pub fn repk(p: u32, n: u32) -> Self {
        FamilyId { tag: FamilyTag::RepkElemAb, p, d: n, m: 1 }
    }
    pub fn hath(p: u32) -> Self {
        FamilyId { tag: FamilyTag::HatH, p, d: 2, m: 1 }
    }
    pub fn es_times_ab(p: u32, m: u32, d: u32) -> Self {
        FamilyId { tag: FamilyTag::EsTimesAb, p, d, m }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        if self.p < 3 || !is_prime(self.p) {
            return bad(format!("p must be an odd prime, got {}", self.p));
        }
        let (d, m) = (self.d, self.m);
        match self.tag {
            FamilyTag::ElemAb | FamilyTag::RepkElemAb if d < 1 => bad(format!("{} needs d >= 1", self.tag.cli_name())),
            FamilyTag::EsP | FamilyTag::EsP2 if m < 1 => bad("extraspecial groups need m >= 1".into()),
            FamilyTag::HStar if d < 2 => bad(format!("hstar needs d >= 2, got d = {d}")),
            FamilyTag::MaxrankExpP | FamilyTag::MaxrankGpP | FamilyTag::KStar if d < 3 => {
                bad(format!("{} needs d >= 3, got d = {d}", self.tag.cli_name()))
            }
            FamilyTag::GStar if d < 3 => bad(format!("gstar needs d >= 3, got d = {d}")),
            FamilyTag::GStar if m != 1 => bad(format!("gstar is only defined for m = 1, got m = {m}")),
            FamilyTag::EsTimesAb if m < 1 || d < 2 * m => {
                bad(format!("es-times-ab needs m >= 1 and d >= 2m, got d = {d}, m = {m}"))
            }
            _ if d > 12 => bad(format!("d = {d} is too large")),
            _ => Ok(()),
        }
    }

    /// log_p of the closed-form group order.
    pub fn expected_order_log_p(&self) -> u32 {
        let (d, m) = (self.d, self.m);
        match self.tag {
            FamilyTag::ElemAb => d,
            FamilyTag::Heis => 3,
            FamilyTag::EsP | FamilyTag::EsP2 => 2 * m + 1,
            FamilyTag::MaxrankExpP | FamilyTag::MaxrankGpP | FamilyTag::RepkElemAb => d * (d + 1) / 2,
            FamilyTag::HStar => d * (d + 1) * (2 * d + 1) / 6,
            FamilyTag::KStar => d * (d + 1) * (2 * d + 1) / 6 - d,
            FamilyTag::GStar => d * (d + 1) / 2 + 2,
            FamilyTag::HatH => 5,
            FamilyTag::EsTimesAb => d + 1,
        }
    }
}

fn pairs(d: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for j in 1..=d {
        for k in j + 1..=d {
            v.push((j, k));
        }
    }
    v
}

/// The independent third-layer labels `(a, b, c)` of `H_d*`, meaning
/// `z_abc = [x_a, y_bc]`, sorted lexicographically.
pub fn hstar_z_labels(d: u32) -> Vec<(u32, u32, u32)> {
    let mut v = Vec::new();
    for (i, j) in pairs(d) {
        v.push((i, i, j));
        v.push((j, i, j));
        for k in j + 1..=d {
            v.push((i, j, k));
            v.push((j, i, k));
        }
    }
    v.sort();
    v
}

/// `z_abc` as a product of independent labels (with exponents), using
/// `z_rmn = z_nmr z_mnr^-1` for `m < n < r`.
pub fn hstar_z_expand(a: u32, b: u32, c: u32) -> Vec<((u32, u32, u32), i64)> {
    debug_assert!(b < c);
    if a > c {
        vec![((c, b, a), 1), ((b, c, a), -1)]
    } else {
        vec![((a, b, c), 1)]
    }
}

/// In `K_d*`: `z_112 = z_212 = 1`, `z_21k` is identified with `z_12k`.
fn kstar_label(l: (u32, u32, u32)) -> Option<(u32, u32, u32)> {
    match l {
        (1, 1, 2) | (2, 1, 2) => None,
        (2, 1, k) => Some((1, 2, k)),
        other => Some(other),
    }
}

pub fn kstar_z_labels(d: u32) -> Vec<(u32, u32, u32)> {
    let mut v: Vec<_> = hstar_z_labels(d).into_iter().filter(|&l| kstar_label(l) == Some(l)).collect();
    v.sort();
    v
}

fn yname(j: u32, k: u32) -> String {
    format!("y{j}{k}")
}

fn zname((a, b, c): (u32, u32, u32)) -> String {
    format!("z{a}{b}{c}")
}

/// Build the group of a family member.
pub fn build(f: &FamilyId) -> Result<PcPresentation> {
    f.validate()?;
    let g = match f.tag {
        FamilyTag::ElemAb => elem_ab(f.p, f.d),
        FamilyTag::Heis => maxrank(f.p, 2, false),
        FamilyTag::EsP => es(f.p, f.m, 0, false),
        FamilyTag::EsP2 => es(f.p, f.m, 0, true),
        FamilyTag::EsTimesAb => es(f.p, f.m, f.d - 2 * f.m, false),
        FamilyTag::MaxrankExpP => maxrank(f.p, f.d, false),
        FamilyTag::MaxrankGpP => maxrank(f.p, f.d, true),
        FamilyTag::HStar => hstar(f.p, f.d, false),
        FamilyTag::HatH => hstar(f.p, 2, false),
        FamilyTag::KStar => hstar(f.p, f.d, true),
        FamilyTag::GStar => gstar(f.p, f.d),
        FamilyTag::RepkElemAb => repk(f.p, f.d),
    }?;
    Ok(g)
}

fn elem_ab(p: u32, d: u32) -> Result<PcPresentation> {
    let mut b = PresentationBuilder::new(p);
    for i in 1..=d {
        b.generator(format!("a{i}"), 1);
    }
    b.build()
}

fn maxrank(p: u32, d: u32, gp: bool) -> Result<PcPresentation> {
    let mut b = PresentationBuilder::new(p);
    let x: Vec<usize> = (1..=d).map(|i| b.generator(format!("x{i}"), 1)).collect();
    for (j, k) in pairs(d) {
        let y = b.generator(yname(j, k), 2);
        b.commutator(x[j as usize - 1], x[k as usize - 1], vec![(y, 1)]);
    }
    if gp {
        b.power(x[0], vec![(d as usize, 1)]);
    }
    b.build()
}

fn es(p: u32, m: u32, t: u32, p2: bool) -> Result<PcPresentation> {
    let mut b = PresentationBuilder::new(p);
    let mut ab = Vec::new();
    for i in 1..=m {
        let a = b.generator(format!("a{i}"), 1);
        let c = b.generator(format!("b{i}"), 1);
        ab.push((a, c));
    }
    for i in 1..=t {
        b.generator(format!("c{i}"), 1);
    }
    let z = b.generator("z", 2);
    for &(a, c) in &ab {
        b.commutator(a, c, vec![(z, 1)]);
    }
    if p2 {
        b.power(ab[0].0, vec![(z, 1)]);
    }
    b.build()
}

fn repk(p: u32, n: u32) -> Result<PcPresentation> {
    let mut b = PresentationBuilder::new(p);
    let y: Vec<usize> = (1..=n).map(|i| b.generator(format!("y{i}"), 1)).collect();
    for (i, j) in pairs(n) {
        let z = b.generator(format!("z{i}{j}"), 2);
        b.commutator(y[i as usize - 1], y[j as usize - 1], vec![(z, 1)]);
    }
    b.build()
}

fn hstar(p: u32, d: u32, kstar: bool) -> Result<PcPresentation> {
    let mut b = PresentationBuilder::new(p);
    let x: Vec<usize> = (1..=d).map(|i| b.generator(format!("x{i}"), 1)).collect();
    let ys: Vec<((u32, u32), usize)> = pairs(d).into_iter().map(|(j, k)| ((j, k), b.generator(yname(j, k), 2))).collect();
    let labels = if kstar { kstar_z_labels(d) } else { hstar_z_labels(d) };
    let zs: Vec<((u32, u32, u32), usize)> = labels.iter().map(|&l| (l, b.generator(zname(l), 3))).collect();
    let zidx = |l: (u32, u32, u32)| zs.iter().find(|(m, _)| *m == l).map(|(_, i)| *i);
    for &((j, k), y) in &ys {
        b.commutator(x[j as usize - 1], x[k as usize - 1], vec![(y, 1)]);
        for i in 1..=d {
            let mut w: Word = Vec::new();
            for (l, e) in hstar_z_expand(i, j, k) {
                let l = if kstar { kstar_label(l) } else { Some(l) };
                if let Some(l) = l {
                    let idx = zidx(l).ok_or_else(|| Error::Internal(format!("missing label {l:?}")))?;
                    w.push((idx, e));
                }
            }
            if !w.is_empty() {
                b.commutator(x[i as usize - 1], y, w);
            }
        }
    }
    b.build()
}

fn gstar(p: u32, d: u32) -> Result<PcPresentation> {
    let mut b = PresentationBuilder::new(p);
    let x1 = b.generator("x1", 1);
    let x2 = b.generator("x2", 1);
    let r = d - 2;
    let y: Vec<usize> = (1..=r).map(|i| b.generator(format!("y{i}"), 1)).collect();
    let z = b.generator("z", 2);
    let z1 = b.generator("z1", 3);
    let z2 = b.generator("z2", 3);
    b.commutator(x1, x2, vec![(z, 1)]);
    b.commutator(z, x1, vec![(z1, 1)]);
    b.commutator(z, x2, vec![(z2, 1)]);
    for (i, &yi) in y.iter().enumerate() {
        for (k, &xk) in [x1, x2].iter().enumerate() {
            let w = b.generator(format!("w{}{}", i + 1, k + 1), 3);
            b.commutator(yi, xk, vec![(w, 1)]);
        }
    }
    for (i, j) in pairs(r) {
        let zij = b.generator(format!("z{i}{j}"), 2);
        b.commutator(y[i as usize - 1], y[j as usize - 1], vec![(zij, 1)]);
    }
    b.build()
}

/// Chain `N_0 < N_1 < ... < G` of normal subgroups with index-p steps. `N_0`
/// is generated by all depth >= 2 generators (abelian, containing `G'`); the
/// later terms add one depth-1 generator each, so the top step removes the
/// last one (`x_d`, or `x_2` then `x_1` for `G*`).
pub fn ladder_series(f: &FamilyId, g: &PcPresentation) -> Vec<SubgroupSpec> {
    let gens = g.generators();
    let bottom: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].depth >= 2).collect();
    let mut top: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].depth == 1).collect();
    if f.tag == FamilyTag::GStar {
        // y_r first, then x_1, x_2
        top.rotate_left(2);
    }
    let mut cur = bottom;
    let mut out = vec![SubgroupSpec::from_generator_indices(g, &cur)];
    for t in top {
        cur.push(t);
        out.push(SubgroupSpec::from_generator_indices(g, &cur));
    }
    out
}

/// Generator indices of the designated central kernel.
pub fn kernel_generators(f: &FamilyId, g: &PcPresentation) -> Result<Vec<usize>> {
    let gens = g.generators();
    let idx: Vec<usize> = match f.tag {
        FamilyTag::HStar | FamilyTag::HatH => (0..gens.len()).filter(|&i| gens[i].depth == 3).collect(),
        FamilyTag::KStar => (0..gens.len())
            .filter(|&i| gens[i].depth == 3 || gens[i].name == "y12")
            .collect(),
        FamilyTag::GStar => (0..gens.len())
            .filter(|&i| gens[i].depth == 3 || (gens[i].depth == 2 && gens[i].name != "z"))
            .collect(),
        FamilyTag::RepkElemAb => (0..gens.len()).filter(|&i| gens[i].depth == 2).collect(),
        _ => {
            return Err(Error::Unsupported(format!(
                "no designated kernel for {}",
                f.tag.cli_name()
            )))
        }
    };
    Ok(idx)
}

pub fn kernel_subgroup(f: &FamilyId, g: &PcPresentation) -> Result<SubgroupSpec> {
    let idx = kernel_generators(f, g)?;
    let mut s = SubgroupSpec::from_generator_indices(g, &idx);
    s.central = Some(s.is_central(g));
    s.derived_contained = Some(s.is_subgroup_of(g, &g.derived_subgroup()));
    Ok(s)
}

/// The base group of a representation group together with the projection.
#[derive(Clone, Debug)]
pub struct BaseProjection {
    pub base: PcPresentation,
    /// Image of every generator of the representation group.
    pub images: Vec<Element>,
    /// For every base generator, the representation-group generator lifting it.
    pub section: Vec<usize>,
}

/// Base family whose representation group `f` is, if it has one among the
/// families.
pub fn base_family(f: &FamilyId) -> Option<FamilyId> {
    match f.tag {
        FamilyTag::HStar if f.d == 2 => Some(FamilyId::heis(f.p)),
        FamilyTag::HStar => Some(FamilyId::maxrank_exp_p(f.p, f.d)),
        FamilyTag::HatH => Some(FamilyId::heis(f.p)),
        FamilyTag::GStar => Some(FamilyId::es_times_ab(f.p, 1, f.d)),
        FamilyTag::KStar => Some(FamilyId::maxrank_gp(f.p, f.d)),
        FamilyTag::RepkElemAb => Some(FamilyId::elem_ab(f.p, f.d)),
        _ => None,
    }
}

/// Projection of a representation group onto its base: `H_d* -> G`,
/// `K_d* -> G/G^p`, `G* -> ES_p(p^3) x (Z/p)^{d-2}`, `K -> (Z/p)^n`.
pub fn base_projection(f: &FamilyId, g: &PcPresentation) -> Result<BaseProjection> {
    let (base, rename): (PcPresentation, Box<dyn Fn(&str) -> Option<String>>) = match f.tag {
        FamilyTag::HStar | FamilyTag::HatH => (
            build(&base_family(f).expect("has base"))?,
            Box::new(|n: &str| (!n.starts_with('z')).then(|| n.to_string())),
        ),
        FamilyTag::KStar => {
            let gp = build(&FamilyId::maxrank_gp(f.p, f.d))?;
            let y12 = gp.generator_index("y12").expect("y12");
            let q = gp.quotient_by_central(&SubgroupSpec::from_generator_indices(&gp, &[y12]))?;
            (
                q.group,
                Box::new(|n: &str| (!n.starts_with('z') && n != "y12").then(|| n.to_string())),
            )
        }
        FamilyTag::GStar => (
            build(&base_family(f).expect("has base"))?,
            Box::new(|n: &str| match n {
                "x1" => Some("a1".into()),
                "x2" => Some("b1".into()),
                "z" => Some("z".into()),
                _ if n.starts_with('y') => Some(format!("c{}", &n[1..])),
                _ => None,
            }),
        ),
        FamilyTag::RepkElemAb => (
            build(&base_family(f).expect("has base"))?,
            Box::new(|n: &str| n.strip_prefix('y').map(|r| format!("a{r}"))),
        ),
        _ => {
            return Err(Error::Unsupported(format!(
                "{} is not a representation group",
                f.tag.cli_name()
            )))
        }
    };
    let mut images = Vec::new();
    let mut section = vec![usize::MAX; base.num_generators()];
    for (i, gen) in g.generators().iter().enumerate() {
        match rename(&gen.name) {
            Some(n) => {
                let j = base
                    .generator_index(&n)
                    .ok_or_else(|| Error::Internal(format!("base has no generator {n}")))?;
                section[j] = i;
                images.push(base.generator(j));
            }
            None => images.push(base.identity()),
        }
    }
    if section.contains(&usize::MAX) {
        return Err(Error::Internal("base generator without a lift".into()));
    }
    Ok(BaseProjection { base, images, section })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_orders() {
        for f in [
            FamilyId::hath(3),
            FamilyId::hstar(3, 3),
            FamilyId::kstar(3, 3),
            FamilyId::gstar(3, 3),
            FamilyId::gstar(3, 4),
            FamilyId::repk(3, 4),
            FamilyId::maxrank_gp(5, 3),
            FamilyId::maxrank_exp_p(3, 4),
            FamilyId::es_p2(3, 2),
            FamilyId::es_times_ab(3, 1, 3),
            FamilyId::elem_ab(3, 4),
        ] {
            let g = build(&f).unwrap();
            assert!(g.consistency_check().is_consistent(), "{f}");
            assert_eq!(g.order_log_p(), f.expected_order_log_p(), "{f}");
        }
    }

    #[test]
    fn hstar_generator_counts() {
        let g = build(&FamilyId::hstar(3, 3)).unwrap();
        let count = |c: char| g.generators().iter().filter(|x| x.name.starts_with(c)).count();
        assert_eq!((count('x'), count('y'), count('z')), (3, 3, 8));
        assert_eq!(build(&FamilyId::kstar(3, 3)).unwrap().num_generators(), 14 - 3);
    }

    #[test]
    fn parameter_errors_name_the_constraint() {
        let e = FamilyId::new(FamilyTag::GStar, 3, 3, 2).unwrap_err();
        assert!(e.to_string().contains("m = 1"));
        assert!(FamilyId::new(FamilyTag::HStar, 3, 1, 1).is_err());
        assert!(FamilyId::new(FamilyTag::ElemAb, 9, 2, 1).is_err());
    }

    #[test]
    fn gp_generator_has_order_p_squared() {
        let g = build(&FamilyId::maxrank_gp(3, 3)).unwrap();
        assert_eq!(g.element_order(&g.generator(0)).unwrap(), 9);
        assert_eq!(g.power(&g.generator(0), 3).unwrap(), g.generator_by_name("y12").unwrap());
    }

    #[test]
    fn elem_ab_ladder() {
        let f = FamilyId::elem_ab(3, 2);
        let g = build(&f).unwrap();
        let s = ladder_series(&f, &g);
        assert_eq!(s.iter().map(|n| n.order(&g)).collect::<Vec<_>>(), vec![1, 3, 9]);
    }
}
