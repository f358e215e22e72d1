use std::collections::BTreeMap;

use projrep::families::{self, kernel_generators, ladder_series, FamilyId};
use projrep::reps::{irr_ladder, IrrSet};
use projrep::pcgroup::PcPresentation;

fn ladder(f: &FamilyId, budget: u128) -> (PcPresentation, IrrSet) {
    let g = families::build(f).unwrap();
    let set = irr_ladder(&g, &ladder_series(f, &g), budget).unwrap();
    (g, set)
}

/// Σ deg² of the irreducibles over each central character of the kernel.
fn partition_by_kernel(f: &FamilyId, g: &PcPresentation, set: &IrrSet) -> BTreeMap<Vec<u32>, u128> {
    let ker = kernel_generators(f, g).unwrap();
    let mut out = BTreeMap::new();
    for r in &set.reps {
        let key: Vec<u32> = ker
            .iter()
            .map(|&i| r.central_value(&g.generator(i).into_exponents()).unwrap().value)
            .collect();
        *out.entry(key).or_default() += (r.degree() as u128).pow(2);
    }
    out
}

#[test]
fn hath_partitions_by_central_character() {
    let f = FamilyId::hath(3);
    let (g, set) = ladder(&f, 6561);
    assert!(set.complete);
    assert_eq!(set.sum_of_squares(), 243);
    let parts = partition_by_kernel(&f, &g, &set);
    assert_eq!(parts.len(), 9);
    assert!(parts.values().all(|&s| s == 27));
    for r in &set.reps {
        r.verify_relations(&g).unwrap();
    }
    assert_eq!(set.reps.len(), g.class_count(6561).unwrap());
}

#[test]
fn gstar_complete_with_class_count() {
    let f = FamilyId::gstar(3, 3);
    let (g, set) = ladder(&f, 6561);
    assert!(set.complete);
    assert_eq!(set.sum_of_squares(), 6561);
    for r in &set.reps {
        r.verify_relations(&g).unwrap();
    }
    assert_eq!(set.reps.len(), g.class_count(6561).unwrap());
    let parts = partition_by_kernel(&f, &g, &set);
    assert_eq!(parts.len(), 81);
    assert!(parts.values().all(|&s| s == 81));
}

mod projective {
    use super::*;
    use std::collections::BTreeSet;
    use std::sync::Arc;

    use projrep::cohomology::{CentralExtension, MuContext};
    use projrep::reps::{match_class, proj_from_repgroup, verify_projective_rep, ProjCheck, RootExp};

    /// Every irreducible of the representation group pulled back to its base.
    fn pullbacks(f: &FamilyId) -> (Arc<CentralExtension>, Vec<(Vec<u32>, projrep::reps::ProjectiveRep)>) {
        let ext = Arc::new(CentralExtension::from_family(f).unwrap());
        let set = irr_ladder(&ext.rep, &ladder_series(f, &ext.rep), 6561).unwrap();
        let mut out = Vec::new();
        for r in &set.reps {
            let chi: Vec<RootExp> = ext
                .kernel
                .iter()
                .map(|&k| r.central_value(&ext.rep.generator(k).into_exponents()).unwrap())
                .collect();
            let key = chi.iter().map(|c| c.value).collect();
            out.push((key, proj_from_repgroup(&ext, r, &chi, 1 << 20).unwrap()));
        }
        (ext, out)
    }

    #[test]
    fn hath_pullbacks_verify_and_match_distinct_classes() {
        let f = FamilyId::hath(3);
        let (_, reps) = pullbacks(&f);
        let ctx = MuContext::new(&FamilyId::heis(3)).unwrap();
        let mut classes = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for (key, pr) in &reps {
            let v = verify_projective_rep(pr, ProjCheck::Exhaustive).unwrap();
            assert!(v.pass && v.checked == 729);
            if seen.insert(key.clone()) {
                let mu = match_class(&ctx, &pr.cocycle, 1 << 20).unwrap();
                classes.insert(mu.nonzero().collect::<Vec<_>>());
            }
        }
        assert_eq!(seen.len(), 9);
        assert_eq!(classes.len(), 9);
    }

    #[test]
    fn mutations_are_caught() {
        let (_, reps) = pullbacks(&FamilyId::hath(3));
        let (_, pr) = reps.iter().find(|(_, r)| r.degree() == 3).unwrap();
        let bad = pr.with_corrupted_matrix(5, 1);
        let v = verify_projective_rep(&bad, ProjCheck::Exhaustive).unwrap();
        assert!(!v.pass && v.witness.is_some());
        let x = pr.base.element_at(4);
        let y = pr.base.element_at(7);
        let bad = pr.with_cocycle(pr.cocycle.corrupted(&pr.base, &x, &y, 1));
        let v = verify_projective_rep(&bad, ProjCheck::Exhaustive).unwrap();
        assert_eq!(v.witness, Some((x, y)));
    }

    #[test]
    fn gstar_pullbacks_verify() {
        let (_, reps) = pullbacks(&FamilyId::gstar(3, 3));
        assert_eq!(reps.iter().map(|(k, _)| k.clone()).collect::<BTreeSet<_>>().len(), 81);
        for (_, pr) in reps.iter().step_by(7) {
            assert!(verify_projective_rep(pr, ProjCheck::Exhaustive).unwrap().pass);
        }
    }
}

#[test]
fn hstar_chain_matches_single_mu() {
    use projrep::cohomology::{CentralExtension, MuContext};
    use projrep::reps::{irr_chain, match_class, proj_from_repgroup, verify_projective_rep, ProjCheck, RootExp};
    use std::sync::Arc;

    let f = FamilyId::hstar(3, 3);
    let ext = Arc::new(CentralExtension::from_family(&f).unwrap());
    let z123 = ext.rep.generator_index("z123").unwrap();
    let chi: Vec<RootExp> = ext.kernel.iter().map(|&k| RootExp::new((k == z123) as i64, 3)).collect();
    let fixed: Vec<(usize, RootExp)> = ext.kernel.iter().copied().zip(chi.iter().copied()).collect();
    let rho = irr_chain(&ext.rep, &ladder_series(&f, &ext.rep), &fixed).unwrap();
    rho.verify_relations(&ext.rep).unwrap();
    let pr = proj_from_repgroup(&ext, &rho, &chi, 1 << 20).unwrap();
    assert!(verify_projective_rep(&pr, ProjCheck::Sampled { n: 20000, seed: 1 }).unwrap().pass);
    let ctx = MuContext::new(&FamilyId::maxrank_exp_p(3, 3)).unwrap();
    let mu = match_class(&ctx, &pr.cocycle, 1 << 20).unwrap();
    assert_eq!(mu.nonzero().collect::<Vec<_>>(), vec![((1, 2, 3), 1)]);
}
