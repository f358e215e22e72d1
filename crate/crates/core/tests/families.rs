use projrep::families::{self, FamilyId};
use projrep::pcgroup::{PcPresentation, SubgroupSpec};

fn certify(f: FamilyId, kernel_log: usize) {
    let g = families::build(&f).unwrap();
    let k = families::kernel_subgroup(&f, &g).unwrap();
    assert_eq!(k.order_log_p(), kernel_log, "{f}");
    assert_eq!(k.central, Some(true), "{f}");
    assert_eq!(k.derived_contained, Some(true), "{f}");
    let proj = families::base_projection(&f, &g).unwrap();
    let v = g.check_homomorphism(&proj.base, &proj.images).unwrap();
    assert!(v.is_homomorphism, "{f}: {:?}", v.failed_relation);
    assert_eq!(v.surjective, Some(true));
    assert_eq!(v.kernel_log_p, Some(kernel_log));
    for e in k.generators(&g) {
        assert!(g.map_element(&proj.base, &proj.images, &e).unwrap().is_identity());
    }
}

#[test]
fn representation_groups_project_onto_base() {
    certify(FamilyId::hstar(3, 3), 8);
    certify(FamilyId::kstar(3, 3), 6);
    certify(FamilyId::gstar(3, 3), 4);
    certify(FamilyId::hath(3), 2);
    certify(FamilyId::repk(3, 3), 3);
}

#[test]
fn quotient_by_kernel_matches_base_order() {
    for f in [FamilyId::hstar(3, 3), FamilyId::kstar(3, 3), FamilyId::gstar(3, 3)] {
        let g = families::build(&f).unwrap();
        let k = families::kernel_subgroup(&f, &g).unwrap();
        let q = g.quotient_by_central(&k).unwrap();
        let base = families::base_projection(&f, &g).unwrap().base;
        assert_eq!(q.group.group_order().unwrap(), base.group_order().unwrap());
    }
}

#[test]
fn kstar_is_hstar_mod_z_i12() {
    let h = families::build(&FamilyId::hstar(3, 3)).unwrap();
    // z312 is not a pc-generator; it is [x3, y12]
    let mut gens = vec![h.generator_by_name("z112").unwrap(), h.generator_by_name("z212").unwrap()];
    let x3 = h.generator_by_name("x3").unwrap();
    let y12 = h.generator_by_name("y12").unwrap();
    gens.push(h.commutator(&x3, &y12).unwrap());
    let s = SubgroupSpec::generated(&h, &gens).unwrap();
    assert_eq!(s.order_log_p(), 3);
    let q = h.quotient_by_central(&s).unwrap();
    assert_eq!(q.group.order_log_p(), 11);
}

fn embeds(small: &PcPresentation, big: &PcPresentation, n: &SubgroupSpec) {
    let images: Vec<_> = small
        .generators()
        .iter()
        .map(|g| big.generator_by_name(&g.name).unwrap())
        .collect();
    let v = small.check_homomorphism(big, &images).unwrap();
    assert!(v.is_homomorphism);
    assert_eq!(v.kernel_log_p, Some(0));
    for e in &images {
        assert!(n.contains(big, e));
    }
}

#[test]
fn ladder_terms_are_normal_with_index_p() {
    for f in [FamilyId::hstar(3, 3), FamilyId::kstar(3, 3), FamilyId::gstar(3, 3), FamilyId::hath(3)] {
        let g = families::build(&f).unwrap();
        let s = families::ladder_series(&f, &g);
        assert!(s[0].is_abelian(&g));
        assert!(g.derived_subgroup().is_subgroup_of(&g, &s[0]));
        for w in s.windows(2) {
            assert_eq!(w[1].order_log_p(), w[0].order_log_p() + 1);
            assert!(w[0].is_subgroup_of(&g, &w[1]));
        }
        assert_eq!(s.last().unwrap().order_log_p() as u32, g.order_log_p());
    }
}

#[test]
fn hstar3_penultimate_contains_hath() {
    let f = FamilyId::hstar(3, 3);
    let g = families::build(&f).unwrap();
    let s = families::ladder_series(&f, &g);
    let n = &s[s.len() - 2];
    assert_eq!(n.order_log_p(), 5 + 8);
    assert!(!n.contains(&g, &g.generator_by_name("x3").unwrap()));
    let hath = families::build(&FamilyId::hath(3)).unwrap();
    embeds(&hath, &g, n);
}

#[test]
fn kstar3_penultimate_contains_heisenberg() {
    let f = FamilyId::kstar(3, 3);
    let g = families::build(&f).unwrap();
    let s = families::ladder_series(&f, &g);
    let n = &s[s.len() - 2];
    assert_eq!(n.order_log_p(), 3 + 7);
    let heis = families::build(&FamilyId::heis(3)).unwrap();
    embeds(&heis, &g, n);
}

#[test]
fn maxrank_structure_is_special() {
    for f in [FamilyId::maxrank_exp_p(3, 3), FamilyId::maxrank_gp(3, 3)] {
        let g = families::build(&f).unwrap();
        let st = g.structure(1 << 20).unwrap();
        assert_eq!(st.is_special, Some(true), "{f}");
        assert_eq!(st.rank, Some(3));
        assert_eq!(st.derived.order_log_p(), 3);
    }
    let g = families::build(&FamilyId::maxrank_gp(3, 3)).unwrap();
    assert_eq!(g.structure(1 << 20).unwrap().agemo.unwrap().order_log_p(), 1);
    let g = families::build(&FamilyId::maxrank_exp_p(3, 3)).unwrap();
    assert_eq!(g.structure(1 << 20).unwrap().exponent, Some(3));
}

#[test]
fn larger_orders() {
    let g = families::build(&FamilyId::hstar(3, 4)).unwrap();
    assert!(g.consistency_check().is_consistent());
    assert_eq!(g.group_order().unwrap(), 3u128.pow(30));
}
