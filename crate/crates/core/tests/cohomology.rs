use projrep::cohomology::{
    chi_bar, coboundary_solve, cocycle_from_mu, cocycle_identity_check, eta, h2_log, h2_log_from_x,
    h2_log_gp_quotient, CheckMode, MuContext, MuFamily, MuParameters,
};
use projrep::families::{self, FamilyId};
use projrep::modlin::kernel_mod_p;
use projrep::pcgroup::SubgroupSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_invariant(ctx: &MuContext, rng: &mut impl Rng) -> Vec<u64> {
    let p = ctx.p() as u64;
    let ker = kernel_mod_p(&ctx.x.basis(), ctx.space().dim(), p);
    let mut f = vec![0u64; ctx.space().dim()];
    for v in &ker {
        let c = rng.gen_range(0..p);
        for (a, b) in f.iter_mut().zip(v) {
            *a = (*a + c * b) % p;
        }
    }
    f
}

#[test]
fn mu_basis_cocycles_pass_identity() {
    for f in [FamilyId::maxrank_exp_p(3, 3), FamilyId::maxrank_gp(3, 3), FamilyId::maxrank_exp_p(5, 3)] {
        let ctx = MuContext::new(&f).unwrap();
        for mu in MuParameters::basis(ctx.family, f.p, f.d) {
            let a = cocycle_from_mu(&ctx, &mu).unwrap();
            for mode in [CheckMode::Generators, CheckMode::Sampled { n: 500, seed: 3 }] {
                let v = cocycle_identity_check(&a, &ctx.group, mode).unwrap();
                assert!(v.pass, "{f} {:?} {:?}", mu, v.witness);
            }
        }
    }
}

#[test]
fn chi_bar_inverts_eta() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for f in [FamilyId::maxrank_exp_p(3, 3), FamilyId::maxrank_exp_p(3, 4), FamilyId::maxrank_gp(3, 4)] {
        let ctx = MuContext::new(&f).unwrap();
        for _ in 0..5 {
            let func = random_invariant(&ctx, &mut rng);
            let a = eta(&ctx, &func).unwrap();
            assert_eq!(chi_bar(&a, &ctx.group).unwrap(), func);
        }
        for mu in MuParameters::basis(ctx.family, f.p, f.d) {
            let a = cocycle_from_mu(&ctx, &mu).unwrap();
            let back = MuParameters::from_functional(ctx.family, f.p, f.d, ctx.space(), &chi_bar(&a, &ctx.group).unwrap());
            assert_eq!(back.unwrap(), mu);
        }
    }
}

#[test]
fn chi_bar_vanishes_on_x() {
    let ctx = MuContext::new(&FamilyId::maxrank_gp(3, 3)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mu = MuParameters::random(MuFamily::Gp, 3, 3, &mut rng);
    let a = cocycle_from_mu(&ctx, &mu).unwrap();
    let f = chi_bar(&a, &ctx.group).unwrap();
    ctx.check_x_invariant(&f).unwrap();
}

#[test]
fn distinct_mu_are_not_cohomologous_on_heisenberg() {
    let ctx = MuContext::new(&FamilyId::heis(3)).unwrap();
    let basis = MuParameters::basis(MuFamily::ExpP, 3, 2);
    assert_eq!(basis.len(), 2);
    let a = cocycle_from_mu(&ctx, &basis[0]).unwrap();
    let b = cocycle_from_mu(&ctx, &basis[1]).unwrap();
    let diff = a.add_scaled(&b, 2).unwrap();
    assert!(!coboundary_solve(&diff, &ctx.group, 1000).unwrap().is_coboundary());
    let same = a.add_scaled(&a, 2).unwrap();
    assert!(coboundary_solve(&same, &ctx.group, 1000).unwrap().is_coboundary());
}

#[test]
fn schur_multiplier_formulas_agree() {
    for p in [3, 5] {
        for d in 3..=5 {
            for f in [FamilyId::maxrank_exp_p(p, d), FamilyId::maxrank_gp(p, d)] {
                let g = families::build(&f).unwrap();
                assert_eq!(h2_log_from_x(&g).unwrap(), h2_log(&f).unwrap(), "{f}");
            }
        }
    }
    for d in 3..=4 {
        let g = families::build(&FamilyId::maxrank_gp(3, d)).unwrap();
        let y12 = g.generator_index("y12").unwrap();
        let q = g.quotient_by_central(&SubgroupSpec::from_generator_indices(&g, &[y12])).unwrap();
        assert_eq!(h2_log_from_x(&q.group).unwrap(), h2_log_gp_quotient(d));
    }
}
