use projrep::families::{self, FamilyId};
use projrep::oracle::{brute_h2_stable, howell_solve, naive_rewrite, verify_certificate, HowellOutcome, SparseModMatrix, STEP_LIMIT, BRUTE_BUDGET};
use projrep::pcgroup::PcPresentation;
use proptest::prelude::*;

fn instances() -> Vec<(FamilyId, PcPresentation)> {
    [
        FamilyId::elem_ab(3, 3),
        FamilyId::heis(3),
        FamilyId::es_p2(3, 1),
        FamilyId::maxrank_exp_p(3, 3),
        FamilyId::maxrank_gp(3, 3),
        FamilyId::hstar(3, 2),
        FamilyId::es_times_ab(3, 1, 3),
    ]
    .into_iter()
    .map(|f| {
        let g = families::build(&f).unwrap();
        (f, g)
    })
    .collect()
}

fn word_strategy(ngens: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..ngens, -3i64..=3), 0..=12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn collect_matches_rewriting(seed in 0usize..1000, words in prop::collection::vec(word_strategy(32), 1..4)) {
        let inst = instances();
        let (f, g) = &inst[seed % inst.len()];
        for w in words {
            let w: Vec<(usize, i64)> = w.into_iter().map(|(i, k)| (i % g.num_generators(), k)).collect();
            prop_assert_eq!(naive_rewrite(g, &w, STEP_LIMIT).unwrap(), g.collect(&w).unwrap(), "{} {:?}", f, w);
        }
    }

    #[test]
    fn howell_round_trip(entries in prop::collection::vec((0usize..8, 0usize..10, 1i64..27), 0..40),
                         x0 in prop::collection::vec(0u64..27, 10)) {
        let mut a = SparseModMatrix::new(8, 10, 3, 3);
        for (r, c, v) in entries {
            a.add(r, c, v);
        }
        let b = a.apply(&x0);
        match howell_solve(&a, &b).unwrap() {
            HowellOutcome::Solution { x } => prop_assert_eq!(a.apply(&x), b),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn howell_certificates_verify(entries in prop::collection::vec((0usize..6, 0usize..3, 1i64..9), 0..20),
                                  b in prop::collection::vec(0u64..9, 6)) {
        let mut a = SparseModMatrix::new(6, 3, 3, 2);
        for (r, c, v) in entries {
            a.add(r, c, v);
        }
        match howell_solve(&a, &b).unwrap() {
            HowellOutcome::Solution { x } => prop_assert_eq!(a.apply(&x), b),
            HowellOutcome::Inconsistent { combination, value } => {
                prop_assert!(verify_certificate(&a, &b, &combination, value))
            }
        }
    }
}

#[test]
fn order_81_multiplier_is_e_stable() {
    let f = FamilyId::es_times_ab(3, 1, 3);
    let g = families::build(&f).unwrap();
    let (a, b) = brute_h2_stable(&f.to_string(), &g, BRUTE_BUDGET).unwrap();
    // H²(ES) ⊕ H²(Z/3) ⊕ ES^ab ⊗ Z/3
    assert_eq!(a.corrected_h2_log, 4);
    assert_eq!(b.e, 3);
}
