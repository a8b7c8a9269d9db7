use proptest::prelude::*;

use xconn_core::category::{classify_category, left_ideal_category};
use xconn_core::classify::{is_inverse, is_locally_inverse, is_regular, local_submonoid};
use xconn_core::cones::{cone_compose, cone_semigroup, principal_cone, DEFAULT_CONE_BOUND};
use xconn_core::esn::{inductive_groupoid_of, rho_iso_check, round_trip};
use xconn_core::fixtures;
use xconn_core::green::green_data;
use xconn_core::iso::{find_isomorphism, invert};
use xconn_core::rees::{matrix_cxn, rees_cone_iso, rees_semigroup, ReesSpec};
use xconn_core::FiniteSemigroup;

fn small_semigroups() -> Vec<FiniteSemigroup> {
    (1..=3).flat_map(fixtures::enumerate_semigroups).collect()
}

fn relabel(s: &FiniteSemigroup, perm: &[usize]) -> FiniteSemigroup {
    let inv = invert(perm);
    FiniteSemigroup::from_fn(s.order(), |a, b| perm[s.mul(inv[a], inv[b])]).unwrap()
}

fn relabelled_fixture() -> impl Strategy<Value = FiniteSemigroup> {
    (0..fixtures::corpus().len()).prop_flat_map(|k| {
        let s = fixtures::corpus().swap_remove(k).semigroup;
        let n = s.order();
        Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(move |p| relabel(&s, &p))
    })
}

fn regular_spec() -> impl Strategy<Value = ReesSpec> {
    (1usize..=2, 1usize..=2, 1usize..=2)
        .prop_flat_map(|(g, i, l)| (Just(g), Just(i), Just(l), proptest::collection::vec(0..=g, i * l)))
        .prop_filter_map("matrix must be regular", |(g, i, l, cells)| {
            let group = if g == 1 { FiniteSemigroup::from_fn(1, |_, _| 0).unwrap() } else { fixtures::z2() };
            let matrix = (0..l)
                .map(|r| (0..i).map(|c| cells[r * i + c].checked_sub(1)).collect())
                .collect();
            ReesSpec::new(group, i, l, matrix).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn green_relations_on_small_semigroups(k in 0usize..131) {
        let all = small_semigroups();
        let s = &all[k % all.len()];
        let g = green_data(s);
        prop_assert!(g.l_r_commute);
        if is_regular(s).holds {
            for &e in &g.idempotents {
                for &f in &g.idempotents {
                    prop_assert_eq!(g.l_related(e, f), s.mul(e, f) == e && s.mul(f, e) == f);
                    prop_assert_eq!(g.r_related(e, f), s.mul(e, f) == f && s.mul(f, e) == e);
                }
            }
        }
        let commuting = g.idempotents.iter().all(|&e| g.idempotents.iter().all(|&f| s.mul(e, f) == s.mul(f, e)));
        prop_assert_eq!(is_inverse(s).unwrap().holds, is_regular(s).holds && commuting);
    }

    #[test]
    fn local_submonoids_restrict_the_table(s in relabelled_fixture()) {
        for e in s.idempotents() {
            let (m, members) = local_submonoid(&s, e).unwrap();
            for a in m.elements() {
                for b in m.elements() {
                    prop_assert_eq!(members[m.mul(a, b)], s.mul(members[a], members[b]));
                }
            }
        }
    }

    #[test]
    fn unambiguity_is_local_inversity(k in 0usize..131) {
        let all = small_semigroups();
        let s = &all[k % all.len()];
        if let Ok(l) = left_ideal_category(s) {
            let rep = classify_category(&l.cat, DEFAULT_CONE_BOUND).unwrap();
            prop_assert!(rep.is_normal());
            prop_assert_eq!(rep.is_unambiguous(), is_locally_inverse(s).unwrap().holds);
            if rep.is_unambiguous() {
                for f in l.cat.morphisms() {
                    prop_assert_eq!(l.cat.factorisations(f).len(), 1);
                }
            }
        }
    }

    #[test]
    fn principal_cones_multiply(s in relabelled_fixture()) {
        if let Ok(l) = left_ideal_category(&s) {
            let cat = &l.cat;
            for a in s.elements() {
                for b in s.elements() {
                    let (pa, pb) = (principal_cone(&l, a).unwrap(), principal_cone(&l, b).unwrap());
                    prop_assert_eq!(cone_compose(cat, &pa, &pb).unwrap(), principal_cone(&l, s.mul(a, b)).unwrap());
                }
            }
            let cs = cone_semigroup(cat, DEFAULT_CONE_BOUND).unwrap();
            for (k, cone) in cs.cones.iter().enumerate() {
                prop_assert_eq!(cs.mul(k, k) == k, cone.component(cone.apex()) == cat.identity(cone.apex()));
            }
        }
    }

    #[test]
    fn inverse_invariants_survive_relabelling(s in relabelled_fixture()) {
        if is_inverse(&s).unwrap().holds {
            prop_assert!(rho_iso_check(&s).unwrap().holds());
            let l = left_ideal_category(&s).unwrap();
            prop_assert!(round_trip(&l.cat).unwrap().holds());
            prop_assert!(inductive_groupoid_of(&s).unwrap().verify().is_ok());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn regular_rees_specs(spec in regular_spec()) {
        let s = rees_semigroup(&spec).unwrap();
        prop_assert!(is_locally_inverse(&s).unwrap().holds);
        let l = left_ideal_category(&s).unwrap();
        prop_assert!(classify_category(&l.cat, DEFAULT_CONE_BOUND).unwrap().is_unambiguous());
        let cones = rees_cone_iso(&spec).unwrap();
        prop_assert!(cones.holds(), "{:?}", cones.failures);
        let m = matrix_cxn(&spec).unwrap();
        prop_assert!(m.holds(), "{:?}", m.failures);
        prop_assert!(find_isomorphism(&s, &m.cxn_semigroup.semigroup).unwrap().is_some());
    }
}
