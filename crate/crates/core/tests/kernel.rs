mod common;

use metaham::classify::is_abelian;
use metaham::families::{standard_corpus, CorpusCaps, FamilySpec};
use metaham::kernel::{
    agemo1, center, derived_subgroup, frattini, frattini_by_maximals, isomorphic, join,
    lower_central_series, nilpotency_class, quotient, Limits, SubgroupLattice,
};
use metaham::ConcreteGroup;
use proptest::prelude::*;

fn small_groups() -> Vec<(String, ConcreteGroup)> {
    let specs = [
        FamilySpec::Q8,
        FamilySpec::Dihedral { order: 8 },
        FamilySpec::Dihedral { order: 16 },
        FamilySpec::Cyclic { n: 16 },
        FamilySpec::ElemAbelianPower { n: 2, k: 4 },
        FamilySpec::ElemAbelianPower { n: 3, k: 2 },
        FamilySpec::MpMN { p: 2, m: 3, n: 1 },
        FamilySpec::MpMN1 { p: 2, m: 2, n: 1 },
        FamilySpec::DirectProduct(Box::new(FamilySpec::Q8), Box::new(FamilySpec::Cyclic { n: 2 })),
        FamilySpec::DirectProduct(Box::new(FamilySpec::Cyclic { n: 3 }), Box::new(FamilySpec::Cyclic { n: 5 })),
        FamilySpec::Dihedral { order: 12 },
    ];
    specs.iter().map(|s| (s.label(), s.build().unwrap().group)).collect()
}

fn corpus_upto_64() -> Vec<(String, ConcreteGroup)> {
    let caps = CorpusCaps([(2, 64), (3, 81), (5, 125)].into_iter().collect());
    standard_corpus(&caps)
        .unwrap()
        .into_iter()
        .map(|e| (e.label, e.group))
        .collect()
}

#[test]
fn lattice_matches_subset_oracle() {
    for (label, g) in small_groups() {
        let oracle = common::subgroups_by_subsets(&g);
        let l = SubgroupLattice::build(&g, &Limits::default()).unwrap();
        let generic = SubgroupLattice::build_generic(&g, &Limits::default()).unwrap();
        assert_eq!(common::lattice_sets(&l), oracle, "{label}");
        assert_eq!(common::lattice_sets(&generic), oracle, "{label}");
        for i in 0..l.len() {
            let h = l.subgroup(i).elements();
            assert_eq!(l.is_normal(i), common::is_normal_set(&g, &h), "{label}");
            assert_eq!(l.is_abelian(i), common::is_abelian_set(&g, &h), "{label}");
        }
    }
}

#[test]
fn lattice_matches_join_oracle_up_to_64() {
    for (label, g) in corpus_upto_64().into_iter().filter(|(_, g)| g.order() <= 64) {
        let l = SubgroupLattice::build(&g, &Limits::default()).unwrap();
        assert_eq!(common::lattice_sets(&l), common::subgroups_by_joins(&g), "{label}");
        let orders: Vec<usize> = l.subgroups().iter().map(|h| h.order()).collect();
        assert!(orders.windows(2).all(|w| w[0] <= w[1]), "{label}: canonical order");
        assert_eq!(l.subgroup(l.top()).order(), g.order());
    }
}

#[test]
fn frattini_is_derived_times_agemo() {
    for (label, g) in corpus_upto_64() {
        let Some((p, _)) = g.prime_power() else { continue };
        let phi = frattini(&g);
        let dm = join(&g, &derived_subgroup(&g), &agemo1(&g, p).unwrap());
        assert_eq!(phi, dm, "{label}");
        assert_eq!(phi, frattini_by_maximals(&g, &Limits::default()).unwrap(), "{label}");
    }
}

#[test]
fn quotients_lower_the_class() {
    for (label, g) in corpus_upto_64() {
        let c = nilpotency_class(&g).unwrap();
        let z = center(&g);
        let gz = quotient(&g, &z).unwrap().group;
        assert_eq!(gz.order() * z.order(), g.order());
        assert_eq!(nilpotency_class(&gz).unwrap(), c - 1, "{label}: c(G/Z) = c(G) − 1");
        let ab = quotient(&g, &derived_subgroup(&g)).unwrap().group;
        assert!(is_abelian(&ab), "{label}");
        let series = lower_central_series(&g);
        assert_eq!(series.len(), c + 1, "{label}");
        if c >= 2 {
            let top = quotient(&g, &series[c - 1]).unwrap().group;
            assert_eq!(nilpotency_class(&top), Some(c - 1), "{label}");
        }
    }
}

/// The group with elements renamed by `perm` (identity fixed).
fn relabel(g: &ConcreteGroup, perm: &[usize]) -> ConcreteGroup {
    let n = g.order();
    let mut inv = vec![0; n];
    for (x, &y) in perm.iter().enumerate() {
        inv[y] = x;
    }
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = perm[g.mul(inv[a], inv[b])] as u32;
        }
    }
    let gens = g.generators().iter().map(|&x| perm[x]).collect();
    ConcreteGroup::from_table(mul, gens, g.generator_names().to_vec()).unwrap()
}

fn is_isomorphism(g: &ConcreteGroup, h: &ConcreteGroup, map: &[usize]) -> bool {
    let mut hit = vec![false; h.order()];
    map.iter().for_each(|&y| hit[y] = true);
    hit.iter().all(|&b| b)
        && (0..g.order()).all(|a| (0..g.order()).all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabelled_tables_are_isomorphic(
        which in 0usize..4,
        perm in Just((1..32usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let spec = [
            FamilySpec::Dihedral { order: 32 },
            FamilySpec::MpMN { p: 2, m: 4, n: 1 },
            FamilySpec::DirectProduct(Box::new(FamilySpec::Q8), Box::new(FamilySpec::Cyclic { n: 4 })),
            FamilySpec::MpMN1 { p: 2, m: 2, n: 2 },
        ][which].clone();
        let g = spec.build().unwrap().group;
        let full: Vec<usize> = std::iter::once(0).chain(perm).collect();
        let h = relabel(&g, &full);
        h.validate().unwrap();
        let map = isomorphic(&g, &h, 1 << 16).unwrap().expect("relabelled copy");
        prop_assert!(is_isomorphism(&g, &h, &map));
        let back = isomorphic(&h, &g, 1 << 16).unwrap().expect("symmetric");
        prop_assert!(is_isomorphism(&h, &g, &back));
    }
}

#[test]
fn order_16_non_isomorphic_pairs() {
    let specs = [
        FamilySpec::Dihedral { order: 16 },
        FamilySpec::MpMN { p: 2, m: 3, n: 1 },
        FamilySpec::MpMN1 { p: 2, m: 2, n: 1 },
        FamilySpec::DirectProduct(Box::new(FamilySpec::Q8), Box::new(FamilySpec::Cyclic { n: 2 })),
        FamilySpec::DirectProduct(Box::new(FamilySpec::Dihedral { order: 8 }), Box::new(FamilySpec::Cyclic { n: 2 })),
        FamilySpec::MpMN { p: 2, m: 2, n: 2 },
        FamilySpec::CentralProduct(Box::new(FamilySpec::Q8), Box::new(FamilySpec::Cyclic { n: 4 })),
    ];
    let groups: Vec<ConcreteGroup> = specs.iter().map(|s| s.build().unwrap().group).collect();
    for (i, g) in groups.iter().enumerate() {
        for (j, h) in groups.iter().enumerate() {
            let iso = isomorphic(g, h, 1 << 16).unwrap();
            assert_eq!(iso.is_some(), i == j, "{} vs {}", specs[i].label(), specs[j].label());
        }
    }
}
