mod common;

use metaham::classify::{classify, is_metacyclic, is_two_engel, Analysis};
use metaham::families::{standard_corpus, CorpusCaps, FamilySpec};
use metaham::kernel::{frattini, Limits};
use metaham::ConcreteGroup;

fn groups() -> Vec<(String, ConcreteGroup)> {
    let caps = CorpusCaps([(2, 32), (3, 81), (5, 125)].into_iter().collect());
    let mut out: Vec<(String, ConcreteGroup)> = standard_corpus(&caps)
        .unwrap()
        .into_iter()
        .map(|e| (e.label, e.group))
        .collect();
    for spec in [
        FamilySpec::Cyclic { n: 16 },
        FamilySpec::ElemAbelianPower { n: 2, k: 3 },
        FamilySpec::Dihedral { order: 6 },
        FamilySpec::Dihedral { order: 20 },
    ] {
        out.push((spec.label(), spec.build().unwrap().group));
    }
    out
}

fn log(mut x: usize, p: usize) -> usize {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

#[test]
fn classification_fields_match_naive_oracle() {
    for (label, g) in groups() {
        let naive = common::Naive::new(&g, common::subgroups_by_joins(&g));
        let c = classify(&g, &Limits::default()).unwrap();
        let top = naive.subgroups.iter().position(|h| h.len() == g.order()).unwrap();
        assert_eq!(c.flags.abelian, naive.abelian[top], "{label}");
        let dedekind = naive.normal.iter().all(|&n| n);
        assert_eq!(c.flags.dedekindian, dedekind, "{label}");
        assert_eq!(c.flags.hamiltonian, dedekind && !naive.abelian[top], "{label}");
        assert_eq!(c.flags.minimal_nonabelian, naive.minimal_nonabelian(top), "{label}");
        let meta = (!naive.abelian[top]).then(|| naive.metahamiltonian());
        assert_eq!(c.flags.metahamiltonian, meta, "{label}");
        if let Some((p, _)) = g.prime_power() {
            let t = naive.a_degree(g.order(), p as usize);
            assert_eq!(c.a_degree.value(), Some(t), "{label}");
            let d = log(g.order() / frattini(&g).order(), p as usize);
            assert_eq!(c.d, d, "{label}");
        } else {
            assert_eq!(c.a_degree.value(), None, "{label}");
        }
    }
}

#[test]
fn metacyclic_matches_naive_oracle() {
    for (label, g) in groups() {
        let subs = common::subgroups_by_joins(&g);
        let cyclic = |h: &[usize]| h.iter().any(|&x| g.element_order(x) == h.len());
        let naive = subs.iter().any(|n| {
            cyclic(n)
                && common::is_normal_set(&g, n)
                && (0..g.order()).any(|x| {
                    let mut seeds = n.clone();
                    seeds.push(x);
                    common::closure(&g, &seeds).len() == g.order()
                })
        });
        assert_eq!(is_metacyclic(&g), naive, "{label}");
        if g.prime_power().is_some() {
            let an = Analysis::new(&g, Limits::default());
            assert_eq!(an.is_metacyclic_blackburn().unwrap(), naive, "{label}");
        }
    }
}

#[test]
fn routes_agree_and_witnesses_are_genuine() {
    for (label, g) in groups().into_iter().filter(|(_, g)| g.prime_power().is_some()) {
        let an = Analysis::new(&g, Limits::default());
        let def = an.metahamiltonian_definition().unwrap();
        let a1 = an.metahamiltonian_a1().unwrap();
        let der = an.metahamiltonian_derived().unwrap();
        assert_eq!(def.as_bool(), a1.as_bool(), "{label}");
        assert_eq!(def.as_bool(), der.as_bool(), "{label}");
        if let Some(h) = def.witness() {
            let m = h.elements();
            assert!(!common::is_abelian_set(&g, &m) && !common::is_normal_set(&g, &m), "{label}");
        }
    }
}

#[test]
fn two_engel_bounds() {
    for (label, g) in groups() {
        if !is_two_engel(&g) {
            continue;
        }
        let c = metaham::kernel::nilpotency_class(&g).expect("2-Engel groups are nilpotent");
        let has3 = (0..g.order()).any(|x| g.element_order(x) == 3);
        assert!(c <= 3, "{label}");
        assert!(has3 || c <= 2, "{label}");
    }
}

#[test]
fn redei_types_rebuild_isomorphic_groups() {
    for (label, g) in groups() {
        let an = Analysis::new(&g, Limits::default());
        if g.prime_power().is_none() || !an.is_minimal_nonabelian().unwrap() {
            continue;
        }
        let t = an.redei_type().unwrap();
        let rebuilt = metaham::enumerate(&t.presentation(), 1 << 16).unwrap();
        let iso = metaham::kernel::isomorphic(&g, &rebuilt, 1 << 16).unwrap();
        assert!(iso.is_some(), "{label} as {t}");
    }
}
