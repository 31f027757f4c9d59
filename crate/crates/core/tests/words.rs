use metaham::families::FamilySpec;
use metaham::presentation::free_reduce;
use metaham::{parse_presentation, Presentation, Word};
use proptest::prelude::*;

fn word(gens: i32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=gens).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]), 0..max_len)
        .prop_map(Word::new)
}

fn names(k: usize) -> Vec<String> {
    ["a", "b", "c", "x1", "y_2"][..k].iter().map(|s| s.to_string()).collect()
}

proptest! {
    #[test]
    fn free_reduce_is_idempotent(w in word(3, 40)) {
        let r = free_reduce(&w);
        prop_assert_eq!(free_reduce(&r), r.clone());
        for pair in r.letters().windows(2) {
            prop_assert_ne!(pair[0], -pair[1]);
        }
    }

    #[test]
    fn inverse_cancels(w in word(3, 30)) {
        prop_assert!(w.concat(&w.inverse()).free_reduce().is_empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn commutator_trivial_iff_words_commute(u in word(2, 6), v in word(2, 6)) {
        let c = Word::commutator(&u, &v).free_reduce();
        let uv = u.concat(&v).free_reduce();
        let vu = v.concat(&u).free_reduce();
        prop_assert_eq!(c.is_empty(), uv == vu);
    }

    #[test]
    fn printed_presentations_parse_back(rels in prop::collection::vec(word(5, 12), 1..6)) {
        let p = Presentation::new(names(5), rels).unwrap();
        let text = p.to_string();
        let q = parse_presentation(&text).unwrap();
        prop_assert_eq!(q.generator_names(), p.generator_names());
        let nonempty: Vec<&Word> = p.relators().iter().filter(|r| !r.is_empty()).collect();
        let back: Vec<&Word> = q.relators().iter().filter(|r| !r.is_empty()).collect();
        prop_assert_eq!(back, nonempty);
    }

    #[test]
    fn evaluation_is_a_homomorphism(u in word(2, 20), v in word(2, 20)) {
        let g = FamilySpec::MpMN { p: 3, m: 2, n: 1 }.build().unwrap().group;
        let (x, y) = (g.evaluate(&u).unwrap(), g.evaluate(&v).unwrap());
        prop_assert_eq!(g.evaluate(&u.concat(&v)).unwrap(), g.mul(x, y));
        prop_assert_eq!(g.evaluate(&u.inverse()).unwrap(), g.inv(x));
        prop_assert_eq!(g.evaluate(&Word::commutator(&u, &v)).unwrap(), g.commutator(x, y));
        prop_assert_eq!(g.evaluate(&Word::conjugate(&u, &v)).unwrap(), g.conjugate(x, y));
        prop_assert_eq!(g.evaluate(&u.pow(-3)).unwrap(), g.pow(x, -3));
    }

    #[test]
    fn element_words_evaluate_to_their_element(seed in 0usize..1000) {
        let g = FamilySpec::Dihedral { order: 16 }.build().unwrap().group;
        let x = seed % g.order();
        prop_assert_eq!(g.evaluate(g.element_word(x)).unwrap(), x);
    }
}

#[test]
fn left_normed_commutators_expand() {
    let p = parse_presentation("gens a,b; rels [a,b,b]=1;").unwrap();
    let [ab_b] = p.relators() else { panic!() };
    let a = Word::generator(0);
    let b = Word::generator(1);
    let expected = Word::commutator(&Word::commutator(&a, &b), &b).free_reduce();
    assert_eq!(ab_b, &expected);
    assert_eq!(expected.len(), 10);
}
