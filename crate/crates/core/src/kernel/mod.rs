//! Subgroup machinery over concrete groups.

mod construct;
mod iso;
mod lattice;
mod series;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::group::ConcreteGroup;

pub use construct::{
    central_product, direct_product, quotient, subgroup_as_group, Embedded, Quotient,
};
pub use iso::{isomorphic, IsoInvariants};
pub use lattice::{all_subgroups, all_subgroups_generic, Limits, SubgroupLattice, DEFAULT_SUBGROUP_CAP};
pub use series::{
    agemo1, center, centralizer, derived_subgroup, exponent, frattini, frattini_by_maximals,
    is_p_abelian, lambda1, lower_central_series, minimal_generators, nilpotency_class, omega1,
    v1,
};

/// A subgroup of a parent group, stored as a membership bit set together
/// with a short generating sequence.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: BitSet,
    gens: Vec<usize>,
    order: usize,
}

impl Subgroup {
    pub fn trivial(g: &ConcreteGroup) -> Self {
        Subgroup {
            members: BitSet::from_indices(g.order(), [0]),
            gens: Vec::new(),
            order: 1,
        }
    }

    pub fn whole(g: &ConcreteGroup) -> Self {
        Subgroup {
            members: BitSet::full(g.order()),
            gens: g.generators().to_vec(),
            order: g.order(),
        }
    }

    /// Wraps a member set known to be closed, deriving a generating sequence.
    pub fn from_members(g: &ConcreteGroup, members: BitSet) -> Self {
        let mut h = Subgroup::trivial(g);
        for x in members.iter() {
            if !h.contains(x) {
                h = extend(g, &h, x);
            }
        }
        debug_assert_eq!(h.members, members);
        h
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self, g: &ConcreteGroup) -> bool {
        self.order == g.order()
    }

    /// Generator words rendered over the parent's generator names.
    pub fn generator_words(&self, g: &ConcreteGroup) -> Vec<String> {
        self.gens.iter().map(|&x| g.word_string(x)).collect()
    }
}

/// A subgroup rendered for reports: generator words over the parent's
/// generators plus the element indices needed to regenerate it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct SubgroupWitness {
    pub order: usize,
    pub generators: Vec<String>,
    pub generator_elements: Vec<usize>,
}

impl SubgroupWitness {
    pub fn of(g: &ConcreteGroup, h: &Subgroup) -> Self {
        SubgroupWitness {
            order: h.order(),
            generators: h.generator_words(g),
            generator_elements: h.generators().to_vec(),
        }
    }

    /// Regenerates the subgroup from scratch inside `g`.
    pub fn regenerate(&self, g: &ConcreteGroup) -> Subgroup {
        generated_subgroup(g, &self.generator_elements)
    }
}

// Identity is the member set; the generating sequence is incidental.
impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

/// Canonical ordering: by order, then by sorted member list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An arbitrary subset of group elements, e.g. `Λ₁(G)` or `V₁(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementSet {
    members: Vec<usize>,
}

impl ElementSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        ElementSet { members }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn elements(&self) -> &[usize] {
        &self.members
    }
}

/// `⟨h, x⟩`, built as a union of right cosets `H·r`; closing the coset
/// representatives under right multiplication by the generators is enough.
pub(crate) fn extend(g: &ConcreteGroup, h: &Subgroup, x: usize) -> Subgroup {
    if h.contains(x) {
        return h.clone();
    }
    let mut gens = h.gens.clone();
    gens.push(x);
    let base = h.elements();
    let mut members = h.members.clone();
    let mut order = h.order;
    let mut reps = vec![0usize];
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head];
        head += 1;
        for &s in &gens {
            let y = g.mul(r, s);
            if members.contains(y) {
                continue;
            }
            for &b in &base {
                members.insert(g.mul(b, y));
            }
            order += base.len();
            reps.push(y);
        }
    }
    Subgroup {
        members,
        gens,
        order,
    }
}

/// Smallest subgroup containing `seeds`. Seeds already inside the closure
/// so far are left out of the generating sequence.
pub fn generated_subgroup(g: &ConcreteGroup, seeds: &[usize]) -> Subgroup {
    let mut h = Subgroup::trivial(g);
    for &x in seeds {
        if !h.contains(x) {
            h = extend(g, &h, x);
        }
    }
    h
}

/// Smallest normal subgroup containing `seeds`: alternately conjugate the
/// current generators by the group generators and re-close.
pub fn normal_closure(g: &ConcreteGroup, seeds: &[usize]) -> Subgroup {
    let mut h = generated_subgroup(g, seeds);
    loop {
        let mut grown = false;
        let mut i = 0;
        while i < h.gens.len() {
            let x = h.gens[i];
            for &s in g.generators() {
                let c = g.conjugate(x, s);
                if !h.contains(c) {
                    h = extend(g, &h, c);
                    grown = true;
                }
            }
            i += 1;
        }
        if !grown {
            return h;
        }
    }
}

pub fn is_normal(g: &ConcreteGroup, h: &Subgroup) -> bool {
    h.gens
        .iter()
        .all(|&x| g.generators().iter().all(|&s| h.contains(g.conjugate(x, s))))
}

pub fn is_abelian_subgroup(g: &ConcreteGroup, h: &Subgroup) -> bool {
    let gs = &h.gens;
    gs.iter()
        .enumerate()
        .all(|(i, &x)| gs[i + 1..].iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

/// Join `⟨H, K⟩` of two subgroups.
pub fn join(g: &ConcreteGroup, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let mut out = h.clone();
    for &x in &k.gens {
        if !out.contains(x) {
            out = extend(g, &out, x);
        }
    }
    out
}

pub fn intersection(g: &ConcreteGroup, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let mut m = h.members.clone();
    m.intersect_with(&k.members);
    Subgroup::from_members(g, m)
}


#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;

    fn elem(g: &ConcreteGroup, w: &str) -> usize {
        let names = g.generator_names().to_vec();
        let e = crate::presentation::parse_expr(w, &names).unwrap();
        let mut scope = crate::presentation::Scope::new(names);
        g.evaluate(&crate::presentation::expand_word(&e, &mut scope).unwrap())
            .unwrap()
    }

    #[test]
    fn generated_examples() {
        let d8 = d8();
        assert!(generated_subgroup(&d8, &[]).is_trivial());
        assert_eq!(generated_subgroup(&d8, &[elem(&d8, "a")]).order(), 4);
        let q8 = q8();
        let b = generated_subgroup(&q8, &[elem(&q8, "b")]);
        assert_eq!(b.order(), 4);
        assert!(b.contains(elem(&q8, "a^2")));
    }

    #[test]
    fn normal_closure_examples() {
        let d8 = d8();
        assert!(normal_closure(&d8, &[0]).is_trivial());
        let b = elem(&d8, "b");
        let nc = normal_closure(&d8, &[b]);
        assert_eq!(nc.order(), 4);
        assert!(nc.contains(elem(&d8, "a^2")));
        assert!(is_normal(&d8, &nc));
        let c = elementary(2, 3);
        for x in 0..c.order() {
            assert_eq!(normal_closure(&c, &[x]), generated_subgroup(&c, &[x]));
        }
    }

    #[test]
    fn normality_examples() {
        let d8 = d8();
        assert!(is_normal(&d8, &Subgroup::trivial(&d8)));
        let b = generated_subgroup(&d8, &[elem(&d8, "b")]);
        assert!(!is_normal(&d8, &b));
        // a^-1 b a = a^2 b, which lies outside <b>
        assert!(!b.contains(d8.conjugate(elem(&d8, "b"), elem(&d8, "a"))));
        assert!(is_normal(&d8, &generated_subgroup(&d8, &[elem(&d8, "a")])));
    }

    #[test]
    fn from_members_round_trips() {
        let d16 = dihedral(8);
        let h = generated_subgroup(&d16, &[elem(&d16, "a^2"), elem(&d16, "b")]);
        let again = Subgroup::from_members(&d16, h.members().clone());
        assert_eq!(again.members(), h.members());
        assert_eq!(again.order(), 8);
    }

    #[test]
    fn join_and_intersection() {
        let d8 = d8();
        let a = generated_subgroup(&d8, &[elem(&d8, "a")]);
        let b = generated_subgroup(&d8, &[elem(&d8, "b")]);
        assert!(join(&d8, &a, &b).is_whole(&d8));
        assert!(intersection(&d8, &a, &b).is_trivial());
    }
}
