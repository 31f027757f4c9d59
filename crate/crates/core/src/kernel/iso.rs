//! Backtracking isomorphism test: a minimal generating sequence of the first
//! group is mapped to candidate images of matching invariants, and each
//! partial assignment is checked to extend to an injective homomorphism on
//! the subgroup generated so far.

use crate::error::Result;
use crate::group::ConcreteGroup;

use super::lattice::Limits;
use super::{
    center, derived_subgroup, exponent, extend, frattini, minimal_generators, nilpotency_class,
    Subgroup,
};

const NONE: usize = usize::MAX;

/// Cheap isomorphism invariants compared before any search.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoInvariants {
    pub order: usize,
    pub order_profile: Vec<(usize, usize)>,
    pub center_order: usize,
    pub derived_order: usize,
    pub rank: usize,
    pub class: Option<usize>,
    pub exponent: usize,
}

impl IsoInvariants {
    pub fn of(g: &ConcreteGroup) -> Self {
        let mut counts = std::collections::BTreeMap::new();
        for x in 0..g.order() {
            *counts.entry(g.element_order(x)).or_insert(0) += 1;
        }
        IsoInvariants {
            order: g.order(),
            order_profile: counts.into_iter().collect(),
            center_order: center(g).order(),
            derived_order: derived_subgroup(g).order(),
            rank: minimal_generators(g),
            class: nilpotency_class(g),
            exponent: exponent(g, &Subgroup::whole(g)),
        }
    }
}

/// Per-element invariant preserved by every isomorphism.
fn element_keys(g: &ConcreteGroup) -> Vec<(usize, usize, bool, bool, bool)> {
    let z = center(g);
    let d = derived_subgroup(g);
    let phi = frattini(g);
    (0..g.order())
        .map(|x| {
            let centralizer = (0..g.order()).filter(|&y| g.mul(x, y) == g.mul(y, x)).count();
            (g.element_order(x), centralizer, z.contains(x), d.contains(x), phi.contains(x))
        })
        .collect()
}

/// Extends `xs[i] ↦ ys[i]` to `⟨xs⟩` by following generator edges. Returns
/// `None` when the assignment is not a well-defined injective homomorphism;
/// elements outside `⟨xs⟩` map to `usize::MAX`.
pub(crate) fn extend_homomorphism(
    g1: &ConcreteGroup,
    g2: &ConcreteGroup,
    xs: &[usize],
    ys: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![NONE; g1.order()];
    let mut used = vec![false; g2.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head];
        head += 1;
        for (&x, &y) in xs.iter().zip(ys) {
            let hx = g1.mul(h, x);
            let image = g2.mul(map[h], y);
            if map[hx] == NONE {
                if used[image] {
                    return None;
                }
                used[image] = true;
                map[hx] = image;
                queue.push(hx);
            } else if map[hx] != image {
                return None;
            }
        }
    }
    Some(map)
}

/// Returns an isomorphism `g1 → g2` as an element map, or `None`.
pub fn isomorphic(g1: &ConcreteGroup, g2: &ConcreteGroup, cap: usize) -> Result<Option<Vec<usize>>> {
    let limits = Limits::with_cap(cap);
    limits.check_order(g1.order())?;
    limits.check_order(g2.order())?;
    if g1.order() != g2.order() {
        return Ok(None);
    }
    if g1.order() == 1 {
        return Ok(Some(vec![0]));
    }
    if IsoInvariants::of(g1) != IsoInvariants::of(g2) {
        return Ok(None);
    }
    let k1 = element_keys(g1);
    let k2 = element_keys(g2);
    let mut s1 = k1.clone();
    let mut s2 = k2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(None);
    }

    // Prefer generators from small invariant classes.
    let class_size = |x: usize| k2.iter().filter(|&&k| k == k1[x]).count();
    let mut order: Vec<usize> = (1..g1.order()).collect();
    order.sort_by_key(|&x| (class_size(x), std::cmp::Reverse(g1.element_order(x)), x));
    let mut span = match g1.prime_power() {
        Some(_) => frattini(g1),
        None => Subgroup::trivial(g1),
    };
    let mut xs = Vec::new();
    for x in order {
        if span.order() == g1.order() {
            break;
        }
        if !span.contains(x) {
            span = extend(g1, &span, x);
            xs.push(x);
        }
    }

    let candidates: Vec<Vec<usize>> = xs
        .iter()
        .map(|&x| (0..g2.order()).filter(|&y| k2[y] == k1[x]).collect())
        .collect();
    let mut ys = Vec::with_capacity(xs.len());
    Ok(backtrack(g1, g2, &xs, &candidates, &mut ys))
}

fn backtrack(
    g1: &ConcreteGroup,
    g2: &ConcreteGroup,
    xs: &[usize],
    candidates: &[Vec<usize>],
    ys: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let level = ys.len();
    for &y in &candidates[level] {
        ys.push(y);
        if let Some(map) = extend_homomorphism(g1, g2, &xs[..=level], ys) {
            if level + 1 == xs.len() {
                if map.iter().all(|&v| v != NONE) {
                    return Some(map);
                }
            } else if let Some(full) = backtrack(g1, g2, xs, candidates, ys) {
                return Some(full);
            }
        }
        ys.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;

    fn is_iso_map(g1: &ConcreteGroup, g2: &ConcreteGroup, map: &[usize]) -> bool {
        (0..g1.order()).all(|a| (0..g1.order()).all(|b| map[g1.mul(a, b)] == g2.mul(map[a], map[b])))
    }

    #[test]
    fn reflexive_with_witness() {
        let g = dihedral(8);
        let map = isomorphic(&g, &g, 512).unwrap().unwrap();
        assert!(is_iso_map(&g, &g, &map));
    }

    #[test]
    fn q8_is_not_d8() {
        assert!(isomorphic(&q8(), &d8(), 512).unwrap().is_none());
        let involutions = |g: &ConcreteGroup| (0..g.order()).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions(&q8()), 1);
        assert_eq!(involutions(&d8()), 5);
    }

    #[test]
    fn m2_2_1_is_d8() {
        let m = group("gens a,b; rels a^4=1, b^2=1, a^b=a^3;");
        let map = isomorphic(&m, &d8(), 512).unwrap().unwrap();
        assert!(is_iso_map(&m, &d8(), &map));
    }

    #[test]
    fn different_presentations_same_group() {
        let c6 = cyclic(6);
        let c2c3 = group("gens x,y; rels x^2=y^3=1, [x,y]=1;");
        assert!(isomorphic(&c6, &c2c3, 512).unwrap().is_some());
        let s3 = group("gens a,b; rels a^3=b^2=1, a^b=a^-1;");
        assert!(isomorphic(&c6, &s3, 512).unwrap().is_none());
    }

    #[test]
    fn cap_applies() {
        assert!(isomorphic(&d8(), &d8(), 4).is_err());
    }
}
