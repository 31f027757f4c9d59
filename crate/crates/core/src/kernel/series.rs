use crate::error::{Error, Result};
use crate::group::ConcreteGroup;

use super::lattice::{Limits, SubgroupLattice};
use super::{generated_subgroup, normal_closure, ElementSet, Subgroup};
use crate::bitset::BitSet;

pub fn center(g: &ConcreteGroup) -> Subgroup {
    let members = BitSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&x| g.generators().iter().all(|&s| g.mul(x, s) == g.mul(s, x))),
    );
    Subgroup::from_members(g, members)
}

pub fn centralizer(g: &ConcreteGroup, h: &Subgroup) -> Subgroup {
    let members = BitSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&x| h.generators().iter().all(|&s| g.mul(x, s) == g.mul(s, x))),
    );
    Subgroup::from_members(g, members)
}

/// `G′`: normal closure of the commutators of generator pairs.
pub fn derived_subgroup(g: &ConcreteGroup) -> Subgroup {
    let gens = g.generators();
    let mut seeds = Vec::new();
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            seeds.push(g.commutator(x, y));
        }
    }
    normal_closure(g, &seeds)
}

/// `[H, G]` for a normal subgroup `H`.
fn commutator_with_group(g: &ConcreteGroup, h: &Subgroup) -> Subgroup {
    let mut seeds = Vec::new();
    for &x in h.generators() {
        for &s in g.generators() {
            seeds.push(g.commutator(x, s));
        }
    }
    normal_closure(g, &seeds)
}

/// `G = G₁ ⊇ G₂ ⊇ …`, stopping at the trivial group or where the series
/// becomes stationary (non-nilpotent groups).
pub fn lower_central_series(g: &ConcreteGroup) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::whole(g)];
    loop {
        let last = series.last().unwrap();
        if last.is_trivial() {
            return series;
        }
        let next = commutator_with_group(g, last);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// Least `c` with `G_{c+1} = 1`; `None` for non-nilpotent groups.
pub fn nilpotency_class(g: &ConcreteGroup) -> Option<usize> {
    let series = lower_central_series(g);
    series.last().unwrap().is_trivial().then(|| series.len() - 1)
}

/// p-th powers generate `℧₁`; together with `G′` they give `Φ(G)` for a p-group.
pub fn frattini(g: &ConcreteGroup) -> Subgroup {
    match g.prime_power() {
        None if g.order() == 1 => Subgroup::trivial(g),
        Some((p, _)) => {
            let mut seeds = derived_subgroup(g).generators().to_vec();
            seeds.extend(v1(g, p).elements());
            generated_subgroup(g, &seeds)
        }
        None => frattini_by_maximals(g, &Limits::default())
            .expect("frattini fallback needs the subgroup lattice"),
    }
}

/// Intersection of the maximal subgroups, read off the full lattice.
pub fn frattini_by_maximals(g: &ConcreteGroup, limits: &Limits) -> Result<Subgroup> {
    let lattice = SubgroupLattice::build(g, limits)?;
    let top = lattice.len() - 1;
    let mut members = BitSet::full(g.order());
    for &m in lattice.maximal_subgroups(top) {
        members.intersect_with(lattice.subgroup(m).members());
    }
    Ok(Subgroup::from_members(g, members))
}

/// `d(G)`. For p-groups `log_p |G/Φ(G)|`; otherwise the least `k` such that
/// some `k` elements generate.
pub fn minimal_generators(g: &ConcreteGroup) -> usize {
    if g.order() == 1 {
        return 0;
    }
    if let Some((p, _)) = g.prime_power() {
        let mut idx = g.order() / frattini(g).order();
        let mut d = 0;
        while idx > 1 {
            idx /= p as usize;
            d += 1;
        }
        return d;
    }
    // Brute force; the generators of the presentation bound the search.
    let n = g.order();
    for k in 1..=g.generators().len() {
        let mut chosen = Vec::with_capacity(k);
        if search_generating(g, k, 1, &mut chosen, n) {
            return k;
        }
    }
    g.generators().len()
}

fn search_generating(g: &ConcreteGroup, k: usize, start: usize, chosen: &mut Vec<usize>, n: usize) -> bool {
    if chosen.len() == k {
        return generated_subgroup(g, chosen).order() == n;
    }
    for x in start..n {
        chosen.push(x);
        if search_generating(g, k, x + 1, chosen, n) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn require_p(g: &ConcreteGroup, p: u64) -> Result<()> {
    match g.prime_power() {
        Some((q, _)) if q == p => Ok(()),
        None if g.order() == 1 => Ok(()),
        _ => Err(Error::NotPGroup(g.order())),
    }
}

/// `Λ₁(G) = {a : a^p = 1}`.
pub fn lambda1(g: &ConcreteGroup, p: u64) -> ElementSet {
    ElementSet::new(
        (0..g.order())
            .filter(|&x| (p as usize).is_multiple_of(g.element_order(x)))
            .collect(),
    )
}

/// `V₁(G) = {a^p : a ∈ G}`.
pub fn v1(g: &ConcreteGroup, p: u64) -> ElementSet {
    ElementSet::new((0..g.order()).map(|x| g.pow(x, p as i64)).collect())
}

pub fn omega1(g: &ConcreteGroup, p: u64) -> Result<Subgroup> {
    require_p(g, p)?;
    Ok(generated_subgroup(g, lambda1(g, p).elements()))
}

pub fn agemo1(g: &ConcreteGroup, p: u64) -> Result<Subgroup> {
    require_p(g, p)?;
    Ok(generated_subgroup(g, v1(g, p).elements()))
}

/// `(ab)^p = a^p b^p` for all `a, b`.
pub fn is_p_abelian(g: &ConcreteGroup, p: u64) -> bool {
    let pw: Vec<usize> = (0..g.order()).map(|x| g.pow(x, p as i64)).collect();
    (0..g.order()).all(|a| (0..g.order()).all(|b| pw[g.mul(a, b)] == g.mul(pw[a], pw[b])))
}

/// Least common multiple of the element orders of `h`.
pub fn exponent(g: &ConcreteGroup, h: &Subgroup) -> usize {
    h.members().iter().fold(1, |acc, x| lcm(acc, g.element_order(x)))
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;

    #[test]
    fn centers() {
        assert_eq!(center(&cyclic(6)).order(), 6);
        assert_eq!(center(&q8()).order(), 2);
        let d8 = d8();
        let z = center(&d8);
        assert_eq!(z.order(), 2);
        let a2 = d8.evaluate(&crate::Word::new(vec![1, 1])).unwrap();
        assert!(z.contains(a2));
        assert_eq!(centralizer(&d8, &z).order(), 8);
    }

    #[test]
    fn derived_and_class() {
        let c = elementary(3, 2);
        assert!(derived_subgroup(&c).is_trivial());
        assert_eq!(nilpotency_class(&c), Some(1));
        assert_eq!(nilpotency_class(&cyclic(1)), Some(0));
        let d16 = dihedral(8);
        let series = lower_central_series(&d16);
        let orders: Vec<usize> = series.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![16, 4, 2, 1]);
        assert_eq!(nilpotency_class(&d16), Some(3));
        // S3 is not nilpotent
        let s3 = group("gens a,b; rels a^3=b^2=1, a^b=a^-1;");
        assert_eq!(nilpotency_class(&s3), None);
        assert_eq!(derived_subgroup(&s3).order(), 3);
    }

    #[test]
    fn derived_matches_all_commutators() {
        for g in [d8(), q8(), dihedral(8), dihedral(16)] {
            let all: Vec<usize> = (0..g.order())
                .flat_map(|x| (0..g.order()).map(move |y| (x, y)))
                .map(|(x, y)| g.commutator(x, y))
                .collect();
            assert_eq!(derived_subgroup(&g), generated_subgroup(&g, &all));
        }
    }

    #[test]
    fn frattini_and_rank() {
        let c = cyclic(5);
        assert!(frattini(&c).is_trivial());
        assert_eq!(minimal_generators(&c), 1);
        let q = q8();
        let phi = frattini(&q);
        assert_eq!(phi.order(), 2);
        assert_eq!(minimal_generators(&q), 2);
        assert_eq!(frattini_by_maximals(&q, &Limits::default()).unwrap(), phi);
        assert_eq!(minimal_generators(&elementary(2, 3)), 3);
        let s3 = group("gens a,b; rels a^3=b^2=1, a^b=a^-1;");
        assert_eq!(minimal_generators(&s3), 2);
        assert!(frattini(&s3).is_trivial());
    }

    #[test]
    fn omega_agemo() {
        let e = elementary(3, 2);
        assert_eq!(omega1(&e, 3).unwrap().order(), 9);
        assert!(agemo1(&e, 3).unwrap().is_trivial());
        assert!(is_p_abelian(&e, 3));
        let q = q8();
        let l = lambda1(&q, 2);
        assert_eq!(l.len(), 2);
        assert_eq!(omega1(&q, 2).unwrap().order(), 2);
        assert_eq!(agemo1(&cyclic(4), 2).unwrap().order(), 2);
        assert_eq!(v1(&cyclic(4), 2).len(), 2);
        assert!(omega1(&cyclic(6), 2).is_err());
        assert!(!is_p_abelian(&d8(), 2));
    }

    #[test]
    fn exponents() {
        let d16 = dihedral(8);
        assert_eq!(exponent(&d16, &Subgroup::whole(&d16)), 8);
        assert_eq!(exponent(&d16, &derived_subgroup(&d16)), 4);
        assert_eq!(exponent(&d16, &Subgroup::trivial(&d16)), 1);
    }
}
