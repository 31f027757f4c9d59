use crate::error::{Error, Result};
use crate::group::ConcreteGroup;

use super::iso::extend_homomorphism;
use super::{is_normal, Subgroup};

/// A quotient group together with the projection `G → G/N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: ConcreteGroup,
    pub projection: Vec<usize>,
}

/// A subgroup re-indexed as a standalone group, with its inclusion map.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub group: ConcreteGroup,
    pub inclusion: Vec<usize>,
}

pub fn quotient(g: &ConcreteGroup, n: &Subgroup) -> Result<Quotient> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let members = n.elements();
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset[x] != usize::MAX {
            continue;
        }
        for &m in &members {
            coset[g.mul(x, m)] = reps.len();
        }
        reps.push(x);
    }
    let q = reps.len();
    let mut mul = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            mul.push(coset[g.mul(a, b)] as u32);
        }
    }
    let gens = g.generators().iter().map(|&s| coset[s]).collect();
    let group = ConcreteGroup::from_table(mul, gens, g.generator_names().to_vec())?;
    Ok(Quotient {
        group,
        projection: coset,
    })
}

/// Generators of the new group are named `x1, x2, …` after the subgroup's
/// generating sequence.
pub fn subgroup_as_group(g: &ConcreteGroup, h: &Subgroup) -> Embedded {
    let elems = h.elements();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in elems.iter().enumerate() {
        pos[x] = i;
    }
    let mut mul = Vec::with_capacity(elems.len() * elems.len());
    for &a in &elems {
        for &b in &elems {
            mul.push(pos[g.mul(a, b)] as u32);
        }
    }
    let gens: Vec<usize> = h.generators().iter().map(|&x| pos[x]).collect();
    let names = (1..=gens.len()).map(|i| format!("x{i}")).collect();
    let group = ConcreteGroup::from_table(mul, gens, names)
        .expect("a closed subset with a generating sequence is a group");
    Embedded {
        group,
        inclusion: elems,
    }
}

fn product_names(left: &[String], right: &[String]) -> Vec<String> {
    let clash = left.iter().any(|n| right.contains(n));
    let mut names: Vec<String> = if clash {
        left.iter()
            .map(|n| format!("{n}_1"))
            .chain(right.iter().map(|n| format!("{n}_2")))
            .collect()
    } else {
        left.iter().chain(right).cloned().collect()
    };
    let unique = names.iter().enumerate().all(|(i, n)| !names[..i].contains(n));
    if !unique {
        names = (1..=names.len()).map(|i| format!("g{i}")).collect();
    }
    names
}

/// Element `(x, y)` has index `x·|K| + y`.
pub fn direct_product(h: &ConcreteGroup, k: &ConcreteGroup) -> ConcreteGroup {
    let (n1, n2) = (h.order(), k.order());
    let n = n1 * n2;
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        let (a1, a2) = (a / n2, a % n2);
        for b in 0..n {
            let (b1, b2) = (b / n2, b % n2);
            mul.push((h.mul(a1, b1) * n2 + k.mul(a2, b2)) as u32);
        }
    }
    let gens = h
        .generators()
        .iter()
        .map(|&x| x * n2)
        .chain(k.generators().iter().copied())
        .collect();
    let names = product_names(h.generator_names(), k.generator_names());
    ConcreteGroup::from_table(mul, gens, names).expect("direct product of groups is a group")
}

/// `H ∗ K`: the quotient of `H × K` identifying each paired central element
/// `z ∈ H` with its partner `φ(z) ∈ K`, where `φ` is the isomorphism between
/// the generated central subgroups induced by the pairing.
pub fn central_product(
    h: &ConcreteGroup,
    k: &ConcreteGroup,
    pairing: &[(usize, usize)],
) -> Result<Quotient> {
    for &(z1, z2) in pairing {
        if z1 >= h.order() || z2 >= k.order() {
            return Err(Error::InvalidPairing("element out of range".into()));
        }
        if h.generators().iter().any(|&s| h.mul(s, z1) != h.mul(z1, s))
            || k.generators().iter().any(|&s| k.mul(s, z2) != k.mul(z2, s))
        {
            return Err(Error::InvalidPairing("paired element is not central".into()));
        }
        if h.element_order(z1) != k.element_order(z2) {
            return Err(Error::InvalidPairing("paired elements have different orders".into()));
        }
    }
    let xs: Vec<usize> = pairing.iter().map(|p| p.0).collect();
    let ys: Vec<usize> = pairing.iter().map(|p| p.1).collect();
    let phi = extend_homomorphism(h, k, &xs, &ys)
        .ok_or_else(|| Error::InvalidPairing("pairing does not induce an isomorphism".into()))?;
    let image_size = super::generated_subgroup(k, &ys).order();
    let domain: Vec<usize> = (0..h.order()).filter(|&z| phi[z] != usize::MAX).collect();
    if domain.len() != image_size {
        return Err(Error::InvalidPairing("pairing does not induce an isomorphism".into()));
    }
    let prod = direct_product(h, k);
    let n2 = k.order();
    let seeds: Vec<usize> = domain.iter().map(|&z| z * n2 + k.inv(phi[z])).collect();
    let n = super::generated_subgroup(&prod, &seeds);
    quotient(&prod, &n)
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::super::{center, derived_subgroup, generated_subgroup, isomorphic};
    use super::*;

    #[test]
    fn quotient_examples() {
        let d8 = d8();
        let q = quotient(&d8, &Subgroup::trivial(&d8)).unwrap();
        assert_eq!(q.group.order(), 8);
        assert!(isomorphic(&q.group, &d8, 512).unwrap().is_some());
        assert_eq!(quotient(&d8, &Subgroup::whole(&d8)).unwrap().group.order(), 1);
        let q = quotient(&d8, &center(&d8)).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(derived_subgroup(&q.group).is_trivial());
        assert!(isomorphic(&q.group, &elementary(2, 2), 512).unwrap().is_some());
        let b = generated_subgroup(&d8, &[d8.generators()[1]]);
        assert_eq!(quotient(&d8, &b).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let g = dihedral(8);
        let q = quotient(&g, &derived_subgroup(&g)).unwrap();
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(
                    q.projection[g.mul(a, b)],
                    q.group.mul(q.projection[a], q.projection[b])
                );
            }
        }
    }

    #[test]
    fn subgroup_as_group_examples() {
        let d8 = d8();
        assert_eq!(subgroup_as_group(&d8, &Subgroup::trivial(&d8)).group.order(), 1);
        let whole = subgroup_as_group(&d8, &Subgroup::whole(&d8));
        assert!(isomorphic(&whole.group, &d8, 512).unwrap().is_some());
        let a = subgroup_as_group(&d8, &generated_subgroup(&d8, &[d8.generators()[0]]));
        assert!(isomorphic(&a.group, &cyclic(4), 512).unwrap().is_some());
    }

    #[test]
    fn products() {
        let q8 = q8();
        assert_eq!(direct_product(&q8, &cyclic(1)).order(), 8);
        assert!(isomorphic(&direct_product(&q8, &cyclic(1)), &q8, 512)
            .unwrap()
            .is_some());
        let qc = direct_product(&q8, &cyclic(2));
        assert_eq!(qc.order(), 16);
        qc.validate().unwrap();
        assert_eq!(qc.generator_names(), &["a_1", "b_1", "a_2"]);

        let c4 = cyclic(4);
        let a2 = q8.pow(q8.generators()[0], 2);
        let x2 = c4.pow(c4.generators()[0], 2);
        let cp = central_product(&q8, &c4, &[(a2, x2)]).unwrap();
        assert_eq!(cp.group.order(), 16);
        cp.group.validate().unwrap();
    }

    #[test]
    fn central_product_rejects_bad_pairings() {
        let q8 = q8();
        let c4 = cyclic(4);
        let a = q8.generators()[0];
        let x = c4.generators()[0];
        assert!(matches!(
            central_product(&q8, &c4, &[(a, x)]),
            Err(Error::InvalidPairing(_))
        ));
        let a2 = q8.pow(a, 2);
        assert!(matches!(
            central_product(&q8, &c4, &[(a2, x)]),
            Err(Error::InvalidPairing(_))
        ));
    }
}
