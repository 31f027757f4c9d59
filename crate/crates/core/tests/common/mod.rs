//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the lattice code under test.
#![allow(dead_code)]

use std::collections::BTreeSet;

use metaham::ConcreteGroup;

/// Sorted member lists of every subgroup, by testing each subset that
/// contains the identity for closure. Feasible up to order 16.
pub fn subgroups_by_subsets(g: &ConcreteGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    assert!(n <= 16, "subset oracle is exponential");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (n - 1)) {
        let members: Vec<usize> = std::iter::once(0)
            .chain((1..n).filter(|&i| mask >> (i - 1) & 1 == 1))
            .collect();
        let inside = |x: usize| x == 0 || (mask >> (x - 1)) & 1 == 1;
        if members.iter().all(|&a| members.iter().all(|&b| inside(g.mul(a, b)))) {
            out.insert(members);
        }
    }
    out
}

/// Subgroup generated by `seeds`: breadth-first right multiplication.
pub fn closure(g: &ConcreteGroup, seeds: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for &s in seeds {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                queue.push(y);
            }
        }
    }
    queue.sort_unstable();
    queue
}

/// Every subgroup as a sorted member list, by closing under joins with
/// cyclic subgroups. Independent of the crate's lattice builders.
pub fn subgroups_by_joins(g: &ConcreteGroup) -> BTreeSet<Vec<usize>> {
    let mut all = BTreeSet::new();
    let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for x in 0..g.order() {
        let h = closure(g, &[x]);
        if all.insert(h.clone()) {
            frontier.push((h, vec![x]));
        }
    }
    let cyclic: Vec<usize> = frontier.iter().map(|(_, gens)| gens[0]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (h, gens) in &frontier {
            for &c in &cyclic {
                if h.binary_search(&c).is_ok() {
                    continue;
                }
                let mut seeds = gens.clone();
                seeds.push(c);
                let j = closure(g, &seeds);
                if all.insert(j.clone()) {
                    next.push((j, seeds));
                }
            }
        }
        frontier = next;
    }
    all
}

pub fn is_abelian_set(g: &ConcreteGroup, h: &[usize]) -> bool {
    h.iter().all(|&a| h.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

pub fn is_normal_set(g: &ConcreteGroup, h: &[usize]) -> bool {
    (0..g.order()).all(|y| h.iter().all(|&x| h.binary_search(&g.conjugate(x, y)).is_ok()))
}

pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Structural answers recomputed from a full subgroup list.
pub struct Naive {
    pub subgroups: Vec<Vec<usize>>,
    pub abelian: Vec<bool>,
    pub normal: Vec<bool>,
}

impl Naive {
    pub fn new(g: &ConcreteGroup, subgroups: BTreeSet<Vec<usize>>) -> Self {
        let subgroups: Vec<Vec<usize>> = subgroups.into_iter().collect();
        let abelian = subgroups.iter().map(|h| is_abelian_set(g, h)).collect();
        let normal = subgroups.iter().map(|h| is_normal_set(g, h)).collect();
        Naive {
            subgroups,
            abelian,
            normal,
        }
    }

    pub fn minimal_nonabelian(&self, i: usize) -> bool {
        let h = &self.subgroups[i];
        !self.abelian[i]
            && self
                .subgroups
                .iter()
                .enumerate()
                .filter(|(j, k)| *j != i && k.len() < h.len() && is_subset(k, h))
                .all(|(j, _)| self.abelian[j])
    }

    /// Every non-abelian subgroup is normal.
    pub fn metahamiltonian(&self) -> bool {
        (0..self.subgroups.len()).all(|i| self.abelian[i] || self.normal[i])
    }

    /// Every minimal non-abelian subgroup is normal.
    pub fn a1_normal(&self) -> bool {
        (0..self.subgroups.len()).all(|i| !self.minimal_nonabelian(i) || self.normal[i])
    }

    /// Least `t` with every subgroup of index `p^t` abelian.
    pub fn a_degree(&self, order: usize, p: usize) -> usize {
        let mut t = 0;
        let mut index = 1;
        loop {
            let all_abelian = self
                .subgroups
                .iter()
                .zip(&self.abelian)
                .filter(|(h, _)| h.len() * index == order)
                .all(|(_, &a)| a);
            if all_abelian {
                return t;
            }
            t += 1;
            index *= p;
        }
    }
}

pub fn lattice_sets(l: &metaham::kernel::SubgroupLattice) -> BTreeSet<Vec<usize>> {
    l.subgroups().iter().map(|h| h.elements()).collect()
}
