//! Full subgroup lattices.
//!
//! p-groups are built layer by layer: every subgroup of order `p^{k+1}` is
//! `⟨H, x⟩` for one of its index-`p` subgroups `H` and any `x` outside `H`
//! that normalizes it with `x^p ∈ H`. Other groups use the generic
//! extend-by-one-cyclic-subgroup closure to a fixpoint.

use std::collections::HashMap;
use std::time::Instant;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::ConcreteGroup;

use super::{extend, is_abelian_subgroup, is_normal, generated_subgroup, Subgroup};

pub const DEFAULT_SUBGROUP_CAP: usize = 1024;

/// Size cap and optional wall-clock deadline for lattice-based work.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub subgroup_cap: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subgroup_cap: DEFAULT_SUBGROUP_CAP,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn with_cap(cap: usize) -> Self {
        Limits {
            subgroup_cap: cap,
            deadline: None,
        }
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }

    pub fn check_order(&self, order: usize) -> Result<()> {
        if order > self.subgroup_cap {
            Err(Error::CapExceeded {
                order,
                cap: self.subgroup_cap,
            })
        } else {
            Ok(())
        }
    }
}

/// Every subgroup exactly once, in canonical order `(order, members)`, with
/// normality, commutativity and the maximal-subgroup relation cached.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    normal: Vec<bool>,
    abelian: Vec<bool>,
    maximal: Vec<Vec<usize>>,
    index: HashMap<BitSet, usize>,
}

impl SubgroupLattice {
    pub fn build(g: &ConcreteGroup, limits: &Limits) -> Result<Self> {
        limits.check_order(g.order())?;
        let (subs, maximal) = match g.prime_power() {
            Some((p, n)) => layered(g, p as usize, n as usize, limits)?,
            None if g.order() == 1 => (vec![Subgroup::trivial(g)], vec![vec![]]),
            None => {
                let subs = generic(g, limits)?;
                let maximal = maximal_relation(&subs, limits)?;
                (subs, maximal)
            }
        };
        Ok(Self::assemble(g, subs, maximal))
    }

    /// Same as [`build`](Self::build) but always through the generic closure.
    pub fn build_generic(g: &ConcreteGroup, limits: &Limits) -> Result<Self> {
        limits.check_order(g.order())?;
        let subs = generic(g, limits)?;
        let maximal = maximal_relation(&subs, limits)?;
        Ok(Self::assemble(g, subs, maximal))
    }

    fn assemble(g: &ConcreteGroup, subs: Vec<Subgroup>, maximal: Vec<Vec<usize>>) -> Self {
        let mut perm: Vec<usize> = (0..subs.len()).collect();
        perm.sort_by(|&a, &b| subs[a].cmp(&subs[b]));
        let mut rank = vec![0; subs.len()];
        for (new, &old) in perm.iter().enumerate() {
            rank[old] = new;
        }
        let mut subgroups = Vec::with_capacity(subs.len());
        let mut max_sorted = Vec::with_capacity(subs.len());
        for &old in &perm {
            subgroups.push(subs[old].clone());
            let mut m: Vec<usize> = maximal[old].iter().map(|&i| rank[i]).collect();
            m.sort_unstable();
            max_sorted.push(m);
        }
        let normal = subgroups.iter().map(|h| is_normal(g, h)).collect();
        let abelian = subgroups.iter().map(|h| is_abelian_subgroup(g, h)).collect();
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.members().clone(), i))
            .collect();
        SubgroupLattice {
            subgroups,
            normal,
            abelian,
            maximal: max_sorted,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    /// The whole group is always last.
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn is_abelian(&self, i: usize) -> bool {
        self.abelian[i]
    }

    pub fn maximal_subgroups(&self, i: usize) -> &[usize] {
        &self.maximal[i]
    }

    pub fn index_of(&self, members: &BitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    /// Non-abelian with every maximal subgroup abelian.
    pub fn is_minimal_nonabelian(&self, i: usize) -> bool {
        !self.abelian[i] && self.maximal[i].iter().all(|&m| self.abelian[m])
    }

    /// Indices of subgroups contained in subgroup `i` (including itself).
    pub fn subgroups_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let target = self.subgroups[i].members();
        (0..=i).filter(move |&j| self.subgroups[j].members().is_subset(target))
    }
}

pub fn all_subgroups(g: &ConcreteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    Ok(SubgroupLattice::build(g, &Limits::with_cap(cap))?.subgroups)
}

/// Generic extend-by-one closure, independent of the p-group layering.
pub fn all_subgroups_generic(g: &ConcreteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    let limits = Limits::with_cap(cap);
    limits.check_order(g.order())?;
    let mut subs = generic(g, &limits)?;
    subs.sort();
    Ok(subs)
}

fn layered(
    g: &ConcreteGroup,
    p: usize,
    n: usize,
    limits: &Limits,
) -> Result<(Vec<Subgroup>, Vec<Vec<usize>>)> {
    let powers: Vec<usize> = (0..g.order()).map(|x| g.pow(x, p as i64)).collect();
    let mut all = vec![Subgroup::trivial(g)];
    let mut maximal: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer_start = 0;
    for _ in 0..n {
        let layer_end = all.len();
        let mut seen: HashMap<BitSet, usize> = HashMap::new();
        for hi in layer_start..layer_end {
            limits.check_time()?;
            let h = all[hi].clone();
            let mut done = h.members().clone();
            for (x, &xp) in powers.iter().enumerate() {
                if done.contains(x) || !h.contains(xp) {
                    continue;
                }
                if !h.generators().iter().all(|&y| h.contains(g.conjugate(y, x))) {
                    continue;
                }
                let k = extend(g, &h, x);
                done.union_with(k.members());
                match seen.get(k.members()) {
                    Some(&ki) => maximal[ki].push(hi),
                    None => {
                        seen.insert(k.members().clone(), all.len());
                        all.push(k);
                        maximal.push(vec![hi]);
                    }
                }
            }
        }
        layer_start = layer_end;
    }
    Ok((all, maximal))
}

fn generic(g: &ConcreteGroup, limits: &Limits) -> Result<Vec<Subgroup>> {
    let mut seen: HashMap<BitSet, usize> = HashMap::new();
    let mut all = vec![Subgroup::trivial(g)];
    seen.insert(all[0].members().clone(), 0);
    let mut cyclic_gens = Vec::new();
    for x in 1..g.order() {
        let c = generated_subgroup(g, &[x]);
        if !seen.contains_key(c.members()) {
            seen.insert(c.members().clone(), all.len());
            all.push(c);
            cyclic_gens.push(x);
        }
    }
    let mut i = 0;
    while i < all.len() {
        limits.check_time()?;
        let h = all[i].clone();
        for &c in &cyclic_gens {
            if h.contains(c) {
                continue;
            }
            let k = extend(g, &h, c);
            if !seen.contains_key(k.members()) {
                seen.insert(k.members().clone(), all.len());
                all.push(k);
            }
        }
        i += 1;
    }
    Ok(all)
}

fn maximal_relation(subs: &[Subgroup], limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::with_capacity(subs.len());
    for k in subs {
        limits.check_time()?;
        let below: Vec<usize> = (0..subs.len())
            .filter(|&h| subs[h].order() < k.order() && subs[h].is_subgroup_of(k))
            .collect();
        let max: Vec<usize> = below
            .iter()
            .copied()
            .filter(|&h| {
                !below.iter().any(|&l| {
                    subs[l].order() > subs[h].order() && subs[h].is_subgroup_of(&subs[l])
                })
            })
            .collect();
        out.push(max);
    }
    Ok(out)
}
