//! Structural predicates and the classification fingerprint of a group.
//!
//! Everything that quantifies over subgroups goes through one cached
//! [`SubgroupLattice`], held by an [`Analysis`].

use std::cell::OnceCell;
use std::collections::HashSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::families;
use crate::group::ConcreteGroup;
use crate::kernel::{
    center, derived_subgroup, exponent, frattini, generated_subgroup, is_normal,
    lower_central_series, minimal_generators, nilpotency_class, quotient, subgroup_as_group,
    Limits, Subgroup, SubgroupLattice, SubgroupWitness,
};
use crate::presentation::Presentation;

/// Rédei's three shapes of a minimal non-abelian p-group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum A1Kind {
    Q8,
    #[serde(rename = "Mp(m,n)")]
    Mpmn,
    #[serde(rename = "Mp(m,n,1)")]
    Mpmn1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct A1Type {
    pub kind: A1Kind,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
}

impl A1Type {
    pub fn q8() -> Self {
        A1Type {
            kind: A1Kind::Q8,
            p: 2,
            m: None,
            n: None,
        }
    }

    pub fn mpmn(p: u64, m: u32, n: u32) -> Self {
        A1Type {
            kind: A1Kind::Mpmn,
            p,
            m: Some(m),
            n: Some(n),
        }
    }

    pub fn mpmn1(p: u64, m: u32, n: u32) -> Self {
        A1Type {
            kind: A1Kind::Mpmn1,
            p,
            m: Some(m),
            n: Some(n),
        }
    }

    /// The canonical presentation of this type.
    pub fn presentation(&self) -> Presentation {
        match self.kind {
            A1Kind::Q8 => families::q8_presentation(),
            A1Kind::Mpmn => families::mpmn_presentation(self.p, self.m.unwrap(), self.n.unwrap()),
            A1Kind::Mpmn1 => {
                families::mpmn1_presentation(self.p, self.m.unwrap(), self.n.unwrap())
            }
        }
    }
}

impl fmt::Display for A1Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            A1Kind::Q8 => write!(f, "Q8"),
            A1Kind::Mpmn => write!(f, "M_{}({},{})", self.p, self.m.unwrap(), self.n.unwrap()),
            A1Kind::Mpmn1 => {
                write!(f, "M_{}({},{},1)", self.p, self.m.unwrap(), self.n.unwrap())
            }
        }
    }
}

/// Verdict of a predicate that only applies to non-abelian groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    NotApplicable,
    Holds,
    Fails(Subgroup),
}

impl Outcome {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Outcome::NotApplicable => None,
            Outcome::Holds => Some(true),
            Outcome::Fails(_) => Some(false),
        }
    }

    pub fn witness(&self) -> Option<&Subgroup> {
        match self {
            Outcome::Fails(h) => Some(h),
            _ => None,
        }
    }
}

/// `t` with `G ∈ A_t`, or not applicable outside p-groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ADegree {
    Value(usize),
    NotApplicable,
}

impl ADegree {
    pub fn value(self) -> Option<usize> {
        match self {
            ADegree::Value(t) => Some(t),
            ADegree::NotApplicable => None,
        }
    }
}

impl Serialize for ADegree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ADegree::Value(t) => s.serialize_u64(*t as u64),
            ADegree::NotApplicable => s.serialize_str("not-applicable"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub abelian: bool,
    pub dedekindian: bool,
    pub hamiltonian: bool,
    pub minimal_nonabelian: bool,
    /// `null` for abelian groups.
    pub metahamiltonian: Option<bool>,
    pub metacyclic: bool,
    pub two_engel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub order: usize,
    pub p: Option<u64>,
    pub n: Option<u32>,
    pub d: usize,
    pub c: Option<usize>,
    pub derived_order: usize,
    pub derived_exponent: usize,
    pub derived_elementary_abelian: bool,
    pub flags: Flags,
    pub a_degree: ADegree,
    pub a1_type: Option<A1Type>,
    pub metahamiltonian_witness: Option<SubgroupWitness>,
}

/// Lazily computed structure of one group.
pub struct Analysis<'g> {
    g: &'g ConcreteGroup,
    limits: Limits,
    lattice: OnceCell<SubgroupLattice>,
    derived: OnceCell<Subgroup>,
}

impl<'g> Analysis<'g> {
    pub fn new(g: &'g ConcreteGroup, limits: Limits) -> Self {
        Analysis {
            g,
            limits,
            lattice: OnceCell::new(),
            derived: OnceCell::new(),
        }
    }

    pub fn group(&self) -> &'g ConcreteGroup {
        self.g
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn lattice(&self) -> Result<&SubgroupLattice> {
        if let Some(l) = self.lattice.get() {
            return Ok(l);
        }
        let l = SubgroupLattice::build(self.g, &self.limits)?;
        Ok(self.lattice.get_or_init(|| l))
    }

    pub fn derived(&self) -> &Subgroup {
        self.derived.get_or_init(|| derived_subgroup(self.g))
    }

    pub fn is_abelian(&self) -> bool {
        is_abelian(self.g)
    }

    pub fn is_dedekindian(&self) -> Result<bool> {
        if self.is_abelian() {
            return Ok(true);
        }
        let l = self.lattice()?;
        Ok((0..l.len()).all(|i| l.is_normal(i)))
    }

    pub fn is_hamiltonian(&self) -> Result<bool> {
        Ok(!self.is_abelian() && self.is_dedekindian()?)
    }

    pub fn is_minimal_nonabelian(&self) -> Result<bool> {
        if self.is_abelian() {
            return Ok(false);
        }
        let l = self.lattice()?;
        Ok(l.is_minimal_nonabelian(l.top()))
    }

    /// Least `t` such that every subgroup of index `p^t` is abelian.
    pub fn a_degree(&self) -> Result<usize> {
        let (p, n) = self.g.prime_power().ok_or(Error::NotPGroup(self.g.order()))?;
        if self.is_abelian() {
            return Ok(0);
        }
        let l = self.lattice()?;
        // Non-abelian orders form an upward-closed range in a p-group.
        let smallest = (0..l.len())
            .find(|&i| !l.is_abelian(i))
            .map(|i| l.subgroup(i).order())
            .unwrap();
        let mut k = 0;
        let mut x = smallest;
        while x > 1 {
            x /= p as usize;
            k += 1;
        }
        Ok((n - k + 1) as usize)
    }

    pub fn is_metacyclic(&self) -> bool {
        is_metacyclic(self.g)
    }

    pub fn is_metacyclic_blackburn(&self) -> Result<bool> {
        is_metacyclic_blackburn(self.g)
    }

    pub fn is_two_engel(&self) -> bool {
        is_two_engel(self.g)
    }

    /// Every non-abelian subgroup is normal.
    pub fn metahamiltonian_definition(&self) -> Result<Outcome> {
        if self.is_abelian() {
            return Ok(Outcome::NotApplicable);
        }
        let l = self.lattice()?;
        Ok(first_failure(l, |i| !l.is_abelian(i) && !l.is_normal(i)))
    }

    /// Every minimal non-abelian subgroup is normal.
    pub fn metahamiltonian_a1(&self) -> Result<Outcome> {
        if self.is_abelian() {
            return Ok(Outcome::NotApplicable);
        }
        let l = self.lattice()?;
        Ok(first_failure(l, |i| l.is_minimal_nonabelian(i) && !l.is_normal(i)))
    }

    /// `G′` lies in every minimal non-abelian subgroup.
    pub fn metahamiltonian_derived(&self) -> Result<Outcome> {
        if self.g.prime_power().is_none() {
            return Err(Error::NotPGroup(self.g.order()));
        }
        if self.is_abelian() {
            return Ok(Outcome::NotApplicable);
        }
        let l = self.lattice()?;
        let d = self.derived();
        Ok(first_failure(l, |i| {
            l.is_minimal_nonabelian(i) && !d.is_subgroup_of(l.subgroup(i))
        }))
    }

    pub fn redei_type(&self) -> Result<A1Type> {
        if !self.is_minimal_nonabelian()? {
            return Err(Error::Inconsistent(
                "Rédei type requested for a group that is not minimal non-abelian".into(),
            ));
        }
        redei_search(self.g)
    }

    pub fn classify(&self) -> Result<Classification> {
        let g = self.g;
        let pp = g.prime_power();
        let abelian = self.is_abelian();
        let d = minimal_generators(g);
        let c = nilpotency_class(g);
        let derived = self.derived();
        let derived_exponent = exponent(g, derived);
        let derived_abelian = crate::kernel::is_abelian_subgroup(g, derived);
        let derived_elementary_abelian = derived_abelian
            && (derived_exponent == 1 || pp.is_some_and(|(p, _)| derived_exponent as u64 == p));
        let dedekindian = self.is_dedekindian()?;
        let minimal_nonabelian = self.is_minimal_nonabelian()?;
        let meta = self.metahamiltonian_definition()?;
        let a_degree = match pp {
            Some(_) => ADegree::Value(self.a_degree()?),
            None => ADegree::NotApplicable,
        };
        let a1_type = if minimal_nonabelian && pp.is_some() {
            Some(self.redei_type()?)
        } else {
            None
        };
        let out = Classification {
            order: g.order(),
            p: pp.map(|(p, _)| p),
            n: pp.map(|(_, n)| n),
            d,
            c,
            derived_order: derived.order(),
            derived_exponent,
            derived_elementary_abelian,
            flags: Flags {
                abelian,
                dedekindian,
                hamiltonian: dedekindian && !abelian,
                minimal_nonabelian,
                metahamiltonian: meta.as_bool(),
                metacyclic: self.is_metacyclic(),
                two_engel: self.is_two_engel(),
            },
            a_degree,
            a1_type,
            metahamiltonian_witness: meta.witness().map(|h| SubgroupWitness::of(g, h)),
        };
        self.cross_check(&out)?;
        Ok(out)
    }

    fn cross_check(&self, c: &Classification) -> Result<()> {
        let fail = |what: &str| Err(Error::Inconsistent(what.to_string()));
        if c.flags.abelian && c.a_degree.value().is_some_and(|t| t != 0) {
            return fail("abelian group with non-zero A_t degree");
        }
        if c.a_degree.value().is_some() && c.flags.minimal_nonabelian != (c.a_degree.value() == Some(1)) {
            return fail("minimal non-abelian flag disagrees with A_t degree 1");
        }
        if let (Some(p), false) = (c.p, c.flags.abelian) {
            let (a, b) = minimal_nonabelian_conditions(self.g, p as usize);
            if a != c.flags.minimal_nonabelian || b != c.flags.minimal_nonabelian {
                return fail("minimal non-abelian test disagrees with d=2 and |G'|=p or Z=Φ");
            }
        }
        Ok(())
    }
}

fn first_failure(l: &SubgroupLattice, bad: impl Fn(usize) -> bool) -> Outcome {
    match (0..l.len()).find(|&i| bad(i)) {
        Some(i) => Outcome::Fails(l.subgroup(i).clone()),
        None => Outcome::Holds,
    }
}

/// `(d=2 ∧ |G′|=p, d=2 ∧ Z(G)=Φ(G))`, each computed without the lattice.
pub fn minimal_nonabelian_conditions(g: &ConcreteGroup, p: usize) -> (bool, bool) {
    let d2 = minimal_generators(g) == 2;
    let by_derived = d2 && derived_subgroup(g).order() == p;
    let by_center = d2 && center(g) == frattini(g);
    (by_derived, by_center)
}

pub fn is_abelian(g: &ConcreteGroup) -> bool {
    let gs = g.generators();
    gs.iter()
        .enumerate()
        .all(|(i, &x)| gs[i + 1..].iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

pub fn is_two_engel(g: &ConcreteGroup) -> bool {
    (0..g.order()).all(|x| (0..g.order()).all(|y| g.commutator(g.commutator(x, y), y) == 0))
}

/// Some cyclic normal `N` has cyclic `G/N`; candidates are tried largest first.
pub fn is_metacyclic(g: &ConcreteGroup) -> bool {
    let n = g.order();
    if n == 1 {
        return true;
    }
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut by_order: Vec<usize> = (0..n).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    for x in by_order {
        let h = generated_subgroup(g, &[x]);
        if seen.insert(h.members().clone()) && is_normal(g, &h) {
            cyclic.push(h);
        }
    }
    cyclic.iter().any(|h| has_cyclic_quotient(g, h))
}

fn has_cyclic_quotient(g: &ConcreteGroup, h: &Subgroup) -> bool {
    let k = g.order() / h.order();
    if k == 1 {
        return true;
    }
    let primes = prime_divisors(k);
    (0..g.order()).any(|x| primes.iter().all(|&q| !h.contains(g.pow(x, (k / q) as i64))))
}

fn prime_divisors(mut k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= k {
        if k.is_multiple_of(q) {
            out.push(q);
            while k.is_multiple_of(q) {
                k /= q;
            }
        }
        q += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}

/// Metacyclic test on `G/Φ(G′)G₃`.
pub fn is_metacyclic_blackburn(g: &ConcreteGroup) -> Result<bool> {
    if g.prime_power().is_none() {
        return if g.order() == 1 {
            Ok(true)
        } else {
            Err(Error::NotPGroup(g.order()))
        };
    }
    let derived = derived_subgroup(g);
    let emb = subgroup_as_group(g, &derived);
    let phi_inner = frattini(&emb.group);
    let mut seeds: Vec<usize> = phi_inner.generators().iter().map(|&x| emb.inclusion[x]).collect();
    if let Some(g3) = lower_central_series(g).get(2) {
        seeds.extend_from_slice(g3.generators());
    }
    let n = generated_subgroup(g, &seeds);
    let q = quotient(g, &n)?;
    Ok(is_metacyclic(&q.group))
}

/// Constructive identification of a minimal non-abelian p-group.
pub fn redei_type(g: &ConcreteGroup, limits: &Limits) -> Result<A1Type> {
    Analysis::new(g, *limits).redei_type()
}

fn redei_search(g: &ConcreteGroup) -> Result<A1Type> {
    let (p, total) = g.prime_power().ok_or(Error::NotPGroup(g.order()))?;
    let fail = || Error::NoRedeiParameterization(g.order());
    if g.order() == 8 && (0..8).filter(|&x| g.element_order(x) == 2).count() == 1 {
        let t = A1Type::q8();
        return verified(g, t, &find_q8(g).ok_or_else(fail)?);
    }
    let pu = p as usize;
    let of_order = |k: u32| -> Vec<usize> {
        let target = pu.pow(k);
        (0..g.order()).filter(|&x| g.element_order(x) == target).collect()
    };
    if is_metacyclic(g) {
        for m in 2..total {
            let n = total - m;
            let shift = 1 + pu.pow(m - 1) as i64;
            for &a in &of_order(m) {
                let target = g.pow(a, shift);
                for &b in &of_order(n) {
                    if g.conjugate(a, b) == target
                        && generated_subgroup(g, &[a, b]).order() == g.order()
                    {
                        return verified(g, A1Type::mpmn(p, m, n), &[a, b]);
                    }
                }
            }
        }
        return Err(fail());
    }
    if total < 3 {
        return Err(fail());
    }
    let sum = total - 1;
    for m in sum.div_ceil(2)..sum {
        let n = sum - m;
        if p == 2 && m + n < 3 {
            continue;
        }
        for &a in &of_order(m) {
            for &b in &of_order(n) {
                let c = g.commutator(a, b);
                if g.element_order(c) == pu
                    && g.commutator(c, a) == 0
                    && g.commutator(c, b) == 0
                    && generated_subgroup(g, &[a, b]).order() == g.order()
                {
                    return verified(g, A1Type::mpmn1(p, m, n), &[a, b, c]);
                }
            }
        }
    }
    Err(fail())
}

fn find_q8(g: &ConcreteGroup) -> Option<Vec<usize>> {
    let fours: Vec<usize> = (0..8).filter(|&x| g.element_order(x) == 4).collect();
    for &a in &fours {
        for &b in &fours {
            if g.pow(b, 2) == g.pow(a, 2)
                && g.conjugate(a, b) == g.inv(a)
                && generated_subgroup(g, &[a, b]).order() == 8
            {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

/// Evaluates the canonical relators on the found generators; together with
/// generation and equal orders this makes the map an isomorphism.
fn verified(g: &ConcreteGroup, t: A1Type, images: &[usize]) -> Result<A1Type> {
    let pres = t.presentation();
    for rel in pres.relators() {
        let mut x = 0;
        for &l in rel.letters() {
            let y = images[l.unsigned_abs() as usize - 1];
            x = g.mul(x, if l > 0 { y } else { g.inv(y) });
        }
        if x != 0 {
            return Err(Error::NoRedeiParameterization(g.order()));
        }
    }
    let gen_count = match t.kind {
        A1Kind::Mpmn1 => 2,
        _ => images.len(),
    };
    if generated_subgroup(g, &images[..gen_count]).order() != g.order() {
        return Err(Error::NoRedeiParameterization(g.order()));
    }
    Ok(t)
}

/// Convenience wrapper with default limits.
pub fn classify(g: &ConcreteGroup, limits: &Limits) -> Result<Classification> {
    Analysis::new(g, *limits).classify()
}
