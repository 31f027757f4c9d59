use std::cell::OnceCell;

use crate::classify::{self, Analysis, Outcome};
use crate::error::{Error, Result};
use crate::group::ConcreteGroup;
use crate::kernel::{
    center, exponent, frattini, generated_subgroup, is_abelian_subgroup, minimal_generators,
    nilpotency_class, normal_closure, quotient, subgroup_as_group, Limits, Subgroup,
    SubgroupWitness,
};

use super::{ElementWitness, TheoremId, TheoremReport, Verdict, Witness};

enum Found {
    Holds(Option<String>),
    NotApplicable(&'static str),
    Fails(Witness),
}

fn fails(note: impl Into<String>) -> Witness {
    Witness {
        note: note.into(),
        ..Witness::default()
    }
}

/// Per-group state shared by all checks.
struct Ctx<'g> {
    g: &'g ConcreteGroup,
    an: Analysis<'g>,
    limits: Limits,
    meta: OnceCell<bool>,
}

impl<'g> Ctx<'g> {
    fn new(g: &'g ConcreteGroup, limits: &Limits) -> Self {
        Ctx {
            g,
            an: Analysis::new(g, *limits),
            limits: *limits,
            meta: OnceCell::new(),
        }
    }

    fn p(&self) -> Option<usize> {
        self.g.prime_power().map(|(p, _)| p as usize)
    }

    fn nonabelian_p_group(&self) -> bool {
        self.p().is_some() && !self.an.is_abelian()
    }

    fn metahamiltonian(&self) -> Result<bool> {
        if let Some(&m) = self.meta.get() {
            return Ok(m);
        }
        let m = self.nonabelian_p_group() && self.an.metahamiltonian_definition()?.as_bool() == Some(true);
        Ok(*self.meta.get_or_init(|| m))
    }

    fn sub(&self, h: &Subgroup) -> SubgroupWitness {
        SubgroupWitness::of(self.g, h)
    }

    fn derived_elementary_abelian(&self) -> bool {
        let d = self.an.derived();
        is_abelian_subgroup(self.g, d) && self.p() == Some(exponent(self.g, d))
    }
}

/// Runs the selected checks on one group; errors become `error` verdicts.
pub fn audit_group(
    label: &str,
    g: &ConcreteGroup,
    filter: &[TheoremId],
    limits: &Limits,
) -> Vec<TheoremReport> {
    let ctx = Ctx::new(g, limits);
    filter
        .iter()
        .map(|&id| {
            let (verdict, witness, detail) = match check(id, &ctx) {
                Ok(Found::Holds(d)) => (Verdict::Holds, None, d),
                Ok(Found::NotApplicable(why)) => (Verdict::NotApplicable, None, Some(why.to_string())),
                Ok(Found::Fails(w)) => (Verdict::Fails, Some(w), None),
                Err(e) => (Verdict::Error, None, Some(e.to_string())),
            };
            TheoremReport {
                theorem: id,
                label: label.to_string(),
                verdict,
                witness,
                detail,
                elapsed_ms: None,
            }
        })
        .collect()
}

const NOT_P_GROUP: &str = "not a non-abelian p-group";
const NOT_META: &str = "not metahamiltonian";

fn check(id: TheoremId, c: &Ctx) -> Result<Found> {
    c.limits.check_time()?;
    use TheoremId::*;
    match id {
        T2_1 => redei(c),
        T2_2 => minimal_nonabelian_conditions(c),
        L2_3 => generated_by_a1(c),
        L2_5 => a2_properties(c),
        T2_6 => engel(c),
        L2_7 => blackburn(c),
        T3_1 => sections(c),
        T3_2 => routes_agree(c, false),
        T3_3 => normal_closures(c),
        T3_4 => class_bound(c),
        T3_5 => routes_agree(c, true),
        T3_6 => metacyclic(c),
        L3_7 => a2_subgroup_class(c),
        T3_8 => class_three_is_a2(c),
        C3_9 => class_three_shape(c),
    }
}

fn redei(c: &Ctx) -> Result<Found> {
    if !c.nonabelian_p_group() || !c.an.is_minimal_nonabelian()? {
        return Ok(Found::NotApplicable("not minimal non-abelian"));
    }
    match c.an.redei_type() {
        Ok(t) => Ok(Found::Holds(Some(t.to_string()))),
        Err(Error::NoRedeiParameterization(_)) => {
            let mut w = fails("no Rédei parameterization found");
            w.subgroups.push(c.sub(&Subgroup::whole(c.g)));
            Ok(Found::Fails(w))
        }
        Err(e) => Err(e),
    }
}

fn minimal_nonabelian_conditions(c: &Ctx) -> Result<Found> {
    let Some(p) = c.p().filter(|_| c.nonabelian_p_group()) else {
        return Ok(Found::NotApplicable(NOT_P_GROUP));
    };
    let a1 = c.an.is_minimal_nonabelian()?;
    let (by_derived, by_center) = classify::minimal_nonabelian_conditions(c.g, p);
    if a1 == by_derived && a1 == by_center {
        return Ok(Found::Holds(Some(format!("all three {a1}"))));
    }
    let mut w = fails(format!(
        "minimal non-abelian {a1}, d=2 and |G'|=p {by_derived}, d=2 and Z=Φ {by_center}"
    ));
    w.subgroups = vec![c.sub(c.an.derived()), c.sub(&center(c.g)), c.sub(&frattini(c.g))];
    Ok(Found::Fails(w))
}

fn generated_by_a1(c: &Ctx) -> Result<Found> {
    if !c.nonabelian_p_group() {
        return Ok(Found::NotApplicable(NOT_P_GROUP));
    }
    let l = c.an.lattice()?;
    let a1: Vec<usize> = (0..l.len()).filter(|&i| l.is_minimal_nonabelian(i)).collect();
    let seeds: Vec<usize> = a1
        .iter()
        .flat_map(|&i| l.subgroup(i).generators().iter().copied())
        .collect();
    let j = generated_subgroup(c.g, &seeds);
    if j.is_whole(c.g) {
        return Ok(Found::Holds(Some(format!("{} minimal non-abelian subgroups", a1.len()))));
    }
    let mut w = fails("minimal non-abelian subgroups generate a proper subgroup");
    w.subgroups.push(c.sub(&j));
    Ok(Found::Fails(w))
}

fn a2_properties(c: &Ctx) -> Result<Found> {
    let Some(p) = c.p() else {
        return Ok(Found::NotApplicable(NOT_P_GROUP));
    };
    if c.an.a_degree()? != 2 {
        return Ok(Found::NotApplicable("not an A2-group"));
    }
    let d = minimal_generators(c.g);
    let cl = nilpotency_class(c.g).unwrap_or(usize::MAX);
    let e = exponent(c.g, c.an.derived());
    let mut broken = Vec::new();
    if d > 3 || cl > 3 {
        broken.push("d ≤ 3 and c ≤ 3");
    }
    if d == 2 && e == p && cl != 3 {
        broken.push("d=2 and exp(G')=p imply c=3");
    }
    if cl > 2 && e == p && !(d == 2 && p != 2) {
        broken.push("c>2 and exp(G')=p imply d=2 and p odd");
    }
    if broken.is_empty() {
        return Ok(Found::Holds(Some(format!("d={d}, c={cl}, exp(G')={e}"))));
    }
    let mut w = fails(format!("d={d}, c={cl}, exp(G')={e}: {}", broken.join("; ")));
    w.subgroups.push(c.sub(c.an.derived()));
    Ok(Found::Fails(w))
}

fn engel(c: &Ctx) -> Result<Found> {
    if !c.an.is_two_engel() {
        return Ok(Found::NotApplicable("not 2-Engel"));
    }
    let cl = nilpotency_class(c.g);
    let order3 = (0..c.g.order()).find(|&x| c.g.element_order(x) == 3);
    let ok = match cl {
        Some(k) => k <= 3 && (order3.is_some() || k <= 2),
        None => false,
    };
    if ok {
        return Ok(Found::Holds(Some(format!("c={}", cl.unwrap()))));
    }
    let mut w = fails(format!("2-Engel with class {cl:?}"));
    w.elements = order3.map(|x| ElementWitness::of(c.g, x)).into_iter().collect();
    Ok(Found::Fails(w))
}

fn blackburn(c: &Ctx) -> Result<Found> {
    if c.p().is_none() {
        return Ok(Found::NotApplicable(NOT_P_GROUP));
    }
    let direct = c.an.is_metacyclic();
    let reduced = c.an.is_metacyclic_blackburn()?;
    if direct == reduced {
        return Ok(Found::Holds(Some(format!("metacyclic {direct}"))));
    }
    Ok(Found::Fails(fails(format!(
        "metacyclic {direct}, reduced quotient metacyclic {reduced}"
    ))))
}

fn section_metahamiltonian(h: &ConcreteGroup, limits: &Limits) -> Result<bool> {
    Ok(Analysis::new(h, *limits).metahamiltonian_definition()?.as_bool() != Some(false))
}

fn sections(c: &Ctx) -> Result<Found> {
    if !c.metahamiltonian()? {
        return Ok(Found::NotApplicable(NOT_META));
    }
    let l = c.an.lattice()?;
    let mut checked = 0;
    for i in 0..l.len() {
        c.limits.check_time()?;
        let h = l.subgroup(i);
        if i != l.top() && !l.is_abelian(i) {
            checked += 1;
            if !section_metahamiltonian(&subgroup_as_group(c.g, h).group, &c.limits)? {
                let mut w = fails("non-metahamiltonian subgroup");
                w.subgroups.push(c.sub(h));
                return Ok(Found::Fails(w));
            }
        }
        if l.is_normal(i) && !h.is_trivial() && i != l.top() {
            let q = quotient(c.g, h)?.group;
            if !classify::is_abelian(&q) {
                checked += 1;
                if !section_metahamiltonian(&q, &c.limits)? {
                    let mut w = fails("non-metahamiltonian quotient");
                    w.subgroups.push(c.sub(h));
                    w.quotient = true;
                    return Ok(Found::Fails(w));
                }
            }
        }
    }
    Ok(Found::Holds(Some(format!("{checked} non-abelian proper sections"))))
}

fn routes_agree(c: &Ctx, derived: bool) -> Result<Found> {
    if !c.nonabelian_p_group() {
        return Ok(Found::NotApplicable(NOT_P_GROUP));
    }
    let def = c.an.metahamiltonian_definition()?;
    let other = if derived {
        c.an.metahamiltonian_derived()?
    } else {
        c.an.metahamiltonian_a1()?
    };
    if def.as_bool() == other.as_bool() {
        return Ok(Found::Holds(Some(format!("both {}", def.as_bool() == Some(true)))));
    }
    let route = if derived { "G'-containment" } else { "minimal non-abelian normality" };
    let mut w = fails(format!(
        "definition says {}, {route} says {}",
        def.as_bool() == Some(true),
        other.as_bool() == Some(true)
    ));
    w.subgroups = [def.witness(), other.witness()]
        .into_iter()
        .flatten()
        .map(|h| c.sub(h))
        .collect();
    Ok(Found::Fails(w))
}

fn closure_is_allowed(g: &ConcreteGroup, n: &Subgroup, limits: &Limits) -> Result<bool> {
    if is_abelian_subgroup(g, n) {
        return Ok(true);
    }
    Analysis::new(&subgroup_as_group(g, n).group, *limits).is_minimal_nonabelian()
}

fn normal_closures(c: &Ctx) -> Result<Found> {
    if !c.metahamiltonian()? {
        return Ok(Found::NotApplicable(NOT_META));
    }
    let l = c.an.lattice()?;
    let mut seen = std::collections::HashSet::new();
    for x in 0..c.g.order() {
        let n = normal_closure(c.g, &[x]);
        let idx = l
            .index_of(n.members())
            .ok_or_else(|| Error::Inconsistent("normal closure missing from lattice".into()))?;
        if !seen.insert(idx) {
            continue;
        }
        if !l.is_abelian(idx) && !l.is_minimal_nonabelian(idx) {
            let mut w = fails("normal closure neither abelian nor minimal non-abelian");
            w.elements.push(ElementWitness::of(c.g, x));
            w.subgroups.push(c.sub(&n));
            return Ok(Found::Fails(w));
        }
    }
    Ok(Found::Holds(Some(format!("{} distinct closures", seen.len()))))
}

fn class_bound(c: &Ctx) -> Result<Found> {
    if !c.metahamiltonian()? {
        return Ok(Found::NotApplicable(NOT_META));
    }
    let cl = nilpotency_class(c.g);
    let metabelian = is_abelian_subgroup(c.g, c.an.derived());
    if cl.is_some_and(|k| k <= 3) && metabelian {
        return Ok(Found::Holds(Some(format!("c={}", cl.unwrap()))));
    }
    let mut w = fails(format!("class {cl:?}, derived subgroup abelian {metabelian}"));
    w.subgroups.push(c.sub(c.an.derived()));
    Ok(Found::Fails(w))
}

fn metacyclic(c: &Ctx) -> Result<Found> {
    if !c.metahamiltonian()? {
        return Ok(Found::NotApplicable(NOT_META));
    }
    let p = c.p().unwrap();
    let e = exponent(c.g, c.an.derived());
    if minimal_generators(c.g) != 2 || e <= p {
        return Ok(Found::NotApplicable("d≠2 or exp(G')=p"));
    }
    if c.an.is_metacyclic() {
        return Ok(Found::Holds(Some(format!("exp(G')={e}"))));
    }
    let mut w = fails(format!("d=2, exp(G')={e}, not metacyclic"));
    w.subgroups.push(c.sub(c.an.derived()));
    Ok(Found::Fails(w))
}

fn elementary_gate(c: &Ctx) -> Result<Option<&'static str>> {
    if !c.metahamiltonian()? {
        return Ok(Some(NOT_META));
    }
    if !c.derived_elementary_abelian() {
        return Ok(Some("G' not elementary abelian"));
    }
    Ok(None)
}

fn is_a2_with_class(g: &ConcreteGroup, h: &Subgroup, limits: &Limits) -> Result<Option<usize>> {
    let k = subgroup_as_group(g, h).group;
    if Analysis::new(&k, *limits).a_degree()? == 2 {
        Ok(Some(nilpotency_class(&k).unwrap_or(usize::MAX)))
    } else {
        Ok(None)
    }
}

fn a2_subgroup_class(c: &Ctx) -> Result<Found> {
    if let Some(why) = elementary_gate(c)? {
        return Ok(Found::NotApplicable(why));
    }
    if c.an.a_degree()? == 2 {
        return Ok(Found::NotApplicable("G is an A2-group"));
    }
    let l = c.an.lattice()?;
    let mut count = 0;
    for i in 0..l.len() {
        c.limits.check_time()?;
        if i == l.top() || l.is_abelian(i) || l.is_minimal_nonabelian(i) {
            continue;
        }
        let h = l.subgroup(i);
        if let Some(k) = is_a2_with_class(c.g, h, &c.limits)? {
            count += 1;
            if k != 2 {
                let mut w = fails(format!("A2-subgroup of class {k}"));
                w.subgroups.push(c.sub(h));
                return Ok(Found::Fails(w));
            }
        }
    }
    Ok(Found::Holds(Some(format!("{count} A2-subgroups"))))
}

fn class_three_gate(c: &Ctx) -> Result<Option<&'static str>> {
    if let Some(why) = elementary_gate(c)? {
        return Ok(Some(why));
    }
    if nilpotency_class(c.g) != Some(3) {
        return Ok(Some("c≠3"));
    }
    Ok(None)
}

fn class_three_is_a2(c: &Ctx) -> Result<Found> {
    if let Some(why) = class_three_gate(c)? {
        return Ok(Found::NotApplicable(why));
    }
    let t = c.an.a_degree()?;
    if t == 2 {
        return Ok(Found::Holds(None));
    }
    Ok(Found::Fails(fails(format!("c=3 with A_t degree {t}"))))
}

fn class_three_shape(c: &Ctx) -> Result<Found> {
    if let Some(why) = class_three_gate(c)? {
        return Ok(Found::NotApplicable(why));
    }
    let d = minimal_generators(c.g);
    let p = c.p().unwrap();
    if d == 2 && p != 2 {
        return Ok(Found::Holds(None));
    }
    Ok(Found::Fails(fails(format!("c=3 with d={d}, p={p}"))))
}

/// Re-evaluates a `fails` verdict from scratch: the group is re-analysed with
/// no shared state and any subgroup or element in the witness is regenerated
/// and re-tested. `Ok(true)` means the failure reproduces.
pub fn recheck(id: TheoremId, g: &ConcreteGroup, w: &Witness, limits: &Limits) -> Result<bool> {
    use TheoremId::*;
    let first = w.subgroups.first().map(|s| s.regenerate(g));
    let regenerated_ok = w
        .subgroups
        .iter()
        .all(|s| s.regenerate(g).order() == s.order);
    if !regenerated_ok {
        return Ok(false);
    }
    match id {
        T3_1 => {
            let Some(h) = first else { return Ok(false) };
            let section = if w.quotient {
                quotient(g, &h)?.group
            } else {
                subgroup_as_group(g, &h).group
            };
            Ok(!section_metahamiltonian(&section, limits)?)
        }
        T3_3 => {
            let Some(x) = w.elements.first() else { return Ok(false) };
            if x.index >= g.order() {
                return Ok(false);
            }
            let n = normal_closure(g, &[x.index]);
            Ok(!closure_is_allowed(g, &n, limits)?)
        }
        L3_7 => {
            let Some(h) = first else { return Ok(false) };
            Ok(is_a2_with_class(g, &h, limits)?.is_some_and(|k| k != 2))
        }
        L2_3 => {
            let Some(j) = first else { return Ok(false) };
            if j.is_whole(g) {
                return Ok(false);
            }
            let an = Analysis::new(g, *limits);
            let l = an.lattice()?;
            Ok((0..l.len())
                .filter(|&i| l.is_minimal_nonabelian(i))
                .all(|i| l.subgroup(i).is_subgroup_of(&j)))
        }
        T3_2 | T3_5 => {
            let an = Analysis::new(g, *limits);
            let def = an.metahamiltonian_definition()?;
            let other = if id == T3_5 {
                an.metahamiltonian_derived()?
            } else {
                an.metahamiltonian_a1()?
            };
            Ok(def.as_bool() != other.as_bool() && witness_matches(&def, &other, w, g))
        }
        _ => {
            let c = Ctx::new(g, limits);
            Ok(matches!(check(id, &c)?, Found::Fails(_)))
        }
    }
}

fn witness_matches(a: &Outcome, b: &Outcome, w: &Witness, g: &ConcreteGroup) -> bool {
    let fresh: Vec<Subgroup> = [a.witness(), b.witness()].into_iter().flatten().cloned().collect();
    let given: Vec<Subgroup> = w.subgroups.iter().map(|s| s.regenerate(g)).collect();
    fresh == given
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{A2Params, FamilySpec};
    use crate::kernel::testing::{d8, dihedral, group, q8};
    use crate::kernel::{direct_product, SubgroupLattice};

    fn verdicts(g: &ConcreteGroup, ids: &[TheoremId]) -> Vec<Verdict> {
        audit_group("g", g, ids, &Limits::default())
            .into_iter()
            .map(|r| r.verdict)
            .collect()
    }

    use TheoremId::*;
    use Verdict::{Holds, NotApplicable as Na};

    #[test]
    fn dihedral_16() {
        let g = dihedral(8);
        assert_eq!(verdicts(&g, &[T3_1, T3_2, T3_3, T3_4, T3_5, T3_6]), vec![Holds; 6]);
        assert_eq!(verdicts(&g, &[L2_7, L2_3, T2_2]), vec![Holds; 3]);
        assert_eq!(verdicts(&g, &[T2_1]), vec![Na]);
    }

    #[test]
    fn dihedral_32_only_route_checks_apply() {
        let g = dihedral(16);
        let meta_only = [T3_1, T3_3, T3_4, T3_6, L3_7, T3_8, C3_9];
        assert_eq!(verdicts(&g, &meta_only), vec![Na; 7]);
        let r = audit_group("d32", &g, &[T3_2, T3_5], &Limits::default());
        assert!(r.iter().all(|r| r.verdict == Holds));
        assert_eq!(r[0].detail.as_deref(), Some("both false"));
    }

    #[test]
    fn small_examples() {
        let q = q8();
        assert_eq!(verdicts(&q, &[T2_1, T3_3, L2_3, T3_4]), vec![Holds; 4]);
        let qc2 = direct_product(&q, &group("gens a; rels a^2=1;"));
        assert_eq!(verdicts(&qc2, &[T3_1, T3_4, T3_6]), vec![Holds, Holds, Na]);
        let m = group("gens a,b,c; rels a^3=1, b^3=1, c^3=1, [a,b]=c, [c,a]=1, [c,b]=1;");
        assert_eq!(verdicts(&m, &[T2_1, T3_2, T3_5, T3_6, L2_5]), vec![Holds, Holds, Holds, Na, Na]);
        assert_eq!(verdicts(&d8(), &[T2_6]), vec![Holds]);
    }

    #[test]
    fn type4_class_three() {
        let spec = FamilySpec::a2(
            4,
            A2Params {
                p: 3,
                m: 2,
                ..Default::default()
            },
        );
        let g = spec.build().unwrap().group;
        assert_eq!(nilpotency_class(&g), Some(3));
        assert_eq!(verdicts(&g, &[T3_8, C3_9, L2_5, L3_7]), vec![Holds, Holds, Holds, Na]);
    }

    #[test]
    fn recheck_reproduces_only_real_failures() {
        let d32 = dihedral(16);
        let g = direct_product(&d32, &group("gens a; rels a^2=1;"));
        let l = SubgroupLattice::build(&g, &Limits::default()).unwrap();
        let pick = |order: usize| {
            (0..l.len())
                .find(|&i| l.subgroup(i).order() == order && !l.is_abelian(i) && !l.is_normal(i))
                .map(|i| l.subgroup(i).clone())
        };
        let w = |h: &Subgroup| Witness {
            subgroups: vec![SubgroupWitness::of(&g, h)],
            ..Witness::default()
        };
        let lim = Limits::default();
        let bad = (0..l.len())
            .find(|&i| {
                l.subgroup(i).order() == 32
                    && crate::kernel::isomorphic(&subgroup_as_group(&g, l.subgroup(i)).group, &d32, 4096)
                        .unwrap()
                        .is_some()
            })
            .map(|i| l.subgroup(i).clone())
            .unwrap();
        assert!(recheck(T3_1, &g, &w(&bad), &lim).unwrap());
        let fine = pick(8).unwrap();
        assert!(!recheck(T3_1, &g, &w(&fine), &lim).unwrap());
        assert!(!recheck(T3_2, &d32, &Witness::default(), &lim).unwrap());
        assert!(!recheck(T3_4, &d32, &Witness::default(), &lim).unwrap());
    }

    #[test]
    fn errors_are_reported_not_raised() {
        let g = dihedral(16);
        let limits = Limits {
            subgroup_cap: 4,
            deadline: None,
        };
        let r = audit_group("d32", &g, &[T3_2], &limits);
        assert_eq!(r[0].verdict, Verdict::Error);
        assert!(r[0].detail.is_some());
    }
}
