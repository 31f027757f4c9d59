//! The labelled corpus the audits run over.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{A2Params, FamilySpec};
use crate::classify::is_abelian;
use crate::enumerate::enumerate;
use crate::error::Result;
use crate::group::ConcreteGroup;
use crate::presentation::parse_presentation;
use crate::kernel::{isomorphic, quotient, subgroup_as_group, IsoInvariants, Limits, SubgroupLattice};

/// Largest group order admitted per prime; primes absent from the map are
/// excluded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCaps(pub BTreeMap<u64, u64>);

impl Default for CorpusCaps {
    fn default() -> Self {
        CorpusCaps([(2, 64), (3, 243), (5, 625)].into_iter().collect())
    }
}

impl CorpusCaps {
    pub fn uniform(cap: u64) -> Self {
        CorpusCaps([2, 3, 5].into_iter().map(|p| (p, cap)).collect())
    }

    pub fn cap(&self, p: u64) -> u64 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn admits(&self, spec: &FamilySpec) -> bool {
        spec.prime()
            .is_some_and(|p| spec.nominal_order() <= self.cap(p))
    }

    fn max_order(&self) -> u64 {
        self.0.values().copied().max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    /// DSL source when the entry came from a generated presentation.
    pub source: Option<String>,
    pub group: ConcreteGroup,
}

impl CorpusEntry {
    /// DSL text; sections fall back to a presentation read off the table.
    pub fn dsl(&self) -> String {
        match &self.source {
            Some(s) => s.clone(),
            None => self.group.to_presentation().to_string(),
        }
    }
}

const EXPONENT_RANGE: u32 = 7;

fn a2_fields(ty: u8) -> &'static [&'static str] {
    match ty {
        1..=5 | 14 | 15 => &["m"],
        6 => &["m", "variant"],
        9 | 10 | 12 => &["n", "m"],
        16 => &["m", "r"],
        17 => &["r", "s", "t"],
        19 => &["r"],
        _ => &[],
    }
}

/// All legal `A₂` instances of type `ty` at prime `p` with order `≤ cap`.
pub fn a2_grid(ty: u8, p: u64, cap: u64) -> Vec<FamilySpec> {
    let fields = a2_fields(ty);
    let mut out = Vec::new();
    let mut idx = vec![0u32; fields.len()];
    loop {
        let mut params = A2Params {
            p,
            ..Default::default()
        };
        for (f, &v) in fields.iter().zip(&idx) {
            match *f {
                "m" => params.m = v,
                "n" => params.n = v,
                "r" => params.r = v,
                "s" => params.s = v,
                "t" => params.t = v,
                _ => params.variant = v,
            }
        }
        let spec = FamilySpec::a2(ty, params);
        if spec.validate().is_ok() && spec.nominal_order() <= cap {
            out.push(spec);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < EXPONENT_RANGE {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Non-abelian family instances admitted by the caps, in label order.
pub fn family_grid(caps: &CorpusCaps) -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    specs.push(FamilySpec::Q8);
    for k in 3..=12 {
        specs.push(FamilySpec::Dihedral { order: 1 << k });
    }
    for &p in caps.0.keys() {
        for m in 1..EXPONENT_RANGE {
            for n in 1..EXPONENT_RANGE {
                specs.push(FamilySpec::MpMN { p, m, n });
                specs.push(FamilySpec::MpMN1 { p, m, n });
            }
        }
        for ty in 1..=22 {
            specs.extend(a2_grid(ty, p, caps.cap(p)));
        }
    }
    let mut specs: Vec<FamilySpec> = specs
        .into_iter()
        .filter(|s| s.validate().is_ok() && caps.admits(s))
        .collect();
    specs.sort_by_key(|s| s.label());
    specs.dedup();
    specs
}

/// One instance per family and admissible prime at the least legal
/// parameters, within `2⁶`, `3⁵`, `5⁴`; families with no instance that small
/// appear at their least legal parameters at `p = 5`. Type 6 appears with
/// both choices of `ν`, types 16 and 19 with every admissible `r`.
pub fn smallest_instances() -> Vec<FamilySpec> {
    let bounds = CorpusCaps([(2, 64), (3, 243), (5, 625)].into_iter().collect());
    let mut out = vec![
        FamilySpec::Cyclic { n: 8 },
        FamilySpec::ElemAbelianPower { n: 3, k: 3 },
        FamilySpec::Q8,
        FamilySpec::Dihedral { order: 8 },
    ];
    for &p in bounds.0.keys() {
        out.push(FamilySpec::MpMN { p, m: 2, n: 1 });
        out.push(FamilySpec::MpMN1 {
            p,
            m: if p == 2 { 2 } else { 1 },
            n: 1,
        });
    }
    for ty in 1..=22u8 {
        let mut found = false;
        for &p in bounds.0.keys() {
            let grid = a2_grid(ty, p, bounds.cap(p));
            found |= !grid.is_empty();
            out.extend(least_per_choice(ty, grid));
        }
        if !found {
            out.extend(least_per_choice(ty, a2_grid(ty, 5, 5u64.pow(6))));
        }
    }
    out
}

/// Least-order instance, keeping one per `ν` choice (type 6) or per `r`
/// (types 16, 19).
fn least_per_choice(ty: u8, grid: Vec<FamilySpec>) -> Vec<FamilySpec> {
    let mut best: BTreeMap<u32, FamilySpec> = BTreeMap::new();
    for spec in grid {
        let FamilySpec::A2 { params, .. } = &spec else {
            continue;
        };
        let key = match ty {
            6 => params.variant,
            16 | 19 => params.r,
            _ => 0,
        };
        let better = match best.get(&key) {
            None => true,
            Some(old) => (spec.nominal_order(), spec.label()) < (old.nominal_order(), old.label()),
        };
        if better {
            best.insert(key, spec);
        }
    }
    best.into_values().collect()
}

fn small_abelian(p: u64) -> Vec<FamilySpec> {
    vec![
        FamilySpec::Cyclic { n: p },
        FamilySpec::Cyclic { n: p * p },
        FamilySpec::ElemAbelianPower { n: p, k: 2 },
    ]
}

/// Dedup by isomorphism, bucketed by cheap invariants.
struct IsoIndex {
    buckets: HashMap<IsoInvariants, Vec<usize>>,
    cap: usize,
}

impl IsoIndex {
    fn new(cap: usize) -> Self {
        IsoIndex {
            buckets: HashMap::new(),
            cap,
        }
    }

    /// Inserts unless an isomorphic group is already present.
    fn insert(&mut self, entries: &[CorpusEntry], g: &ConcreteGroup, id: usize) -> Result<bool> {
        let key = IsoInvariants::of(g);
        let bucket = self.buckets.entry(key).or_default();
        for &i in bucket.iter() {
            if isomorphic(&entries[i].group, g, self.cap)?.is_some() {
                return Ok(false);
            }
        }
        bucket.push(id);
        Ok(true)
    }
}

fn sections(label: &str, g: &ConcreteGroup, limits: &Limits) -> Result<Vec<CorpusEntry>> {
    let lattice = SubgroupLattice::build(g, limits)?;
    let mut out = Vec::new();
    for i in 1..lattice.top() {
        let h = lattice.subgroup(i);
        if !lattice.is_abelian(i) {
            out.push(CorpusEntry {
                label: format!("{label}/sub:{i}"),
                source: None,
                group: subgroup_as_group(g, h).group,
            });
        }
        if lattice.is_normal(i) {
            let q = quotient(g, h)?.group;
            if !is_abelian(&q) {
                out.push(CorpusEntry {
                    label: format!("{label}/quo:{i}"),
                    source: None,
                    group: q,
                });
            }
        }
    }
    Ok(out)
}

/// Family instances, their non-abelian sections, and direct products with
/// small abelian groups or with each other, all within the caps. Sections
/// and products are kept only when not isomorphic to an earlier entry.
pub fn standard_corpus(caps: &CorpusCaps) -> Result<Vec<CorpusEntry>> {
    let specs = family_grid(caps);
    let base: Vec<CorpusEntry> = specs
        .par_iter()
        .map(|s| {
            let b = s.build()?;
            Ok(CorpusEntry {
                label: s.label(),
                source: Some(b.source),
                group: b.group,
            })
        })
        .collect::<Result<_>>()?;

    let cap = caps.max_order() as usize;
    let limits = Limits::with_cap(cap.max(1));
    let mut entries: Vec<CorpusEntry> = Vec::new();
    let mut index = IsoIndex::new(cap.max(1));
    for e in &base {
        let id = entries.len();
        entries.push(e.clone());
        index.insert(&entries, &e.group, id)?;
    }

    let section_lists: Vec<Vec<CorpusEntry>> = base
        .par_iter()
        .map(|e| sections(&e.label, &e.group, &limits))
        .collect::<Result<_>>()?;

    let mut products = Vec::new();
    for (i, a) in specs.iter().enumerate() {
        let p = a.prime().unwrap();
        let mut partners = small_abelian(p);
        partners.extend(specs[i..].iter().filter(|b| b.prime() == Some(p)).cloned());
        for b in partners {
            let spec = FamilySpec::DirectProduct(Box::new(a.clone()), Box::new(b));
            if caps.admits(&spec) {
                products.push(spec);
            }
        }
    }
    let product_entries: Vec<CorpusEntry> = products
        .par_iter()
        .map(|s| {
            let b = s.build()?;
            Ok(CorpusEntry {
                label: s.label(),
                source: Some(b.source),
                group: b.group,
            })
        })
        .collect::<Result<_>>()?;

    for cand in section_lists.into_iter().flatten().chain(product_entries) {
        let id = entries.len();
        entries.push(cand);
        let g = entries[id].group.clone();
        if !index.insert(&entries, &g, id)? {
            entries.pop();
        }
    }
    entries.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(entries)
}

/// File name for a label: characters outside `[A-Za-z0-9=,.-]` become `_`.
pub fn label_file_name(label: &str) -> String {
    let stem: String = label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "=,.-".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect();
    format!("{stem}.grp")
}

/// Writes one `.grp` DSL file per entry, prefixed by a `#` label comment.
pub fn dump_corpus(entries: &[CorpusEntry], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for e in entries {
        let text = format!("# {}\n{}\n", e.label, e.dsl());
        std::fs::write(dir.join(label_file_name(&e.label)), text)?;
    }
    Ok(())
}

/// Reads every `.grp` file of `dir` in file-name order. The label is taken
/// from a leading `# label` line, else from the file stem.
pub fn load_corpus(dir: &Path, max_cosets: usize) -> Result<Vec<CorpusEntry>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|x| x == "grp"));
    paths.sort();
    let mut entries = Vec::with_capacity(paths.len());
    for path in paths {
        let text = std::fs::read_to_string(&path)?;
        let label = text
            .lines()
            .next()
            .and_then(|l| l.strip_prefix('#'))
            .map(|l| l.trim().to_string())
            .filter(|l| !l.is_empty())
            .unwrap_or_else(|| path.file_stem().unwrap().to_string_lossy().into_owned());
        let group = enumerate(&parse_presentation(&text)?, max_cosets)?;
        entries.push(CorpusEntry {
            label,
            source: Some(text),
            group,
        });
    }
    entries.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_caps() {
        assert!(standard_corpus(&CorpusCaps::uniform(1)).unwrap().is_empty());
        let c = standard_corpus(&CorpusCaps::uniform(8)).unwrap();
        let labels: Vec<&str> = c.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["dihedral:order=8", "mpmn:p=2,m=2,n=1", "q8:"]);
    }

    #[test]
    fn grid_respects_caps() {
        let caps = CorpusCaps([(2, 64)].into_iter().collect());
        let specs = family_grid(&caps);
        assert!(specs.iter().all(|s| s.prime() == Some(2) && s.nominal_order() <= 64));
        let labels: Vec<String> = specs.iter().map(|s| s.label()).collect();
        for want in ["a2-01:p=2,m=1", "a2-08:p=2", "a2-13:p=2", "a2-22:p=2", "dihedral:order=64"] {
            assert!(labels.iter().any(|l| l == want), "{want}");
        }
        assert!(!labels.iter().any(|l| l.starts_with("a2-04")));
    }

    #[test]
    fn dump_round_trip() {
        let c = standard_corpus(&CorpusCaps::uniform(8)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        dump_corpus(&c, dir.path()).unwrap();
        for e in &c {
            let text = std::fs::read_to_string(dir.path().join(label_file_name(&e.label))).unwrap();
            let p = crate::parse_presentation(&text).unwrap();
            let g = crate::enumerate(&p, 1 << 16).unwrap();
            assert_eq!(g.order(), e.group.order());
        }
        let back = load_corpus(dir.path(), 1 << 16).unwrap();
        let labels: Vec<&str> = back.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["dihedral:order=8", "mpmn:p=2,m=2,n=1", "q8:"]);
        let empty = tempfile::tempdir().unwrap();
        assert!(load_corpus(empty.path(), 16).unwrap().is_empty());
    }
}
