//! Executable structure checks over a labelled corpus, with per-group
//! verdicts, re-checkable witnesses and a deterministic JSON report.

mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{CorpusCaps, CorpusEntry};
use crate::group::ConcreteGroup;
use crate::kernel::{Limits, SubgroupWitness, DEFAULT_SUBGROUP_CAP};

pub use suites::{audit_group, recheck};

/// Check identifiers as they appear in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "T2.1")]
    T2_1,
    #[serde(rename = "T2.2")]
    T2_2,
    #[serde(rename = "L2.3")]
    L2_3,
    #[serde(rename = "L2.5")]
    L2_5,
    #[serde(rename = "T2.6")]
    T2_6,
    #[serde(rename = "L2.7")]
    L2_7,
    #[serde(rename = "T3.1")]
    T3_1,
    #[serde(rename = "T3.2")]
    T3_2,
    #[serde(rename = "T3.3")]
    T3_3,
    #[serde(rename = "T3.4")]
    T3_4,
    #[serde(rename = "T3.5")]
    T3_5,
    #[serde(rename = "T3.6")]
    T3_6,
    #[serde(rename = "L3.7")]
    L3_7,
    #[serde(rename = "T3.8")]
    T3_8,
    #[serde(rename = "C3.9")]
    C3_9,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::T2_1,
        TheoremId::T2_2,
        TheoremId::L2_3,
        TheoremId::L2_5,
        TheoremId::T2_6,
        TheoremId::L2_7,
        TheoremId::T3_1,
        TheoremId::T3_2,
        TheoremId::T3_3,
        TheoremId::T3_4,
        TheoremId::T3_5,
        TheoremId::T3_6,
        TheoremId::L3_7,
        TheoremId::T3_8,
        TheoremId::C3_9,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T2_1 => "T2.1",
            TheoremId::T2_2 => "T2.2",
            TheoremId::L2_3 => "L2.3",
            TheoremId::L2_5 => "L2.5",
            TheoremId::T2_6 => "T2.6",
            TheoremId::L2_7 => "L2.7",
            TheoremId::T3_1 => "T3.1",
            TheoremId::T3_2 => "T3.2",
            TheoremId::T3_3 => "T3.3",
            TheoremId::T3_4 => "T3.4",
            TheoremId::T3_5 => "T3.5",
            TheoremId::T3_6 => "T3.6",
            TheoremId::L3_7 => "L3.7",
            TheoremId::T3_8 => "T3.8",
            TheoremId::C3_9 => "C3.9",
        }
    }

    /// One-line statement of what the check asserts.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::T2_1 => "minimal non-abelian p-groups are Q8, M_p(m,n) or M_p(m,n,1)",
            TheoremId::T2_2 => "minimal non-abelian iff d=2 and |G'|=p iff d=2 and Z(G)=Φ(G)",
            TheoremId::L2_3 => "non-abelian p-groups are generated by minimal non-abelian subgroups",
            TheoremId::L2_5 => "A2-groups: d,c ≤ 3; d=2, exp(G')=p ⇒ c=3; c>2, exp(G')=p ⇒ d=2, p odd",
            TheoremId::T2_6 => "2-Engel ⇒ c ≤ 3, and c ≤ 2 without elements of order 3",
            TheoremId::L2_7 => "metacyclic iff G/Φ(G')G₃ is metacyclic",
            TheoremId::T3_1 => "sections of metahamiltonian p-groups are metahamiltonian",
            TheoremId::T3_2 => "metahamiltonian iff every minimal non-abelian subgroup is normal",
            TheoremId::T3_3 => "⟨x⟩^G is abelian or minimal non-abelian",
            TheoremId::T3_4 => "c(G) ≤ 3 and G' abelian",
            TheoremId::T3_5 => "metahamiltonian iff G' lies in every non-abelian subgroup",
            TheoremId::T3_6 => "d=2 and exp(G')>p ⇒ metacyclic",
            TheoremId::L3_7 => "G' elementary abelian, G not A2 ⇒ A2-subgroups have class 2",
            TheoremId::T3_8 => "G' elementary abelian and c=3 ⇒ G is A2",
            TheoremId::C3_9 => "G' elementary abelian and c=3 ⇒ d=2 and p odd",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Io(format!("unknown check id `{s}`")))
    }
}

/// Parses a comma-separated filter of check ids or suite names
/// (`prelim`, `sections`, `a1`, `closure`, `class`, `derived`, `metacyclic`,
/// `elementary`, `all`).
pub fn parse_suite_filter(text: &str) -> Result<Vec<TheoremId>> {
    use TheoremId::*;
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let ids: Vec<TheoremId> = match part.to_ascii_lowercase().as_str() {
            "all" => TheoremId::ALL.to_vec(),
            "prelim" => vec![T2_1, T2_2, L2_3, L2_5, T2_6, L2_7],
            "sections" => vec![T3_1],
            "a1" => vec![T3_2],
            "closure" => vec![T3_3],
            "class" => vec![T3_4],
            "derived" => vec![T3_5],
            "metacyclic" => vec![T3_6],
            "elementary" => vec![L3_7, T3_8, C3_9],
            _ => vec![part.parse()?],
        };
        out.extend(ids);
    }
    if out.is_empty() {
        out = TheoremId::ALL.to_vec();
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementWitness {
    pub index: usize,
    pub word: String,
}

impl ElementWitness {
    pub fn of(g: &ConcreteGroup, x: usize) -> Self {
        ElementWitness {
            index: x,
            word: g.word_string(x),
        }
    }
}

/// Counterexample data; every field refers to the audited group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub subgroups: Vec<SubgroupWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub elements: Vec<ElementWitness>,
    /// `true` when the first subgroup is the kernel of an offending quotient.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub quotient: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub label: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub holds: usize,
    pub fails: usize,
    pub not_applicable: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub corpus_caps: Option<CorpusCaps>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub corpus_dir: Option<String>,
    pub corpus_size: usize,
    pub suite_filter: Vec<TheoremId>,
    pub tool_version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub meta: Meta,
    pub reports: Vec<TheoremReport>,
    pub summary: BTreeMap<TheoremId, Counts>,
}

#[derive(Clone, Debug)]
pub struct AuditOptions {
    pub filter: Vec<TheoremId>,
    pub jobs: usize,
    pub timeout: Option<Duration>,
    pub subgroup_cap: usize,
    pub record_timing: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            filter: TheoremId::ALL.to_vec(),
            jobs: 1,
            timeout: Some(Duration::from_secs(30)),
            subgroup_cap: DEFAULT_SUBGROUP_CAP,
            record_timing: false,
        }
    }
}

/// Runs the selected checks on every entry. Reports are ordered by label
/// then check id whatever the degree of parallelism; per-group errors are
/// recorded as `error` verdicts.
pub fn run_all(corpus: &[CorpusEntry], options: &AuditOptions) -> Result<Vec<TheoremReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let mut reports: Vec<TheoremReport> = pool.install(|| {
        corpus
            .par_iter()
            .flat_map_iter(|entry| {
                let start = Instant::now();
                let limits = Limits {
                    subgroup_cap: options.subgroup_cap,
                    deadline: options.timeout.map(|t| start + t),
                };
                let mut out = audit_group(&entry.label, &entry.group, &options.filter, &limits);
                for r in &mut out {
                    if r.verdict == Verdict::Fails {
                        guard_witness(r, &entry.group, options.subgroup_cap);
                    }
                    if options.record_timing {
                        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                    }
                }
                out
            })
            .collect()
    });
    reports.sort_by(|a, b| (&a.label, a.theorem).cmp(&(&b.label, b.theorem)));
    Ok(reports)
}

/// A `fails` verdict whose witness does not reproduce is turned into an
/// error so a faulty check cannot report a spurious counterexample.
fn guard_witness(r: &mut TheoremReport, g: &ConcreteGroup, cap: usize) {
    let ok = match &r.witness {
        Some(w) => recheck(r.theorem, g, w, &Limits::with_cap(cap)).unwrap_or(false),
        None => false,
    };
    if !ok {
        r.verdict = Verdict::Error;
        r.detail = Some("witness did not reproduce the failure".into());
    }
}

pub fn summarize(reports: &[TheoremReport], filter: &[TheoremId]) -> BTreeMap<TheoremId, Counts> {
    let mut summary: BTreeMap<TheoremId, Counts> =
        filter.iter().map(|&t| (t, Counts::default())).collect();
    for r in reports {
        let c = summary.entry(r.theorem).or_default();
        match r.verdict {
            Verdict::Holds => c.holds += 1,
            Verdict::Fails => c.fails += 1,
            Verdict::NotApplicable => c.not_applicable += 1,
            Verdict::Error => c.errors += 1,
        }
    }
    summary
}

impl AuditReport {
    pub fn new(meta: Meta, reports: Vec<TheoremReport>) -> Self {
        let summary = summarize(&reports, &meta.suite_filter);
        AuditReport {
            meta,
            reports,
            summary,
        }
    }

    /// No `fails` and no errors.
    pub fn is_clean(&self) -> bool {
        self.summary.values().all(|c| c.fails == 0 && c.errors == 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Human-readable summary table followed by any failures or errors.
    pub fn text_table(&self) -> String {
        let mut s = format!(
            "corpus: {} groups, {} reports\n{:<6} {:>7} {:>7} {:>7} {:>7}  statement\n",
            self.meta.corpus_size,
            self.reports.len(),
            "check",
            "holds",
            "fails",
            "n/a",
            "errors"
        );
        for (id, c) in &self.summary {
            s.push_str(&format!(
                "{:<6} {:>7} {:>7} {:>7} {:>7}  {}\n",
                id.as_str(),
                c.holds,
                c.fails,
                c.not_applicable,
                c.errors,
                id.statement()
            ));
        }
        for r in &self.reports {
            if matches!(r.verdict, Verdict::Fails | Verdict::Error) {
                s.push_str(&format!(
                    "{} {} {:?}: {}\n",
                    r.theorem,
                    r.label,
                    r.verdict,
                    r.detail
                        .clone()
                        .or_else(|| r.witness.as_ref().map(|w| w.note.clone()))
                        .unwrap_or_default()
                ));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters() {
        assert_eq!(parse_suite_filter("T3.4").unwrap(), vec![TheoremId::T3_4]);
        assert_eq!(parse_suite_filter("").unwrap().len(), 15);
        assert_eq!(
            parse_suite_filter("elementary,t3.1").unwrap(),
            vec![TheoremId::T3_1, TheoremId::L3_7, TheoremId::T3_8, TheoremId::C3_9]
        );
        assert!(parse_suite_filter("T9.9").is_err());
        assert_eq!(serde_json::to_string(&TheoremId::C3_9).unwrap(), "\"C3.9\"");
        assert_eq!(serde_json::to_string(&Verdict::NotApplicable).unwrap(), "\"not-applicable\"");
    }

    #[test]
    fn empty_corpus() {
        let r = run_all(&[], &AuditOptions::default()).unwrap();
        assert!(r.is_empty());
    }
}
