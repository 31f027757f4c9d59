//! Named groups built from generated presentations: cyclic and elementary
//! powers, `Q₈`, dihedral groups, `M_p(m,n)`, `M_p(m,n,1)`, the 22 `A₂`
//! types, and direct or central products of these.

mod corpus;
mod numtheory;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use corpus::{
    a2_grid, dump_corpus, family_grid, label_file_name, load_corpus, smallest_instances, standard_corpus,
    CorpusCaps, CorpusEntry,
};
pub use numtheory::{
    is_quadratic_residue, smallest_primitive_root, smallest_quadratic_nonresidue,
    solve_j_type15, solve_j_type16, solve_l_type19,
};

use crate::enumerate::{enumerate, DEFAULT_MAX_COSETS};
use crate::error::{Error, Result};
use crate::group::{is_prime, ConcreteGroup};
use crate::presentation::{parse_presentation, Presentation, Word};

/// Parameters of the `A₂` types. Unused fields are zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct A2Params {
    pub p: u64,
    pub m: u32,
    pub n: u32,
    pub r: u32,
    pub s: u32,
    pub t: u32,
    /// Type 6 only: 0 selects `ν = 1`, 1 the smallest non-residue.
    pub variant: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    Cyclic { n: u64 },
    ElemAbelianPower { n: u64, k: u32 },
    Q8,
    /// Dihedral group of the given order `2n`.
    Dihedral { order: u64 },
    MpMN { p: u64, m: u32, n: u32 },
    MpMN1 { p: u64, m: u32, n: u32 },
    A2 { ty: u8, params: A2Params },
    DirectProduct(Box<FamilySpec>, Box<FamilySpec>),
    /// Identifies `[a,b]` of the left factor (first two generators) with the
    /// subgroup of order `p` of the cyclic right factor.
    CentralProduct(Box<FamilySpec>, Box<FamilySpec>),
}

/// Number-theoretic values the presentation was generated with.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SideParameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
}

/// A built family instance.
#[derive(Clone, Debug)]
pub struct Built {
    pub spec: FamilySpec,
    pub presentation: Presentation,
    /// DSL text the presentation was parsed from.
    pub source: String,
    pub side: SideParameters,
    pub group: ConcreteGroup,
}

fn range(family: impl Into<String>, condition: impl Into<String>) -> Error {
    Error::ParameterRange {
        family: family.into(),
        condition: condition.into(),
    }
}

fn pw(p: u64, k: u32) -> u64 {
    p.pow(k)
}

pub fn q8_presentation() -> Presentation {
    parse_presentation("gens a,b; rels a^4=1, b^2=a^2, a^b=a^-1;").unwrap()
}

pub fn mpmn_presentation(p: u64, m: u32, n: u32) -> Presentation {
    parse_presentation(&mpmn_source(p, m, n)).unwrap()
}

pub fn mpmn1_presentation(p: u64, m: u32, n: u32) -> Presentation {
    parse_presentation(&mpmn1_source(p, m, n)).unwrap()
}

fn mpmn_source(p: u64, m: u32, n: u32) -> String {
    format!(
        "gens a,b; rels a^{}=b^{}=1, a^b=a^{};",
        pw(p, m),
        pw(p, n),
        1 + pw(p, m - 1)
    )
}

fn mpmn1_source(p: u64, m: u32, n: u32) -> String {
    format!(
        "gens a,b,c; rels a^{}=b^{}=c^{p}=1, [a,b]=c, [c,a]=[c,b]=1;",
        pw(p, m),
        pw(p, n)
    )
}

impl FamilySpec {
    pub fn a2(ty: u8, params: A2Params) -> Self {
        FamilySpec::A2 { ty, params }
    }

    /// The prime of the group when it is a p-group family.
    pub fn prime(&self) -> Option<u64> {
        match self {
            FamilySpec::Cyclic { n } | FamilySpec::ElemAbelianPower { n, .. } => {
                crate::group::prime_power(*n).map(|(p, _)| p)
            }
            FamilySpec::Q8 => Some(2),
            FamilySpec::Dihedral { order } => crate::group::prime_power(*order).map(|(p, _)| p),
            FamilySpec::MpMN { p, .. } | FamilySpec::MpMN1 { p, .. } => Some(*p),
            FamilySpec::A2 { params, .. } => Some(params.p),
            FamilySpec::DirectProduct(a, b) | FamilySpec::CentralProduct(a, b) => {
                match (a.prime(), b.prime()) {
                    (Some(x), Some(y)) if x == y => Some(x),
                    _ => None,
                }
            }
        }
    }

    /// Order the presentation defines when the parameters are in range.
    pub fn nominal_order(&self) -> u64 {
        match self {
            FamilySpec::Cyclic { n } => *n,
            FamilySpec::ElemAbelianPower { n, k } => n.pow(*k),
            FamilySpec::Q8 => 8,
            FamilySpec::Dihedral { order } => *order,
            FamilySpec::MpMN { p, m, n } => pw(*p, m + n),
            FamilySpec::MpMN1 { p, m, n } => pw(*p, m + n + 1),
            FamilySpec::A2 { ty, params: a } => {
                let p = a.p;
                match ty {
                    1..=3 => pw(2, a.m + 3),
                    4..=6 | 14 => pw(p, a.m + 3),
                    7 => 81,
                    8 | 11 => 16,
                    9 | 10 | 12 => pw(p, a.n + a.m + 2),
                    13 => 32,
                    15 | 16 => pw(p, a.m + 4),
                    17 => pw(p, 2 * a.r + a.s + a.t + 2),
                    18..=21 => pw(p, 5),
                    22 => 64,
                    _ => 0,
                }
            }
            FamilySpec::DirectProduct(a, b) => a.nominal_order() * b.nominal_order(),
            FamilySpec::CentralProduct(a, b) => {
                a.nominal_order() * b.nominal_order() / a.prime().unwrap_or(1)
            }
        }
    }

    /// Stable `family:params` label.
    pub fn label(&self) -> String {
        match self {
            FamilySpec::Cyclic { n } => format!("cyclic:n={n}"),
            FamilySpec::ElemAbelianPower { n, k } => format!("power:n={n},k={k}"),
            FamilySpec::Q8 => "q8:".to_string(),
            FamilySpec::Dihedral { order } => format!("dihedral:order={order}"),
            FamilySpec::MpMN { p, m, n } => format!("mpmn:p={p},m={m},n={n}"),
            FamilySpec::MpMN1 { p, m, n } => format!("mpmn1:p={p},m={m},n={n}"),
            FamilySpec::A2 { ty, params: a } => {
                let mut s = format!("a2-{ty:02}:p={}", a.p);
                let used: &[(&str, u32)] = match ty {
                    1..=5 | 14 | 15 => &[("m", a.m)],
                    6 => &[("m", a.m), ("variant", a.variant)],
                    9 | 10 | 12 => &[("n", a.n), ("m", a.m)],
                    16 => &[("m", a.m), ("r", a.r)],
                    17 => &[("r", a.r), ("s", a.s), ("t", a.t)],
                    19 => &[("r", a.r)],
                    _ => &[],
                };
                for (k, v) in used {
                    s.push_str(&format!(",{k}={v}"));
                }
                s
            }
            FamilySpec::DirectProduct(a, b) => format!("direct:({})x({})", a.label(), b.label()),
            FamilySpec::CentralProduct(a, b) => format!("central:({})*({})", a.label(), b.label()),
        }
    }

    /// Checks the side conditions of the family.
    pub fn validate(&self) -> Result<()> {
        let need_prime = |fam: &str, p: u64| {
            if is_prime(p) {
                Ok(())
            } else {
                Err(range(fam, format!("p = {p} must be prime")))
            }
        };
        match self {
            FamilySpec::Cyclic { n } if *n == 0 => Err(range("cyclic", "n ≥ 1")),
            FamilySpec::ElemAbelianPower { n, k } if *n == 0 || *k == 0 => {
                Err(range("power", "n ≥ 1 and k ≥ 1"))
            }
            FamilySpec::Dihedral { order } if *order < 4 || order % 2 == 1 => {
                Err(range("dihedral", "even order ≥ 4"))
            }
            FamilySpec::MpMN { p, m, n } => {
                need_prime("mpmn", *p)?;
                if *m < 2 {
                    return Err(range("mpmn", "m ≥ 2"));
                }
                if *n < 1 {
                    return Err(range("mpmn", "n ≥ 1"));
                }
                Ok(())
            }
            FamilySpec::MpMN1 { p, m, n } => {
                need_prime("mpmn1", *p)?;
                if *n < 1 || m < n {
                    return Err(range("mpmn1", "m ≥ n ≥ 1"));
                }
                if *p == 2 && m + n < 3 {
                    return Err(range("mpmn1", "m + n ≥ 3 for p = 2"));
                }
                Ok(())
            }
            FamilySpec::A2 { ty, params } => validate_a2(*ty, params),
            FamilySpec::DirectProduct(a, b) => {
                a.validate()?;
                b.validate()
            }
            FamilySpec::CentralProduct(a, b) => {
                a.validate()?;
                b.validate()?;
                match (a.prime(), b.as_ref()) {
                    (Some(p), FamilySpec::Cyclic { n })
                        if crate::group::prime_power(*n).is_some_and(|(q, k)| q == p && k >= 1) =>
                    {
                        Ok(())
                    }
                    _ => Err(range(
                        "central",
                        "right factor must be a non-trivial cyclic p-group for the prime of the left factor",
                    )),
                }
            }
            _ => Ok(()),
        }
    }

    pub fn side_parameters(&self) -> Result<SideParameters> {
        let mut side = SideParameters::default();
        if let FamilySpec::A2 { ty, params: a } = self {
            match ty {
                6 if a.variant == 1 => side.nu = Some(smallest_quadratic_nonresidue(a.p)?),
                6 => side.nu = Some(1),
                15 => side.j = Some(solve_j_type15(a.p)?),
                16 => {
                    if a.p > 2 {
                        side.rho = Some(smallest_primitive_root(a.p)?);
                    }
                    side.j = Some(solve_j_type16(a.p, a.r)?);
                }
                18 => side.nu = Some(smallest_quadratic_nonresidue(a.p)?),
                19 => {
                    side.rho = Some(smallest_primitive_root(a.p)?);
                    side.l = Some(solve_l_type19(a.p, a.r)?);
                }
                _ => {}
            }
        }
        Ok(side)
    }

    /// DSL source, or `None` for products (assembled programmatically).
    fn source(&self, side: &SideParameters) -> Option<String> {
        Some(match self {
            FamilySpec::Cyclic { n } => format!("gens a; rels a^{n}=1;"),
            FamilySpec::ElemAbelianPower { n, k } => {
                let names: Vec<String> = (1..=*k).map(|i| format!("a{i}")).collect();
                let mut rels: Vec<String> = names.iter().map(|x| format!("{x}^{n}=1")).collect();
                for i in 0..names.len() {
                    for j in i + 1..names.len() {
                        rels.push(format!("[{},{}]=1", names[i], names[j]));
                    }
                }
                format!("gens {}; rels {};", names.join(","), rels.join(", "))
            }
            FamilySpec::Q8 => "gens a,b; rels a^4=1, b^2=a^2, a^b=a^-1;".into(),
            FamilySpec::Dihedral { order } => {
                format!("gens r,s; rels r^{}=s^2=1, r^s=r^-1;", order / 2)
            }
            FamilySpec::MpMN { p, m, n } => mpmn_source(*p, *m, *n),
            FamilySpec::MpMN1 { p, m, n } => mpmn1_source(*p, *m, *n),
            FamilySpec::A2 { ty, params } => a2_source(*ty, params, side),
            _ => return None,
        })
    }

    /// Validates, generates the presentation and enumerates it.
    pub fn build(&self) -> Result<Built> {
        self.build_with(DEFAULT_MAX_COSETS)
    }

    pub fn build_with(&self, max_cosets: usize) -> Result<Built> {
        self.validate()?;
        let side = self.side_parameters()?;
        let (presentation, source) = match self {
            FamilySpec::DirectProduct(a, b) => {
                let pres = product_presentation(&a.build_with(max_cosets)?, &b.build_with(max_cosets)?, false)?;
                let text = pres.to_string();
                (pres, text)
            }
            FamilySpec::CentralProduct(a, b) => {
                let left = a.build_with(max_cosets)?;
                let p = a.prime().unwrap() as usize;
                if crate::kernel::derived_subgroup(&left.group).order() != p {
                    return Err(range("central", "left factor must have derived subgroup of order p"));
                }
                let pres = product_presentation(&left, &b.build_with(max_cosets)?, true)?;
                let text = pres.to_string();
                (pres, text)
            }
            _ => {
                let text = self.source(&side).unwrap();
                (parse_presentation(&text)?, text)
            }
        };
        let group = enumerate(&presentation, max_cosets)?;
        Ok(Built {
            spec: self.clone(),
            presentation,
            source,
            side,
            group,
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn validate_a2(ty: u8, a: &A2Params) -> Result<()> {
    let fam = format!("A2 type {ty}");
    let fail = |c: &str| Err(range(fam.clone(), c));
    let p = a.p;
    if !is_prime(p) {
        return fail("p must be prime");
    }
    match ty {
        1..=3 => {
            if p != 2 {
                return fail("p = 2");
            }
            if a.m < 1 {
                return fail("m ≥ 1");
            }
        }
        4 => {
            if p < 3 {
                return fail("p ≥ 3");
            }
            if a.m < 1 {
                return fail("m ≥ 1");
            }
            if a.m == 1 && p < 5 {
                return fail("p ≥ 5 for m = 1");
            }
        }
        5 | 6 => {
            if p < 3 {
                return fail("p ≥ 3");
            }
            if a.m < 1 {
                return fail("m ≥ 1");
            }
            if ty == 6 && a.variant > 1 {
                return fail("ν = 1 (variant 0) or a fixed quadratic non-residue (variant 1)");
            }
        }
        7 | 20 | 21 => {
            if p != 3 {
                return fail("p = 3");
            }
        }
        8 | 11 | 13 | 22 => {
            if p != 2 {
                return fail("p = 2");
            }
        }
        9 => {
            if a.n < 1 || a.m < 1 {
                return fail("n ≥ 1 and m ≥ 1");
            }
        }
        10 | 12 => {
            if a.m < 1 || a.n < a.m {
                return fail("n ≥ m ≥ 1");
            }
            if p == 2 && a.n < 2 {
                return fail("n ≥ 2 if p = 2");
            }
        }
        14 => {
            if p == 2 && a.m < 3 {
                return fail("m ≥ 3 if p = 2");
            }
            if a.m < 2 {
                return fail("m ≥ 2");
            }
        }
        15 => {
            if p == 2 {
                return fail("p > 2");
            }
            if a.m < 1 {
                return fail("m ≥ 1");
            }
            solve_j_type15(p)?;
        }
        16 => {
            if a.m < 1 {
                return fail("m ≥ 1");
            }
            if p == 2 && a.r != 0 {
                return fail("r = 0 for p = 2 (j = 1)");
            }
            if p > 2 {
                solve_j_type16(p, a.r)?;
            }
        }
        17 => {
            if p == 2 && a.r < 2 {
                return fail("r ≥ 2 for p = 2");
            }
            if a.r < 1 {
                return fail("r ≥ 1 for p ≥ 3");
            }
            if a.s > 2 {
                return fail("0 ≤ s ≤ 2");
            }
            if a.r + a.s < 2 {
                return fail("r + s ≥ 2");
            }
        }
        18 | 19 => {
            if p < 5 {
                return fail("p ≥ 5");
            }
            if ty == 19 {
                solve_l_type19(p, a.r)?;
            }
        }
        _ => return fail("type must be between 1 and 22"),
    }
    Ok(())
}

fn a2_source(ty: u8, a: &A2Params, side: &SideParameters) -> String {
    let p = a.p;
    let (m, n) = (a.m, a.n);
    match ty {
        1 => format!("gens a,b; rels a^8=b^{}=1, a^b=a^-1;", pw(2, m)),
        2 => format!("gens a,b; rels a^8=b^{}=1, a^b=a^3;", pw(2, m)),
        3 => format!("gens a,b; rels a^8=1, b^{}=a^4, a^b=a^-1;", pw(2, m)),
        4 => format!(
            "gens a1,b; rels a2:=[a1,b], a3:=[a2,b], a1^{p}=a2^{p}=a3^{p}=b^{}=1, [a3,b]=1, \
             [a1,a2]=[a1,a3]=[a2,a3]=1;",
            pw(p, m)
        ),
        5 => format!(
            "gens a1,b; rels a2:=[a1,b], a1^{p}=a2^{p}=b^{}=1, [a2,b]=b^{}, [a1,a2]=1;",
            pw(p, m + 1),
            pw(p, m)
        ),
        6 => format!(
            "gens a1,b; rels a2:=[a1,b], a1^{}=a2^{p}=b^{}=1, [a2,b]=a1^{}, [a1,a2]=1;",
            pw(p, 2),
            pw(p, m),
            side.nu.unwrap() * p
        ),
        7 => "gens a1,b; rels a2:=[a1,b], a1^9=a2^3=1, b^3=a1^3, [a2,b]=a1^-3, [a2,a1]=1;".into(),
        8 => "gens a,b,x; rels a^4=x^2=1, b^2=a^2=[a,b], [x,a]=[x,b]=1;".into(),
        9 => format!(
            "gens a,b,x; rels a^{}=b^{}=x^{p}=1, [a,b]=a^{}, [x,a]=[x,b]=1;",
            pw(p, n + 1),
            pw(p, m),
            pw(p, n)
        ),
        10 => format!(
            "gens a,b,x; rels c:=[a,b], a^{}=b^{}=c^{p}=x^{p}=1, [c,a]=[c,b]=[x,a]=[x,b]=1;",
            pw(p, n),
            pw(p, m)
        ),
        11 => "gens a,b,x; rels a^4=1, b^2=x^2=a^2=[a,b], [x,a]=[x,b]=1;".into(),
        12 => format!(
            "gens a,b,x; rels a^{}=b^{}=x^{}=1, [a,b]=x^{p}, [x,a]=[x,b]=1;",
            pw(p, n),
            pw(p, m),
            pw(p, 2)
        ),
        13 => "gens a,b,c; rels a^4=b^4=1, c^2=a^2 b^2, [a,b]=b^2, [c,a]=a^2, [c,b]=1;".into(),
        14 => format!(
            "gens a,b,d; rels a^{}=b^{}=d^{p}=1, [a,b]=a^{}, [d,a]=b^{p}, [d,b]=1;",
            pw(p, m),
            pw(p, 2),
            pw(p, m - 1)
        ),
        15 => format!(
            "gens a,b,d; rels a^{}=b^{}=d^{}=1, [a,b]=d^{p}, [d,a]=b^{}, [d,b]=1;",
            pw(p, m),
            pw(p, 2),
            pw(p, 2),
            side.j.unwrap() * p
        ),
        16 => format!(
            "gens a,b,d; rels a^{}=b^{}=d^{}=1, [a,b]=d^{p}, [d,a]=b^{} d^{p}, [d,b]=1;",
            pw(p, m),
            pw(p, 2),
            pw(p, 2),
            side.j.unwrap() * p
        ),
        17 => format!(
            "gens a,b; rels a^{}=1, b^{}=a^{}, [a,b]=a^{};",
            pw(p, a.r + 2),
            pw(p, a.r + a.s + a.t),
            pw(p, a.r + a.s),
            pw(p, a.r)
        ),
        18 => format!(
            "gens a,b; rels c:=[a,b], a^{q}=b^{q}=c^{p}=1, [c,a]=b^{}, [c,b]=a^{p}, \
             [a^{p},b]=[b^{p},a]=1;",
            side.nu.unwrap() * p,
            q = pw(p, 2)
        ),
        19 => format!(
            "gens a,b; rels c:=[a,b], a^{q}=b^{q}=c^{p}=1, [c,a]=a^-{p} b^-{}, [c,b]=a^-{p}, \
             [a^{p},b]=[b^{p},a]=1;",
            side.l.unwrap() * p,
            q = pw(p, 2)
        ),
        20 => "gens a,b; rels c:=[a,b], a^9=b^9=c^3=1, [c,a]=b^-3, [c,b]=a^3, [a^3,b]=[b^3,a]=1;"
            .into(),
        21 => "gens a,b; rels c:=[a,b], a^9=b^9=c^3=1, [c,a]=b^-3, [c,b]=a^-3, [a^3,b]=[b^3,a]=1;"
            .into(),
        22 => "gens a,b,d; rels a^4=b^4=d^4=1, [a,b]=d^2, [d,a]=b^2 d^2, [d,b]=a^2 b^2, \
               [a^2,b]=[b^2,a]=1;"
            .into(),
        _ => unreachable!("validated"),
    }
}

/// Presentation of `H × K`, or of the central product identifying
/// `[h₁,h₂]` with `k₁^{|k₁|/p}` when `central` is set.
fn product_presentation(h: &Built, k: &Built, central: bool) -> Result<Presentation> {
    let hn = h.presentation.generator_names();
    let kn = k.presentation.generator_names();
    let clash = hn.iter().any(|x| kn.contains(x));
    let rename = |names: &[String], suffix: &str| -> Vec<String> {
        names
            .iter()
            .map(|x| if clash { format!("{x}{suffix}") } else { x.clone() })
            .collect()
    };
    let mut names = rename(hn, "_1");
    names.extend(rename(kn, "_2"));
    let shift = hn.len() as i32;
    let mut relators: Vec<Word> = h.presentation.relators().to_vec();
    for r in k.presentation.relators() {
        relators.push(Word::new(
            r.letters().iter().map(|&l| l + l.signum() * shift).collect(),
        ));
    }
    for i in 0..hn.len() {
        for j in 0..kn.len() {
            relators.push(Word::commutator(
                &Word::generator(i),
                &Word::generator(hn.len() + j),
            ));
        }
    }
    if central {
        let p = h.spec.prime().unwrap() as i64;
        let x_order = k.group.element_order(k.group.generators()[0]) as i64;
        let c = Word::commutator(&Word::generator(0), &Word::generator(1));
        let z = Word::generator(hn.len()).pow(x_order / p);
        relators.push(c.concat(&z.inverse()));
    }
    Presentation::new(names, relators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{central_product, direct_product, isomorphic};

    fn a2(ty: u8, p: u64, m: u32, n: u32) -> FamilySpec {
        FamilySpec::a2(
            ty,
            A2Params {
                p,
                m,
                n,
                ..Default::default()
            },
        )
    }

    #[test]
    fn mpmn_orders() {
        let g = FamilySpec::MpMN { p: 2, m: 2, n: 2 }.build().unwrap();
        assert_eq!(g.group.order(), 16);
        let g = FamilySpec::MpMN { p: 3, m: 2, n: 1 }.build().unwrap();
        assert_eq!(g.group.order(), 27);
        let e = FamilySpec::MpMN { p: 3, m: 1, n: 1 }.build().unwrap_err();
        assert!(matches!(e, Error::ParameterRange { .. }));
        let e = FamilySpec::MpMN1 { p: 2, m: 1, n: 1 }.build().unwrap_err();
        assert!(matches!(e, Error::ParameterRange { .. }));
    }

    #[test]
    fn relators_hold_on_built_groups() {
        for spec in [a2(8, 2, 0, 0), a2(13, 2, 0, 0), a2(7, 3, 0, 0), a2(1, 2, 1, 0)] {
            let b = spec.build().unwrap();
            for r in b.presentation.relators() {
                assert_eq!(b.group.evaluate(r).unwrap(), 0, "{spec}");
            }
            assert_eq!(b.group.order() as u64, spec.nominal_order(), "{spec}");
        }
    }

    #[test]
    fn side_conditions_reported() {
        let e = a2(4, 3, 1, 0).validate().unwrap_err();
        assert_eq!(
            e,
            Error::ParameterRange {
                family: "A2 type 4".into(),
                condition: "p ≥ 5 for m = 1".into()
            }
        );
        assert_eq!(a2(15, 3, 1, 0).validate().unwrap_err(), Error::NoAdmissibleJ { p: 3 });
        assert!(a2(18, 3, 0, 0).validate().is_err());
        let spec = FamilySpec::a2(17, A2Params { p: 2, r: 1, s: 1, ..Default::default() });
        assert!(spec.validate().is_err());
    }

    #[test]
    fn type8_and_type11_products() {
        let q8 = FamilySpec::Q8.build().unwrap().group;
        let c2 = FamilySpec::Cyclic { n: 2 }.build().unwrap().group;
        let c4 = FamilySpec::Cyclic { n: 4 }.build().unwrap().group;
        let t8 = a2(8, 2, 0, 0).build().unwrap().group;
        assert!(isomorphic(&t8, &direct_product(&q8, &c2), 512).unwrap().is_some());
        let a2_ = q8.pow(q8.generators()[0], 2);
        let x2 = c4.pow(c4.generators()[0], 2);
        let qc = central_product(&q8, &c4, &[(a2_, x2)]).unwrap();
        let t11 = a2(11, 2, 0, 0).build().unwrap().group;
        assert!(isomorphic(&t11, &qc.group, 512).unwrap().is_some());
        let via_spec = FamilySpec::CentralProduct(Box::new(FamilySpec::Q8), Box::new(FamilySpec::Cyclic { n: 4 }))
            .build()
            .unwrap();
        assert_eq!(via_spec.group.order(), 16);
        assert!(isomorphic(&t11, &via_spec.group, 512).unwrap().is_some());
    }

    #[test]
    fn literal_type20_without_centrality_is_larger() {
        let literal = parse_presentation(
            "gens a,b; rels a^9=b^9=1, c:=[a,b], c^3=1, [c,a]=b^-3, [c,b]=a^3;",
        )
        .unwrap();
        let big = enumerate(&literal, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(big.order(), 729);
        assert_eq!(crate::kernel::nilpotency_class(&big), Some(4));
        let built = a2(20, 3, 0, 0).build().unwrap();
        assert_eq!(built.group.order(), 243);
        assert_eq!(crate::kernel::nilpotency_class(&built.group), Some(3));
    }

    #[test]
    fn labels_are_stable() {
        assert_eq!(a2(4, 3, 2, 0).label(), "a2-04:p=3,m=2");
        let spec = FamilySpec::DirectProduct(Box::new(FamilySpec::Q8), Box::new(FamilySpec::Cyclic { n: 2 }));
        assert_eq!(spec.label(), "direct:(q8:)x(cyclic:n=2)");
        assert_eq!(spec.nominal_order(), 16);
    }
}
