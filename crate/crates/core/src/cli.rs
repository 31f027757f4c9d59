//! Command-line front end: `build`, `classify`, `lattice` and `verify`.
//!
//! Exit statuses: 0 success; 1 audit failures, errors or I/O problems;
//! 2 usage or presentation syntax error; 3 coset budget or time limit
//! exhausted; 4 family parameter out of range; 5 group order above
//! `--max-order`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::audit::{self, AuditOptions, AuditReport, Meta};
use crate::classify::Analysis;
use crate::enumerate::{enumerate, DEFAULT_MAX_COSETS};
use crate::error::{Error, Result};
use crate::families::{self, A2Params, CorpusCaps, FamilySpec, SideParameters};
use crate::group::ConcreteGroup;
use crate::kernel::{Limits, DEFAULT_SUBGROUP_CAP};
use crate::presentation::parse_presentation;

#[derive(Debug, Parser)]
#[command(name = "metaham", version, about = "Finite p-group toolkit and metahamiltonian audits")]
pub struct Cli {
    /// Live-coset budget for enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS)]
    pub max_cosets: usize,
    /// Largest group order accepted by classify, lattice and the audit.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBGROUP_CAP)]
    pub max_order: usize,
    /// Per-group time limit.
    #[arg(long, global = true, default_value_t = 30)]
    pub timeout_secs: u64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the primary output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (verify only).
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate a presentation and print its order.
    Build {
        #[command(flatten)]
        input: Input,
        /// Also emit the multiplication table as JSON.
        #[arg(long)]
        dump: bool,
    },
    /// Structural classification of one group.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// List every subgroup in canonical order.
    Lattice {
        #[command(flatten)]
        input: Input,
    },
    /// Run the check suites over a corpus.
    Verify(VerifyArgs),
}

/// A `.grp` file or a family with explicit parameters.
#[derive(Debug, Args)]
pub struct Input {
    pub file: Option<PathBuf>,
    /// cyclic, power, q8, dihedral, mpmn, mpmn1 or a2-1 … a2-22.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub order: Option<u64>,
    #[arg(long)]
    pub variant: Option<u32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated check ids or suite names.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Corpus order cap for p = 2 (default 64).
    #[arg(long = "max-order-2")]
    pub max_order_2: Option<u64>,
    /// Corpus order cap for p = 3 (default 243).
    #[arg(long = "max-order-3")]
    pub max_order_3: Option<u64>,
    /// Corpus order cap for p = 5 (default 625).
    #[arg(long = "max-order-5")]
    pub max_order_5: Option<u64>,
    /// Audit the `.grp` files of this directory instead of the generated corpus.
    #[arg(long)]
    pub corpus_dir: Option<PathBuf>,
    /// Save the generated corpus as `.grp` files.
    #[arg(long)]
    pub dump_dir: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::UnknownGenerator { .. }
        | Error::UndefinedAbbreviation(_)
        | Error::GeneratorOutOfRange { .. }
        | Error::EmptyPresentation => 2,
        Error::BudgetExceeded { .. } | Error::Timeout => 3,
        Error::ParameterRange { .. } | Error::NoAdmissibleJ { .. } => 4,
        Error::CapExceeded { .. } => 5,
        _ => 1,
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Build { input, dump } => build(cli, input, *dump, out),
        Command::Classify { input } => classify(cli, input, out),
        Command::Lattice { input } => lattice(cli, input, out),
        Command::Verify(v) => verify(cli, v, out),
    }
}

struct Loaded {
    label: String,
    side: SideParameters,
    group: ConcreteGroup,
}

fn usage(msg: &str) -> Error {
    Error::Syntax {
        line: 0,
        column: 0,
        message: msg.to_string(),
    }
}

fn required<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| Error::ParameterRange {
        family: family.to_string(),
        condition: format!("--{flag} is required"),
    })
}

pub fn family_from_flags(input: &Input) -> Result<FamilySpec> {
    let name = input.family.as_deref().unwrap_or_default().to_ascii_lowercase();
    let p = || required(input.p, "p", &name);
    let m = || required(input.m, "m", &name);
    let n32 = || required(input.n, "n", &name).map(|n| n as u32);
    let spec = match name.as_str() {
        "cyclic" => FamilySpec::Cyclic {
            n: required(input.n.or(input.order), "n", &name)?,
        },
        "power" | "elemabelianpower" => FamilySpec::ElemAbelianPower {
            n: required(input.n.or(input.p), "n", &name)?,
            k: required(input.k, "k", &name)?,
        },
        "q8" => FamilySpec::Q8,
        "dihedral" => FamilySpec::Dihedral {
            order: required(input.order.or(input.n), "order", &name)?,
        },
        "mpmn" => FamilySpec::MpMN { p: p()?, m: m()?, n: n32()? },
        "mpmn1" => FamilySpec::MpMN1 { p: p()?, m: m()?, n: n32()? },
        other => {
            let ty = other
                .strip_prefix("a2type")
                .or_else(|| other.strip_prefix("a2-"))
                .and_then(|t| t.parse::<u8>().ok())
                .ok_or_else(|| usage(&format!("unknown family `{other}`")))?;
            FamilySpec::a2(
                ty,
                A2Params {
                    p: input.p.unwrap_or(0),
                    m: input.m.unwrap_or(0),
                    n: input.n.unwrap_or(0) as u32,
                    r: input.r.unwrap_or(0),
                    s: input.s.unwrap_or(0),
                    t: input.t.unwrap_or(0),
                    variant: input.variant.unwrap_or(0),
                },
            )
        }
    };
    Ok(spec)
}

fn load(cli: &Cli, input: &Input) -> Result<Loaded> {
    match (&input.file, &input.family) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            let group = enumerate(&parse_presentation(&text)?, cli.max_cosets)?;
            Ok(Loaded {
                label: path.display().to_string(),
                side: SideParameters::default(),
                group,
            })
        }
        (None, Some(_)) => {
            let spec = family_from_flags(input)?;
            let built = spec.build_with(cli.max_cosets)?;
            Ok(Loaded {
                label: spec.label(),
                side: built.side,
                group: built.group,
            })
        }
        _ => Err(usage("give exactly one of a .grp file or --family")),
    }
}

fn side_text(side: &SideParameters) -> Option<String> {
    let parts: Vec<String> = [("nu", side.nu), ("rho", side.rho), ("j", side.j), ("l", side.l)]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| format!("{k}={v}")))
        .collect();
    (!parts.is_empty()).then(|| parts.join(" "))
}

fn emit(cli: &Cli, out: &mut dyn Write, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn limits(cli: &Cli) -> Limits {
    Limits {
        subgroup_cap: cli.max_order,
        deadline: Some(Instant::now() + Duration::from_secs(cli.timeout_secs)),
    }
}

#[derive(Serialize)]
struct BuildOutput<'a> {
    label: &'a str,
    order: usize,
    side: &'a SideParameters,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<crate::group::GroupDump>,
}

fn build(cli: &Cli, input: &Input, dump: bool, out: &mut dyn Write) -> Result<i32> {
    let l = load(cli, input)?;
    let text = if cli.json {
        let b = BuildOutput {
            label: &l.label,
            order: l.group.order(),
            side: &l.side,
            table: dump.then(|| l.group.dump()),
        };
        serde_json::to_string_pretty(&b)? + "\n"
    } else {
        let mut s = format!("order {}\n", l.group.order());
        if let Some(side) = side_text(&l.side) {
            s += &format!("side {side}\n");
        }
        if dump {
            s += &(serde_json::to_string(&l.group.dump())? + "\n");
        }
        s
    };
    emit(cli, out, &text)?;
    Ok(0)
}

fn classify(cli: &Cli, input: &Input, out: &mut dyn Write) -> Result<i32> {
    let l = load(cli, input)?;
    let limits = limits(cli);
    limits.check_order(l.group.order())?;
    let c = Analysis::new(&l.group, limits).classify()?;
    let text = if cli.json {
        serde_json::to_string_pretty(&c)? + "\n"
    } else {
        let mut s = format!("label {}\norder {}\n", l.label, c.order);
        if let Some(side) = side_text(&l.side) {
            s += &format!("side {side}\n");
        }
        if let (Some(p), Some(n)) = (c.p, c.n) {
            s += &format!("p-group {p}^{n}\n");
        }
        s += &format!(
            "d {}\nc {}\nderived order {} exponent {} elementary-abelian {}\n",
            c.d,
            c.c.map_or("-".to_string(), |k| k.to_string()),
            c.derived_order,
            c.derived_exponent,
            c.derived_elementary_abelian
        );
        let f = &c.flags;
        s += &format!(
            "abelian {}\ndedekindian {}\nhamiltonian {}\nminimal_nonabelian {}\nmetahamiltonian {}\nmetacyclic {}\ntwo_engel {}\n",
            f.abelian,
            f.dedekindian,
            f.hamiltonian,
            f.minimal_nonabelian,
            f.metahamiltonian.map_or("not-applicable".to_string(), |b| b.to_string()),
            f.metacyclic,
            f.two_engel
        );
        s += &format!("a_degree {}\n", serde_json::to_value(c.a_degree)?.to_string().trim_matches('"'));
        if let Some(t) = &c.a1_type {
            s += &format!("a1_type {t}\n");
        }
        if let Some(w) = &c.metahamiltonian_witness {
            s += &format!("witness order {} generated by {}\n", w.order, w.generators.join(", "));
        }
        s
    };
    emit(cli, out, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct LatticeRow {
    order: usize,
    normal: bool,
    abelian: bool,
    generators: Vec<String>,
}

fn lattice(cli: &Cli, input: &Input, out: &mut dyn Write) -> Result<i32> {
    let l = load(cli, input)?;
    let limits = limits(cli);
    limits.check_order(l.group.order())?;
    let lat = crate::kernel::SubgroupLattice::build(&l.group, &limits)?;
    let rows: Vec<LatticeRow> = (0..lat.len())
        .map(|i| LatticeRow {
            order: lat.subgroup(i).order(),
            normal: lat.is_normal(i),
            abelian: lat.is_abelian(i),
            generators: lat.subgroup(i).generator_words(&l.group),
        })
        .collect();
    let text = if cli.json {
        serde_json::to_string_pretty(&rows)? + "\n"
    } else {
        let mut s = format!("{:>5} {:>6} {:>6} {:>7}  generators\n", "#", "order", "normal", "abelian");
        for (i, r) in rows.iter().enumerate() {
            s += &format!(
                "{:>5} {:>6} {:>6} {:>7}  {}\n",
                i,
                r.order,
                r.normal,
                r.abelian,
                if r.generators.is_empty() { "1".to_string() } else { r.generators.join(", ") }
            );
        }
        s
    };
    emit(cli, out, &text)?;
    Ok(0)
}

fn verify(cli: &Cli, v: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let filter = audit::parse_suite_filter(&v.suite).map_err(|e| usage(&e.to_string()))?;
    let (corpus, caps) = match &v.corpus_dir {
        Some(dir) => (families::load_corpus(dir, cli.max_cosets)?, None),
        None => {
            let mut caps = CorpusCaps::default();
            for (p, cap) in [(2, v.max_order_2), (3, v.max_order_3), (5, v.max_order_5)] {
                if let Some(c) = cap {
                    caps.0.insert(p, c);
                }
            }
            (families::standard_corpus(&caps)?, Some(caps))
        }
    };
    if let Some(dir) = &v.dump_dir {
        families::dump_corpus(&corpus, dir)?;
    }
    let options = AuditOptions {
        filter: filter.clone(),
        jobs: cli.jobs,
        timeout: Some(Duration::from_secs(cli.timeout_secs)),
        subgroup_cap: cli.max_order,
        record_timing: false,
    };
    let reports = audit::run_all(&corpus, &options)?;
    let report = AuditReport::new(
        Meta {
            corpus_caps: caps,
            corpus_dir: v.corpus_dir.as_deref().map(path_text),
            corpus_size: corpus.len(),
            suite_filter: filter,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        },
        reports,
    );
    match (&cli.out, cli.json) {
        (Some(path), _) => {
            std::fs::write(path, report.to_json())?;
            out.write_all(report.text_table().as_bytes())?;
        }
        (None, true) => out.write_all(report.to_json().as_bytes())?,
        (None, false) => out.write_all(report.text_table().as_bytes())?,
    }
    Ok(if report.is_clean() { 0 } else { 1 })
}

fn path_text(p: &Path) -> String {
    p.display().to_string()
}
