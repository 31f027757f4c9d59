//! Audit a small corpus and print the summary table. Pass a cap for p = 2
//! (default 32) as the first argument.

use metaham::audit::{run_all, AuditOptions, AuditReport, Meta, TheoremId};
use metaham::families::{standard_corpus, CorpusCaps};

fn main() -> metaham::Result<()> {
    let cap2: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(32);
    let caps = CorpusCaps([(2, cap2), (3, 81)].into_iter().collect());
    let corpus = standard_corpus(&caps)?;
    let options = AuditOptions {
        jobs: 4,
        ..AuditOptions::default()
    };
    let reports = run_all(&corpus, &options)?;
    let report = AuditReport::new(
        Meta {
            corpus_caps: Some(caps),
            corpus_dir: None,
            corpus_size: corpus.len(),
            suite_filter: TheoremId::ALL.to_vec(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
        },
        reports,
    );
    print!("{}", report.text_table());
    println!("clean: {}", report.is_clean());

    let sample = report
        .reports
        .iter()
        .find(|r| r.theorem == TheoremId::T3_4 && r.label.starts_with("dihedral"))
        .expect("a dihedral group in the corpus");
    println!("{}", serde_json::to_string_pretty(sample)?);
    Ok(())
}
