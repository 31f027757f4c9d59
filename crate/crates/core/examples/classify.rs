//! Structural classification of a handful of small 2-groups.

use metaham::classify::{classify, Analysis};
use metaham::families::FamilySpec;
use metaham::kernel::Limits;

fn main() -> metaham::Result<()> {
    let specs = [
        FamilySpec::Q8,
        FamilySpec::Dihedral { order: 8 },
        FamilySpec::Dihedral { order: 16 },
        FamilySpec::Dihedral { order: 32 },
        FamilySpec::MpMN1 { p: 2, m: 2, n: 1 },
        FamilySpec::DirectProduct(Box::new(FamilySpec::Q8), Box::new(FamilySpec::Cyclic { n: 2 })),
    ];
    println!("{:<28} {:>5} {:>2} {:>2} {:>5} {:>6} {:>6}  a1 type", "group", "order", "d", "c", "A_t", "meta", "ham");
    for spec in specs {
        let g = spec.build()?.group;
        let c = classify(&g, &Limits::default())?;
        println!(
            "{:<28} {:>5} {:>2} {:>2} {:>5} {:>6} {:>6}  {}",
            spec.label(),
            c.order,
            c.d,
            c.c.unwrap_or(0),
            serde_json::to_string(&c.a_degree)?,
            c.flags.metahamiltonian.map_or("-".into(), |b| b.to_string()),
            c.flags.hamiltonian,
            c.a1_type.map(|t| t.to_string()).unwrap_or_default()
        );
    }

    // The three metahamiltonian tests agree, and D32 yields a witness.
    let d32 = FamilySpec::Dihedral { order: 32 }.build()?.group;
    let an = Analysis::new(&d32, Limits::default());
    let w = an.metahamiltonian_definition()?;
    let h = w.witness().expect("D32 is not metahamiltonian");
    println!(
        "\nD32: non-normal non-abelian subgroup of order {} generated by {:?}",
        h.order(),
        h.generator_words(&d32)
    );
    assert_eq!(an.metahamiltonian_a1()?.as_bool(), Some(false));
    assert_eq!(an.metahamiltonian_derived()?.as_bool(), Some(false));

    println!("\n{}", serde_json::to_string_pretty(&classify(&FamilySpec::Q8.build()?.group, &Limits::default())?)?);
    Ok(())
}
