//! Subgroup lattice of D8 and the characteristic series of a larger group.

use metaham::families::FamilySpec;
use metaham::kernel::{
    center, derived_subgroup, frattini, lower_central_series, nilpotency_class, Limits,
    SubgroupLattice,
};

fn main() -> metaham::Result<()> {
    let d8 = FamilySpec::Dihedral { order: 8 }.build()?.group;
    let l = SubgroupLattice::build(&d8, &Limits::default())?;
    println!("D8 has {} subgroups", l.len());
    for (i, h) in l.subgroups().iter().enumerate() {
        println!(
            "  {i:>2}  order {:>2}  normal {:<5}  abelian {:<5}  <{}>",
            h.order(),
            l.is_normal(i),
            l.is_abelian(i),
            h.generator_words(&d8).join(", ")
        );
    }

    let g = FamilySpec::MpMN1 { p: 3, m: 2, n: 1 }.build()?.group;
    println!("\nM_3(2,1,1): order {}", g.order());
    println!("  |Z(G)| = {}", center(&g).order());
    println!("  |G'|   = {}", derived_subgroup(&g).order());
    println!("  |Φ(G)| = {}", frattini(&g).order());
    let series: Vec<usize> = lower_central_series(&g).iter().map(|h| h.order()).collect();
    println!("  lower central series orders {series:?}, class {:?}", nilpotency_class(&g));
    let l = SubgroupLattice::build(&g, &Limits::default())?;
    let normal = (0..l.len()).filter(|&i| l.is_normal(i)).count();
    println!("  {} subgroups, {normal} normal", l.len());
    Ok(())
}
