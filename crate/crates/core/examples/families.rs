//! Build the smallest instance of every family, print side parameters and
//! check the A_t degree of each A2 instance.

use metaham::classify::Analysis;
use metaham::families::{smallest_instances, FamilySpec, SideParameters};
use metaham::kernel::Limits;

fn side(s: &SideParameters) -> String {
    [("ν", s.nu), ("ρ", s.rho), ("j", s.j), ("l", s.l)]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| format!("{k}={v}")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> metaham::Result<()> {
    let start = std::time::Instant::now();
    for spec in smallest_instances() {
        let built = spec.build()?;
        let degree = match &spec {
            FamilySpec::A2 { .. } => {
                let t = Analysis::new(&built.group, Limits::with_cap(4096)).a_degree()?;
                assert_eq!(t, 2);
                format!("A_{t}")
            }
            _ => String::new(),
        };
        println!("{:<36} order {:>5} {:>4}  {}", spec.label(), built.group.order(), degree, side(&built.side));
    }
    println!("built in {:.2?}", start.elapsed());

    for bad in [
        FamilySpec::MpMN { p: 3, m: 1, n: 1 },
        FamilySpec::a2(15, metaham::families::A2Params { p: 3, m: 1, ..Default::default() }),
    ] {
        println!("{}: {}", bad.label(), bad.build().unwrap_err());
    }
    Ok(())
}
