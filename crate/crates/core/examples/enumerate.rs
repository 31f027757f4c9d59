//! Todd–Coxeter enumeration of a few presentations, including one that
//! exceeds a deliberately small coset budget.

use metaham::{enumerate, parse_presentation, DEFAULT_MAX_COSETS};

fn main() -> metaham::Result<()> {
    let cases = [
        ("D16", "gens a,b; rels a^8=1, b^2=1, a^b=a^-1;"),
        ("Q16", "gens a,b; rels a^8=1, b^2=a^4, a^b=a^-1;"),
        ("M_3(2,1)", "gens a,b; rels a^9=1, b^3=1, a^b=a^4;"),
        ("Heisenberg mod 5", "gens x,y,z; rels x^5=y^5=z^5=1, [x,y]=z, [z,x]=[z,y]=1;"),
    ];
    for (name, src) in cases {
        let g = enumerate(&parse_presentation(src)?, DEFAULT_MAX_COSETS)?;
        g.validate()?;
        let orders: std::collections::BTreeMap<usize, usize> =
            (0..g.order()).fold(Default::default(), |mut m, x| {
                *m.entry(g.element_order(x)).or_default() += 1;
                m
            });
        println!("{name:<17} order {:>4}  element orders {orders:?}", g.order());
    }

    // The free product C2 * C2 is infinite; the budget stops the enumeration.
    let infinite = parse_presentation("gens a,b; rels a^2=1, b^2=1;")?;
    println!("infinite dihedral: {}", enumerate(&infinite, 2000).unwrap_err());
    Ok(())
}
