//! Parse the presentation DSL, inspect the relators and print them back.

use metaham::{parse_presentation, Presentation};

fn main() -> metaham::Result<()> {
    let src = "
        # the quaternion group; c := [a,b] adds a generator for the commutator
        gens a, b;
        rels a^4 = 1, b^2 = a^2, c := [a,b], c = a^2;
    ";
    let p = parse_presentation(src)?;
    println!("generators: {:?}", p.generator_names());
    for r in p.relators() {
        println!("relator {:<14} ({} letters)", r.display(p.generator_names()).to_string(), r.len());
    }

    // Printing yields DSL that parses to the same relators.
    let text = p.to_string();
    print!("{text}");
    let again = Presentation::parse(&text)?;
    assert_eq!(again.relators(), p.relators());

    match parse_presentation("gens a; rels a^4 = b;") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
