//! Isomorphism testing, direct and central products.

use metaham::families::{A2Params, FamilySpec};
use metaham::kernel::{center, central_product, direct_product, isomorphic};

fn main() -> metaham::Result<()> {
    let q8 = FamilySpec::Q8.build()?.group;
    let d8 = FamilySpec::Dihedral { order: 8 }.build()?.group;
    let c2 = FamilySpec::Cyclic { n: 2 }.build()?.group;
    let c4 = FamilySpec::Cyclic { n: 4 }.build()?.group;
    let cap = 1 << 16;

    // M_2(2,1) is D8, and Q8 is not.
    let m221 = FamilySpec::MpMN { p: 2, m: 2, n: 1 }.build()?.group;
    println!("M_2(2,1) ≅ D8: {}", isomorphic(&m221, &d8, cap)?.is_some());
    println!("Q8 ≅ D8: {}", isomorphic(&q8, &d8, cap)?.is_some());

    // Two A2 types of order 16 against kernel-built products.
    let a2 = |ty| FamilySpec::a2(ty, A2Params { p: 2, ..Default::default() }).build();
    let t8 = a2(8)?.group;
    let qc2 = direct_product(&q8, &c2);
    println!("type 8 ≅ Q8 × C2: {}", isomorphic(&t8, &qc2, cap)?.is_some());

    let z = center(&q8).elements()[1];
    let w = c4.pow(c4.generators()[0], 2);
    let qc4 = central_product(&q8, &c4, &[(z, w)])?.group;
    let t11 = a2(11)?.group;
    println!("Q8 ∗ C4 has order {}", qc4.order());
    if let Some(map) = isomorphic(&t11, &qc4, cap)? {
        let images: Vec<String> = t11.generators().iter().map(|&x| qc4.word_string(map[x])).collect();
        println!("type 11 ≅ Q8 ∗ C4 via generators ↦ {images:?}");
    }
    Ok(())
}
