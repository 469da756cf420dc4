//! Tensor products, enveloping algebras, vertex gluing and supplements.

use boundquiver::families::a_n;
use boundquiver::gds::crossing_set;
use boundquiver::{enveloping, glue, gluing_algebra, parse_presentation, path_basis, tensor, GluingSpec, Result};

fn main() -> Result<()> {
    let a2 = a_n(2)?;
    let square = tensor(&a2, &a2);
    print!("A2 ⊗ A2:\n{}", square.to_text());
    println!("A3^e has {} vertices", enveloping(&a_n(3)?).num_vertices());

    let a = parse_presentation("vertices: 1 2 3 4\narrow: a 1 2\narrow: b 2 3\narrow: c 3 4\nrelation: a b\n")?;
    let pairs = vec![("2".to_string(), "4".to_string())];
    let glued = glue(&a, &pairs)?;
    print!("glue 4 into 2:\n{}", glued.to_text());
    let crossing = crossing_set(&glued, "2", 2)?;
    println!("{} pairs of paths meet at 2", crossing.len());

    let spec = GluingSpec {
        pairs,
        deletions: vec![],
        supplement: vec!["2".into()],
    };
    let with_supplement = gluing_algebra(&a, &spec)?;
    let report = path_basis(&with_supplement, 3);
    println!("with supplement {{2}}: degrees up to 3 {:?}", report.degrees);
    Ok(())
}
