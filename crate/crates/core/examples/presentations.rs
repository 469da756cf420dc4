//! Parse a bound quiver, list a path basis, take quotients and delete vertices.

use boundquiver::{parse_presentation, path_basis, Result};

fn main() -> Result<()> {
    let a = parse_presentation(
        "vertices: 1 2 3 4\n\
         arrow: a 1 2\n\
         arrow: b 2 3\n\
         arrow: c 3 4\n\
         relation: a b c\n",
    )?;
    let report = path_basis(&a, 8);
    println!(
        "dimension {:?}, per degree {:?}",
        report.dimension,
        report.degree_dims()
    );
    for (d, words) in report.degrees.iter().enumerate() {
        println!("  degree {d}: {}", words.join(", "));
    }

    let smaller = a.quotient(&[a.parse_relation("b c")?])?;
    println!("after b c = 0: dimension {:?}", path_basis(&smaller, 8).dimension);

    let cut = a.delete_vertices_by_name(&["3"])?;
    print!("deleting vertex 3:\n{}", cut.to_text());
    Ok(())
}
