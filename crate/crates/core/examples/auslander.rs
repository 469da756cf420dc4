//! Auslander algebras of A_n and D_n and their indecomposable counts.

use boundquiver::families::{a_n, d_n};
use boundquiver::{
    ar_quiver, auslander_presentation, count_indecomposables, enumerate_indecomposables, path_basis, FdAlgebra,
    Presentation, Result,
};

fn auslander(base: &Presentation) -> Result<Presentation> {
    let fd = FdAlgebra::new(base)?;
    let mods = enumerate_indecomposables(&fd, 500)?.expect("representation-finite base");
    auslander_presentation(&ar_quiver(&fd, mods)?)
}

fn main() -> Result<()> {
    let a2 = auslander(&a_n(2)?)?;
    print!("A2^Aus:\n{}", a2.to_text());

    for (label, base) in [
        ("A3", a_n(3)?),
        ("A4", a_n(4)?),
        ("A5", a_n(5)?),
        ("D4", d_n(4)?),
        ("D5", d_n(5)?),
    ] {
        let aus = auslander(&base)?;
        let dim = path_basis(&aus, 64).dimension;
        let count = count_indecomposables(&FdAlgebra::new(&aus)?, 500)?;
        let shown = count.map_or("more than 500".to_string(), |c| c.to_string());
        println!(
            "{label}^Aus: {} vertices, dimension {dim:?}, {shown} indecomposables",
            aus.num_vertices()
        );
    }
    Ok(())
}
