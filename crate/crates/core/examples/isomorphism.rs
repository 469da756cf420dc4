//! Isomorphism witnesses between presented algebras.

use boundquiver::families::{a_n, d_n};
use boundquiver::{
    ar_quiver, auslander_presentation, enumerate_indecomposables, enveloping, find_iso, paper_deletion_set, verify_iso,
    Family, FdAlgebra, IsoOutcome, Result, DEFAULT_BUDGET,
};

fn main() -> Result<()> {
    let n = 4;
    let fd = FdAlgebra::new(&d_n(n)?)?;
    let mods = enumerate_indecomposables(&fd, 100)?.expect("representation-finite");
    let aus = auslander_presentation(&ar_quiver(&fd, mods)?)?;
    let deleted = paper_deletion_set(Family::D, n)?;
    let quotient = enveloping(&a_n(n)?).delete_vertices_by_name(&deleted)?;
    println!("deleting {} vertices of A{n}^e", deleted.len());
    match find_iso(&aus, &quotient, DEFAULT_BUDGET)? {
        IsoOutcome::Witness(w) => {
            println!("verified: {}", verify_iso(&aus, &quotient, &w));
            print!("{}", w.to_table(&aus, &quotient));
        }
        other => println!("{other:?}"),
    }
    Ok(())
}
