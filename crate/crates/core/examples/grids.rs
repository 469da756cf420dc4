//! Grid embeddings and commutative diamonds of Auslander algebras.

use boundquiver::families::{a_n, d_n};
use boundquiver::{
    ar_quiver, auslander_presentation, check_diamonds_commutative, embed_into_grid, enumerate_indecomposables,
    grid_presentation, FdAlgebra, Result,
};

fn main() -> Result<()> {
    let g = grid_presentation(2, 3)?;
    println!(
        "2×3 grid: {} arrows, {} commutativity relations",
        g.quiver.num_arrows(),
        g.relations.len()
    );

    for (label, base) in [("A3", a_n(3)?), ("D4", d_n(4)?)] {
        let fd = FdAlgebra::new(&base)?;
        let mods = enumerate_indecomposables(&fd, 100)?.expect("representation-finite");
        let aus = auslander_presentation(&ar_quiver(&fd, mods)?)?;
        let e = embed_into_grid(&aus)?;
        println!(
            "{label}^Aus: embeds in a {}×{} grid at {:?}; diamonds commute: {}",
            e.m,
            e.n,
            e.coords,
            check_diamonds_commutative(&aus)
        );
    }
    Ok(())
}
