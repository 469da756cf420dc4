//! Auslander-Reiten translate, the AR quiver and its meshes.
//!
//! `cargo run --example ar_quiver > a3.dot && dot -Tsvg a3.dot`

use boundquiver::families::a_n;
use boundquiver::{ar_quiver, enumerate_indecomposables, FdAlgebra, Result};

fn main() -> Result<()> {
    let a = a_n(3)?;
    let fd = FdAlgebra::new(&a)?;
    let p3 = fd.projective(2);
    eprintln!(
        "P3 has dimension vector {:?}, τ⁻¹ P3 has {:?}",
        p3.dims,
        fd.tau_inv(&p3).dims
    );

    let mods = enumerate_indecomposables(&fd, 100)?.expect("A3 is representation-finite");
    let ar = ar_quiver(&fd, mods)?;
    for m in ar.meshes() {
        let middles: Vec<_> = m.middles.iter().map(|&(e, _)| ar.modules[e].dims.clone()).collect();
        eprintln!(
            "mesh {:?} -> {:?} -> {:?}",
            ar.modules[m.start].dims, middles, ar.modules[m.end].dims
        );
    }
    print!("{}", ar.to_dot());
    Ok(())
}
