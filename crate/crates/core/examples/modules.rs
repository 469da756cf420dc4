//! Representations, Hom spaces, isomorphism and decomposition.

use boundquiver::families::{star, star_module};
use boundquiver::{decompose, end_is_local, hom_dim, is_isomorphic, validate_module, Rational, Result};

fn main() -> Result<()> {
    let x = star();
    let q = &x.quiver;
    let m2 = star_module(&Rational::from_int(2));
    let m3 = star_module(&Rational::from_int(3));
    println!("M(2) is a module: {}", validate_module(&x, &m2)?);
    println!("M(2) indecomposable: {}", end_is_local(q, &m2));
    println!("dim Hom(M(2), M(3)) = {}", hom_dim(q, &m2, &m3));
    println!("M(2) ≅ M(3): {}", is_isomorphic(q, &m2, &m3));

    let sum = m2.direct_sum(&m3);
    let parts = decompose(q, &sum)?;
    println!("M(2) ⊕ M(3) splits into {} summands", parts.len());
    for p in &parts {
        println!("  dims {:?}, ≅ M(2): {}", p.dims, is_isomorphic(q, p, &m2));
    }
    Ok(())
}
