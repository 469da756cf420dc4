//! Built-in algebras: linearly oriented `A_n`, the string algebras `D_n`,
//! the triangle with one zero relation together with its Auslander algebra,
//! and a two-square quiver carrying a one-parameter family of modules.

use crate::error::{Error, Result};
use crate::gds::{enveloping, gluing_algebra, linear, GluingSpec};
use crate::linalg::Matrix;
use crate::presentation::{parse_presentation, Presentation, Relation};
use crate::quiver::Quiver;
use crate::rational::Rational;
use crate::rep::Representation;

const TRIANGLE: &str = include_str!("../data/corpus/triangle.quiver");
const TRIANGLE_AUS: &str = include_str!("../data/corpus/triangle_aus.quiver");
const STAR: &str = include_str!("../data/corpus/star.quiver");

/// `1 → 2 → … → n`, arrows `a1 … a(n-1)`, no relations.
pub fn a_n(n: usize) -> Result<Presentation> {
    linear(n)
}

/// `A_n` modulo all paths of length two.
pub fn a_n_rad2(n: usize) -> Result<Presentation> {
    let p = linear(n)?;
    let relations: Vec<Relation> = (0..n.saturating_sub(2))
        .map(|k| Relation::monomial(p.quiver.path(&[k, k + 1]).unwrap()))
        .collect();
    p.quotient(&relations)
}

/// Vertices `1..n`; `a1: 1 → 3`, `a2: 2 → 3`, `ak: k → k+1` for
/// `3 ≤ k < n`; the single relation `a2 a3`.
pub fn d_n(n: usize) -> Result<Presentation> {
    if n < 4 {
        return Err(Error::OutOfRange(format!("D_n needs n ≥ 4, got {n}")));
    }
    let mut q = Quiver::new();
    for v in 1..=n {
        q.add_vertex(v.to_string())?;
    }
    q.add_arrow("a1", "1", "3")?;
    q.add_arrow("a2", "2", "3")?;
    for k in 3..n {
        q.add_arrow(format!("a{k}"), &k.to_string(), &(k + 1).to_string())?;
    }
    let r = Relation::monomial(q.parse_path("a2 a3")?);
    Presentation::new(q, vec![r])
}

/// `a: 1 → 2`, `b: 2 → 3`, `c: 1 → 3` with `ab = 0`.
pub fn triangle() -> Presentation {
    parse_presentation(TRIANGLE).expect("embedded file parses")
}

/// Nine-vertex presentation of the Auslander algebra of [`triangle`].
pub fn triangle_auslander() -> Presentation {
    parse_presentation(TRIANGLE_AUS).expect("embedded file parses")
}

fn names(vs: &[&str]) -> Vec<String> {
    vs.iter().map(|v| v.to_string()).collect()
}

/// The Auslander algebra of [`triangle`] rebuilt from `enveloping(A_4)`:
/// delete six corner vertices, glue `(1,3)` with `(3,1)`, drop the zero
/// relations through the supplement vertices, then kill three paths of
/// length two. The grid is read with arrows increasing both coordinates,
/// so the last step passes to the opposite algebra.
pub fn triangle_auslander_by_gluing() -> Result<Presentation> {
    let spec = GluingSpec {
        pairs: vec![("(1,3)".into(), "(3,1)".into())],
        deletions: names(&["(4,4)", "(4,1)", "(2,1)", "(1,1)", "(1,2)", "(1,4)"]),
        supplement: names(&["(2,3)", "(3,3)", "(3,2)", "(1,3)"]),
    };
    let glued = gluing_algebra(&enveloping(&a_n(4)?), &spec)?;
    let q = &glued.quiver;
    let zero = [
        ["(3,4)", "(3,3)", "(4,3)"],
        ["(1,3)", "(2,3)", "(2,2)"],
        ["(2,2)", "(3,2)", "(1,3)"],
    ]
    .iter()
    .map(|vs| Ok(Relation::monomial(q.path_through(vs)?)))
    .collect::<Result<Vec<_>>>()?;
    Ok(glued.quotient(&zero)?.opposite())
}

/// Seven vertices, two commutative squares glued at the vertex `3`.
pub fn star() -> Presentation {
    parse_presentation(STAR).expect("embedded file parses")
}

/// The module `M(λ)` over [`star`], dimension `2` at `3` and `1` elsewhere.
/// Indecomposable for `λ ≠ 0`, and `M(λ) ≅ M(μ)` only when `λ = μ`.
pub fn star_module(lambda: &Rational) -> Representation {
    let q = star().quiver;
    let int = |x: i64| Rational::from_int(x);
    let dims = ["1", "2", "3'", "3", "3''", "4", "5"]
        .iter()
        .map(|v| if *v == "3" { 2 } else { 1 })
        .collect();
    let maps = vec![
        Matrix::from_ints(1, 1, &[1]),                         // a1
        Matrix::from_ints(2, 1, &[1, 0]),                      // a2
        Matrix::from_ints(1, 1, &[1]),                         // b1
        Matrix::from_ints(1, 2, &[1, 1]),                      // b2
        Matrix::from_ints(2, 1, &[0, 1]),                      // c1
        Matrix::from_ints(1, 1, &[1]),                         // c2
        Matrix::from_rows(vec![vec![int(1), lambda.clone()]]), // d1
        Matrix::from_rows(vec![vec![lambda.clone()]]),         // d2
    ];
    Representation::new(&q, dims, maps).expect("shapes match the quiver")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_basis, DEFAULT_MAX_DEGREE};
    use crate::rep::validate_module;

    #[test]
    fn dimensions() {
        let dim = |p: &Presentation| path_basis(p, DEFAULT_MAX_DEGREE).dimension;
        assert_eq!(dim(&a_n(4).unwrap()), Some(10));
        assert_eq!(dim(&a_n_rad2(3).unwrap()), Some(5));
        // D_4: paths 1,2,3,4,a1,a2,a3,a1a3
        assert_eq!(dim(&d_n(4).unwrap()), Some(8));
        assert_eq!(dim(&triangle()), Some(6));
        assert_eq!(triangle_auslander().num_vertices(), 9);
        let g = triangle_auslander_by_gluing().unwrap();
        assert_eq!((g.num_vertices(), g.quiver.num_arrows(), g.relations.len()), (9, 12, 6));
        assert_eq!(dim(&g), Some(43));
    }

    #[test]
    fn star_modules_are_modules() {
        let s = star();
        for l in [0, 1, 2, 3] {
            assert!(validate_module(&s, &star_module(&Rational::from_int(l))).unwrap());
        }
    }
}
