//! Submodules, quotients, kernels and cokernels of representations, and
//! splitting a module into indecomposable summands.

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::quiver::Quiver;
use crate::rational::Rational;
use crate::rep::{end_radical, hom_basis, Morphism, Representation, TopBasis};

fn echelons(m: &Representation, spans: &[Vec<SparseVec>]) -> Vec<Echelon> {
    spans
        .iter()
        .zip(&m.dims)
        .map(|(vs, &d)| {
            let mut e = Echelon::new(d);
            for v in vs {
                e.insert(v);
            }
            e
        })
        .collect()
}

/// The submodule spanned vertex by vertex by `spans`, which must be closed
/// under the arrows. Returns it with the ambient coordinates of its basis.
pub fn submodule(q: &Quiver, m: &Representation, spans: &[Vec<SparseVec>]) -> (Representation, Vec<Vec<SparseVec>>) {
    let echs = echelons(m, spans);
    let basis: Vec<Vec<SparseVec>> = echs.iter().map(|e| e.rows().to_vec()).collect();
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut mat = Matrix::zeros(dims[a.target], dims[a.source]);
            for (col, b) in basis[a.source].iter().enumerate() {
                let img = m.maps[ai].mul_sparse(b);
                let coords = echs[a.target]
                    .coordinates(&img)
                    .expect("span is closed under the arrows");
                for (row, x) in coords.into_iter().enumerate() {
                    if !x.is_zero() {
                        mat.set(row, col, x);
                    }
                }
            }
            mat
        })
        .collect();
    (Representation { dims, maps }, basis)
}

/// `M / N` for the submodule `N` spanned by `spans`.
pub fn quotient(q: &Quiver, m: &Representation, spans: &[Vec<SparseVec>]) -> Representation {
    let echs = echelons(m, spans);
    let free: Vec<Vec<usize>> = echs.iter().map(Echelon::free_columns).collect();
    let dims: Vec<usize> = free.iter().map(Vec::len).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut mat = Matrix::zeros(dims[a.target], dims[a.source]);
            for (col, &fc) in free[a.source].iter().enumerate() {
                let img = echs[a.target].reduce(&m.maps[ai].mul_sparse(&SparseVec::unit(fc)));
                for (row, &g) in free[a.target].iter().enumerate() {
                    let x = img.get(g);
                    if !x.is_zero() {
                        mat.set(row, col, x);
                    }
                }
            }
            mat
        })
        .collect();
    Representation { dims, maps }
}

/// Kernel of a morphism `f: M → N`, with the ambient coordinates of its basis.
pub fn kernel(q: &Quiver, m: &Representation, f: &Morphism) -> (Representation, Vec<Vec<SparseVec>>) {
    let spans: Vec<Vec<SparseVec>> = f.blocks.iter().map(Matrix::kernel).collect();
    submodule(q, m, &spans)
}

/// Cokernel of a morphism `f: M → N`.
pub fn cokernel(q: &Quiver, n: &Representation, f: &Morphism) -> Representation {
    let spans: Vec<Vec<SparseVec>> = f
        .blocks
        .iter()
        .map(|b| (0..b.ncols()).map(|c| b.sparse_column(c)).collect())
        .collect();
    quotient(q, n, &spans)
}

/// `rad M`: at each vertex, the sum of the images of the incoming arrows.
pub fn radical(q: &Quiver, m: &Representation) -> Representation {
    let mut spans = vec![Vec::new(); q.num_vertices()];
    for (ai, a) in q.arrows().iter().enumerate() {
        for c in 0..m.dims[a.source] {
            spans[a.target].push(m.maps[ai].sparse_column(c));
        }
    }
    submodule(q, m, &spans).0
}

/// `M / soc M`: the socle at `x` is the common kernel of the arrows out of `x`.
pub fn socle_quotient(q: &Quiver, m: &Representation) -> Representation {
    let spans: Vec<Vec<SparseVec>> = (0..q.num_vertices())
        .map(|x| {
            let rows: Vec<Vec<Rational>> = q
                .arrows_from(x)
                .flat_map(|ai| (0..m.maps[ai].nrows()).map(move |r| (ai, r)))
                .map(|(ai, r)| m.maps[ai].row(r).to_vec())
                .collect();
            if rows.is_empty() {
                (0..m.dims[x]).map(SparseVec::unit).collect()
            } else {
                Matrix::from_rows(rows).kernel()
            }
        })
        .collect();
    quotient(q, m, &spans)
}

/// The same module in a basis grown from unit-vector top generators along
/// the arrows, breadth first. Iterating `τ` without this lets the entries
/// grow without bound.
pub fn normalize_basis(q: &Quiver, m: &Representation) -> Representation {
    let Some(tb) = TopBasis::new(q, m) else {
        return m.clone();
    };
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let (s, t) = (a.source, a.target);
            let cols: Vec<Vec<Rational>> = tb.basis[s]
                .iter()
                .map(|b| tb.coords(t, &m.maps[ai].mul_sparse(b)).to_dense(m.dims[t]))
                .collect();
            Matrix::from_columns(m.dims[t], &cols)
        })
        .collect();
    Representation {
        dims: m.dims.clone(),
        maps,
    }
}

/// Deterministic coefficients for the splitting search.
fn lcg(state: &mut u64) -> i64 {
    *state = state
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    ((*state >> 33) % 7) as i64 - 3
}

fn power(m: &Matrix, k: usize) -> Matrix {
    let mut acc = Matrix::identity(m.nrows());
    for _ in 0..k {
        acc = acc.mul(m);
    }
    acc
}

/// Fitting decomposition `M = ker ψ^N ⊕ im ψ^N` for `ψ = φ - λ`, when both
/// parts are nonzero. The second summand is computed as `M / ker ψ^N`.
fn fitting(
    q: &Quiver,
    m: &Representation,
    phi: &Morphism,
    lambda: &Rational,
) -> Option<(Representation, Representation)> {
    let spans: Vec<Vec<SparseVec>> = phi
        .blocks
        .iter()
        .zip(&m.dims)
        .map(|(b, &d)| {
            let shifted = b.add(&Matrix::identity(d).scale(&-lambda.clone()));
            power(&shifted, d).kernel()
        })
        .collect();
    let k: usize = spans.iter().map(Vec::len).sum();
    if k == 0 || k == m.total_dim() {
        return None;
    }
    Some((submodule(q, m, &spans).0, quotient(q, m, &spans)))
}

fn split(q: &Quiver, m: &Representation, end: &[Morphism]) -> Option<(Representation, Representation)> {
    let mut candidates: Vec<Morphism> = end.to_vec();
    let mut state = 0x2545_f491_4f6c_dd1d_u64;
    for _ in 0..32 {
        let coeffs: Vec<Rational> = (0..end.len()).map(|_| Rational::from_int(lcg(&mut state))).collect();
        candidates.push(Morphism::linear_combination(end, &coeffs));
    }
    for phi in &candidates {
        // Diagonal entries are eigenvalues whenever a block is triangular,
        // which covers the bases produced by the Hom solver in practice.
        let mut lambdas = vec![Rational::zero(), Rational::one(), -Rational::one()];
        for b in &phi.blocks {
            for i in 0..b.nrows() {
                let x = b.get(i, i);
                if !lambdas.contains(x) {
                    lambdas.push(x.clone());
                }
            }
        }
        for l in &lambdas {
            if let Some(parts) = fitting(q, m, phi, l) {
                return Some(parts);
            }
        }
    }
    None
}

/// Indecomposable summands of `M` in canonical order.
///
/// Splits by Fitting decompositions of endomorphisms with a rational
/// eigenvalue; fails with [`Error::SplitFailed`] if `End(M)` is not local but
/// no such endomorphism is found.
pub fn decompose(q: &Quiver, m: &Representation) -> Result<Vec<Representation>> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        let end = hom_basis(q, &x, &x);
        if end.len() - end_radical(&end).len() == 1 {
            out.push(x);
            continue;
        }
        let (a, b) = split(q, &x, &end).ok_or(Error::SplitFailed)?;
        stack.push(a);
        stack.push(b);
    }
    out.sort_by_key(Representation::canonical_key);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::rep::is_isomorphic;

    #[test]
    fn splits_direct_sums() {
        let p = parse_presentation("vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\n").unwrap();
        let q = &p.quiver;
        let s2 = Representation::simple(q, 1);
        let p1 = Representation::new(
            q,
            vec![1, 1, 1],
            vec![Matrix::from_ints(1, 1, &[1]), Matrix::from_ints(1, 1, &[1])],
        )
        .unwrap();
        let m = s2.direct_sum(&p1).direct_sum(&s2);
        let parts = decompose(q, &m).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(is_isomorphic(q, &parts[0], &s2));
        assert!(is_isomorphic(q, &parts[1], &s2));
        assert!(is_isomorphic(q, &parts[2], &p1));
    }

    #[test]
    fn normalized_basis_is_isomorphic() {
        let p = parse_presentation("vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\narrow: c 1 3\n").unwrap();
        let q = &p.quiver;
        let m = Representation::new(
            q,
            vec![1, 2, 1],
            vec![
                Matrix::from_ints(2, 1, &[7, 3]),
                Matrix::from_ints(1, 2, &[2, 5]),
                Matrix::from_ints(1, 1, &[4]),
            ],
        )
        .unwrap();
        let n = normalize_basis(q, &m);
        assert!(is_isomorphic(q, &m, &n));
        assert_eq!(n.maps[0], Matrix::from_ints(2, 1, &[0, 1]));
    }

    #[test]
    fn radical_and_socle() {
        let p = parse_presentation("vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\n").unwrap();
        let q = &p.quiver;
        let p1 = Representation::new(
            q,
            vec![1, 1, 1],
            vec![Matrix::from_ints(1, 1, &[1]), Matrix::from_ints(1, 1, &[1])],
        )
        .unwrap();
        assert_eq!(radical(q, &p1).dims, vec![0, 1, 1]);
        assert_eq!(socle_quotient(q, &p1).dims, vec![1, 1, 0]);
    }
}
