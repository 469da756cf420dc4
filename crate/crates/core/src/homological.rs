//! Projective and injective modules, minimal projective presentations, the
//! transpose, and the Auslander-Reiten translates `τ = D Tr`, `τ⁻¹ = Tr D`.
//!
//! A map between indecomposable projectives `P_u = e_u A → P_w = e_w A` is
//! left multiplication by some `x ∈ e_w A e_u`. Applying `Hom_A(-, A)` turns
//! it into right multiplication by `x` on `A e_w → A e_u`, which is left
//! multiplication by `x` read in `A^op`.

use std::collections::HashMap;

use crate::algebra::{Algebra, DEFAULT_MAX_DEGREE};
use crate::decompose::normalize_basis;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::presentation::Presentation;
use crate::rational::Rational;
use crate::rep::{end_is_local, Morphism, Representation};

/// The indecomposable projective `e_v A` with its path basis.
#[derive(Clone, Debug)]
struct Projective {
    rep: Representation,
    /// Global basis index → coordinate inside the space at its target vertex.
    local: HashMap<usize, usize>,
    /// For each vertex, the global basis indices in coordinate order.
    paths_at: Vec<Vec<usize>>,
}

/// One side (the algebra or its opposite) with cached projectives.
#[derive(Clone, Debug)]
pub struct Side {
    alg: Algebra,
    proj: Vec<Projective>,
}

impl Side {
    fn new(alg: Algebra) -> Self {
        let n = alg.presentation().num_vertices();
        let proj = (0..n).map(|v| build_projective(&alg, v)).collect();
        Side { alg, proj }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn projective(&self, v: usize) -> &Representation {
        &self.proj[v].rep
    }

    /// Element of `e_v A` (combination of basis paths from `v`) as a
    /// coordinate vector of `P_v` at vertex `y`.
    fn coords(&self, v: usize, y: usize, x: &SparseVec) -> SparseVec {
        let p = &self.proj[v];
        SparseVec::from_entries(
            x.iter()
                .filter(|(i, _)| self.alg.basis()[*i].target == y)
                .map(|(i, c)| (p.local[i], c.clone()))
                .collect(),
        )
    }
}

fn build_projective(alg: &Algebra, v: usize) -> Projective {
    let q = &alg.presentation().quiver;
    let n = q.num_vertices();
    let mut paths_at = vec![Vec::new(); n];
    let mut local = HashMap::new();
    for i in alg.basis_from(v) {
        let t = alg.basis()[i].target;
        local.insert(i, paths_at[t].len());
        paths_at[t].push(i);
    }
    let dims: Vec<usize> = paths_at.iter().map(Vec::len).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            for (col, &i) in paths_at[a.source].iter().enumerate() {
                for (j, c) in alg.mul_arrow(&SparseVec::unit(i), ai).iter() {
                    m.set(local[j], col, c.clone());
                }
            }
            m
        })
        .collect();
    Projective {
        rep: Representation { dims, maps },
        local,
        paths_at,
    }
}

/// A finite-dimensional bound quiver algebra together with its opposite.
#[derive(Clone, Debug)]
pub struct FdAlgebra {
    pres: Presentation,
    a: Side,
    op: Side,
}

/// Map `⊕_s P_{sources[s]} → ⊕_t P_{targets[t]}`; the component from
/// summand `s` to summand `t` is left multiplication by `entries[t][s]`, an
/// element of `e_{targets[t]} A e_{sources[s]}` in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMap {
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
    pub entries: Vec<Vec<SparseVec>>,
}

/// `P₁ → P₀ → M → 0` with `P₀ → M` a projective cover and `P₁` a projective
/// cover of its kernel.
#[derive(Clone, Debug)]
pub struct ProjPresentation {
    /// Vertices of the summands of `P₀` and the generators of `M` they hit.
    pub p0: Vec<usize>,
    pub generators: Vec<SparseVec>,
    /// The map `P₁ → P₀`.
    pub map: ProjMap,
}

impl ProjPresentation {
    pub fn p1(&self) -> &[usize] {
        &self.map.sources
    }
}

impl FdAlgebra {
    pub fn new(pres: &Presentation) -> Result<Self> {
        Self::with_max_degree(pres, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree(pres: &Presentation, max_degree: usize) -> Result<Self> {
        let alg = Algebra::new(pres, max_degree);
        if !alg.is_finite() {
            return Err(Error::InfiniteDimensional(max_degree));
        }
        let op = Algebra::new(&pres.opposite(), max_degree);
        Ok(FdAlgebra {
            pres: pres.clone(),
            a: Side::new(alg),
            op: Side::new(op),
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn algebra(&self) -> &Algebra {
        &self.a.alg
    }

    pub fn side(&self) -> &Side {
        &self.a
    }

    pub fn opposite_side(&self) -> &Side {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.a.alg.basis().len()
    }

    pub fn num_vertices(&self) -> usize {
        self.pres.num_vertices()
    }

    pub fn projective(&self, v: usize) -> Representation {
        self.a.proj[v].rep.clone()
    }

    /// `D(A e_v)`, the dual of the opposite algebra's projective at `v`.
    pub fn injective(&self, v: usize) -> Representation {
        self.op.proj[v].rep.dual()
    }

    pub fn minimal_proj_presentation(&self, m: &Representation) -> ProjPresentation {
        minimal_presentation(&self.a, m)
    }

    /// `τ M = D Tr M`; zero exactly when `M` is projective.
    pub fn tau(&self, m: &Representation) -> Representation {
        let pres = minimal_presentation(&self.a, m);
        let t = transpose(&self.a, &self.op, &pres.map);
        let c = cokernel(&self.op, &t);
        normalize_basis(&self.op.algebra().presentation().quiver, &c).dual()
    }

    /// `τ⁻¹ M = Tr D M`; zero exactly when `M` is injective.
    pub fn tau_inv(&self, m: &Representation) -> Representation {
        let pres = minimal_presentation(&self.op, &m.dual());
        let t = transpose(&self.op, &self.a, &pres.map);
        normalize_basis(&self.pres.quiver, &cokernel(&self.a, &t))
    }

    /// `τ M`, rejecting decomposable input.
    pub fn tau_checked(&self, m: &Representation) -> Result<Representation> {
        if !end_is_local(&self.pres.quiver, m) {
            return Err(Error::Decomposable);
        }
        Ok(self.tau(m))
    }

    pub fn tau_inv_checked(&self, m: &Representation) -> Result<Representation> {
        if !end_is_local(&self.pres.quiver, m) {
            return Err(Error::Decomposable);
        }
        Ok(self.tau_inv(m))
    }

    /// Cokernel of a map between projectives of this algebra.
    pub fn cokernel(&self, f: &ProjMap) -> Representation {
        cokernel(&self.a, f)
    }

    /// Projective cover `P₀ → M`, with `P₀` the direct sum of the
    /// projectives at the top generators of `M`.
    pub fn projective_cover(&self, m: &Representation) -> (Representation, Morphism) {
        let side = &self.a;
        let alg = &side.alg;
        let q = &self.pres.quiver;
        let n = q.num_vertices();
        let mut p0 = Vec::new();
        let mut generators = Vec::new();
        for v in 0..n {
            for f in top_generators(m, q, v) {
                p0.push(v);
                generators.push(SparseVec::unit(f));
            }
        }
        let rep = p0
            .iter()
            .map(|&v| side.proj[v].rep.clone())
            .reduce(|a, b| a.direct_sum(&b))
            .unwrap_or_else(|| Representation::zero(q));
        let blocks = (0..n)
            .map(|y| {
                let mut cols = Vec::new();
                for (i, &v) in p0.iter().enumerate() {
                    for &path in &side.proj[v].paths_at[y] {
                        cols.push(m.apply_path(&alg.basis()[path], &generators[i]).to_dense(m.dims[y]));
                    }
                }
                Matrix::from_columns(m.dims[y], &cols)
            })
            .collect();
        (rep, Morphism { blocks })
    }

    pub fn is_projective(&self, m: &Representation) -> bool {
        minimal_presentation(&self.a, m).map.sources.is_empty()
    }
}

/// Standard basis vectors completing `Σ_a im M(a)` at vertex `v`.
fn top_generators(m: &Representation, q: &crate::quiver::Quiver, v: usize) -> Vec<usize> {
    let mut ech = Echelon::new(m.dims[v]);
    for a in q.arrows_to(v) {
        let mat = &m.maps[a];
        for j in 0..mat.ncols() {
            ech.insert(&mat.sparse_column(j));
            if ech.is_full() {
                return Vec::new();
            }
        }
    }
    ech.free_columns()
}

/// Subrepresentation of `ambient` given by a kernel basis at each vertex.
/// Basis vectors have a 1 at their free column and 0 at the other free
/// columns, so coordinates of an element are its free-column entries.
struct Sub {
    basis: Vec<Vec<SparseVec>>,
    rep: Representation,
}

fn subrep(
    ambient: &Representation,
    q: &crate::quiver::Quiver,
    basis: Vec<Vec<SparseVec>>,
    free: Vec<Vec<usize>>,
) -> Sub {
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut mat = Matrix::zeros(dims[a.target], dims[a.source]);
            for (col, k) in basis[a.source].iter().enumerate() {
                let img = ambient.maps[ai].mul_sparse(k);
                for (row, &f) in free[a.target].iter().enumerate() {
                    let x = img.get(f);
                    if !x.is_zero() {
                        mat.set(row, col, x);
                    }
                }
            }
            mat
        })
        .collect();
    Sub {
        basis,
        rep: Representation { dims, maps },
    }
}

fn minimal_presentation(side: &Side, m: &Representation) -> ProjPresentation {
    let alg = &side.alg;
    let q = &alg.presentation().quiver;
    let n = q.num_vertices();

    // Projective cover: one summand per top generator.
    let mut p0 = Vec::new();
    let mut generators = Vec::new();
    for v in 0..n {
        for f in top_generators(m, q, v) {
            p0.push(v);
            generators.push(SparseVec::unit(f));
        }
    }

    // P0 at vertex y is ⊕_i (P_{p0[i]})_y; record block offsets.
    let mut offsets = vec![vec![0usize; p0.len() + 1]; n];
    for (y, off) in offsets.iter_mut().enumerate() {
        for (i, &v) in p0.iter().enumerate() {
            off[i + 1] = off[i] + side.proj[v].rep.dims[y];
        }
    }
    let p0_rep = p0
        .iter()
        .map(|&v| side.proj[v].rep.clone())
        .reduce(|a, b| a.direct_sum(&b))
        .unwrap_or_else(|| Representation::zero(q));

    // Kernel of P0 → M, vertex by vertex.
    let mut basis = Vec::with_capacity(n);
    let mut free = Vec::with_capacity(n);
    for y in 0..n {
        let width = offsets[y][p0.len()];
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(width);
        for (i, &v) in p0.iter().enumerate() {
            for &path in &side.proj[v].paths_at[y] {
                let img = m.apply_path(&alg.basis()[path], &generators[i]);
                cols.push(img.to_dense(m.dims[y]));
            }
        }
        let pi = Matrix::from_columns(m.dims[y], &cols);
        let mut ech = Echelon::new(width);
        for r in 0..pi.nrows() {
            ech.insert(&SparseVec::from_dense(pi.row(r)));
        }
        free.push(ech.free_columns());
        basis.push(ech.kernel());
    }
    let kernel = subrep(&p0_rep, q, basis, free);

    // Projective cover of the kernel gives P1 → P0.
    let mut sources = Vec::new();
    let mut columns: Vec<Vec<SparseVec>> = Vec::new();
    for z in 0..n {
        for f in top_generators(&kernel.rep, q, z) {
            let elem = &kernel.basis[z][f];
            sources.push(z);
            let mut col = Vec::with_capacity(p0.len());
            for (i, &v) in p0.iter().enumerate() {
                let (lo, hi) = (offsets[z][i], offsets[z][i + 1]);
                let paths = &side.proj[v].paths_at[z];
                col.push(SparseVec(
                    elem.iter()
                        .filter(|(j, _)| *j >= lo && *j < hi)
                        .map(|(j, x)| (paths[j - lo], x.clone()))
                        .collect::<Vec<_>>(),
                ));
                let last = col.last_mut().unwrap();
                last.0.sort_by_key(|(j, _)| *j);
            }
            columns.push(col);
        }
    }
    let entries = (0..p0.len())
        .map(|t| columns.iter().map(|col| col[t].clone()).collect())
        .collect();
    ProjPresentation {
        p0: p0.clone(),
        generators,
        map: ProjMap {
            sources,
            targets: p0,
            entries,
        },
    }
}

/// `Hom(-, A)` applied to a map over `from`, producing a map over `to`
/// (the opposite algebra). Entry `x` becomes the reversed path combination,
/// reduced in `to`.
fn transpose(from: &Side, to: &Side, f: &ProjMap) -> ProjMap {
    let convert = |x: &SparseVec| -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, c) in x.iter() {
            acc = acc.add_scaled(c, &to.alg.reduce_path(&from.alg.basis()[*i].reversed()));
        }
        acc
    };
    ProjMap {
        sources: f.targets.clone(),
        targets: f.sources.clone(),
        entries: (0..f.sources.len())
            .map(|s| (0..f.targets.len()).map(|t| convert(&f.entries[t][s])).collect())
            .collect(),
    }
}

fn cokernel(side: &Side, f: &ProjMap) -> Representation {
    let alg = &side.alg;
    let q = &alg.presentation().quiver;
    let n = q.num_vertices();
    let nt = f.targets.len();
    let mut offsets = vec![vec![0usize; nt + 1]; n];
    for (y, off) in offsets.iter_mut().enumerate() {
        for (t, &w) in f.targets.iter().enumerate() {
            off[t + 1] = off[t] + side.proj[w].rep.dims[y];
        }
    }
    let target_rep = f
        .targets
        .iter()
        .map(|&w| side.proj[w].rep.clone())
        .reduce(|a, b| a.direct_sum(&b))
        .unwrap_or_else(|| Representation::zero(q));

    let mut echs = Vec::with_capacity(n);
    for y in 0..n {
        let mut ech = Echelon::new(offsets[y][nt]);
        for (s, &u) in f.sources.iter().enumerate() {
            for &path in &side.proj[u].paths_at[y] {
                let mut img = Vec::new();
                for t in 0..nt {
                    let x = &f.entries[t][s];
                    if x.is_zero() {
                        continue;
                    }
                    let prod = alg.mul(x, &SparseVec::unit(path));
                    let local = side.coords(f.targets[t], y, &prod);
                    img.extend(local.iter().map(|(j, c)| (offsets[y][t] + j, c.clone())));
                }
                ech.insert(&SparseVec::from_entries(img));
            }
        }
        echs.push(ech);
    }
    let free: Vec<Vec<usize>> = echs.iter().map(Echelon::free_columns).collect();
    let dims: Vec<usize> = free.iter().map(Vec::len).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut mat = Matrix::zeros(dims[a.target], dims[a.source]);
            for (col, &fc) in free[a.source].iter().enumerate() {
                let img = target_rep.maps[ai].mul_sparse(&SparseVec::unit(fc));
                let red = echs[a.target].reduce(&img);
                for (row, &g) in free[a.target].iter().enumerate() {
                    let x = red.get(g);
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::rep::{is_isomorphic, validate_module};

    fn fd(text: &str) -> FdAlgebra {
        FdAlgebra::new(&parse_presentation(text).unwrap()).unwrap()
    }

    const A2: &str = "vertices: 1 2\narrow: a 1 2\n";
    const A3: &str = "vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\n";
    const A3_RAD2: &str = "vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\nrelation: a b\n";

    #[test]
    fn projectives_and_injectives() {
        let a2 = fd(A2);
        assert_eq!(a2.projective(0).dims, vec![1, 1]);
        assert_eq!(a2.projective(1).dims, vec![0, 1]);
        assert_eq!(a2.injective(1).dims, vec![1, 1]);
        assert_eq!(a2.injective(0).dims, vec![1, 0]);
        let r = fd(A3_RAD2);
        assert_eq!(r.projective(0).dims, vec![1, 1, 0]);
        assert_eq!(r.injective(1).dims, vec![1, 1, 0]);
        let s = fd("vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\narrow: c 1 3\nrelation: a b\n");
        let p1 = s.projective(0);
        assert_eq!(p1.dims, vec![1, 1, 1]);
        assert!(p1.maps[1].is_zero());
        for v in 0..3 {
            assert!(validate_module(s.presentation(), &s.projective(v)).unwrap());
            assert!(validate_module(s.presentation(), &s.injective(v)).unwrap());
        }
    }

    #[test]
    fn presentations_of_simples() {
        let a2 = fd(A2);
        let q = &a2.presentation().quiver;
        let p = a2.minimal_proj_presentation(&Representation::simple(q, 0));
        assert_eq!(p.p0, vec![0]);
        assert_eq!(p.p1(), &[1]);
        let proj = a2.minimal_proj_presentation(&a2.projective(0));
        assert_eq!(proj.p0, vec![0]);
        assert!(proj.p1().is_empty());
        let a3 = fd(A3);
        let p = a3.minimal_proj_presentation(&Representation::simple(&a3.presentation().quiver, 1));
        assert_eq!((p.p0.as_slice(), p.p1()), (&[1][..], &[2][..]));
        assert_eq!(
            a3.cokernel(&p.map),
            Representation::simple(&a3.presentation().quiver, 1)
        );
    }

    #[test]
    fn translates_over_a2_and_a3() {
        let a2 = fd(A2);
        let q = a2.presentation().quiver.clone();
        let (s1, s2) = (Representation::simple(&q, 0), Representation::simple(&q, 1));
        assert!(is_isomorphic(&q, &a2.tau(&s1), &s2));
        assert!(a2.tau(&a2.projective(0)).is_zero());
        assert!(a2.tau(&a2.projective(1)).is_zero());
        assert!(is_isomorphic(&q, &a2.tau_inv(&s2), &s1));
        assert!(a2.tau_inv(&s1).is_zero());

        let a3 = fd(A3);
        let q = a3.presentation().quiver.clone();
        let s2 = Representation::simple(&q, 1);
        let t = a3.tau(&s2);
        assert!(is_isomorphic(&q, &t, &Representation::simple(&q, 2)));
        assert!(is_isomorphic(&q, &a3.tau_inv(&t), &s2));
    }

    #[test]
    fn decomposable_input_is_rejected() {
        let a2 = fd(A2);
        let q = &a2.presentation().quiver;
        let s = Representation::simple(q, 0);
        assert_eq!(a2.tau_checked(&s.direct_sum(&s)), Err(Error::Decomposable));
    }
}
