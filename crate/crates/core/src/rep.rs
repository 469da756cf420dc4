//! Representations of bound quivers (right modules), homomorphisms, and the
//! basic module-theoretic tests: validity, Hom spaces, isomorphism, and
//! indecomposability.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::presentation::Presentation;
use crate::quiver::{Path, Quiver};
use crate::rational::Rational;

/// A dimension per vertex and a matrix per arrow. The matrix of `a: x → y` has
/// shape `dims[y] × dims[x]` and acts on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}{:?}", self.dims, self.maps)
    }
}

impl Representation {
    pub fn new(q: &Quiver, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let m = Representation { dims, maps };
        m.check_shapes(q)?;
        Ok(m)
    }

    pub fn zero(q: &Quiver) -> Self {
        Representation {
            dims: vec![0; q.num_vertices()],
            maps: q.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn simple(q: &Quiver, v: usize) -> Self {
        let mut dims = vec![0; q.num_vertices()];
        dims[v] = 1;
        let maps = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        Representation { dims, maps }
    }

    pub fn check_shapes(&self, q: &Quiver) -> Result<()> {
        if self.dims.len() != q.num_vertices() || self.maps.len() != q.num_arrows() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} dimensions and {} matrices, got {} and {}",
                q.num_vertices(),
                q.num_arrows(),
                self.dims.len(),
                self.maps.len()
            )));
        }
        for (m, a) in self.maps.iter().zip(q.arrows()) {
            if m.shape() != (self.dims[a.target], self.dims[a.source]) {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    self.dims[a.target],
                    self.dims[a.source],
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// `M(p) = M(a_k) ⋯ M(a_1)` for `p = a_1 ⋯ a_k`.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dims[p.source]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Image of a vector of `M_{source(p)}` under the path `p`.
    pub fn apply_path(&self, p: &Path, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for &a in &p.arrows {
            if v.is_zero() {
                break;
            }
            v = self.maps[a].mul_sparse(&v);
        }
        v
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        Representation {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    /// Vector-space dual: a representation of the opposite quiver, all
    /// matrices transposed.
    pub fn dual(&self) -> Representation {
        Representation {
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Sort key: total dimension, dimension vector, then matrix entries.
    pub fn canonical_key(&self) -> (usize, Vec<usize>, Vec<Rational>) {
        (
            self.total_dim(),
            self.dims.clone(),
            self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect(),
        )
    }

    /// `{"dims": [...], "maps": {"a": [["1", "0"], ...]}}` with rational entries as strings.
    pub fn to_json(&self, q: &Quiver) -> Value {
        let mut maps = serde_json::Map::new();
        for (m, a) in self.maps.iter().zip(q.arrows()) {
            let rows: Vec<Value> = (0..m.nrows())
                .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
                .collect();
            maps.insert(a.name.clone(), Value::Array(rows));
        }
        json!({ "dims": self.dims, "maps": maps })
    }
}

/// Does `M` satisfy every relation of the presentation?
pub fn validate_module(pres: &Presentation, m: &Representation) -> Result<bool> {
    m.check_shapes(&pres.quiver)?;
    for r in &pres.relations {
        let (s, t) = (r.source(), r.target());
        let mut acc = Matrix::zeros(m.dims[t], m.dims[s]);
        for (c, p) in &r.terms {
            acc = acc.add(&m.path_matrix(p).scale(c));
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A family of linear maps `M_v → N_v`, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub blocks: Vec<Matrix>,
}

impl Morphism {
    pub fn identity(m: &Representation) -> Morphism {
        Morphism {
            blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn after(&self, other: &Morphism) -> Morphism {
        Morphism {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(g, f)| g.mul(f)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn trace(&self) -> Rational {
        let mut t = Rational::zero();
        for b in &self.blocks {
            t += &b.trace();
        }
        t
    }

    pub fn flatten(&self) -> SparseVec {
        SparseVec::from_dense(
            &self
                .blocks
                .iter()
                .flat_map(|b| b.entries().iter().cloned())
                .collect::<Vec<_>>(),
        )
    }

    pub fn linear_combination(basis: &[Morphism], coeffs: &[Rational]) -> Morphism {
        let mut blocks: Vec<Matrix> = basis[0]
            .blocks
            .iter()
            .map(|b| Matrix::zeros(b.nrows(), b.ncols()))
            .collect();
        for (f, c) in basis.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (acc, b) in blocks.iter_mut().zip(&f.blocks) {
                *acc = acc.add(&b.scale(c));
            }
        }
        Morphism { blocks }
    }

    /// Checks `f_y M(a) = N(a) f_x` for every arrow `a: x → y`.
    pub fn is_homomorphism(&self, q: &Quiver, m: &Representation, n: &Representation) -> bool {
        q.arrows()
            .iter()
            .enumerate()
            .all(|(i, a)| self.blocks[a.target].mul(&m.maps[i]) == n.maps[i].mul(&self.blocks[a.source]))
    }
}

/// Basis of `Hom(M, N)`: the solution space of the intertwining equations.
/// Basis of `Hom(M, N)`. A morphism is fixed by the images of the top
/// generators of `M`, so only those are unknowns; falls back to
/// [`hom_basis_dense`] when `M` is not generated by its top (a non-nilpotent
/// action).
pub fn hom_basis(q: &Quiver, m: &Representation, n: &Representation) -> Vec<Morphism> {
    let Some(tb) = TopBasis::new(q, m) else {
        return hom_basis_dense(q, m, n);
    };
    let nv = q.num_vertices();
    let mut off = vec![0usize];
    for &v in &tb.gens {
        off.push(off.last().unwrap() + n.dims[v]);
    }
    let unknowns = *off.last().unwrap();
    if unknowns == 0 {
        return Vec::new();
    }
    // img[v][k] is the image of the k-th basis vector of M_v, linear in the unknowns.
    let mut img: Vec<Vec<Matrix>> = vec![Vec::new(); nv];
    for &(v, origin) in &tb.order {
        let t = match origin {
            Origin::Top(g) => {
                let mut t = Matrix::zeros(n.dims[v], unknowns);
                for i in 0..n.dims[v] {
                    t.set(i, off[g] + i, Rational::one());
                }
                t
            }
            Origin::Arrow(a, k) => n.maps[a].mul(&img[q.arrow_data(a).source][k]),
        };
        img[v].push(t);
    }
    let mut ech = Echelon::new(unknowns);
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        for (k, b) in tb.basis[s].iter().enumerate() {
            if tb.created_by[t].contains(&(ai, k)) {
                continue;
            }
            let mut lhs = n.maps[ai].mul(&img[s][k]);
            for (j, x) in tb.coords(t, &m.maps[ai].mul_sparse(b)).iter() {
                lhs = lhs.add(&img[t][*j].scale(&-x.clone()));
            }
            for r in 0..lhs.nrows() {
                let row = SparseVec::from_dense(lhs.row(r));
                if !row.is_zero() {
                    ech.insert(&row);
                }
            }
        }
    }
    // Column j of to_basis[v] holds the coordinates of e_j in tb.basis[v].
    let to_basis: Vec<Matrix> = (0..nv)
        .map(|v| {
            let cols: Vec<Vec<Rational>> = (0..m.dims[v])
                .map(|j| tb.coords(v, &SparseVec::unit(j)).to_dense(m.dims[v]))
                .collect();
            Matrix::from_columns(m.dims[v], &cols)
        })
        .collect();
    ech.kernel()
        .into_iter()
        .map(|sol| {
            let x = sol.to_dense(unknowns);
            let blocks = (0..nv)
                .map(|v| {
                    let cols: Vec<Vec<Rational>> = img[v].iter().map(|t| t.mul_vec(&x)).collect();
                    Matrix::from_columns(n.dims[v], &cols).mul(&to_basis[v])
                })
                .collect();
            Morphism { blocks }
        })
        .collect()
}

/// Basis of `Hom(M, N)` from the intertwining equations in all matrix
/// entries at once. Slower than [`hom_basis`], and independent of it.
pub fn hom_basis_dense(q: &Quiver, m: &Representation, n: &Representation) -> Vec<Morphism> {
    let nv = q.num_vertices();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return Vec::new();
    }
    let var = |v: usize, i: usize, j: usize| offset[v] + i * m.dims[v] + j;
    let mut ech = Echelon::new(unknowns);
    for (ai, a) in q.arrows().iter().enumerate() {
        let (x, y) = (a.source, a.target);
        let (ma, na) = (&m.maps[ai], &n.maps[ai]);
        for r in 0..n.dims[y] {
            for c in 0..m.dims[x] {
                let mut row = Vec::new();
                for k in 0..m.dims[y] {
                    let coef = ma.get(k, c);
                    if !coef.is_zero() {
                        row.push((var(y, r, k), coef.clone()));
                    }
                }
                for k in 0..n.dims[x] {
                    let coef = na.get(r, k);
                    if !coef.is_zero() {
                        row.push((var(x, k, c), -coef));
                    }
                }
                if !row.is_empty() {
                    ech.insert(&SparseVec::from_entries(row));
                }
            }
        }
    }
    ech.kernel()
        .into_iter()
        .map(|sol| {
            let mut blocks: Vec<Matrix> = (0..nv).map(|v| Matrix::zeros(n.dims[v], m.dims[v])).collect();
            for (idx, x) in sol.iter() {
                let v = offset.partition_point(|&o| o <= *idx) - 1;
                let local = idx - offset[v];
                blocks[v].set(local / m.dims[v], local % m.dims[v], x.clone());
            }
            Morphism { blocks }
        })
        .collect()
}

pub fn hom_dim(q: &Quiver, m: &Representation, n: &Representation) -> usize {
    hom_basis(q, m, n).len()
}

/// Coefficient vectors (over the given basis of `End(M)`) spanning the
/// radical of the trace form `(x, y) ↦ tr(xy)` on `M`.
///
/// In characteristic zero this is the Jacobson radical of `End(M)`: the
/// form's radical is an ideal of elements with `tr(x^k) = 0` for all `k`, hence
/// nil, and nilpotent elements have trace-zero products with everything.
pub fn end_radical(end: &[Morphism]) -> Vec<SparseVec> {
    let r = end.len();
    let mut gram = Matrix::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            let t = end[i].after(&end[j]).trace();
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    gram.kernel()
}

/// Indecomposability test: `End(M)/rad End(M)` is one-dimensional.
pub fn end_is_local(q: &Quiver, m: &Representation) -> bool {
    if m.is_zero() {
        return false;
    }
    let end = hom_basis(q, m, m);
    end.len() - end_radical(&end).len() == 1
}

/// Isomorphism test.
///
/// For indecomposable `M` the test is exact: `M ≅ N` iff some composite
/// `g ∘ f` of basis elements `f: M → N`, `g: N → M` is invertible, because
/// the non-invertible elements of the local ring `End(M)` form a subspace.
/// Otherwise a deterministic sequence of coefficient vectors is tried; a
/// nonzero determinant polynomial of degree `≤ dim M` vanishes at a uniform
/// point of `{1..2^20}^r` with probability at most `dim M / 2^20`.
pub fn is_isomorphic(q: &Quiver, m: &Representation, n: &Representation) -> bool {
    if m.dims != n.dims {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    // Ranks of arrows and of composable pairs are invariants.
    for (ai, a) in q.arrows().iter().enumerate() {
        if m.maps[ai].rank() != n.maps[ai].rank() {
            return false;
        }
        for bi in q.arrows_from(a.target) {
            if m.maps[bi].mul(&m.maps[ai]).rank() != n.maps[bi].mul(&n.maps[ai]).rank() {
                return false;
            }
        }
    }
    let mn = hom_basis(q, m, n);
    if mn.is_empty() {
        return false;
    }
    if mn.iter().any(Morphism::is_iso) {
        return true;
    }
    if end_is_local(q, m) {
        let nm = hom_basis(q, n, m);
        return nm.iter().any(|g| mn.iter().any(|f| g.after(f).is_iso()));
    }
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    for _ in 0..48 {
        let coeffs: Vec<Rational> = (0..mn.len())
            .map(|_| {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                Rational::from_int(((state >> 33) % (1 << 20)) as i64 + 1)
            })
            .collect();
        if Morphism::linear_combination(&mn, &coeffs).is_iso() {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn a2() -> Presentation {
        parse_presentation("vertices: 1 2\narrow: a 1 2\n").unwrap()
    }

    fn p1_a2(q: &Quiver) -> Representation {
        Representation::new(q, vec![1, 1], vec![Matrix::from_ints(1, 1, &[1])]).unwrap()
    }

    #[test]
    fn hom_spaces_over_a2() {
        let p = a2();
        let q = &p.quiver;
        let (s1, s2, p1) = (Representation::simple(q, 0), Representation::simple(q, 1), p1_a2(q));
        assert_eq!(hom_dim(q, &p1, &p1), 1);
        assert_eq!(hom_dim(q, &s1, &s2), 0);
        assert_eq!(hom_dim(q, &s2, &p1), 1);
        assert_eq!(hom_dim(q, &p1, &s1), 1);
        assert_eq!(hom_dim(q, &p1, &s2), 0);
        for f in hom_basis(q, &s2, &p1) {
            assert!(f.is_homomorphism(q, &s2, &p1));
        }
    }

    #[test]
    fn local_endomorphism_rings() {
        let p = a2();
        let q = &p.quiver;
        let s1 = Representation::simple(q, 0);
        assert!(end_is_local(q, &s1));
        assert!(!end_is_local(q, &s1.direct_sum(&s1)));
        assert!(end_is_local(q, &p1_a2(q)));
        assert!(!end_is_local(q, &Representation::zero(q)));
        let split = p1_a2(q).direct_sum(&Representation::simple(q, 1));
        assert!(!end_is_local(q, &split));
    }

    #[test]
    fn isomorphism_tests() {
        let p = a2();
        let q = &p.quiver;
        let (s1, s2) = (Representation::simple(q, 0), Representation::simple(q, 1));
        assert!(!is_isomorphic(q, &s1, &s2));
        let scaled = Representation::new(q, vec![1, 1], vec![Matrix::from_ints(1, 1, &[5])]).unwrap();
        assert!(is_isomorphic(q, &p1_a2(q), &scaled));
        let sum1 = s1.direct_sum(&s2);
        assert!(!is_isomorphic(q, &p1_a2(q), &sum1));
        let big1 = p1_a2(q).direct_sum(&s1).direct_sum(&s2);
        let big2 = s2.direct_sum(&p1_a2(q)).direct_sum(&s1);
        assert!(is_isomorphic(q, &big1, &big2));
    }

    #[test]
    fn validation() {
        let p = parse_presentation("vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\nrelation: a b\n").unwrap();
        let q = &p.quiver;
        let one = || Matrix::from_ints(1, 1, &[1]);
        let interval = Representation::new(q, vec![1, 1, 1], vec![one(), one()]).unwrap();
        assert!(!validate_module(&p, &interval).unwrap());
        let free = parse_presentation("vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\n").unwrap();
        assert!(validate_module(&free, &interval).unwrap());
        let bad = Representation {
            dims: vec![1, 1, 1],
            maps: vec![Matrix::zeros(2, 1), one()],
        };
        assert!(matches!(validate_module(&p, &bad), Err(Error::ShapeMismatch(_))));
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Origin {
    /// The `g`-th top generator.
    Top(usize),
    /// Image of basis vector `k` at the source under arrow `a`.
    Arrow(usize, usize),
}

/// A basis of `M` grown breadth first from unit-vector top generators along
/// the arrows.
pub(crate) struct TopBasis {
    pub dims: Vec<usize>,
    pub basis: Vec<Vec<SparseVec>>,
    /// Vertex of each generator.
    pub gens: Vec<usize>,
    /// `(vertex, origin)` of every basis vector in creation order.
    pub order: Vec<(usize, Origin)>,
    /// `(arrow, k)` pairs that produced a basis vector, per target vertex.
    pub created_by: Vec<Vec<(usize, usize)>>,
    // Rows `(b, e_k)`, so reducing `(w, 0)` leaves `(0, -x)` with `w = Σ x_k b_k`.
    aug: Vec<Echelon>,
}

impl TopBasis {
    /// `None` when the top does not generate `M`.
    pub fn new(q: &Quiver, m: &Representation) -> Option<TopBasis> {
        let nv = q.num_vertices();
        let mut rad: Vec<Echelon> = m.dims.iter().map(|&d| Echelon::new(d)).collect();
        for (ai, a) in q.arrows().iter().enumerate() {
            for c in 0..m.dims[a.source] {
                rad[a.target].insert(&m.maps[ai].sparse_column(c));
            }
        }
        let mut tb = TopBasis {
            dims: m.dims.clone(),
            basis: vec![Vec::new(); nv],
            gens: Vec::new(),
            order: Vec::new(),
            created_by: vec![Vec::new(); nv],
            aug: m.dims.iter().map(|&d| Echelon::new(2 * d)).collect(),
        };
        let mut queue = std::collections::VecDeque::new();
        for v in 0..nv {
            for c in rad[v].free_columns() {
                let g = tb.gens.len();
                if tb.add(v, SparseVec::unit(c), Origin::Top(g)) {
                    tb.gens.push(v);
                    queue.push_back((v, tb.basis[v].len() - 1));
                }
            }
        }
        while let Some((v, k)) = queue.pop_front() {
            for ai in q.arrows_from(v) {
                let w = m.maps[ai].mul_sparse(&tb.basis[v][k]);
                let t = q.arrow_data(ai).target;
                if !w.is_zero() && tb.add(t, w, Origin::Arrow(ai, k)) {
                    tb.created_by[t].push((ai, k));
                    queue.push_back((t, tb.basis[t].len() - 1));
                }
            }
        }
        (0..nv).all(|v| tb.basis[v].len() == m.dims[v]).then_some(tb)
    }

    fn add(&mut self, v: usize, w: SparseVec, origin: Origin) -> bool {
        let d = self.dims[v];
        if self.aug[v].reduce(&w).iter().all(|(c, _)| *c >= d) {
            return false;
        }
        let k = self.basis[v].len();
        let row: Vec<(usize, Rational)> = w.iter().cloned().chain([(d + k, Rational::one())]).collect();
        self.aug[v].insert(&SparseVec::from_entries(row));
        self.basis[v].push(w);
        self.order.push((v, origin));
        true
    }

    /// Coordinates of `w ∈ M_v` in `basis[v]`.
    pub fn coords(&self, v: usize, w: &SparseVec) -> SparseVec {
        let d = self.dims[v];
        SparseVec::from_entries(self.aug[v].reduce(w).iter().map(|(c, x)| (c - d, -x.clone())).collect())
    }
}
