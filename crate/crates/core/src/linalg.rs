//! Dense and sparse exact linear algebra over [`Rational`].

use std::fmt;

use crate::rational::Rational;

/// Sparse vector: `(index, value)` pairs, strictly increasing indices, no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec(pub Vec<(usize, Rational)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: usize) -> Self {
        SparseVec(vec![(i, Rational::one())])
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        SparseVec(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        )
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (i, x) in &self.0 {
            out[*i] = x.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.0.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.0[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rational)> {
        self.0.iter()
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut p, mut q) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while p < a.len() || q < b.len() {
            if q == b.len() || (p < a.len() && a[p].0 < b[q].0) {
                out.push(a[p].clone());
                p += 1;
            } else if p == a.len() || b[q].0 < a[p].0 {
                out.push((b[q].0, &b[q].1 * c));
                q += 1;
            } else {
                let mut v = a[p].1.clone();
                v.add_mul(c, &b[q].1);
                if !v.is_zero() {
                    out.push((a[p].0, v));
                }
                p += 1;
                q += 1;
            }
        }
        SparseVec(out)
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&Rational::one(), other)
    }

    /// Builds a vector from unsorted entries, summing duplicates.
    pub fn from_entries(mut entries: Vec<(usize, Rational)>) -> SparseVec {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Rational)> = Vec::with_capacity(entries.len());
        for (i, x) in entries {
            match out.last_mut() {
                Some((j, y)) if *j == i => *y += &x,
                _ => out.push((i, x)),
            }
        }
        out.retain(|(_, x)| !x.is_zero());
        SparseVec(out)
    }
}

/// Incremental row-echelon form of a set of sparse vectors.
///
/// Rows are kept monic at their pivot; reduction of a vector processes pivots
/// in increasing column order, which leaves every pivot coordinate zero.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_of_col: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivot_of_col: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col].is_some()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.is_pivot(c)).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Reduces `v` modulo the current row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut cursor = 0usize;
        loop {
            let hit =
                v.0.iter()
                    .find(|(c, _)| *c >= cursor && self.pivot_of_col[*c].is_some())
                    .map(|(c, x)| (*c, x.clone()));
            match hit {
                None => return v,
                Some((c, x)) => {
                    let row = &self.rows[self.pivot_of_col[c].unwrap()];
                    v = v.add_scaled(&-x, row);
                    cursor = c + 1;
                }
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        let (c, lead) = r.0[0].clone();
        let r = r.scale(&lead.recip());
        self.pivot_of_col[c] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    /// Basis of the solution space of `row · x = 0` over all inserted rows.
    ///
    /// The vector attached to free column `f` has a 1 at `f` and zeros at the
    /// other free columns, so coordinates of a kernel element in this basis
    /// are read off at the free columns.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = self.pivots();
        order.sort_unstable_by(|a, b| b.cmp(a));
        let mut basis = Vec::new();
        for f in self.free_columns() {
            let mut x: Vec<(usize, Rational)> = vec![(f, Rational::one())];
            // Values of pivot variables, largest pivot first.
            let mut values: std::collections::HashMap<usize, Rational> = Default::default();
            values.insert(f, Rational::one());
            for &p in &order {
                let row = &self.rows[self.pivot_of_col[p].unwrap()];
                let mut s = Rational::zero();
                for (j, a) in row.iter() {
                    if *j == p {
                        continue;
                    }
                    if let Some(val) = values.get(j) {
                        s.add_mul(a, val);
                    }
                }
                if !s.is_zero() {
                    let s = -s;
                    values.insert(p, s.clone());
                    x.push((p, s));
                }
            }
            basis.push(SparseVec::from_entries(x));
        }
        basis
    }

    /// The stored rows, each with leading coefficient 1 at a distinct pivot.
    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Coordinates of `v` relative to [`Echelon::rows`], or `None` when `v`
    /// is not in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Rational>> {
        let mut coords = vec![Rational::zero(); self.rows.len()];
        let mut v = v.clone();
        let mut cursor = 0usize;
        loop {
            let hit =
                v.0.iter()
                    .find(|(c, _)| *c >= cursor && self.pivot_of_col[*c].is_some())
                    .map(|(c, x)| (*c, x.clone()));
            match hit {
                None => return v.is_zero().then_some(coords),
                Some((c, x)) => {
                    let k = self.pivot_of_col[c].unwrap();
                    v = v.add_scaled(&-x.clone(), &self.rows[k]);
                    coords[k] = &coords[k] + &x;
                    cursor = c + 1;
                }
            }
        }
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from integer entries.
    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&x| Rational::from_int(x)).collect(),
        }
    }

    pub fn from_columns(nrows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Matrix::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn sparse_column(&self, j: usize) -> SparseVec {
        SparseVec(
            (0..self.rows)
                .filter_map(|i| {
                    let x = self.get(i, j);
                    (!x.is_zero()).then(|| (i, x.clone()))
                })
                .collect(),
        )
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * rhs.cols + j].add_mul(a, b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    s.add_mul(a, b);
                }
                s
            })
            .collect()
    }

    pub fn mul_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut out = vec![Rational::zero(); self.rows];
        for (j, x) in v.iter() {
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, *j);
                if !a.is_zero() {
                    o.add_mul(a, x);
                }
            }
        }
        SparseVec::from_dense(&out)
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let mut s = Rational::zero();
        for i in 0..self.rows {
            s += self.get(i, i);
        }
        s
    }

    fn row_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(&SparseVec::from_dense(self.row(i)));
        }
        e
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.row_echelon().rank()
        } else {
            self.transpose().row_echelon().rank()
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Null space basis, as sparse column vectors of length `ncols`.
    pub fn kernel(&self) -> Vec<SparseVec> {
        self.row_echelon().kernel()
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn kernel_of_small_matrix() {
        // x + y + z = 0, y - z = 0
        let m = Matrix::from_ints(2, 3, &[1, 1, 1, 0, 1, -1]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        let v = k[0].to_dense(3);
        assert_eq!(m.mul_vec(&v), vec![q(0), q(0)]);
        assert_eq!(v[2], q(1));
    }

    #[test]
    fn rank_and_invertibility() {
        assert_eq!(Matrix::identity(4).rank(), 4);
        let m = Matrix::from_ints(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]);
        assert_eq!(m.rank(), 2);
        assert!(!m.is_invertible());
        assert!(Matrix::from_ints(2, 2, &[0, 1, 1, 0]).is_invertible());
    }

    #[test]
    fn reduction_clears_pivots() {
        let mut e = Echelon::new(3);
        e.insert(&SparseVec::from_dense(&[q(0), q(2), q(4)]));
        e.insert(&SparseVec::from_dense(&[q(1), q(1), q(0)]));
        let r = e.reduce(&SparseVec::from_dense(&[q(3), q(1), q(1)]));
        for p in e.pivots() {
            assert!(r.get(p).is_zero());
        }
        assert!(e.contains(&SparseVec::from_dense(&[q(1), q(3), q(4)])));
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(entries in proptest::collection::vec(-3i64..4, 12)) {
            let m = Matrix::from_ints(3, 4, &entries);
            let k = m.kernel();
            prop_assert_eq!(k.len() + m.rank(), 4);
            for v in &k {
                prop_assert!(m.mul_vec(&v.to_dense(4)).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn product_is_associative(a in proptest::collection::vec(-3i64..4, 6),
                                  b in proptest::collection::vec(-3i64..4, 6),
                                  c in proptest::collection::vec(-3i64..4, 4)) {
            let a = Matrix::from_ints(3, 2, &a);
            let b = Matrix::from_ints(2, 3, &b);
            let c = Matrix::from_ints(3, 2, &c[..].iter().chain(&[1, 2]).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}
