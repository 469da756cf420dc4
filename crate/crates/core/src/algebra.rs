//! Linear bases of `kQ/I` by graded linear algebra.
//!
//! Relations are homogeneous, so `kQ/I` is graded by path length. Degree `d`
//! is built from degree `d - 1`: every basis path `b` extended by an arrow `a`
//! is a candidate, and the degree-`d` part of the ideal is spanned by the
//! images of `b·r` for relations `r` of length `ℓ ≤ d` and basis paths `b` of
//! degree `d - ℓ`. Candidates that are pivots of the echelon form are
//! eliminated; the remaining ones form the basis.

use std::collections::HashMap;

use serde::Serialize;

use crate::linalg::{Echelon, SparseVec};
use crate::presentation::Presentation;
use crate::quiver::Path;
use crate::rational::Rational;

pub const DEFAULT_MAX_DEGREE: usize = 64;

/// A presentation together with a path basis of its algebra and the right
/// action of arrows on that basis.
#[derive(Clone, Debug)]
pub struct Algebra {
    pres: Presentation,
    basis: Vec<Path>,
    degree_start: Vec<usize>,
    /// `action[i]` lists `(arrow, b_i · arrow)` for arrows starting at the end of `b_i`.
    action: Vec<Vec<(usize, SparseVec)>>,
    finite: bool,
    max_degree: usize,
}

/// Per-degree basis listing of `kQ/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    /// Basis path words per degree; trivial paths print as `e_<vertex>`.
    pub degrees: Vec<Vec<String>>,
    /// Total dimension, `None` when truncated.
    pub dimension: Option<usize>,
    pub truncated: bool,
    pub max_degree: usize,
}

impl BasisReport {
    pub fn degree_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.degrees.iter().any(|d| d.iter().any(|w| w == word))
    }
}

impl Algebra {
    pub fn new(pres: &Presentation, max_degree: usize) -> Algebra {
        let q = &pres.quiver;
        let n = q.num_vertices();
        let mut alg = Algebra {
            pres: pres.clone(),
            basis: (0..n).map(|v| q.trivial_path(v)).collect(),
            degree_start: vec![0, n],
            action: vec![Vec::new(); n],
            finite: false,
            max_degree,
        };
        for d in 1..=max_degree {
            let prev = alg.degree_start[d - 1]..alg.degree_start[d];
            let mut candidates: Vec<(usize, usize)> = Vec::new();
            for b in prev.clone() {
                for a in q.arrows_from(alg.basis[b].target) {
                    candidates.push((b, a));
                }
            }
            if candidates.is_empty() {
                alg.finite = true;
                return alg;
            }
            let nc = candidates.len();
            let index: HashMap<(usize, usize), usize> = candidates.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            // Columns are reversed so that later candidates become pivots and
            // earlier (smaller) paths survive as basis elements.
            let col = |c: usize| nc - 1 - c;
            let mut ech = Echelon::new(nc);
            for r in &pres.relations {
                let len = r.degree();
                if len > d {
                    continue;
                }
                for b in alg.degree_start[d - len]..alg.degree_start[d - len + 1] {
                    if alg.basis[b].target != r.source() {
                        continue;
                    }
                    let mut row: Vec<(usize, Rational)> = Vec::new();
                    for (c, p) in &r.terms {
                        let (last, init) = p.arrows.split_last().unwrap();
                        let mut v = SparseVec::unit(b);
                        for &a in init {
                            v = alg.mul_arrow(&v, a);
                        }
                        for (i, x) in v.iter() {
                            row.push((col(index[&(*i, *last)]), x * c));
                        }
                    }
                    ech.insert(&SparseVec::from_entries(row));
                }
            }
            let start = alg.basis.len();
            let mut new_index = vec![usize::MAX; nc];
            for (c, &(b, a)) in candidates.iter().enumerate() {
                if !ech.is_pivot(col(c)) {
                    new_index[c] = alg.basis.len();
                    let mut p = alg.basis[b].clone();
                    p.arrows.push(a);
                    p.target = q.arrow_data(a).target;
                    alg.basis.push(p);
                    alg.action.push(Vec::new());
                }
            }
            for (c, &(b, a)) in candidates.iter().enumerate() {
                let reduced = ech.reduce(&SparseVec::unit(col(c)));
                let image = SparseVec::from_entries(
                    reduced
                        .iter()
                        .map(|(j, x)| (new_index[nc - 1 - j], x.clone()))
                        .collect(),
                );
                alg.action[b].push((a, image));
            }
            alg.degree_start.push(alg.basis.len());
            if alg.basis.len() == start {
                alg.finite = true;
                return alg;
            }
        }
        alg
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    /// Total dimension, or `None` if the computation was truncated.
    pub fn dim(&self) -> Option<usize> {
        self.finite.then_some(self.basis.len())
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Number of computed degrees (including trailing empty degree if finite).
    pub fn num_degrees(&self) -> usize {
        self.degree_start.len() - 1
    }

    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        self.degree_start[d]..self.degree_start[d + 1]
    }

    pub fn degree_dims(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = (0..self.num_degrees()).map(|d| self.degree_range(d).len()).collect();
        while dims.len() > 1 && dims.last() == Some(&0) {
            dims.pop();
        }
        dims
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.basis[i].len()
    }

    /// Index of the idempotent `e_v`.
    pub fn idempotent(&self, v: usize) -> usize {
        v
    }

    /// Basis elements `e_u A e_v` (paths from `u` to `v`).
    pub fn basis_between(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.basis[i].source == u && self.basis[i].target == v)
            .collect()
    }

    pub fn basis_from(&self, u: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].source == u).collect()
    }

    pub fn basis_to(&self, v: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].target == v).collect()
    }

    /// `x · a` for an arrow `a`.
    ///
    /// Panics if `x` involves a basis element of the top degree of a
    /// truncated computation, where the action is unknown.
    pub fn mul_arrow(&self, x: &SparseVec, a: usize) -> SparseVec {
        let mut acc: Vec<(usize, Rational)> = Vec::new();
        for (i, c) in x.iter() {
            if self.basis[*i].target != self.pres.quiver.arrow_data(a).source {
                continue;
            }
            let entry = self.action[*i].iter().find(|(b, _)| *b == a);
            match entry {
                Some((_, img)) => acc.extend(img.iter().map(|(j, y)| (*j, y * c))),
                None => panic!("right action beyond the truncation degree"),
            }
        }
        SparseVec::from_entries(acc)
    }

    /// Normal form of a path as a combination of basis elements.
    pub fn reduce_path(&self, p: &Path) -> SparseVec {
        let mut v = SparseVec::unit(self.idempotent(p.source));
        for &a in &p.arrows {
            if v.is_zero() {
                break;
            }
            v = self.mul_arrow(&v, a);
        }
        v
    }

    pub fn reduce_combination(&self, terms: &[(Rational, Path)]) -> SparseVec {
        let mut acc = SparseVec::new();
        for (c, p) in terms {
            acc = acc.add_scaled(c, &self.reduce_path(p));
        }
        acc
    }

    /// Product `x · y` in the algebra.
    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (j, c) in y.iter() {
            let p = &self.basis[*j];
            let mut v = SparseVec(
                x.iter()
                    .filter(|(i, _)| self.basis[*i].target == p.source)
                    .cloned()
                    .collect(),
            );
            for &a in &p.arrows {
                if v.is_zero() {
                    break;
                }
                v = self.mul_arrow(&v, a);
            }
            acc = acc.add_scaled(c, &v);
        }
        acc
    }

    pub fn report(&self) -> BasisReport {
        let q = &self.pres.quiver;
        let mut degrees: Vec<Vec<String>> = (0..self.num_degrees())
            .map(|d| self.degree_range(d).map(|i| q.path_word(&self.basis[i])).collect())
            .collect();
        while degrees.len() > 1 && degrees.last().is_some_and(Vec::is_empty) {
            degrees.pop();
        }
        BasisReport {
            degrees,
            dimension: self.dim(),
            truncated: !self.finite,
            max_degree: self.max_degree,
        }
    }
}

/// Basis of `kQ/I` degree by degree, up to `max_degree`.
pub fn path_basis(pres: &Presentation, max_degree: usize) -> BasisReport {
    Algebra::new(pres, max_degree).report()
}

/// Relations of length at least two (enforced on construction) and a
/// nilpotent radical detected within `max_degree`.
pub fn is_admissible(pres: &Presentation, max_degree: usize) -> bool {
    pres.relations.iter().all(|r| r.degree() >= 2) && Algebra::new(pres, max_degree).is_finite()
}
