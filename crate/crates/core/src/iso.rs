//! Isomorphisms between presented algebras that send each arrow to a nonzero
//! multiple of an arrow.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, DEFAULT_MAX_DEGREE};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::presentation::Presentation;
use crate::quiver::Path;
use crate::rational::Rational;

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    /// Image of each vertex of the first algebra.
    pub vertices: Vec<usize>,
    /// Image of each arrow of the first algebra.
    pub arrows: Vec<usize>,
    /// Arrow `i` maps to `scalars[i]` times arrow `arrows[i]`.
    pub scalars: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Witness(IsoWitness),
    None,
    Inconclusive,
}

impl IsoWitness {
    pub fn to_json(&self, a: &Presentation, b: &Presentation) -> Value {
        let (qa, qb) = (&a.quiver, &b.quiver);
        json!({
            "vertices": self.vertices.iter().enumerate()
                .map(|(i, &j)| json!([qa.vertex_name(i), qb.vertex_name(j)]))
                .collect::<Vec<_>>(),
            "arrows": self.arrows.iter().enumerate()
                .map(|(i, &j)| json!([qa.arrow_data(i).name, qb.arrow_data(j).name, self.scalars[i].to_string()]))
                .collect::<Vec<_>>(),
        })
    }

    /// Two-column table, vertices first, then `arrow  scalar*image`.
    pub fn to_table(&self, a: &Presentation, b: &Presentation) -> String {
        let (qa, qb) = (&a.quiver, &b.quiver);
        let mut rows: Vec<(String, String)> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &j)| (qa.vertex_name(i).to_string(), qb.vertex_name(j).to_string()))
            .collect();
        for (i, &j) in self.arrows.iter().enumerate() {
            let s = &self.scalars[i];
            let img = if s.is_one() {
                qb.arrow_data(j).name.clone()
            } else {
                format!("{s}*{}", qb.arrow_data(j).name)
            };
            rows.push((qa.arrow_data(i).name.clone(), img));
        }
        let width = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
        rows.iter().map(|(l, r)| format!("{l:width$}  {r}\n")).collect()
    }
}

struct Side<'a> {
    pres: &'a Presentation,
    alg: Algebra,
    /// `between[i][j]` = dimensions of `e_i Λ e_j` degree by degree.
    between: Vec<Vec<Vec<usize>>>,
    fingerprint: Vec<Vec<usize>>,
}

impl<'a> Side<'a> {
    fn new(pres: &'a Presentation) -> Result<Self> {
        let alg = Algebra::new(pres, DEFAULT_MAX_DEGREE);
        if !alg.is_finite() {
            return Err(Error::InfiniteDimensional(DEFAULT_MAX_DEGREE));
        }
        let n = pres.num_vertices();
        let nd = alg.num_degrees();
        let mut between = vec![vec![vec![0; nd]; n]; n];
        for (i, p) in alg.basis().iter().enumerate() {
            between[p.source][p.target][alg.degree_of(i)] += 1;
        }
        let q = &pres.quiver;
        let fingerprint = (0..n)
            .map(|v| {
                let mut f = vec![q.arrows_to(v).count(), q.arrows_from(v).count()];
                for d in 0..nd {
                    f.push((0..n).map(|j| between[v][j][d]).sum());
                    f.push((0..n).map(|j| between[j][v][d]).sum());
                    f.push(between[v][v][d]);
                }
                f
            })
            .collect();
        Ok(Side {
            pres,
            alg,
            between,
            fingerprint,
        })
    }
}

enum Scalars {
    Found(Vec<Rational>),
    Impossible,
    Unknown,
}

/// Searches vertex bijections (fingerprint-compatible, in lexicographic
/// order), then arrow bijections, then scalars. `budget` bounds the number of
/// search nodes.
pub fn find_iso(a: &Presentation, b: &Presentation, budget: usize) -> Result<IsoOutcome> {
    let sa = Side::new(a)?;
    let sb = Side::new(b)?;
    let (qa, qb) = (&a.quiver, &b.quiver);
    if qa.num_vertices() != qb.num_vertices()
        || qa.num_arrows() != qb.num_arrows()
        || sa.alg.degree_dims() != sb.alg.degree_dims()
    {
        return Ok(IsoOutcome::None);
    }
    let mut search = Search {
        a: &sa,
        b: &sb,
        nodes: 0,
        budget,
        inconclusive: false,
    };
    let n = qa.num_vertices();
    let mut sigma = Vec::with_capacity(n);
    let mut used = vec![false; n];
    match search.vertices(&mut sigma, &mut used) {
        Some(w) => Ok(IsoOutcome::Witness(w)),
        // Arrow images are single arrows, so with parallel arrows a failed
        // search does not rule out an isomorphism.
        None if search.inconclusive || search.nodes > search.budget || has_parallel_arrows(a) => {
            Ok(IsoOutcome::Inconclusive)
        }
        None => Ok(IsoOutcome::None),
    }
}

fn has_parallel_arrows(p: &Presentation) -> bool {
    let q = &p.quiver;
    let mut seen = std::collections::HashSet::new();
    q.arrows().iter().any(|a| !seen.insert((a.source, a.target)))
}

struct Search<'a, 'b> {
    a: &'b Side<'a>,
    b: &'b Side<'a>,
    nodes: usize,
    budget: usize,
    inconclusive: bool,
}

impl Search<'_, '_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }

    fn vertices(&mut self, sigma: &mut Vec<usize>, used: &mut [bool]) -> Option<IsoWitness> {
        let n = used.len();
        let i = sigma.len();
        if i == n {
            return self.arrows(sigma);
        }
        for j in 0..n {
            if used[j] || self.a.fingerprint[i] != self.b.fingerprint[j] {
                continue;
            }
            let ok = (0..i).all(|k| {
                self.a.between[i][k] == self.b.between[j][sigma[k]]
                    && self.a.between[k][i] == self.b.between[sigma[k]][j]
            }) && self.a.between[i][i] == self.b.between[j][j];
            if !ok {
                continue;
            }
            if !self.tick() {
                return None;
            }
            sigma.push(j);
            used[j] = true;
            if let Some(w) = self.vertices(sigma, used) {
                return Some(w);
            }
            sigma.pop();
            used[j] = false;
        }
        None
    }

    fn arrows(&mut self, sigma: &[usize]) -> Option<IsoWitness> {
        let (qa, qb) = (&self.a.pres.quiver, &self.b.pres.quiver);
        // Group parallel arrows of A; each group maps onto the arrows between
        // the image vertices in B.
        let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, ar) in qa.arrows().iter().enumerate() {
            let g = *index.entry((ar.source, ar.target)).or_insert_with(|| {
                let (s, t) = (sigma[ar.source], sigma[ar.target]);
                let targets = qb.arrows_from(s).filter(|&x| qb.arrow_data(x).target == t).collect();
                groups.push((Vec::new(), targets));
                groups.len() - 1
            });
            groups[g].0.push(i);
        }
        if groups.iter().any(|(x, y)| x.len() != y.len()) {
            return None;
        }
        let mut perms: Vec<Vec<usize>> = groups.iter().map(|(x, _)| (0..x.len()).collect()).collect();
        loop {
            if !self.tick() {
                return None;
            }
            let mut arrows = vec![0; qa.num_arrows()];
            for ((src, dst), p) in groups.iter().zip(&perms) {
                for (k, &i) in src.iter().enumerate() {
                    arrows[i] = dst[p[k]];
                }
            }
            match solve_scalars(self.a, self.b, &arrows) {
                Scalars::Found(scalars) => {
                    return Some(IsoWitness {
                        vertices: sigma.to_vec(),
                        arrows,
                        scalars,
                    })
                }
                Scalars::Impossible => {}
                Scalars::Unknown => self.inconclusive = true,
            }
            // Advance the odometer of per-group permutations.
            let mut g = 0;
            loop {
                if g == perms.len() {
                    return None;
                }
                if next_permutation(&mut perms[g]) {
                    break;
                }
                perms[g].sort();
                g += 1;
            }
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn image_path(p: &Path, sigma: &[usize], arrows: &[usize]) -> Path {
    Path {
        source: sigma[p.source],
        target: sigma[p.target],
        arrows: p.arrows.iter().map(|&x| arrows[x]).collect(),
    }
}

/// Reduced image of every relation term under the arrow map, unscaled.
fn relation_images(a: &Side, b: &Side, arrows: &[usize]) -> Vec<Vec<(Rational, Vec<usize>, SparseVec)>> {
    a.pres
        .relations
        .iter()
        .map(|r| {
            r.terms
                .iter()
                .map(|(c, p)| {
                    let img: Vec<usize> = p.arrows.iter().map(|&x| arrows[x]).collect();
                    let img = b.pres.quiver.path(&img).expect("arrow map respects composability");
                    (c.clone(), p.arrows.clone(), b.alg.reduce_path(&img))
                })
                .collect()
        })
        .collect()
}

fn relations_hold(images: &[Vec<(Rational, Vec<usize>, SparseVec)>], scalars: &[Rational]) -> bool {
    images.iter().all(|terms| {
        let mut acc = SparseVec::new();
        for (c, path, v) in terms {
            let mut k = c.clone();
            for &x in path {
                k = &k * &scalars[x];
            }
            acc = acc.add_scaled(&k, v);
        }
        acc.is_zero()
    })
}

/// Rational `k` with `v = k·w`, if any (`w` nonzero).
fn ratio(v: &SparseVec, w: &SparseVec) -> Option<Rational> {
    let (i, wi) = w.iter().next()?;
    let k = &v.get(*i) / wi;
    (v.add_scaled(&-k.clone(), w)).is_zero().then_some(k)
}

/// Try all ones; otherwise treat every two-term relation as a multiplicative
/// constraint `Π λ(p₁) / Π λ(p₂) = ρ` and solve the sign part over GF(2) and
/// the prime exponents over the integers.
fn solve_scalars(a: &Side, b: &Side, arrows: &[usize]) -> Scalars {
    let m = arrows.len();
    let images = relation_images(a, b, arrows);
    let ones = vec![Rational::one(); m];
    if relations_hold(&images, &ones) {
        return Scalars::Found(ones);
    }
    // (exponent vector over arrows, target ratio)
    let mut constraints: Vec<(Vec<i64>, Rational)> = Vec::new();
    for terms in &images {
        let nonzero: Vec<_> = terms.iter().filter(|t| !t.2.is_zero()).collect();
        match nonzero.len() {
            0 => {}
            1 => return Scalars::Impossible,
            2 => {
                let (c1, p1, v1) = nonzero[0];
                let (c2, p2, v2) = nonzero[1];
                // c1 λ(p1) v1 + c2 λ(p2) v2 = 0 with v1 = μ v2
                let Some(mu) = ratio(v1, v2) else {
                    return Scalars::Impossible;
                };
                let rho = -(c2 / &(c1 * &mu));
                let mut e = vec![0i64; m];
                for &x in p1 {
                    e[x] += 1;
                }
                for &x in p2 {
                    e[x] -= 1;
                }
                if e.iter().all(|&x| x == 0) {
                    if rho.is_one() {
                        continue;
                    }
                    return Scalars::Impossible;
                }
                constraints.push((e, rho));
            }
            _ => return Scalars::Unknown,
        }
    }
    if constraints.is_empty() {
        return Scalars::Impossible;
    }
    let Some(scalars) = solve_multiplicative(&constraints, m) else {
        return Scalars::Unknown;
    };
    if relations_hold(&images, &scalars) {
        Scalars::Found(scalars)
    } else {
        Scalars::Unknown
    }
}

fn small_primes_of(x: &BigInt, primes: &mut Vec<BigInt>) -> Option<()> {
    let mut x = x.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= x {
        if (&x % &p).is_zero() {
            if !primes.contains(&p) {
                primes.push(p.clone());
            }
            while (&x % &p).is_zero() {
                x /= &p;
            }
        }
        p += 1;
        if p > BigInt::from(1_000_000) {
            return None;
        }
    }
    if x > BigInt::one() && !primes.contains(&x) {
        primes.push(x);
    }
    Some(())
}

fn valuation(x: &BigInt, p: &BigInt) -> i64 {
    let mut x = x.abs();
    let mut k = 0;
    while !x.is_zero() && (&x % p).is_zero() {
        x /= p;
        k += 1;
    }
    k
}

/// Solves `Π λ_x^{e_x} = ρ` for each constraint; `None` if the linear
/// systems are inconsistent or need non-integral exponents.
fn solve_multiplicative(constraints: &[(Vec<i64>, Rational)], m: usize) -> Option<Vec<Rational>> {
    let parts: Vec<(BigInt, BigInt)> = constraints.iter().map(|(_, r)| r.numer_denom()).collect();
    let mut primes = Vec::new();
    for (n, d) in &parts {
        small_primes_of(n, &mut primes)?;
        small_primes_of(d, &mut primes)?;
    }
    let mut scalars = vec![Rational::one(); m];

    // Signs over GF(2).
    let rows: Vec<(Vec<u8>, u8)> = constraints
        .iter()
        .map(|(e, r)| (e.iter().map(|x| x.rem_euclid(2) as u8).collect(), r.is_negative() as u8))
        .collect();
    let signs = solve_gf2(rows, m)?;
    for (x, s) in signs.iter().enumerate() {
        if *s == 1 {
            scalars[x] = -Rational::one();
        }
    }

    // Exponents of each prime over Q, integrality checked.
    for p in &primes {
        let mut ech = Echelon::new(m + 1);
        for ((e, _), (n, d)) in constraints.iter().zip(&parts) {
            let rhs = valuation(n, p) - valuation(d, p);
            let mut row: Vec<Rational> = e.iter().map(|&x| Rational::from_int(x)).collect();
            row.push(Rational::from_int(rhs));
            ech.insert(&SparseVec::from_dense(&row));
        }
        if ech.is_pivot(m) {
            return None;
        }
        // Free variables at zero; each pivot row then reads x_pivot = rhs.
        for row in ech.rows() {
            let Some((pivot, lead)) = row.iter().next() else {
                continue;
            };
            let val = &row.get(m) / lead;
            if !val.is_integer() {
                return None;
            }
            let k = val.numer_denom().0.to_i64()?;
            let pr = Rational::from_bigint(p.clone());
            let factor = if k >= 0 {
                pow(&pr, k as u64)
            } else {
                pow(&pr, (-k) as u64).recip()
            };
            scalars[*pivot] = &scalars[*pivot] * &factor;
        }
    }
    Some(scalars)
}

fn pow(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc = &acc * x;
    }
    acc
}

fn solve_gf2(mut rows: Vec<(Vec<u8>, u8)>, m: usize) -> Option<Vec<u8>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(k) = (r..rows.len()).find(|&k| rows[k].0[c] == 1) else {
            continue;
        };
        rows.swap(r, k);
        for k in 0..rows.len() {
            if k != r && rows[k].0[c] == 1 {
                let (src, b) = (rows[r].0.clone(), rows[r].1);
                for (x, y) in rows[k].0.iter_mut().zip(&src) {
                    *x ^= y;
                }
                rows[k].1 ^= b;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|(_, b)| *b == 1) {
        return None;
    }
    let mut x = vec![0u8; m];
    for (k, &c) in pivots.iter().enumerate() {
        x[c] = rows[k].1;
    }
    Some(x)
}

/// Independent check of a witness: bijections respecting endpoints, nonzero
/// scalars, every relation of `a` mapped into the ideal of `b`, and equal
/// finite dimensions.
pub fn verify_iso(a: &Presentation, b: &Presentation, w: &IsoWitness) -> bool {
    let (qa, qb) = (&a.quiver, &b.quiver);
    let (n, m) = (qa.num_vertices(), qa.num_arrows());
    if qb.num_vertices() != n || qb.num_arrows() != m {
        return false;
    }
    if w.vertices.len() != n || w.arrows.len() != m || w.scalars.len() != m {
        return false;
    }
    let bijective = |map: &[usize], size: usize| {
        let mut seen = vec![false; size];
        map.iter().all(|&x| x < size && !std::mem::replace(&mut seen[x], true))
    };
    if !bijective(&w.vertices, n) || !bijective(&w.arrows, m) {
        return false;
    }
    if w.scalars.iter().any(Rational::is_zero) {
        return false;
    }
    for (i, ar) in qa.arrows().iter().enumerate() {
        let img = qb.arrow_data(w.arrows[i]);
        if img.source != w.vertices[ar.source] || img.target != w.vertices[ar.target] {
            return false;
        }
    }
    let alg_a = Algebra::new(a, DEFAULT_MAX_DEGREE);
    let alg_b = Algebra::new(b, DEFAULT_MAX_DEGREE);
    if !alg_a.is_finite() || !alg_b.is_finite() || alg_a.dim() != alg_b.dim() {
        return false;
    }
    a.relations.iter().all(|r| {
        let mut acc = SparseVec::new();
        for (c, p) in &r.terms {
            let img = image_path(p, &w.vertices, &w.arrows);
            let mut k = c.clone();
            for &x in &p.arrows {
                k = &k * &w.scalars[x];
            }
            acc = acc.add_scaled(&k, &alg_b.reduce_path(&img));
        }
        acc.is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{a_n, a_n_rad2, triangle};
    use crate::presentation::parse_presentation;

    fn witness(a: &Presentation, b: &Presentation) -> IsoWitness {
        match find_iso(a, b, DEFAULT_BUDGET).unwrap() {
            IsoOutcome::Witness(w) => w,
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn self_iso_is_identity() {
        let t = triangle();
        let w = witness(&t, &t);
        assert_eq!(w.vertices, vec![0, 1, 2]);
        assert!(verify_iso(&t, &t, &w));
    }

    #[test]
    fn shuffled_labels() {
        let a = parse_presentation("vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\nrelation: a b\n").unwrap();
        let b = parse_presentation("vertices: z y x\narrow: q y x\narrow: p z y\nrelation: p q\n").unwrap();
        let w = witness(&a, &b);
        assert_eq!(w.vertices, vec![0, 1, 2]);
        assert_eq!(w.arrows, vec![1, 0]);
        assert!(verify_iso(&a, &b, &w));
    }

    #[test]
    fn different_dimensions() {
        let out = find_iso(&a_n(3).unwrap(), &a_n_rad2(3).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(out, IsoOutcome::None);
    }

    #[test]
    fn signs_are_solved() {
        let a = parse_presentation(
            "vertices: 1 2 3 4\narrow: a 1 2\narrow: b 2 4\narrow: c 1 3\narrow: d 3 4\nrelation: a b - c d\n",
        )
        .unwrap();
        let b = parse_presentation(
            "vertices: 1 2 3 4\narrow: a 1 2\narrow: b 2 4\narrow: c 1 3\narrow: d 3 4\nrelation: a b + 2*c d\n",
        )
        .unwrap();
        let w = witness(&a, &b);
        assert!(verify_iso(&a, &b, &w));
        let mut bad = w.clone();
        bad.scalars[0] = Rational::zero();
        assert!(!verify_iso(&a, &b, &bad));
    }

    #[test]
    fn commutative_square_is_not_monomial() {
        // Same quiver, but both paths of the square are zero.
        let a = parse_presentation(
            "vertices: 1 2 3 4\narrow: a 1 2\narrow: b 2 4\narrow: c 1 3\narrow: d 3 4\nrelation: a b - c d\n",
        )
        .unwrap();
        let b = parse_presentation(
            "vertices: 1 2 3 4\narrow: a 1 2\narrow: b 2 4\narrow: c 1 3\narrow: d 3 4\nrelation: a b\nrelation: c d\n",
        )
        .unwrap();
        assert_eq!(find_iso(&a, &b, DEFAULT_BUDGET).unwrap(), IsoOutcome::None);
    }
}
