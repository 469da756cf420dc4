//! Grid quivers, tensor and enveloping algebras, vertex gluing with
//! supplements, and embeddings of quivers into grids.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::presentation::{Presentation, Relation};
use crate::quiver::{Path, Quiver};
use crate::rational::Rational;

/// The linear quiver `1 → 2 → … → n` with arrows `a1, …, a(n-1)`.
pub fn linear(n: usize) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::OutOfRange("linear quiver needs at least one vertex".into()));
    }
    let mut q = Quiver::new();
    for v in 1..=n {
        q.add_vertex(v.to_string())?;
    }
    for k in 1..n {
        q.add_arrow_idx(format!("a{k}"), k - 1, k)?;
    }
    Ok(Presentation::free(q))
}

/// `A ⊗ B`: vertices `(x,y)`, arrows `α⊗e_y` and `e_x⊗β`, relations
/// `r⊗e_y`, `e_x⊗s` and one commutativity square per pair of arrows.
pub fn tensor(a: &Presentation, b: &Presentation) -> Presentation {
    let (qa, qb) = (&a.quiver, &b.quiver);
    let (na, nb) = (qa.num_vertices(), qb.num_vertices());
    let vtx = |x: usize, y: usize| x * nb + y;
    let mut q = Quiver::new();
    for x in qa.vertices() {
        for y in qb.vertices() {
            q.add_vertex(format!("({x},{y})")).expect("product names are distinct");
        }
    }
    // α⊗e_y at index α·nb + y, then e_x⊗β at offset + x·|B₁| + β.
    for (i, al) in qa.arrows().iter().enumerate() {
        for y in 0..nb {
            q.add_arrow_idx(
                format!("{}⊗e{}", al.name, qb.vertex_name(y)),
                vtx(al.source, y),
                vtx(al.target, y),
            )
            .expect("product names are distinct");
            debug_assert_eq!(q.num_arrows(), i * nb + y + 1);
        }
    }
    let offset = qa.num_arrows() * nb;
    let mb = qb.num_arrows();
    for x in 0..na {
        for be in qb.arrows() {
            q.add_arrow_idx(
                format!("e{}⊗{}", qa.vertex_name(x), be.name),
                vtx(x, be.source),
                vtx(x, be.target),
            )
            .expect("product names are distinct");
        }
    }
    let left = |p: &Path, y: usize| Path {
        source: vtx(p.source, y),
        target: vtx(p.target, y),
        arrows: p.arrows.iter().map(|&al| al * nb + y).collect(),
    };
    let right = |x: usize, p: &Path| Path {
        source: vtx(x, p.source),
        target: vtx(x, p.target),
        arrows: p.arrows.iter().map(|&be| offset + x * mb + be).collect(),
    };
    let mut relations = Vec::new();
    for r in &a.relations {
        for y in 0..nb {
            relations.push(Relation {
                terms: r.terms.iter().map(|(c, p)| (c.clone(), left(p, y))).collect(),
            });
        }
    }
    for x in 0..na {
        for s in &b.relations {
            relations.push(Relation {
                terms: s.terms.iter().map(|(c, p)| (c.clone(), right(x, p))).collect(),
            });
        }
    }
    for (i, al) in qa.arrows().iter().enumerate() {
        for (j, be) in qb.arrows().iter().enumerate() {
            // (e_x⊗β)(α⊗e_y') - (α⊗e_y)(e_x'⊗β)
            let vertical_first = Path {
                source: vtx(al.source, be.source),
                target: vtx(al.target, be.target),
                arrows: vec![offset + al.source * mb + j, i * nb + be.target],
            };
            let horizontal_first = Path {
                source: vtx(al.source, be.source),
                target: vtx(al.target, be.target),
                arrows: vec![i * nb + be.source, offset + al.target * mb + j],
            };
            relations.push(Relation::commutativity(vertical_first, horizontal_first));
        }
    }
    Presentation::new(q, relations).expect("tensor relations are well formed")
}

/// `A ⊗ A^op`.
pub fn enveloping(a: &Presentation) -> Presentation {
    tensor(a, &a.opposite())
}

/// The `m × n` commutative grid: vertices `(i,j)` with `1 ≤ i ≤ m`,
/// `1 ≤ j ≤ n`, arrows `(i,j) → (i+1,j)` and `(i,j) → (i,j-1)`. This is
/// `A_m ⊗ A_n^op`, so `grid(n, n)` is literally `enveloping(A_n)`.
pub fn grid_presentation(m: usize, n: usize) -> Result<Presentation> {
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange("grid needs positive size".into()));
    }
    Ok(tensor(&linear(m)?, &linear(n)?.opposite()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GluingSpec {
    /// `(v, w)`: `w` is merged into `v`.
    pub pairs: Vec<(String, String)>,
    pub deletions: Vec<String>,
    pub supplement: Vec<String>,
}

impl GluingSpec {
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for (v, w) in &self.pairs {
            if v == w {
                return Err(Error::InvalidSpec(format!("cannot glue `{v}` to itself")));
            }
            for x in [v, w] {
                if !seen.insert(x.as_str()) {
                    return Err(Error::InvalidSpec(format!("vertex `{x}` occurs in two pairs")));
                }
            }
        }
        for d in &self.deletions {
            if seen.contains(d.as_str()) {
                return Err(Error::InvalidSpec(format!("deleted vertex `{d}` is also glued")));
            }
        }
        Ok(())
    }
}

fn resolve_pairs(pres: &Presentation, pairs: &[(String, String)]) -> Result<Vec<(usize, usize)>> {
    let spec = GluingSpec {
        pairs: pairs.to_vec(),
        ..Default::default()
    };
    spec.validate()?;
    pairs
        .iter()
        .map(|(v, w)| Ok((pres.vertex(v)?, pres.vertex(w)?)))
        .collect()
}

/// Identifies each `w` with its `v` (keeping the name of `v`) and adds the
/// zero relations `γδ` for arrow pairs composable only after gluing.
pub fn glue(pres: &Presentation, pairs: &[(String, String)]) -> Result<Presentation> {
    Ok(glue_with_report(pres, pairs)?.0)
}

/// As [`glue`], also returning the added crossing relations.
pub fn glue_with_report(pres: &Presentation, pairs: &[(String, String)]) -> Result<(Presentation, Vec<Relation>)> {
    let idx = resolve_pairs(pres, pairs)?;
    let q = &pres.quiver;
    let mut class: Vec<usize> = (0..q.num_vertices()).collect();
    for &(v, w) in &idx {
        class[w] = v;
    }
    let mut nq = Quiver::new();
    let mut vmap = vec![usize::MAX; q.num_vertices()];
    for v in 0..q.num_vertices() {
        if class[v] == v {
            vmap[v] = nq.add_vertex(q.vertex_name(v))?;
        }
    }
    for v in 0..q.num_vertices() {
        vmap[v] = vmap[class[v]];
    }
    for a in q.arrows() {
        nq.add_arrow_idx(a.name.clone(), vmap[a.source], vmap[a.target])?;
    }
    let remap = |p: &Path| Path {
        source: vmap[p.source],
        target: vmap[p.target],
        arrows: p.arrows.clone(),
    };
    let mut relations: Vec<Relation> = pres
        .relations
        .iter()
        .map(|r| Relation {
            terms: r.terms.iter().map(|(c, p)| (c.clone(), remap(p))).collect(),
        })
        .collect();
    let mut added = Vec::new();
    for &(v, w) in &idx {
        for g in q.arrows_to(v).chain(q.arrows_to(w)).collect::<BTreeSet<_>>() {
            for d in q.arrows_from(v).chain(q.arrows_from(w)).collect::<BTreeSet<_>>() {
                if q.arrow_data(g).target != q.arrow_data(d).source {
                    let r = Relation::monomial(nq.path(&[g, d])?);
                    added.push(r.clone());
                    relations.push(r);
                }
            }
        }
    }
    Ok((Presentation::new(nq, relations)?, added))
}

/// Pairs `(p₁, p₂)` of nonzero paths with `p₁` ending and `p₂` starting at
/// `v`, each of length at most `max_length`. Ordered by the position of `p₁`
/// then `p₂` in a length-then-arrow enumeration.
pub fn crossing_set(pres: &Presentation, v: &str, max_length: usize) -> Result<Vec<(Path, Path)>> {
    let v = pres.vertex(v)?;
    let alg = Algebra::new(pres, max_length);
    let q = &pres.quiver;
    let nonzero = |p: &Path| !alg.reduce_path(p).is_zero();

    // Paths ending at v, grown backwards; paths starting at v, grown forwards.
    let mut ending = vec![q.trivial_path(v)];
    let mut frontier = ending.clone();
    for _ in 0..max_length {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_to(p.source) {
                let mut arrows = vec![a];
                arrows.extend_from_slice(&p.arrows);
                let np = Path {
                    source: q.arrow_data(a).source,
                    target: v,
                    arrows,
                };
                if nonzero(&np) {
                    next.push(np);
                }
            }
        }
        ending.extend(next.iter().cloned());
        frontier = next;
    }
    let mut starting = vec![q.trivial_path(v)];
    let mut frontier = starting.clone();
    for _ in 0..max_length {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_from(p.target) {
                let mut np = p.clone();
                np.arrows.push(a);
                np.target = q.arrow_data(a).target;
                if nonzero(&np) {
                    next.push(np);
                }
            }
        }
        starting.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for p in &ending {
        for s in &starting {
            out.push((p.clone(), s.clone()));
        }
    }
    Ok(out)
}

/// Glue, delete, then drop every zero relation whose path passes through a
/// supplement vertex as an interior vertex. Commutativity-type relations are
/// kept. The result may be infinite-dimensional.
pub fn gluing_algebra(pres: &Presentation, spec: &GluingSpec) -> Result<Presentation> {
    spec.validate()?;
    let glued = glue(pres, &spec.pairs)?;
    let deleted = if spec.deletions.is_empty() {
        glued
    } else {
        glued.delete_vertices_by_name(&spec.deletions)?
    };
    let sup: HashSet<usize> = spec
        .supplement
        .iter()
        .map(|s| deleted.vertex(s))
        .collect::<Result<_>>()?;
    let q = &deleted.quiver;
    let crosses = |p: &Path| {
        let n = p.arrows.len();
        p.arrows[..n.saturating_sub(1)]
            .iter()
            .any(|&a| sup.contains(&q.arrow_data(a).target))
    };
    let relations = deleted
        .relations
        .iter()
        .filter(|r| !(r.is_monomial() && crosses(&r.terms[0].1)))
        .cloned()
        .collect();
    Presentation::new(deleted.quiver.clone(), relations)
}

/// Vertex coordinates realizing a quiver as an induced subquiver of
/// [`grid_presentation`]`(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridEmbedding {
    pub m: usize,
    pub n: usize,
    /// `(i, j)` per vertex, 1-based.
    pub coords: Vec<(usize, usize)>,
}

impl GridEmbedding {
    pub fn vertex_names(&self) -> Vec<String> {
        self.coords.iter().map(|(i, j)| format!("({i},{j})")).collect()
    }
}

/// `Some(true)` if the grid has an arrow `c → d`, `Some(false)` for `d → c`.
fn grid_arrow(c: (usize, usize), d: (usize, usize)) -> Option<bool> {
    let step = |x: (usize, usize), y: (usize, usize)| (y.0 == x.0 + 1 && y.1 == x.1) || (y.0 == x.0 && y.1 + 1 == x.1);
    if step(c, d) {
        Some(true)
    } else if step(d, c) {
        Some(false)
    } else {
        None
    }
}

/// Smallest grid, by longer side then area then `m`, containing the
/// quiver as an induced subquiver; the first solution in search order.
pub fn embed_into_grid(pres: &Presentation) -> Result<GridEmbedding> {
    let q = &pres.quiver;
    let k = q.num_vertices();
    let mut count: HashMap<(usize, usize), usize> = HashMap::new();
    for a in q.arrows() {
        if a.source == a.target {
            return Err(Error::NotPds);
        }
        *count.entry((a.source, a.target)).or_default() += 1;
    }
    if count.values().any(|&c| c > 1) || count.keys().any(|&(s, t)| count.contains_key(&(t, s))) {
        return Err(Error::NotPds);
    }

    // Breadth-first order over the underlying graph; `parent` links each
    // non-root vertex to an already ordered neighbour.
    let mut order = Vec::with_capacity(k);
    let mut parent = vec![None; k];
    let mut seen = vec![false; k];
    for root in 0..k {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let nbrs: BTreeSet<usize> = q
                .arrows_from(u)
                .map(|a| q.arrow_data(a).target)
                .chain(q.arrows_to(u).map(|a| q.arrow_data(a).source))
                .collect();
            for w in nbrs {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
    }

    let mut sizes: Vec<(usize, usize)> = (1..=k)
        .flat_map(|m| (1..=k).map(move |n| (m, n)))
        .filter(|&(m, n)| m * n >= k)
        .collect();
    sizes.sort_by_key(|&(m, n)| (m.max(n), m * n, m));
    for (m, n) in sizes {
        let mut coords = vec![(0, 0); k];
        let mut used = HashSet::new();
        if place(&count, &order, &parent, 0, m, n, &mut coords, &mut used) {
            return Ok(GridEmbedding { m, n, coords });
        }
    }
    Err(Error::NotPds)
}

#[allow(clippy::too_many_arguments)]
fn place(
    count: &HashMap<(usize, usize), usize>,
    order: &[usize],
    parent: &[Option<usize>],
    pos: usize,
    m: usize,
    n: usize,
    coords: &mut Vec<(usize, usize)>,
    used: &mut HashSet<(usize, usize)>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    let candidates: Vec<(usize, usize)> = match parent[v] {
        None => (1..=m).flat_map(|i| (1..=n).map(move |j| (i, j))).collect(),
        Some(u) => {
            let (i, j) = coords[u];
            let mut c = Vec::new();
            if count.contains_key(&(u, v)) {
                c.push((i + 1, j));
                if j > 1 {
                    c.push((i, j - 1));
                }
            } else {
                if i > 1 {
                    c.push((i - 1, j));
                }
                c.push((i, j + 1));
            }
            c
        }
    };
    for c in candidates {
        if c.0 == 0 || c.1 == 0 || c.0 > m || c.1 > n || used.contains(&c) {
            continue;
        }
        let consistent = order[..pos].iter().all(|&w| {
            let d = coords[w];
            match grid_arrow(d, c) {
                Some(true) => count.contains_key(&(w, v)),
                Some(false) => count.contains_key(&(v, w)),
                None => !count.contains_key(&(w, v)) && !count.contains_key(&(v, w)),
            }
        });
        if !consistent {
            continue;
        }
        coords[v] = c;
        used.insert(c);
        if place(count, order, parent, pos + 1, m, n, coords, used) {
            return true;
        }
        used.remove(&c);
    }
    false
}

/// Every diamond `s → a → t`, `s → b → t` with four distinct vertices has
/// `s a t ≡ s b t` modulo the ideal.
pub fn check_diamonds_commutative(pres: &Presentation) -> bool {
    diamonds(&pres.quiver).is_empty() || {
        let alg = Algebra::new(pres, 2);
        diamonds(&pres.quiver).iter().all(|(p, r)| {
            let mut x = alg.reduce_path(p);
            x = x.add_scaled(&-Rational::one(), &alg.reduce_path(r));
            x.is_zero()
        })
    }
}

/// Pairs of length-2 paths forming a diamond, each unordered pair once.
pub fn diamonds(q: &Quiver) -> Vec<(Path, Path)> {
    let mut two: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for (i, a) in q.arrows().iter().enumerate() {
        for j in q.arrows_from(a.target) {
            let t = q.arrow_data(j).target;
            if t != a.source {
                two.entry((a.source, t)).or_default().push((i, j));
            }
        }
    }
    let mut keys: Vec<_> = two.keys().copied().collect();
    keys.sort();
    let mut out = Vec::new();
    for key in keys {
        let paths = &two[&key];
        for x in 0..paths.len() {
            for y in x + 1..paths.len() {
                let (mx, my) = (q.arrow_data(paths[x].0).target, q.arrow_data(paths[y].0).target);
                if mx != my {
                    out.push((
                        q.path(&[paths[x].0, paths[x].1]).unwrap(),
                        q.path(&[paths[y].0, paths[y].1]).unwrap(),
                    ));
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    A,
    D,
}

/// Vertices of `enveloping(A_n)` that are deleted to present the Auslander
/// algebra of `A_n` (family `A`) or of `D_n` (family `D`).
///
/// The sets are usually written on a grid whose arrows increase both
/// coordinates, for Auslander algebras composed in the opposite order.
/// Reading that grid through the anti-isomorphism `(i, j) ↦ (n+1-i, j)`
/// lands in our conventions.
pub fn paper_deletion_set(family: Family, n: usize) -> Result<Vec<String>> {
    let name = |i: usize, j: usize| format!("({},{})", n + 1 - i, j);
    let mut out = Vec::new();
    match family {
        Family::A => {
            if n < 2 {
                return Err(Error::OutOfRange(format!("family A needs n ≥ 2, got {n}")));
            }
            for j in 1..n {
                for k in j + 1..=n {
                    out.push(name(j, k));
                }
            }
        }
        Family::D => {
            if n < 4 {
                return Err(Error::OutOfRange(format!("family D needs n ≥ 4, got {n}")));
            }
            for k in 1..=n - 2 {
                for j in k + 1..=n {
                    if (k, j) != (n - 2, n - 1) {
                        out.push(name(k, j));
                    }
                }
            }
            for j in 1..=n {
                if j != n - 1 {
                    out.push(name(n, j));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_basis, DEFAULT_MAX_DEGREE};
    use crate::presentation::parse_presentation;

    fn dim(p: &Presentation) -> Option<usize> {
        path_basis(p, DEFAULT_MAX_DEGREE).dimension
    }

    #[test]
    fn grid_sizes() {
        let g = grid_presentation(2, 2).unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.quiver.num_arrows(), 4);
        assert_eq!(g.relations.len(), 1);
        assert_eq!(dim(&g), Some(9));
        assert_eq!(dim(&grid_presentation(3, 4).unwrap()), Some(60));
        assert!(g.quiver.vertex("(2,1)").is_ok());
        assert!(g
            .quiver
            .arrows()
            .iter()
            .any(|a| g.quiver.vertex_name(a.source) == "(1,2)" && g.quiver.vertex_name(a.target) == "(1,1)"));
    }

    #[test]
    fn enveloping_matches_grid() {
        for n in 1..=4 {
            let a = linear(n).unwrap();
            let e = enveloping(&a);
            assert_eq!(e, grid_presentation(n, n).unwrap());
            let t = n * (n + 1) / 2;
            assert_eq!(dim(&e), Some(t * t));
        }
    }

    #[test]
    fn glue_example() {
        let p =
            parse_presentation("vertices: 1 2 3 4\narrow: a 1 2\narrow: b 2 3\narrow: c 3 4\nrelation: a b\n").unwrap();
        let g = glue(&p, &[("2".into(), "4".into())]).unwrap();
        assert_eq!(g.quiver.vertices(), &["1", "2", "3"]);
        let c = g.quiver.arrow("c").unwrap();
        assert_eq!(g.quiver.vertex_name(g.quiver.arrow_data(c).target), "2");
        let rels: Vec<String> = g
            .relations
            .iter()
            .map(|r| crate::presentation::relation_string(&g.quiver, r))
            .collect();
        assert_eq!(rels, vec!["a b", "c b"]);

        let spec = GluingSpec {
            pairs: vec![("2".into(), "4".into())],
            supplement: vec!["2".into()],
            ..Default::default()
        };
        let s = gluing_algebra(&p, &spec).unwrap();
        assert!(s.relations.is_empty());
        let report = path_basis(&s, 3);
        for w in ["a b", "b c", "c b", "a b c", "b c b", "c b c"] {
            assert!(report.contains(w), "{w}");
        }
        assert!(report.truncated);
    }

    #[test]
    fn crossing_set_of_glued_example() {
        let p =
            parse_presentation("vertices: 1 2 3 4\narrow: a 1 2\narrow: b 2 3\narrow: c 3 4\nrelation: a b\n").unwrap();
        let g = glue(&p, &[("2".into(), "4".into())]).unwrap();
        let set = crossing_set(&g, "2", 3).unwrap();
        let words: Vec<String> = set
            .iter()
            .map(|(x, y)| {
                let mut arrows = x.arrows.clone();
                arrows.extend_from_slice(&y.arrows);
                arrows
                    .iter()
                    .map(|&a| g.quiver.arrow_data(a).name.clone())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        for w in ["a", "b", "c", "a b", "b c", "c b", "a b c"] {
            assert!(words.iter().any(|x| x == w), "{w}");
        }
    }

    #[test]
    fn embeddings() {
        let sq = grid_presentation(2, 2).unwrap();
        let e = embed_into_grid(&sq).unwrap();
        assert_eq!((e.m, e.n), (2, 2));
        let star = parse_presentation("vertices: 1 2 3 4\narrow: a 1 4\narrow: b 2 4\narrow: c 3 4\n").unwrap();
        assert_eq!(embed_into_grid(&star), Err(Error::NotPds));
    }

    #[test]
    fn diamonds_detected() {
        assert!(check_diamonds_commutative(&grid_presentation(3, 3).unwrap()));
        let free = Presentation::free(grid_presentation(2, 2).unwrap().quiver);
        assert!(!check_diamonds_commutative(&free));
    }

    #[test]
    fn deletion_sets() {
        let a3 = paper_deletion_set(Family::A, 3).unwrap();
        assert_eq!(a3, vec!["(3,2)", "(3,3)", "(2,3)"]);
        assert_eq!(25 - paper_deletion_set(Family::D, 5).unwrap().len(), 13);
        assert!(paper_deletion_set(Family::D, 3).is_err());
    }
}
