//! Indecomposables by closure under `τ^{±1}` and almost split sequences,
//! Auslander-Reiten quivers from `rad/rad²`, and presentations of Auslander
//! algebras by mesh relations.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::decompose::{cokernel, decompose, kernel, normalize_basis, radical, socle_quotient};
use crate::error::{Error, Result};
use crate::homological::FdAlgebra;
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::presentation::{Presentation, Relation};
use crate::quiver::Quiver;
use crate::rational::Rational;
use crate::rep::{end_radical, hom_basis, is_isomorphic, Morphism, Representation};

pub const DEFAULT_CUTOFF: usize = 500;

/// Modules expanded per round of the closure; fixed so that the result does
/// not depend on the number of worker threads.
const BATCH: usize = 16;

#[derive(Clone, Debug)]
pub enum Indecomposables {
    /// Every indecomposable up to isomorphism, in canonical order.
    Complete(Vec<Representation>),
    /// The closure grew past the cutoff.
    RepInfiniteSuspected { explored: usize },
}

impl Indecomposables {
    pub fn count(&self) -> Option<usize> {
        match self {
            Indecomposables::Complete(v) => Some(v.len()),
            Indecomposables::RepInfiniteSuspected { .. } => None,
        }
    }
}

struct Overflow;

/// Modules found so far, deduplicated up to isomorphism, with the
/// translates already known for each.
struct Closure<'a> {
    fd: &'a FdAlgebra,
    cutoff: usize,
    modules: Vec<Representation>,
    by_dims: HashMap<Vec<usize>, Vec<usize>>,
    /// `(total dimension, index)` of modules whose translates are pending.
    pending: BTreeSet<(usize, usize)>,
    tau_known: Vec<bool>,
    tau_inv_known: Vec<bool>,
    knitted: Vec<bool>,
}

impl<'a> Closure<'a> {
    fn new(fd: &'a FdAlgebra, cutoff: usize) -> Self {
        Closure {
            fd,
            cutoff,
            modules: Vec::new(),
            by_dims: HashMap::new(),
            pending: BTreeSet::new(),
            tau_known: Vec::new(),
            tau_inv_known: Vec::new(),
            knitted: Vec::new(),
        }
    }

    /// Index of `m`, inserting it if new.
    fn insert(&mut self, m: Representation) -> std::result::Result<usize, Overflow> {
        let q = &self.fd.presentation().quiver;
        let m = normalize_basis(q, &m);
        let same = self.by_dims.entry(m.dims.clone()).or_default();
        if let Some(&j) = same.iter().find(|&&j| is_isomorphic(q, &self.modules[j], &m)) {
            return Ok(j);
        }
        let i = self.modules.len();
        same.push(i);
        self.pending.insert((m.total_dim(), i));
        self.modules.push(m);
        self.tau_known.push(false);
        self.tau_inv_known.push(false);
        self.knitted.push(false);
        if self.modules.len() > self.cutoff {
            return Err(Overflow);
        }
        Ok(i)
    }

    /// Closes under `τ` and `τ⁻¹`, smallest modules first.
    fn translate(&mut self) -> std::result::Result<(), Overflow> {
        while !self.pending.is_empty() {
            let batch: Vec<usize> = self.pending.iter().take(BATCH).map(|&(_, i)| i).collect();
            for &i in &batch {
                self.pending.remove(&(self.modules[i].total_dim(), i));
            }
            let fd = self.fd;
            let jobs: Vec<(usize, bool, bool)> = batch
                .iter()
                .map(|&i| (i, !self.tau_known[i], !self.tau_inv_known[i]))
                .collect();
            let modules = &self.modules;
            let images: Vec<(usize, Option<Representation>, Option<Representation>)> = jobs
                .par_iter()
                .map(|&(i, t, ti)| {
                    let m = &modules[i];
                    (i, t.then(|| fd.tau(m)), ti.then(|| fd.tau_inv(m)))
                })
                .collect();
            for (i, t, ti) in images {
                self.tau_known[i] = true;
                self.tau_inv_known[i] = true;
                if let Some(t) = t.filter(|t| !t.is_zero()) {
                    let j = self.insert(t)?;
                    self.tau_inv_known[j] = true;
                }
                if let Some(ti) = ti.filter(|t| !t.is_zero()) {
                    let j = self.insert(ti)?;
                    self.tau_known[j] = true;
                }
            }
        }
        Ok(())
    }

    /// Adds the indecomposable neighbours of every module in the
    /// Auslander-Reiten quiver not yet knitted: summands of almost split
    /// middle terms, of `rad P` and of `I / soc I`. Returns whether anything
    /// new was found.
    fn knit(&mut self) -> Result<std::result::Result<bool, Overflow>> {
        let fd = self.fd;
        let q = &fd.presentation().quiver;
        let todo: Vec<usize> = (0..self.modules.len()).filter(|&i| !self.knitted[i]).collect();
        let before = self.modules.len();
        for chunk in todo.chunks(BATCH) {
            let modules = &self.modules;
            let found: Vec<Vec<Representation>> = chunk
                .par_iter()
                .map(|&i| -> Result<Vec<Representation>> {
                    let m = &modules[i];
                    let mut out = Vec::new();
                    if let Some(e) = almost_split_middle(fd, m)? {
                        out.extend(decompose(q, &e)?);
                    }
                    if fd.tau(m).is_zero() {
                        out.extend(decompose(q, &radical(q, m))?);
                    }
                    if fd.tau_inv(m).is_zero() {
                        out.extend(decompose(q, &socle_quotient(q, m))?);
                    }
                    Ok(out)
                })
                .collect::<Result<_>>()?;
            for &i in chunk {
                self.knitted[i] = true;
            }
            for m in found.into_iter().flatten() {
                if let Err(o) = self.insert(m) {
                    return Ok(Err(o));
                }
            }
        }
        Ok(Ok(self.modules.len() > before))
    }
}

/// Middle term `E` of the almost split sequence `0 → X → E → τ⁻¹X → 0`, or
/// `None` when `X` is injective.
///
/// With `Z = τ⁻¹X` and `0 → Ω → P₀ → Z → 0` a projective cover,
/// `Ext¹(Z, X) = Hom(Ω, X) / Hom(P₀, X)|_Ω`. The sequence is the pushout along
/// any class annihilated by `rad End(X)`.
pub fn almost_split_middle(fd: &FdAlgebra, x: &Representation) -> Result<Option<Representation>> {
    let q = &fd.presentation().quiver;
    let z = fd.tau_inv(x);
    if z.is_zero() {
        return Ok(None);
    }
    let (p0, pi) = fd.projective_cover(&z);
    let (omega, obasis) = kernel(q, &p0, &pi);
    let iota = Morphism {
        blocks: (0..q.num_vertices())
            .map(|v| {
                let cols: Vec<Vec<Rational>> = obasis[v].iter().map(|b| b.to_dense(p0.dims[v])).collect();
                Matrix::from_columns(p0.dims[v], &cols)
            })
            .collect(),
    };
    let hom = hom_basis(q, &omega, x);
    let width: usize = (0..q.num_vertices()).map(|v| x.dims[v] * omega.dims[v]).sum();
    let mut restricted = Echelon::new(width);
    for h in hom_basis(q, &p0, x) {
        restricted.insert(&h.after(&iota).flatten());
    }
    let end = hom_basis(q, x, x);
    let rad: Vec<Morphism> = end_radical(&end)
        .iter()
        .map(|c| Morphism::linear_combination(&end, &c.to_dense(end.len())))
        .collect();
    // Coefficients c with r ∘ (Σ c_i h_i) ∈ Hom(P₀, X)|_Ω for every r.
    let mut eqs = Echelon::new(hom.len());
    for r in &rad {
        let cols: Vec<SparseVec> = hom.iter().map(|h| restricted.reduce(&r.after(h).flatten())).collect();
        for coord in 0..width {
            let row: Vec<(usize, Rational)> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| (i, c.get(coord)))
                .filter(|(_, x)| !x.is_zero())
                .collect();
            if !row.is_empty() {
                eqs.insert(&SparseVec::from_entries(row));
            }
        }
    }
    let g = eqs
        .kernel()
        .into_iter()
        .map(|c| Morphism::linear_combination(&hom, &c.to_dense(hom.len())))
        .find(|g| !restricted.contains(&g.flatten()))
        .ok_or_else(|| Error::ClosureIncomplete("no almost split sequence found".into()))?;
    // Pushout: (X ⊕ P₀) / {(g w, -ι w)}.
    let sum = x.direct_sum(&p0);
    let push = Morphism {
        blocks: (0..q.num_vertices())
            .map(|v| {
                let top = &g.blocks[v];
                let bottom = iota.blocks[v].scale(&-Rational::one());
                let rows: Vec<Vec<Rational>> = (0..top.nrows())
                    .map(|r| top.row(r).to_vec())
                    .chain((0..bottom.nrows()).map(|r| bottom.row(r).to_vec()))
                    .collect();
                if rows.is_empty() {
                    Matrix::zeros(0, omega.dims[v])
                } else {
                    Matrix::from_rows(rows)
                }
            })
            .collect(),
    };
    Ok(Some(cokernel(q, &sum, &push)))
}

/// Every indecomposable up to isomorphism, or `None` once more than
/// `cutoff` have been found.
///
/// Starts from the projectives and injectives and closes under `τ^{±1}`,
/// which suffices for representation-directed algebras. If the resulting
/// list fails the completeness check, the Auslander-Reiten quiver is knitted
/// through almost split sequences until nothing new appears, which also
/// reaches `τ`-periodic modules.
pub fn enumerate_indecomposables(fd: &FdAlgebra, cutoff: usize) -> Result<Option<Vec<Representation>>> {
    let mut c = Closure::new(fd, cutoff);
    let seeds: Vec<Representation> = (0..fd.num_vertices())
        .map(|v| fd.projective(v))
        .chain((0..fd.num_vertices()).map(|v| fd.injective(v)))
        .collect();
    for s in seeds {
        if c.insert(s).is_err() {
            return Ok(None);
        }
    }
    if c.translate().is_err() {
        return Ok(None);
    }
    if ar_quiver(fd, sorted(c.modules.clone())).is_err() {
        loop {
            match c.knit()? {
                Err(Overflow) => return Ok(None),
                Ok(false) => break,
                Ok(true) => {
                    if c.translate().is_err() {
                        return Ok(None);
                    }
                }
            }
        }
    }
    Ok(Some(sorted(c.modules)))
}

fn sorted(mut modules: Vec<Representation>) -> Vec<Representation> {
    modules.sort_by_key(Representation::canonical_key);
    modules
}

/// All indecomposables, checked for completeness through the
/// Auslander-Reiten quiver they generate.
pub fn all_indecomposables(fd: &FdAlgebra, cutoff: usize) -> Result<Indecomposables> {
    match enumerate_indecomposables(fd, cutoff)? {
        None => Ok(Indecomposables::RepInfiniteSuspected { explored: cutoff + 1 }),
        Some(modules) => {
            ar_quiver(fd, modules.clone())?;
            Ok(Indecomposables::Complete(modules))
        }
    }
}

pub fn count_indecomposables(fd: &FdAlgebra, cutoff: usize) -> Result<Option<usize>> {
    Ok(all_indecomposables(fd, cutoff)?.count())
}

/// Translation quiver on a complete list of indecomposables.
#[derive(Clone, Debug)]
pub struct ARQuiver {
    pub modules: Vec<Representation>,
    /// `irr[i][j] = dim rad(M_i, M_j) / rad²(M_i, M_j)`.
    pub irr: Vec<Vec<usize>>,
    pub hom_dims: Vec<Vec<usize>>,
    /// `tau[i] = Some(j)` when `τ M_i ≅ M_j`; `None` on projectives.
    pub tau: Vec<Option<usize>>,
    pub projective: Vec<bool>,
    pub injective: Vec<bool>,
}

/// The mesh of an Auslander-Reiten sequence `0 → τN → ⊕ E → N → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mesh {
    pub end: usize,
    pub start: usize,
    /// `(module, multiplicity)` pairs in index order.
    pub middles: Vec<(usize, usize)>,
}

fn add_dims(acc: &mut [i64], d: &[usize], k: i64) {
    for (a, &x) in acc.iter_mut().zip(d) {
        *a += k * x as i64;
    }
}

/// Computes `rad/rad²`, `τ` and the flags, then checks mesh additivity at
/// every non-projective vertex and `rad P = ⊕ E^{irr(E,P)}` (dimensions)
/// at every projective; a failure means the list is not closed under the
/// maps of almost split sequences.
pub fn ar_quiver(fd: &FdAlgebra, modules: Vec<Representation>) -> Result<ARQuiver> {
    let q = &fd.presentation().quiver;
    let n = modules.len();

    let homs: Vec<Vec<Vec<Morphism>>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| hom_basis(q, &modules[i], &modules[j])).collect())
        .collect();
    let hom_dims: Vec<Vec<usize>> = homs.iter().map(|r| r.iter().map(Vec::len).collect()).collect();
    let rad: Vec<Vec<Vec<Morphism>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i != j {
                        homs[i][j].clone()
                    } else {
                        let end = &homs[i][i];
                        end_radical(end)
                            .iter()
                            .map(|c| Morphism::linear_combination(end, &c.to_dense(end.len())))
                            .collect()
                    }
                })
                .collect()
        })
        .collect();

    let irr: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let r = &rad[i][j];
                    if r.is_empty() {
                        return 0;
                    }
                    let mut ech = Echelon::new(r[0].flatten_len());
                    'outer: for l in 0..n {
                        if rad[i][l].is_empty() || rad[l][j].is_empty() {
                            continue;
                        }
                        for f in &rad[i][l] {
                            for g in &rad[l][j] {
                                ech.insert(&g.after(f).flatten());
                                if ech.rank() == r.len() {
                                    break 'outer;
                                }
                            }
                        }
                    }
                    r.len() - ech.rank()
                })
                .collect()
        })
        .collect();

    let taus: Vec<Representation> = modules.par_iter().map(|m| fd.tau(m)).collect();
    let mut tau = vec![None; n];
    for (i, t) in taus.iter().enumerate() {
        if t.is_zero() {
            continue;
        }
        let j = (0..n)
            .find(|&j| modules[j].dims == t.dims && is_isomorphic(q, &modules[j], t))
            .ok_or_else(|| Error::ClosureIncomplete(format!("τ of module {i} is not in the list")))?;
        tau[i] = Some(j);
    }
    let projective: Vec<bool> = tau.iter().map(Option::is_none).collect();
    let mut injective = vec![true; n];
    for j in tau.iter().flatten() {
        injective[*j] = false;
    }

    for nn in 0..n {
        let mut lhs = vec![0i64; q.num_vertices()];
        for e in 0..n {
            add_dims(&mut lhs, &modules[e].dims, irr[e][nn] as i64);
        }
        let mut rhs = vec![0i64; q.num_vertices()];
        add_dims(&mut rhs, &modules[nn].dims, 1);
        match tau[nn] {
            Some(t) => add_dims(&mut rhs, &modules[t].dims, 1),
            None => {
                // rad P has dimension vector dim P - e_top.
                let top = fd.minimal_proj_presentation(&modules[nn]).p0;
                if top.len() != 1 {
                    return Err(Error::ClosureIncomplete(format!(
                        "module {nn} has zero τ but is not an indecomposable projective"
                    )));
                }
                rhs[top[0]] -= 1;
            }
        }
        if lhs != rhs {
            return Err(Error::ClosureIncomplete(format!(
                "additivity fails at module {nn}: middle terms give {lhs:?}, expected {rhs:?}"
            )));
        }
    }

    Ok(ARQuiver {
        modules,
        irr,
        hom_dims,
        tau,
        projective,
        injective,
    })
}

impl Morphism {
    fn flatten_len(&self) -> usize {
        self.blocks.iter().map(|b| b.nrows() * b.ncols()).sum()
    }
}

impl ARQuiver {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// No oriented cycle of irreducible maps.
    pub fn is_acyclic(&self) -> bool {
        let n = self.len();
        let mut indeg: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| self.irr[i][j] > 0).count()).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&j| indeg[j] == 0).collect();
        let mut seen = 0;
        while let Some(i) = stack.pop() {
            seen += 1;
            for j in 0..n {
                if self.irr[i][j] > 0 {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        stack.push(j);
                    }
                }
            }
        }
        seen == n
    }

    pub fn meshes(&self) -> Vec<Mesh> {
        (0..self.len())
            .filter_map(|nn| {
                let start = self.tau[nn]?;
                let middles = (0..self.len())
                    .filter(|&e| self.irr[e][nn] > 0)
                    .map(|e| (e, self.irr[e][nn]))
                    .collect();
                Some(Mesh {
                    end: nn,
                    start,
                    middles,
                })
            })
            .collect()
    }

    pub fn num_arrows(&self) -> usize {
        self.irr.iter().flatten().sum()
    }

    /// DOT graph: solid edges for irreducible maps, dashed edges `N → τN`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph AR {\n  rankdir=LR;\n");
        for (i, m) in self.modules.iter().enumerate() {
            let label = m.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("");
            let shape = if self.projective[i] {
                ", shape=box"
            } else if self.injective[i] {
                ", shape=diamond"
            } else {
                ""
            };
            let _ = writeln!(s, "  m{i} [label=\"{label}\"{shape}];");
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                match self.irr[i][j] {
                    0 => {}
                    1 => {
                        let _ = writeln!(s, "  m{i} -> m{j};");
                    }
                    k => {
                        let _ = writeln!(s, "  m{i} -> m{j} [label=\"{k}\"];");
                    }
                }
            }
        }
        for (i, t) in self.tau.iter().enumerate() {
            if let Some(t) = t {
                let _ = writeln!(s, "  m{i} -> m{t} [style=dashed, constraint=false];");
            }
        }
        s.push_str("}\n");
        s
    }
}

fn vertex_name(i: usize) -> String {
    format!("m{i}")
}

fn arrow_name(from: usize, to: usize) -> String {
    format!("f{from}_{to}")
}

/// Presentation of the Auslander algebra: the opposite of the AR quiver with
/// one mesh relation per non-projective vertex, read in the opposite
/// orientation. One middle term gives a zero relation, two give a
/// commutativity `p₁ - p₂`; with more, the first path enters with `+` and the
/// rest with `-`. Verified against `Σ dim Hom(M, N)`.
pub fn auslander_presentation(ar: &ARQuiver) -> Result<Presentation> {
    let n = ar.len();
    for i in 0..n {
        for j in 0..n {
            if ar.irr[i][j] > 1 {
                return Err(Error::MultiplicityUnsupported {
                    from: i,
                    to: j,
                    multiplicity: ar.irr[i][j],
                });
            }
        }
    }
    let mut q = Quiver::new();
    for i in 0..n {
        q.add_vertex(vertex_name(i))?;
    }
    let mut arrow_of = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            if ar.irr[i][j] == 1 {
                arrow_of.insert((i, j), q.add_arrow_idx(arrow_name(i, j), j, i)?);
            }
        }
    }
    let mut relations = Vec::new();
    for mesh in ar.meshes() {
        let terms: Vec<(Rational, crate::quiver::Path)> = mesh
            .middles
            .iter()
            .enumerate()
            .map(|(k, &(e, _))| {
                let p = q.path(&[arrow_of[&(e, mesh.end)], arrow_of[&(mesh.start, e)]])?;
                let c = if k == 0 { Rational::one() } else { -Rational::one() };
                Ok((c, p))
            })
            .collect::<Result<_>>()?;
        relations.push(Relation { terms });
    }
    let pres = Presentation::new(q, relations)?;
    let presented = crate::algebra::Algebra::new(&pres, crate::algebra::DEFAULT_MAX_DEGREE)
        .dim()
        .unwrap_or(usize::MAX);
    let hom_sum: usize = ar.hom_dims.iter().flatten().sum();
    if presented != hom_sum {
        return Err(Error::DimensionLaw { presented, hom_sum });
    }
    Ok(pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn fd(text: &str) -> FdAlgebra {
        FdAlgebra::new(&parse_presentation(text).unwrap()).unwrap()
    }

    #[test]
    fn a2_has_three_modules_and_one_mesh() {
        let a = fd("vertices: 1 2\narrow: a 1 2\n");
        let Indecomposables::Complete(mods) = all_indecomposables(&a, DEFAULT_CUTOFF).unwrap() else {
            panic!("A2 is representation-finite");
        };
        let dims: Vec<Vec<usize>> = mods.iter().map(|m| m.dims.clone()).collect();
        assert_eq!(dims, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        let ar = ar_quiver(&a, mods).unwrap();
        // S2 -> P1 -> S1
        assert_eq!(ar.irr[0][2], 1);
        assert_eq!(ar.irr[2][1], 1);
        assert_eq!(ar.num_arrows(), 2);
        assert_eq!(ar.tau[1], Some(0));
        assert_eq!(
            ar.meshes(),
            vec![Mesh {
                end: 1,
                start: 0,
                middles: vec![(2, 1)]
            }]
        );
        let aus = auslander_presentation(&ar).unwrap();
        assert_eq!(aus.num_vertices(), 3);
        assert_eq!(aus.relations.len(), 1);
        assert!(aus.relations[0].is_monomial());
        assert!(ar.is_acyclic());
    }

    #[test]
    fn a3_triangle() {
        let a = fd("vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\n");
        let mods = enumerate_indecomposables(&a, DEFAULT_CUTOFF).unwrap().unwrap();
        assert_eq!(mods.len(), 6);
        let ar = ar_quiver(&a, mods).unwrap();
        let meshes = ar.meshes();
        assert_eq!(meshes.len(), 3);
        let mut shapes: Vec<usize> = meshes.iter().map(|m| m.middles.len()).collect();
        shapes.sort();
        assert_eq!(shapes, vec![1, 1, 2]);
        assert_eq!(ar.projective.iter().filter(|&&p| p).count(), 3);
        assert_eq!(ar.injective.iter().filter(|&&p| p).count(), 3);
    }

    #[test]
    fn incomplete_lists_are_rejected() {
        let a = fd("vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\n");
        let mut mods = enumerate_indecomposables(&a, DEFAULT_CUTOFF).unwrap().unwrap();
        // drop the simple S2 (dimension vector 010)
        mods.retain(|m| m.dims != vec![0, 1, 0]);
        assert!(matches!(ar_quiver(&a, mods), Err(Error::ClosureIncomplete(_))));
    }

    #[test]
    fn kronecker_is_flagged() {
        let a = fd("vertices: x y\narrow: a x y\narrow: b x y\n");
        assert!(matches!(
            all_indecomposables(&a, 30).unwrap(),
            Indecomposables::RepInfiniteSuspected { .. }
        ));
    }
}
