//! Bound quivers `(Q, I)`: relations, the text format, and presentation-level
//! operations (opposite, quotient, vertex deletion).

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::{Path, Quiver};
use crate::rational::Rational;

/// A linear combination of parallel paths of equal length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Rational, Path)>,
}

impl Relation {
    pub fn monomial(p: Path) -> Relation {
        Relation {
            terms: vec![(Rational::one(), p)],
        }
    }

    /// `p - q`.
    pub fn commutativity(p: Path, q: Path) -> Relation {
        Relation {
            terms: vec![(Rational::one(), p), (-Rational::one(), q)],
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Common length of the paths.
    pub fn degree(&self) -> usize {
        self.terms[0].1.len()
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            terms: self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect(),
        }
    }

    fn check(&self, q: &Quiver) -> Result<()> {
        let describe = || relation_string(q, self);
        if self.terms.is_empty() {
            return Err(Error::InvalidRelation("empty relation".into()));
        }
        let (s, t, len) = (self.source(), self.target(), self.degree());
        let mut seen = HashSet::new();
        for (c, p) in &self.terms {
            if c.is_zero() {
                return Err(Error::InvalidRelation(format!("zero coefficient in {}", describe())));
            }
            if p.source != s || p.target != t {
                return Err(Error::NonParallel(describe()));
            }
            if p.len() != len {
                return Err(Error::Inhomogeneous(describe()));
            }
            if !seen.insert(p) {
                return Err(Error::InvalidRelation(format!("repeated path in {}", describe())));
            }
            q.path(&p.arrows)?;
        }
        if len < 2 {
            return Err(Error::InvalidRelation(format!(
                "relation {} has length {len} < 2",
                describe()
            )));
        }
        Ok(())
    }
}

/// A bound quiver over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Result<Self> {
        for r in &relations {
            r.check(&quiver)?;
        }
        Ok(Presentation { quiver, relations })
    }

    /// The path algebra itself (no relations).
    pub fn free(quiver: Quiver) -> Self {
        Presentation {
            quiver,
            relations: Vec::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.quiver.vertex(name)
    }

    /// Parses one relation in the file syntax, e.g. `"a b - c d"`.
    pub fn parse_relation(&self, text: &str) -> Result<Relation> {
        let r = parse_relation_line(&self.quiver, text, 0, 0)?;
        r.check(&self.quiver)?;
        Ok(r)
    }

    /// Adds the given relations, giving the presentation of `(kQ/I)/⟨J⟩ = kQ/⟨I, J⟩`.
    pub fn quotient(&self, extra: &[Relation]) -> Result<Presentation> {
        let mut relations = self.relations.clone();
        relations.extend_from_slice(extra);
        Presentation::new(self.quiver.clone(), relations)
    }

    /// Opposite quiver, every relation path reversed; arrow names are kept.
    pub fn opposite(&self) -> Presentation {
        Presentation {
            quiver: self.quiver.opposite(),
            relations: self.relations.iter().map(Relation::reversed).collect(),
        }
    }

    /// Presentation of `A/AeA` for `e` the sum of the idempotents at `deleted`.
    pub fn delete_vertices(&self, deleted: &[usize]) -> Result<Presentation> {
        Ok(self.delete_vertices_with_report(deleted)?.0)
    }

    /// As [`Presentation::delete_vertices`], also returning the paths that
    /// became zero because the other terms of their relation were deleted.
    pub fn delete_vertices_with_report(&self, deleted: &[usize]) -> Result<(Presentation, Vec<Path>)> {
        let gone: HashSet<usize> = deleted.iter().copied().collect();
        let q = &self.quiver;
        if (0..q.num_vertices()).all(|v| gone.contains(&v)) {
            return Err(Error::EmptyAlgebra);
        }
        let mut nq = Quiver::new();
        let mut vmap = vec![None; q.num_vertices()];
        for (v, name) in q.vertices().iter().enumerate() {
            if !gone.contains(&v) {
                vmap[v] = Some(nq.add_vertex(name.clone())?);
            }
        }
        let mut amap = vec![None; q.num_arrows()];
        for (i, a) in q.arrows().iter().enumerate() {
            if let (Some(s), Some(t)) = (vmap[a.source], vmap[a.target]) {
                amap[i] = Some(nq.add_arrow_idx(a.name.clone(), s, t)?);
            }
        }
        let mut relations = Vec::new();
        let mut newly_zero = Vec::new();
        for r in &self.relations {
            let kept: Vec<(Rational, Path)> = r
                .terms
                .iter()
                .filter_map(|(c, p)| {
                    let arrows: Option<Vec<usize>> = p.arrows.iter().map(|&a| amap[a]).collect();
                    Some((
                        c.clone(),
                        Path {
                            source: vmap[p.source]?,
                            target: vmap[p.target]?,
                            arrows: arrows?,
                        },
                    ))
                })
                .collect();
            if kept.is_empty() {
                continue;
            }
            if kept.len() == 1 && r.terms.len() > 1 {
                let p = kept[0].1.clone();
                newly_zero.push(p.clone());
                relations.push(Relation::monomial(p));
            } else {
                relations.push(Relation { terms: kept });
            }
        }
        Ok((Presentation::new(nq, relations)?, newly_zero))
    }

    pub fn delete_vertices_by_name<S: AsRef<str>>(&self, names: &[S]) -> Result<Presentation> {
        let idx = names
            .iter()
            .map(|n| self.vertex(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.delete_vertices(&idx)
    }

    /// Text form in the quiver-file grammar.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

pub fn relation_string(q: &Quiver, r: &Relation) -> String {
    let mut out = String::new();
    for (i, (c, p)) in r.terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push_str("- ");
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&q.path_word(p));
    }
    out
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.quiver.vertices().join(" "))?;
        for a in self.quiver.arrows() {
            writeln!(
                f,
                "arrow: {} {} {}",
                a.name,
                self.quiver.vertex_name(a.source),
                self.quiver.vertex_name(a.target)
            )?;
        }
        for r in &self.relations {
            writeln!(f, "relation: {}", relation_string(&self.quiver, r))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_presentation(s)
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(text: &str, base_col: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (ci, (bi, ch)) in text.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((c0, b0)) = start.take() {
                out.push((c0, &text[b0..bi]));
            }
        } else if start.is_none() {
            start = Some((base_col + ci + 1, bi));
        }
    }
    if let Some((c0, b0)) = start {
        out.push((c0, &text[b0..]));
    }
    out
}

fn parse_relation_line(q: &Quiver, text: &str, line: usize, base_col: usize) -> Result<Relation> {
    let toks = tokens(text, base_col);
    if toks.is_empty() {
        return Err(syntax(line, base_col + 1, "empty relation"));
    }
    let mut terms: Vec<(Rational, Path)> = Vec::new();
    let mut i = 0;
    let mut sign = Rational::one();
    if toks[0].1 == "-" || toks[0].1 == "+" {
        if toks[0].1 == "-" {
            sign = -Rational::one();
        }
        i = 1;
    }
    loop {
        // one term: [coef*]name name ...
        let mut coef = sign.clone();
        let mut names: Vec<(usize, &str)> = Vec::new();
        while i < toks.len() && toks[i].1 != "+" && toks[i].1 != "-" {
            let (col, tok) = toks[i];
            if names.is_empty() {
                if let Some((ctext, rest)) = tok.split_once('*') {
                    let c: Rational = ctext
                        .parse()
                        .map_err(|_| syntax(line, col, format!("bad coefficient `{ctext}`")))?;
                    coef = &coef * &c;
                    if !rest.is_empty() {
                        names.push((col + ctext.chars().count() + 1, rest));
                    }
                    i += 1;
                    continue;
                }
            }
            names.push((col, tok));
            i += 1;
        }
        if names.is_empty() {
            let col = toks.get(i).map_or(base_col + text.chars().count() + 1, |t| t.0);
            return Err(syntax(line, col, "expected a path"));
        }
        let mut arrows = Vec::with_capacity(names.len());
        for (col, n) in &names {
            arrows.push(
                q.arrow(n)
                    .map_err(|_| syntax(line, *col, format!("unknown arrow `{n}`")))?,
            );
        }
        let path = q.path(&arrows).map_err(|e| syntax(line, names[0].0, e.to_string()))?;
        terms.push((coef, path));
        if i >= toks.len() {
            break;
        }
        sign = if toks[i].1 == "-" {
            -Rational::one()
        } else {
            Rational::one()
        };
        i += 1;
        if i >= toks.len() {
            return Err(syntax(line, toks[i - 1].0, "dangling sign"));
        }
    }
    Ok(Relation { terms })
}

/// Parses the line-oriented quiver format:
///
/// ```text
/// # comment
/// vertices: 1 2 3
/// arrow: a 1 2
/// arrow: b 2 3
/// relation: a b
/// ```
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut q = Quiver::new();
    let mut have_vertices = false;
    let mut pending: Vec<(usize, usize, String)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap();
        if body.trim().is_empty() {
            continue;
        }
        let Some((key, rest)) = body.split_once(':') else {
            let col = body.chars().take_while(|c| c.is_whitespace()).count() + 1;
            return Err(syntax(line, col, "expected `vertices:`, `arrow:` or `relation:`"));
        };
        let base_col = key.chars().count() + 1;
        match key.trim() {
            "vertices" => {
                if have_vertices {
                    return Err(syntax(line, 1, "second `vertices:` line"));
                }
                have_vertices = true;
                for (col, v) in tokens(rest, base_col) {
                    q.add_vertex(v).map_err(|e| syntax(line, col, e.to_string()))?;
                }
            }
            "arrow" => {
                let toks = tokens(rest, base_col);
                if toks.len() != 3 {
                    return Err(syntax(line, base_col, "expected `arrow: name source target`"));
                }
                if !have_vertices {
                    return Err(syntax(line, 1, "arrow declared before `vertices:`"));
                }
                let s = q
                    .vertex(toks[1].1)
                    .map_err(|e| syntax(line, toks[1].0, e.to_string()))?;
                let t = q
                    .vertex(toks[2].1)
                    .map_err(|e| syntax(line, toks[2].0, e.to_string()))?;
                q.add_arrow_idx(toks[0].1, s, t)
                    .map_err(|e| syntax(line, toks[0].0, e.to_string()))?;
            }
            "relation" => pending.push((line, base_col, rest.to_string())),
            other => {
                return Err(syntax(line, 1, format!("unknown keyword `{other}`")));
            }
        }
    }
    let mut relations = Vec::new();
    for (line, base_col, rest) in pending {
        let r = parse_relation_line(&q, &rest, line, base_col)?;
        r.check(&q).map_err(|e| match e {
            Error::Inhomogeneous(_) | Error::NonParallel(_) => e,
            other => syntax(line, base_col + 1, other.to_string()),
        })?;
        relations.push(r);
    }
    Ok(Presentation { quiver: q, relations })
}
