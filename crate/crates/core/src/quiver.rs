//! Finite quivers and paths.
//!
//! Paths compose left to right: the path `ab` traverses `a` first, then `b`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Vertices and named arrows, both kept in declaration order.
#[derive(Clone, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quiver")
            .field("vertices", &self.vertices)
            .field(
                "arrows",
                &self
                    .arrows
                    .iter()
                    .map(|a| format!("{}: {}->{}", a.name, self.vertices[a.source], self.vertices[a.target]))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a quiver from vertex names and `(name, source, target)` triples.
    pub fn from_parts<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let mut q = Quiver::new();
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (name, s, t) in arrows {
            q.add_arrow(name, &s, &t)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if self.vertex_index.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        let i = self.vertices.len();
        self.vertex_index.insert(name.clone(), i);
        self.vertices.push(name);
        Ok(i)
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, source: &str, target: &str) -> Result<usize> {
        let name = name.into();
        let s = self.vertex(source)?;
        let t = self.vertex(target)?;
        self.add_arrow_idx(name, s, t)
    }

    pub fn add_arrow_idx(&mut self, name: impl Into<String>, source: usize, target: usize) -> Result<usize> {
        let name = name.into();
        if self.arrow_index.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        assert!(source < self.vertices.len() && target < self.vertices.len());
        let i = self.arrows.len();
        self.arrow_index.insert(name.clone(), i);
        self.arrows.push(Arrow { name, source, target });
        Ok(i)
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<usize> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_data(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_to(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    pub fn opposite(&self) -> Quiver {
        let mut q = Quiver::new();
        for v in &self.vertices {
            q.add_vertex(v.clone()).unwrap();
        }
        for a in &self.arrows {
            q.add_arrow_idx(a.name.clone(), a.target, a.source).unwrap();
        }
        q
    }

    pub fn trivial_path(&self, v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        Path {
            source: self.arrows[a].source,
            target: self.arrows[a].target,
            arrows: vec![a],
        }
    }

    /// Path from a sequence of arrow indices; checks composability.
    pub fn path(&self, arrows: &[usize]) -> Result<Path> {
        let first = *arrows
            .first()
            .ok_or_else(|| Error::NotComposable("empty arrow sequence".into()))?;
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::NotComposable(format!(
                    "{} ends at {} but {} starts at {}",
                    self.arrows[w[0]].name,
                    self.vertices[self.arrows[w[0]].target],
                    self.arrows[w[1]].name,
                    self.vertices[self.arrows[w[1]].source]
                )));
            }
        }
        Ok(Path {
            source: self.arrows[first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    /// Path from whitespace-separated arrow names, e.g. `"a b"`.
    pub fn parse_path(&self, word: &str) -> Result<Path> {
        let arrows = word
            .split_whitespace()
            .map(|n| self.arrow(n))
            .collect::<Result<Vec<_>>>()?;
        self.path(&arrows)
    }

    /// Path visiting the named vertices in order, taking the first arrow
    /// between each consecutive pair.
    pub fn path_through<S: AsRef<str>>(&self, vertices: &[S]) -> Result<Path> {
        let mut arrows = Vec::with_capacity(vertices.len().saturating_sub(1));
        for w in vertices.windows(2) {
            let (s, t) = (self.vertex(w[0].as_ref())?, self.vertex(w[1].as_ref())?);
            let a = self
                .arrows_from(s)
                .find(|&a| self.arrows[a].target == t)
                .ok_or_else(|| Error::NotComposable(format!("no arrow {} → {}", w[0].as_ref(), w[1].as_ref())))?;
            arrows.push(a);
        }
        self.path(&arrows)
    }

    /// `p` followed by `q`.
    pub fn compose(&self, p: &Path, q: &Path) -> Result<Path> {
        if p.target != q.source {
            return Err(Error::NotComposable(format!(
                "{} ends at {} but {} starts at {}",
                self.path_word(p),
                self.vertices[p.target],
                self.path_word(q),
                self.vertices[q.source]
            )));
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Ok(Path {
            source: p.source,
            target: q.target,
            arrows,
        })
    }

    /// Arrow names joined by spaces; trivial paths print as `e_<vertex>`.
    pub fn path_word(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

// A trivial path has length 0 but is not empty: it carries its vertex.
#[allow(clippy::len_without_is_empty)]
impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Same arrows in reverse order, as a path of the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            source: self.target,
            target: self.source,
            arrows,
        }
    }

    pub fn passes_through(&self, q: &Quiver, v: usize) -> bool {
        self.source == v || self.target == v || self.arrows.iter().any(|&a| q.arrows[a].target == v)
    }

    /// Vertices visited, in order, including both endpoints.
    pub fn vertices(&self, q: &Quiver) -> Vec<usize> {
        let mut out = vec![self.source];
        out.extend(self.arrows.iter().map(|&a| q.arrows[a].target));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a3() -> Quiver {
        let mut q = Quiver::new();
        for v in ["1", "2", "3"] {
            q.add_vertex(v).unwrap();
        }
        q.add_arrow("a", "1", "2").unwrap();
        q.add_arrow("b", "2", "3").unwrap();
        q
    }

    #[test]
    fn trivial_paths_are_identities() {
        let q = a3();
        let a = q.arrow_path(0);
        assert_eq!(q.compose(&q.trivial_path(0), &a).unwrap(), a);
        assert_eq!(q.compose(&a, &q.trivial_path(1)).unwrap(), a);
    }

    #[test]
    fn composition_order() {
        let q = a3();
        let ab = q.compose(&q.arrow_path(0), &q.arrow_path(1)).unwrap();
        assert_eq!(q.path_word(&ab), "a b");
        assert_eq!(ab.len(), 2);
        assert!(matches!(
            q.compose(&q.arrow_path(1), &q.arrow_path(0)),
            Err(Error::NotComposable(_))
        ));
    }

    #[test]
    fn duplicate_and_unknown_names() {
        let mut q = a3();
        assert!(matches!(q.add_vertex("1"), Err(Error::DuplicateName(_))));
        assert!(matches!(q.add_arrow("c", "1", "9"), Err(Error::UnknownVertex(_))));
        assert!(matches!(q.add_arrow("a", "1", "3"), Err(Error::DuplicateName(_))));
    }

    // A loop quiver with two loops at one vertex: every word is a path.
    proptest! {
        #[test]
        fn compose_is_associative(x in proptest::collection::vec(0usize..2, 0..4),
                                  y in proptest::collection::vec(0usize..2, 0..4),
                                  z in proptest::collection::vec(0usize..2, 0..4)) {
            let mut q = Quiver::new();
            q.add_vertex("v").unwrap();
            q.add_arrow("s", "v", "v").unwrap();
            q.add_arrow("t", "v", "v").unwrap();
            let mk = |w: &Vec<usize>| if w.is_empty() { q.trivial_path(0) } else { q.path(w).unwrap() };
            let (p, r, s) = (mk(&x), mk(&y), mk(&z));
            let left = q.compose(&q.compose(&p, &r).unwrap(), &s).unwrap();
            let right = q.compose(&p, &q.compose(&r, &s).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
