//! String combinatorics for monomial bound quivers: string-pair validation,
//! enumeration of strings and bands, and string modules.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::presentation::Presentation;
use crate::quiver::Quiver;
use crate::rational::Rational;
use crate::rep::Representation;

pub const DEFAULT_MAX_LENGTH: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: usize) -> Self {
        Letter { arrow, inverse: false }
    }

    pub fn inv(arrow: usize) -> Self {
        Letter { arrow, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }

    pub fn start(self, q: &Quiver) -> usize {
        let a = q.arrow_data(self.arrow);
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn end(self, q: &Quiver) -> usize {
        let a = q.arrow_data(self.arrow);
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }

    /// Order by arrow name, direct before inverse.
    pub fn cmp_in(self, other: Letter, q: &Quiver) -> Ordering {
        q.arrow_data(self.arrow)
            .name
            .cmp(&q.arrow_data(other.arrow).name)
            .then(self.inverse.cmp(&other.inverse))
    }
}

/// A walk: trivial at `start`, or a nonempty sequence of letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringWord {
    pub start: usize,
    pub letters: Vec<Letter>,
}

impl StringWord {
    pub fn trivial(v: usize) -> Self {
        StringWord {
            start: v,
            letters: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.letters.last().map_or(self.start, |l| l.end(q))
    }

    /// Formal inverse: reversed, every letter inverted.
    pub fn inverse(&self, q: &Quiver) -> StringWord {
        StringWord {
            start: self.end(q),
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Vertices visited, in order.
    pub fn vertices(&self, q: &Quiver) -> Vec<usize> {
        let mut out = vec![self.start];
        out.extend(self.letters.iter().map(|l| l.end(q)));
        out
    }

    fn cmp_in(&self, other: &StringWord, q: &Quiver) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| {
                for (x, y) in self.letters.iter().zip(&other.letters) {
                    match x.cmp_in(*y, q) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
            .then(self.start.cmp(&other.start))
    }

    /// The smaller of the word and its inverse.
    pub fn canonical(&self, q: &Quiver) -> StringWord {
        let inv = self.inverse(q);
        if inv.cmp_in(self, q) == Ordering::Less {
            inv
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self, q: &Quiver) -> bool {
        self.inverse(q).cmp_in(self, q) != Ordering::Less
    }

    /// Letters as `a` / `a^-1`, space separated; trivial words print `e_<vertex>`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.letters.is_empty() {
            return format!("e_{}", q.vertex_name(self.start));
        }
        self.letters
            .iter()
            .map(|l| {
                let n = &q.arrow_data(l.arrow).name;
                if l.inverse {
                    format!("{n}^-1")
                } else {
                    n.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `a b^-1 c`, or `e_<vertex>` for a trivial word.
    pub fn parse(q: &Quiver, text: &str) -> Result<StringWord> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix("e_") {
            if let Ok(v) = q.vertex(v) {
                return Ok(StringWord::trivial(v));
            }
        }
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            letters.push(Letter {
                arrow: q.arrow(name)?,
                inverse,
            });
        }
        let first = letters.first().ok_or_else(|| Error::InvalidWord("empty word".into()))?;
        Ok(StringWord {
            start: first.start(q),
            letters,
        })
    }
}

/// Zero-relation paths (as arrow sequences) of a monomial presentation.
fn zero_paths(pres: &Presentation) -> Result<Vec<Vec<usize>>> {
    pres.relations
        .iter()
        .map(|r| {
            if r.is_monomial() {
                Ok(r.terms[0].1.arrows.clone())
            } else {
                Err(Error::InvalidWord("presentation is not monomial".into()))
            }
        })
        .collect()
}

/// Does the window of letters ending at position `end` (exclusive) read a
/// zero relation, directly or inversely?
fn window_hits(letters: &[Letter], end: usize, zeros: &[Vec<usize>]) -> bool {
    zeros.iter().any(|z| {
        let l = z.len();
        if l > end {
            return false;
        }
        let w = &letters[end - l..end];
        let direct = w.iter().zip(z).all(|(x, &a)| !x.inverse && x.arrow == a);
        let inverse = w.iter().rev().zip(z).all(|(x, &a)| x.inverse && x.arrow == a);
        direct || inverse
    })
}

fn can_append(q: &Quiver, word: &StringWord, l: Letter, zeros: &[Vec<usize>]) -> bool {
    if l.start(q) != word.end(q) {
        return false;
    }
    if let Some(&last) = word.letters.last() {
        if last == l.inverted() {
            return false;
        }
    }
    let mut letters = word.letters.clone();
    letters.push(l);
    !window_hits(&letters, letters.len(), zeros)
}

/// Walk-level validity: composable, reduced, avoiding zero relations.
pub fn is_valid_string(pres: &Presentation, w: &StringWord) -> Result<bool> {
    let q = &pres.quiver;
    let zeros = zero_paths(pres)?;
    if w.start >= q.num_vertices() {
        return Ok(false);
    }
    let mut prefix = StringWord::trivial(w.start);
    for &l in &w.letters {
        if l.arrow >= q.num_arrows() || !can_append(q, &prefix, l, &zeros) {
            return Ok(false);
        }
        prefix.letters.push(l);
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition")]
pub enum StringPairViolation {
    NotMonomial {
        relation: usize,
    },
    S1 {
        vertex: String,
        outgoing: usize,
        incoming: usize,
    },
    S2Right {
        arrow: String,
        continuations: Vec<String>,
    },
    S2Left {
        arrow: String,
        predecessors: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StringPairReport {
    pub passed: bool,
    pub violation: Option<StringPairViolation>,
}

/// Checks (S1), (S2)_R and (S2)_L and that all relations are monomial.
pub fn check_string_pair(pres: &Presentation) -> StringPairReport {
    let q = &pres.quiver;
    let fail = |v| StringPairReport {
        passed: false,
        violation: Some(v),
    };
    if let Some(i) = pres.relations.iter().position(|r| !r.is_monomial()) {
        return fail(StringPairViolation::NotMonomial { relation: i });
    }
    for v in 0..q.num_vertices() {
        let (out, inc) = (q.arrows_from(v).count(), q.arrows_to(v).count());
        if out > 2 || inc > 2 {
            return fail(StringPairViolation::S1 {
                vertex: q.vertex_name(v).to_string(),
                outgoing: out,
                incoming: inc,
            });
        }
    }
    let is_zero = |a: usize, b: usize| pres.relations.iter().any(|r| r.terms[0].1.arrows == [a, b]);
    for a in 0..q.num_arrows() {
        let y = q.arrow_data(a).target;
        let cont: Vec<usize> = q.arrows_from(y).filter(|&b| !is_zero(a, b)).collect();
        if cont.len() > 1 {
            return fail(StringPairViolation::S2Right {
                arrow: q.arrow_data(a).name.clone(),
                continuations: cont.iter().map(|&b| q.arrow_data(b).name.clone()).collect(),
            });
        }
        let x = q.arrow_data(a).source;
        let pred: Vec<usize> = q.arrows_to(x).filter(|&c| !is_zero(c, a)).collect();
        if pred.len() > 1 {
            return fail(StringPairViolation::S2Left {
                arrow: q.arrow_data(a).name.clone(),
                predecessors: pred.iter().map(|&c| q.arrow_data(c).name.clone()).collect(),
            });
        }
    }
    StringPairReport {
        passed: true,
        violation: None,
    }
}

#[derive(Clone, Debug)]
pub struct StringEnumeration {
    pub strings: Vec<StringWord>,
    /// Some valid string is longer than the length bound.
    pub truncated: bool,
}

/// All valid words (not only canonical ones) by length, up to `max_length`.
fn all_words(pres: &Presentation, max_length: usize) -> Result<Vec<Vec<StringWord>>> {
    let q = &pres.quiver;
    let zeros = zero_paths(pres)?;
    let letters: Vec<Letter> = (0..q.num_arrows())
        .flat_map(|a| [Letter::direct(a), Letter::inv(a)])
        .collect();
    let mut levels = vec![(0..q.num_vertices()).map(StringWord::trivial).collect::<Vec<_>>()];
    for len in 1..=max_length {
        let mut next = Vec::new();
        for w in &levels[len - 1] {
            for &l in &letters {
                if can_append(q, w, l, &zeros) {
                    let mut x = w.clone();
                    if x.letters.is_empty() {
                        x.start = l.start(q);
                    }
                    x.letters.push(l);
                    next.push(x);
                }
            }
        }
        let done = next.is_empty();
        levels.push(next);
        if done {
            break;
        }
    }
    Ok(levels)
}

/// Canonical strings of length `≤ max_length`, ordered by length then
/// lexicographically (letters ordered by arrow name, direct before inverse).
pub fn enumerate_strings(pres: &Presentation, max_length: usize) -> Result<StringEnumeration> {
    let q = &pres.quiver;
    let levels = all_words(pres, max_length + 1)?;
    let truncated = levels.len() > max_length + 1 && !levels[max_length + 1].is_empty();
    let mut strings = Vec::new();
    for level in levels.iter().take(max_length + 1) {
        let mut canon: Vec<StringWord> = level.iter().filter(|w| w.is_canonical(q)).cloned().collect();
        canon.sort_by(|a, b| a.cmp_in(b, q));
        strings.extend(canon);
    }
    Ok(StringEnumeration { strings, truncated })
}

/// A band, stored as its canonical rotation/inversion representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Band {
    pub word: StringWord,
}

fn rotations(w: &StringWord, q: &Quiver) -> Vec<StringWord> {
    let n = w.letters.len();
    (0..n)
        .map(|k| {
            let letters: Vec<Letter> = w.letters[k..].iter().chain(&w.letters[..k]).copied().collect();
            StringWord {
                start: letters[0].start(q),
                letters,
            }
        })
        .collect()
}

fn is_proper_power(letters: &[Letter]) -> bool {
    let n = letters.len();
    (1..n).any(|d| n.is_multiple_of(d) && (d..n).all(|i| letters[i] == letters[i - d]))
}

/// Length, letters and start vertex of the least rotation.
type BandKey = (usize, Vec<(String, bool)>, usize);

/// Bands with witness length `≤ max_length`, deduplicated by rotation and
/// inversion, in (length, lexicographic) order.
pub fn detect_bands(pres: &Presentation, max_length: usize) -> Result<Vec<Band>> {
    let q = &pres.quiver;
    let zeros = zero_paths(pres)?;
    let longest_zero = zeros.iter().map(Vec::len).max().unwrap_or(0);
    let levels = all_words(pres, max_length)?;
    let mut found: BTreeSet<BandKey> = BTreeSet::new();
    let mut bands = Vec::new();
    for level in levels.iter().skip(1) {
        for w in level {
            if w.end(q) != w.start
                || !w.letters.iter().any(|l| l.inverse)
                || !w.letters.iter().any(|l| !l.inverse)
                || is_proper_power(&w.letters)
            {
                continue;
            }
            let reps = longest_zero / w.len() + 3;
            let power = StringWord {
                start: w.start,
                letters: w.letters.iter().cycle().take(reps * w.len()).copied().collect(),
            };
            if !is_valid_string(pres, &power)? {
                continue;
            }
            let mut candidates = rotations(w, q);
            candidates.extend(rotations(&w.inverse(q), q));
            let best = candidates.into_iter().min_by(|a, b| a.cmp_in(b, q)).unwrap();
            let key = (
                best.len(),
                best.letters
                    .iter()
                    .map(|l| (q.arrow_data(l.arrow).name.clone(), l.inverse))
                    .collect(),
                best.start,
            );
            if found.insert(key) {
                bands.push(Band { word: best });
            }
        }
    }
    bands.sort_by(|a, b| a.word.cmp_in(&b.word, q));
    Ok(bands)
}

/// One basis vector per vertex of the walk; each letter maps the vector
/// before it to the vector after it (direct) or back (inverse).
pub fn string_module(pres: &Presentation, w: &StringWord) -> Result<Representation> {
    if !is_valid_string(pres, w)? {
        return Err(Error::InvalidWord(w.display(&pres.quiver)));
    }
    let q = &pres.quiver;
    let verts = w.vertices(q);
    let mut dims = vec![0usize; q.num_vertices()];
    let local: Vec<usize> = verts
        .iter()
        .map(|&v| {
            dims[v] += 1;
            dims[v] - 1
        })
        .collect();
    let mut maps: Vec<Matrix> = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
        .collect();
    for (k, l) in w.letters.iter().enumerate() {
        let (from, to) = if l.inverse { (k + 1, k) } else { (k, k + 1) };
        maps[l.arrow].set(local[to], local[from], Rational::one());
    }
    Ok(Representation { dims, maps })
}

/// Finitely many strings and no bands.
pub fn is_rep_finite_string(pres: &Presentation, max_length: usize) -> Result<bool> {
    let strings = enumerate_strings(pres, max_length)?;
    let bands = detect_bands(pres, max_length)?;
    if !bands.is_empty() {
        return Ok(false);
    }
    if strings.truncated {
        return Err(Error::Indeterminate);
    }
    Ok(true)
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}{}", self.arrow, if self.inverse { "^-1" } else { "" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::rep::validate_module;

    fn pres(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    const A3: &str = "vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\n";
    const TRIANGLE: &str = "vertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\narrow: c 1 3\nrelation: a b\n";
    const KRONECKER: &str = "vertices: x y\narrow: a x y\narrow: b x y\n";

    fn words(p: &Presentation) -> Vec<String> {
        enumerate_strings(p, DEFAULT_MAX_LENGTH)
            .unwrap()
            .strings
            .iter()
            .map(|w| w.display(&p.quiver))
            .collect()
    }

    #[test]
    fn strings_of_a3() {
        let p = pres(A3);
        assert_eq!(words(&p), vec!["e_1", "e_2", "e_3", "a", "b", "a b"]);
        let r = pres(&format!("{A3}relation: a b\n"));
        assert_eq!(words(&r).len(), 5);
    }

    #[test]
    fn strings_of_the_triangle() {
        let p = pres(TRIANGLE);
        let w = words(&p);
        assert_eq!(w.len(), 9);
        for s in ["a", "b", "c", "a^-1 c", "c b^-1", "a^-1 c b^-1"] {
            let word = StringWord::parse(&p.quiver, s).unwrap();
            assert!(w.contains(&word.canonical(&p.quiver).display(&p.quiver)), "{s}");
        }
    }

    #[test]
    fn string_pair_checks() {
        assert!(check_string_pair(&pres(A3)).passed);
        assert!(check_string_pair(&pres(TRIANGLE)).passed);
        let sq =
            pres("vertices: 1 2 3 4\narrow: a 1 2\narrow: b 2 4\narrow: c 1 3\narrow: d 3 4\nrelation: a b - c d\n");
        assert_eq!(
            check_string_pair(&sq).violation,
            Some(StringPairViolation::NotMonomial { relation: 0 })
        );
        let star = pres("vertices: 0 1 2 3\narrow: a 0 1\narrow: b 0 2\narrow: c 0 3\n");
        assert!(matches!(
            check_string_pair(&star).violation,
            Some(StringPairViolation::S1 { .. })
        ));
        let fork = pres("vertices: 1 2 3 4\narrow: a 1 2\narrow: b 2 3\narrow: c 2 4\n");
        assert!(matches!(
            check_string_pair(&fork).violation,
            Some(StringPairViolation::S2Right { .. })
        ));
        let fork_ok = pres("vertices: 1 2 3 4\narrow: a 1 2\narrow: b 2 3\narrow: c 2 4\nrelation: a b\n");
        assert!(check_string_pair(&fork_ok).passed);
    }

    #[test]
    fn kronecker_band() {
        let p = pres(KRONECKER);
        let bands = detect_bands(&p, 8).unwrap();
        assert_eq!(bands.len(), 1);
        assert_eq!(bands[0].word.display(&p.quiver), "a b^-1");
        assert!(!is_rep_finite_string(&p, 8).unwrap());
        assert!(detect_bands(&pres(A3), 10).unwrap().is_empty());
        assert!(is_rep_finite_string(&pres(TRIANGLE), 20).unwrap());
    }

    #[test]
    fn truncation_is_reported() {
        let p = pres(KRONECKER);
        let e = enumerate_strings(&p, 5).unwrap();
        assert!(e.truncated);
        assert!(!enumerate_strings(&pres(A3), 5).unwrap().truncated);
    }

    #[test]
    fn string_modules() {
        let p = pres(A3);
        let s1 = string_module(&p, &StringWord::trivial(0)).unwrap();
        assert_eq!(s1.dims, vec![1, 0, 0]);
        let ab = string_module(&p, &StringWord::parse(&p.quiver, "a b").unwrap()).unwrap();
        assert_eq!(ab.dims, vec![1, 1, 1]);
        assert!(ab.maps.iter().all(|m| *m == Matrix::identity(1)));

        let t = pres(TRIANGLE);
        let w = StringWord::parse(&t.quiver, "a^-1 c").unwrap();
        let m = string_module(&t, &w).unwrap();
        assert_eq!(m.dims, vec![1, 1, 1]);
        assert!(m.maps[1].is_zero());
        assert!(!m.maps[0].is_zero() && !m.maps[2].is_zero());
        assert!(validate_module(&t, &m).unwrap());
        assert!(string_module(&t, &StringWord::parse(&t.quiver, "a b").unwrap()).is_err());
    }
}
