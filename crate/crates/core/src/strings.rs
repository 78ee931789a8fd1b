//! Strings: reduced walks in the double quiver avoiding relations.
//!
//! A walk is stored in traversal order: `letters[0]` is traversed first,
//! starting at `start`. The textual form follows the right-to-left
//! convention, so `"g f^-"` is the walk `f^-` then `g`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::error::StringError;
use crate::quiver::{ArrowId, BoundQuiver, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: ArrowId,
    pub direct: bool,
}

impl Letter {
    pub fn direct(arrow: ArrowId) -> Self {
        Letter {
            arrow,
            direct: true,
        }
    }

    pub fn inverse(arrow: ArrowId) -> Self {
        Letter {
            arrow,
            direct: false,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            arrow: self.arrow,
            direct: !self.direct,
        }
    }

    pub fn source(self, q: &BoundQuiver) -> VertexId {
        if self.direct {
            q.source(self.arrow)
        } else {
            q.target(self.arrow)
        }
    }

    pub fn target(self, q: &BoundQuiver) -> VertexId {
        if self.direct {
            q.target(self.arrow)
        } else {
            q.source(self.arrow)
        }
    }

    pub fn token(self, q: &BoundQuiver) -> String {
        if self.direct {
            q.arrow_name(self.arrow).to_string()
        } else {
            format!("{}^-", q.arrow_name(self.arrow))
        }
    }
}

/// All letters of `q`, direct before inverse, in arrow order.
pub fn all_letters(q: &BoundQuiver) -> Vec<Letter> {
    (0..q.num_arrows())
        .flat_map(|a| [Letter::direct(a), Letter::inverse(a)])
        .collect()
}

/// Whether `next` may be traversed right after `prev`.
pub fn can_follow(q: &BoundQuiver, prev: Letter, next: Letter) -> bool {
    if prev.target(q) != next.source(q) || next == prev.inv() {
        return false;
    }
    match (prev.direct, next.direct) {
        (true, true) => !q.is_relation(next.arrow, prev.arrow),
        (false, false) => !q.is_relation(prev.arrow, next.arrow),
        _ => true,
    }
}

fn check_pair(q: &BoundQuiver, i: usize, prev: Letter, next: Letter) -> Result<(), StringError> {
    if prev.target(q) != next.source(q) {
        return Err(StringError::NotComposable(i));
    }
    if next == prev.inv() {
        return Err(StringError::ReducedPairViolation(i));
    }
    if !can_follow(q, prev, next) {
        return Err(StringError::RelationViolation(i));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringWalk {
    start: VertexId,
    end: VertexId,
    letters: Vec<Letter>,
}

impl StringWalk {
    pub fn lazy(v: VertexId) -> Self {
        StringWalk {
            start: v,
            end: v,
            letters: Vec::new(),
        }
    }

    /// Validates `letters` and keeps the given orientation.
    pub fn from_letters(q: &BoundQuiver, letters: Vec<Letter>) -> Result<Self, StringError> {
        let first = *letters.first().ok_or(StringError::Empty)?;
        for (i, w) in letters.windows(2).enumerate() {
            check_pair(q, i, w[0], w[1])?;
        }
        Ok(StringWalk {
            start: first.source(q),
            end: letters.last().expect("nonempty").target(q),
            letters,
        })
    }

    pub(crate) fn from_valid(q: &BoundQuiver, start: VertexId, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| can_follow(q, w[0], w[1])));
        debug_assert!(letters.first().is_none_or(|l| l.source(q) == start));
        let end = letters.last().map_or(start, |l| l.target(q));
        StringWalk {
            start,
            end,
            letters,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_lazy(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    /// The vertex at slot `i` (slots run from 0 to `len`).
    pub fn vertex_at(&self, q: &BoundQuiver, i: usize) -> VertexId {
        if i == 0 {
            self.start
        } else {
            self.letters[i - 1].target(q)
        }
    }

    pub fn vertices(&self, q: &BoundQuiver) -> Vec<VertexId> {
        (0..=self.len()).map(|i| self.vertex_at(q, i)).collect()
    }

    pub fn inverse(&self) -> Self {
        StringWalk {
            start: self.end,
            end: self.start,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// The raw sub-walk `letters[start..end]`; a lazy path when `start == end`.
    pub fn slice(&self, q: &BoundQuiver, start: usize, end: usize) -> StringWalk {
        StringWalk {
            start: self.vertex_at(q, start),
            end: self.vertex_at(q, end),
            letters: self.letters[start..end].to_vec(),
        }
    }

    pub fn is_direct(&self) -> bool {
        self.letters.iter().all(|l| l.direct)
    }

    pub fn is_inverse(&self) -> bool {
        self.letters.iter().all(|l| !l.direct)
    }

    pub fn uses_arrow(&self, a: ArrowId) -> bool {
        self.letters.iter().any(|l| l.arrow == a)
    }

    /// Concatenation in traversal order; `None` unless the result is a string.
    pub fn then(&self, q: &BoundQuiver, other: &StringWalk) -> Option<StringWalk> {
        if self.end != other.start {
            return None;
        }
        if let (Some(&a), Some(&b)) = (self.letters.last(), other.letters.first()) {
            if !can_follow(q, a, b) {
                return None;
            }
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Some(StringWalk {
            start: self.start,
            end: other.end,
            letters,
        })
    }

    pub fn canonical(&self, q: &BoundQuiver) -> StringWalk {
        if self.is_lazy() {
            return self.clone();
        }
        let inv = self.inverse();
        if compare_display(q, &inv, self) == Ordering::Less {
            inv
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self, q: &BoundQuiver) -> bool {
        *self == self.canonical(q)
    }

    pub fn same_module(&self, q: &BoundQuiver, other: &StringWalk) -> bool {
        self == other || (self.len() == other.len() && self.canonical(q) == other.canonical(q))
    }

    /// Right-to-left literal, e.g. `a2 b1^- a1^- b2`, or `e(v)`.
    pub fn display(&self, q: &BoundQuiver) -> String {
        if self.is_lazy() {
            return format!("e({})", q.vertex_name(self.start));
        }
        let mut out = String::new();
        for (i, l) in self.letters.iter().rev().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}", l.token(q));
        }
        out
    }
}

fn display_key<'a>(q: &'a BoundQuiver, w: &StringWalk) -> Vec<(&'a str, bool)> {
    w.letters
        .iter()
        .rev()
        .map(|l| (q.arrow_name(l.arrow), !l.direct))
        .collect()
}

fn compare_display(q: &BoundQuiver, a: &StringWalk, b: &StringWalk) -> Ordering {
    display_key(q, a).cmp(&display_key(q, b))
}

/// Total order used for listings: length, then displayed word, then vertex.
pub fn listing_order(q: &BoundQuiver, a: &StringWalk, b: &StringWalk) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| compare_display(q, a, b))
        .then_with(|| q.vertex_name(a.start).cmp(q.vertex_name(b.start)))
}

/// Validates a word and returns it in canonical orientation.
pub fn make_string(q: &BoundQuiver, letters: &[Letter]) -> Result<StringWalk, StringError> {
    Ok(StringWalk::from_letters(q, letters.to_vec())?.canonical(q))
}

pub fn inverse(w: &StringWalk) -> StringWalk {
    w.inverse()
}

/// Parses a right-to-left literal such as `"a2 b1^- a1^- b2"` or `"e(3)"`.
/// The orientation is kept as written.
pub fn parse_string(q: &BoundQuiver, text: &str) -> Result<StringWalk, StringError> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
        let v = q
            .vertex(inner.trim())
            .ok_or_else(|| StringError::Parse(format!("unknown vertex `{}`", inner.trim())))?;
        return Ok(StringWalk::lazy(v));
    }
    let mut letters = Vec::new();
    for tok in t.split_whitespace().rev() {
        let (name, direct) = match tok.strip_suffix("^-") {
            Some(n) => (n, false),
            None => (tok, true),
        };
        let a = q
            .arrow(name)
            .ok_or_else(|| StringError::Parse(format!("unknown arrow `{name}`")))?;
        letters.push(Letter { arrow: a, direct });
    }
    if letters.is_empty() {
        return Err(StringError::Parse("empty literal".into()));
    }
    StringWalk::from_letters(q, letters)
}

/// Letters that may be appended after the end of `w`.
pub fn extensions_at_end(q: &BoundQuiver, w: &StringWalk) -> Vec<Letter> {
    match w.letters.last() {
        Some(&last) => all_letters(q)
            .into_iter()
            .filter(|&x| can_follow(q, last, x))
            .collect(),
        None => all_letters(q)
            .into_iter()
            .filter(|x| x.source(q) == w.start)
            .collect(),
    }
}

/// Letters that may be prepended before the start of `w`.
pub fn extensions_at_start(q: &BoundQuiver, w: &StringWalk) -> Vec<Letter> {
    match w.letters.first() {
        Some(&first) => all_letters(q)
            .into_iter()
            .filter(|&x| can_follow(q, x, first))
            .collect(),
        None => all_letters(q)
            .into_iter()
            .filter(|x| x.target(q) == w.start)
            .collect(),
    }
}

/// Whether the letter-transition graph has no cycle, i.e. the algebra has
/// finitely many strings.
pub fn is_finite_type(q: &BoundQuiver) -> bool {
    let letters = all_letters(q);
    let idx = |l: Letter| 2 * l.arrow + usize::from(!l.direct);
    let mut indeg = vec![0usize; letters.len()];
    for &x in &letters {
        for &y in &letters {
            if can_follow(q, x, y) {
                indeg[idx(y)] += 1;
            }
        }
    }
    let mut queue: Vec<Letter> = letters
        .iter()
        .copied()
        .filter(|&l| indeg[idx(l)] == 0)
        .collect();
    let mut seen = 0;
    while let Some(x) = queue.pop() {
        seen += 1;
        for &y in &letters {
            if can_follow(q, x, y) {
                indeg[idx(y)] -= 1;
                if indeg[idx(y)] == 0 {
                    queue.push(y);
                }
            }
        }
    }
    seen == letters.len()
}

/// All strings of length at most `max_len` (unbounded when `None`, which
/// requires finite type), one per inverse pair, in listing order.
pub fn enumerate_strings(
    q: &BoundQuiver,
    max_len: Option<usize>,
) -> Result<Vec<StringWalk>, StringError> {
    if max_len.is_none() && !is_finite_type(q) {
        return Err(StringError::Unbounded);
    }
    let mut found: BTreeSet<Keyed> = BTreeSet::new();
    let mut push = |w: &StringWalk| {
        found.insert(Keyed::new(q, w.canonical(q)));
    };
    for v in 0..q.num_vertices() {
        push(&StringWalk::lazy(v));
    }
    let mut layer: Vec<StringWalk> = all_letters(q)
        .into_iter()
        .map(|l| StringWalk::from_valid(q, l.source(q), vec![l]))
        .collect();
    let mut len = 1;
    while !layer.is_empty() && max_len.is_none_or(|m| len <= m) {
        let mut next = Vec::new();
        for w in &layer {
            push(w);
            for x in extensions_at_end(q, w) {
                let mut letters = w.letters.clone();
                letters.push(x);
                next.push(StringWalk::from_valid(q, w.start, letters));
            }
        }
        layer = next;
        len += 1;
    }
    Ok(found.into_iter().map(|k| k.walk).collect())
}

struct Keyed {
    key: (usize, Vec<(String, bool)>, String),
    walk: StringWalk,
}

impl Keyed {
    fn new(q: &BoundQuiver, walk: StringWalk) -> Self {
        let key = (
            walk.len(),
            display_key(q, &walk)
                .into_iter()
                .map(|(s, b)| (s.to_string(), b))
                .collect(),
            q.vertex_name(walk.start).to_string(),
        );
        Keyed { key, walk }
    }
}

impl PartialEq for Keyed {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for Keyed {}
impl PartialOrd for Keyed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Keyed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

/// A primitive cyclic string all of whose powers are strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Band {
    pub word: StringWalk,
}

/// Bands found as elementary circuits of the letter-transition graph,
/// canonical up to rotation and inversion.
pub fn detect_bands(q: &BoundQuiver) -> Vec<Band> {
    let letters = all_letters(q);
    let n = letters.len();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| can_follow(q, letters[i], letters[j]))
                .collect()
        })
        .collect();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    // circuits whose smallest node is `s`
    for s in 0..n {
        let mut path = vec![s];
        let mut on_path = vec![false; n];
        on_path[s] = true;
        circuits(s, s, &succ, &mut path, &mut on_path, &mut cycles);
    }
    let mut seen: HashSet<Vec<(String, bool)>> = HashSet::new();
    let mut bands = Vec::new();
    for cyc in cycles {
        let word: Vec<Letter> = cyc.iter().map(|&i| letters[i]).collect();
        let best = canonical_cycle(q, &word);
        let key: Vec<(String, bool)> = best
            .iter()
            .rev()
            .map(|l| (q.arrow_name(l.arrow).to_string(), !l.direct))
            .collect();
        if seen.insert(key) {
            let start = best[0].source(q);
            bands.push(Band {
                word: StringWalk::from_valid(q, start, best),
            });
        }
    }
    bands.sort_by(|a, b| listing_order(q, &a.word, &b.word));
    bands
}

fn circuits(
    s: usize,
    v: usize,
    succ: &[Vec<usize>],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    for &w in &succ[v] {
        if w == s {
            out.push(path.clone());
        } else if w > s && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            circuits(s, w, succ, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

fn canonical_cycle(q: &BoundQuiver, word: &[Letter]) -> Vec<Letter> {
    let inv: Vec<Letter> = word.iter().rev().map(|l| l.inv()).collect();
    let key = |w: &[Letter]| -> Vec<(String, bool)> {
        w.iter()
            .rev()
            .map(|l| (q.arrow_name(l.arrow).to_string(), !l.direct))
            .collect()
    };
    [word, &inv[..]]
        .into_iter()
        .flat_map(|base| {
            (0..base.len()).map(move |r| {
                base[r..]
                    .iter()
                    .chain(&base[..r])
                    .copied()
                    .collect::<Vec<_>>()
            })
        })
        .min_by_key(|rot| key(rot))
        .expect("nonempty cycle")
}

/// Letter positions `start..end`; slots `start..=end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize) -> Self {
        Interval { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

pub fn substring(q: &BoundQuiver, w: &StringWalk, iv: Interval) -> Result<StringWalk, StringError> {
    if iv.start > iv.end || iv.end > w.len() {
        return Err(StringError::OutOfBounds {
            start: iv.start,
            end: iv.end,
            len: w.len(),
        });
    }
    Ok(w.slice(q, iv.start, iv.end))
}

/// Number of visits to each vertex.
pub fn dimension_vector(q: &BoundQuiver, w: &StringWalk) -> Vec<usize> {
    let mut d = vec![0; q.num_vertices()];
    for v in w.vertices(q) {
        d[v] += 1;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    fn ex22() -> BoundQuiver {
        parse_quiver(include_str!("../corpus/ex22.quiver")).unwrap()
    }

    fn gls() -> BoundQuiver {
        parse_quiver(include_str!("../corpus/gls.quiver")).unwrap()
    }

    fn a2() -> BoundQuiver {
        parse_quiver(include_str!("../corpus/a2.quiver")).unwrap()
    }

    #[test]
    fn four_vertex_string() {
        let q = ex22();
        let w = parse_string(&q, "a2 b1^- a1^- b2").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.display(&q), "a2 b1^- a1^- b2");
        let inv = w.inverse();
        assert_eq!(inv.display(&q), "b2^- a1 b1 a2^-");
        assert_eq!(w.canonical(&q), inv.canonical(&q));
        assert_eq!(w.canonical(&q), w);
        assert_eq!(dimension_vector(&q, &w), vec![1, 1, 2, 1]);
        let mid = substring(&q, &w, Interval::new(1, 3)).unwrap();
        assert_eq!(mid.display(&q), "b1^- a1^-");
        assert_eq!(substring(&q, &w, Interval::new(0, 4)).unwrap(), w);
        let e = substring(&q, &w, Interval::new(2, 2)).unwrap();
        assert_eq!(e, StringWalk::lazy(q.vertex("2").unwrap()));
        assert!(substring(&q, &w, Interval::new(3, 5)).is_err());
    }

    #[test]
    fn violations() {
        let q = gls();
        let a = q.arrow("a").unwrap();
        assert_eq!(
            make_string(&q, &[Letter::direct(a), Letter::direct(a)]),
            Err(StringError::RelationViolation(0))
        );
        assert_eq!(
            make_string(&q, &[Letter::inverse(a), Letter::inverse(a)]),
            Err(StringError::RelationViolation(0))
        );
        assert_eq!(
            make_string(&q, &[Letter::direct(a), Letter::inverse(a)]),
            Err(StringError::ReducedPairViolation(0))
        );
        let b = q.arrow("b").unwrap();
        assert_eq!(
            make_string(&q, &[Letter::direct(a), Letter::direct(b)]),
            Err(StringError::NotComposable(0))
        );
    }

    #[test]
    fn lazy_inverse() {
        let w = StringWalk::lazy(3);
        assert_eq!(w.inverse(), w);
    }

    #[test]
    fn a2_enumeration() {
        let q = a2();
        let s = enumerate_strings(&q, Some(1)).unwrap();
        let shown: Vec<String> = s.iter().map(|w| w.display(&q)).collect();
        assert_eq!(shown, vec!["e(1)", "e(2)", "a"]);
        assert!(detect_bands(&q).is_empty());
        assert!(is_finite_type(&q));
    }

    #[test]
    fn gls_enumeration() {
        let q = gls();
        let short = enumerate_strings(&q, Some(2)).unwrap();
        assert_eq!(short.len(), 6);
        let all = enumerate_strings(&q, None).unwrap();
        let shown: Vec<String> = all.iter().map(|w| w.display(&q)).collect();
        assert_eq!(
            shown,
            vec!["e(1)", "e(2)", "a", "b", "a b", "a^- b", "b^- a b"]
        );
    }

    #[test]
    fn bands() {
        let k = parse_quiver(include_str!("../corpus/kronecker.quiver")).unwrap();
        let bands = detect_bands(&k);
        assert_eq!(bands.len(), 1);
        assert_eq!(bands[0].word.display(&k), "a b^-");
        assert!(enumerate_strings(&k, None).is_err());
        assert!(!is_finite_type(&k));
        let q = ex22();
        assert!(!detect_bands(&q).is_empty());
        let sq = parse_quiver(include_str!("../corpus/sq33.quiver")).unwrap();
        assert!(detect_bands(&sq).is_empty());
    }

    #[test]
    fn ex22_contains_example_string() {
        let q = ex22();
        let w = parse_string(&q, "a2 b1^- a1^- b2").unwrap().canonical(&q);
        assert!(enumerate_strings(&q, Some(4)).unwrap().contains(&w));
    }
}
