//! Bound quivers with quadratic zero relations.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::QuiverError;

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A zero relation `second ∘ first`: traverse `first`, then `second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Relation {
    pub second: ArrowId,
    pub first: ArrowId,
}

/// A finite quiver together with a set of length-two zero relations.
#[derive(Debug, Clone)]
pub struct BoundQuiver {
    name: String,
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    relation_set: HashSet<(ArrowId, ArrowId)>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
}

impl PartialEq for BoundQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.vertices == other.vertices
            && self.arrows == other.arrows
            && self.relations == other.relations
    }
}

impl Eq for BoundQuiver {}

pub(crate) fn valid_id(id: &str) -> bool {
    !id.is_empty()
        && !id
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ':' | '#' | '^' | ','))
}

impl BoundQuiver {
    /// Builds a quiver from names. Arrows are `(id, source, target)`,
    /// relations are `(second, first)`.
    pub fn new<S: AsRef<str>>(
        name: &str,
        vertices: &[S],
        arrows: &[(S, S, S)],
        relations: &[(S, S)],
    ) -> Result<Self, QuiverError> {
        let mut q = BoundQuiver {
            name: name.to_string(),
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
            relation_set: HashSet::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
            outgoing: Vec::new(),
            incoming: Vec::new(),
        };
        for v in vertices {
            q.add_vertex(v.as_ref())?;
        }
        for (id, s, t) in arrows {
            q.add_arrow(id.as_ref(), s.as_ref(), t.as_ref())?;
        }
        for (g, f) in relations {
            q.add_relation(g.as_ref(), f.as_ref())?;
        }
        Ok(q)
    }

    pub(crate) fn add_vertex(&mut self, id: &str) -> Result<VertexId, QuiverError> {
        if !valid_id(id) {
            return Err(QuiverError::InvalidId(id.to_string()));
        }
        if self.vertex_index.contains_key(id) || self.arrow_index.contains_key(id) {
            return Err(QuiverError::DuplicateId(id.to_string()));
        }
        let v = self.vertices.len();
        self.vertices.push(Vertex {
            name: id.to_string(),
        });
        self.vertex_index.insert(id.to_string(), v);
        self.outgoing.push(Vec::new());
        self.incoming.push(Vec::new());
        Ok(v)
    }

    pub(crate) fn add_arrow(
        &mut self,
        id: &str,
        source: &str,
        target: &str,
    ) -> Result<ArrowId, QuiverError> {
        if !valid_id(id) {
            return Err(QuiverError::InvalidId(id.to_string()));
        }
        if self.vertex_index.contains_key(id) || self.arrow_index.contains_key(id) {
            return Err(QuiverError::DuplicateId(id.to_string()));
        }
        let s = self
            .vertex(source)
            .ok_or_else(|| QuiverError::UnknownVertex(source.to_string()))?;
        let t = self
            .vertex(target)
            .ok_or_else(|| QuiverError::UnknownVertex(target.to_string()))?;
        let a = self.arrows.len();
        self.arrows.push(Arrow {
            name: id.to_string(),
            source: s,
            target: t,
        });
        self.arrow_index.insert(id.to_string(), a);
        self.outgoing[s].push(a);
        self.incoming[t].push(a);
        Ok(a)
    }

    pub(crate) fn add_relation(&mut self, second: &str, first: &str) -> Result<(), QuiverError> {
        let g = self
            .arrow(second)
            .ok_or_else(|| QuiverError::UnknownArrow(second.to_string()))?;
        let f = self
            .arrow(first)
            .ok_or_else(|| QuiverError::UnknownArrow(first.to_string()))?;
        if self.arrows[f].target != self.arrows[g].source {
            return Err(QuiverError::NonComposableRelation {
                second: second.to_string(),
                first: first.to_string(),
            });
        }
        if !self.relation_set.insert((g, f)) {
            return Err(QuiverError::DuplicateRelation {
                second: second.to_string(),
                first: first.to_string(),
            });
        }
        self.relations.push(Relation {
            second: g,
            first: f,
        });
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v].name
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a].name
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a].target
    }

    /// Arrows leaving `v`, in declaration order.
    pub fn outgoing(&self, v: VertexId) -> &[ArrowId] {
        &self.outgoing[v]
    }

    /// Arrows entering `v`, in declaration order.
    pub fn incoming(&self, v: VertexId) -> &[ArrowId] {
        &self.incoming[v]
    }

    /// Whether the path `second ∘ first` lies in the ideal.
    pub fn is_relation(&self, second: ArrowId, first: ArrowId) -> bool {
        self.relation_set.contains(&(second, first))
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

impl fmt::Display for BoundQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_quiver(self))
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> QuiverError {
    QuiverError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn attach_line(e: QuiverError, line: usize) -> QuiverError {
    match e {
        e @ QuiverError::Syntax { .. } => e,
        other => syntax(line, 1, other.to_string()),
    }
}

/// Parses the line-oriented quiver format.
///
/// ```text
/// algebra <name>
/// vertices: <id> <id> ...
/// arrow <id>: <vertex> -> <vertex>
/// relations:
/// <second> <first>
/// ```
pub fn parse_quiver(text: &str) -> Result<BoundQuiver, QuiverError> {
    #[derive(PartialEq)]
    enum Section {
        Header,
        Body,
        Relations,
    }
    let mut q: Option<BoundQuiver> = None;
    let mut section = Section::Header;
    let mut saw_vertices = false;
    let mut saw_relations = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let column = content.len() - content.trim_start().len() + 1;

        if section == Section::Header {
            let rest = trimmed
                .strip_prefix("algebra")
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| syntax(line_no, column, "expected `algebra <name>`"))?;
            let name = rest.trim();
            if !valid_id(name) {
                return Err(syntax(
                    line_no,
                    column,
                    format!("invalid algebra name `{name}`"),
                ));
            }
            q = Some(BoundQuiver::new::<&str>(name, &[], &[], &[]).expect("empty quiver"));
            section = Section::Body;
            continue;
        }
        let quiver = q.as_mut().expect("header parsed");

        if let Some(rest) = trimmed.strip_prefix("vertices:") {
            if saw_vertices || section != Section::Body {
                return Err(syntax(line_no, column, "unexpected `vertices:` line"));
            }
            saw_vertices = true;
            for id in rest.split_whitespace() {
                quiver.add_vertex(id).map_err(|e| attach_line(e, line_no))?;
            }
            continue;
        }
        if trimmed == "relations:" {
            if saw_relations {
                return Err(syntax(line_no, column, "duplicate `relations:` block"));
            }
            saw_relations = true;
            section = Section::Relations;
            continue;
        }
        match section {
            Section::Body => {
                let rest = trimmed
                    .strip_prefix("arrow")
                    .filter(|r| r.starts_with(char::is_whitespace))
                    .ok_or_else(|| syntax(line_no, column, "expected `arrow <id>: <s> -> <t>`"))?;
                if !saw_vertices {
                    return Err(syntax(line_no, column, "arrow declared before `vertices:`"));
                }
                let (id, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line_no, column, "missing `:` after arrow id"))?;
                let (s, t) = ends
                    .split_once("->")
                    .ok_or_else(|| syntax(line_no, column, "missing `->` in arrow"))?;
                let (id, s, t) = (id.trim(), s.trim(), t.trim());
                if s.split_whitespace().count() != 1 || t.split_whitespace().count() != 1 {
                    return Err(syntax(
                        line_no,
                        column,
                        "arrow endpoints must be single ids",
                    ));
                }
                quiver
                    .add_arrow(id, s, t)
                    .map_err(|e| attach_line(e, line_no))?;
            }
            Section::Relations => {
                let parts: Vec<&str> = trimmed.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(syntax(
                        line_no,
                        column,
                        "relation must be `<second> <first>`",
                    ));
                }
                quiver
                    .add_relation(parts[0], parts[1])
                    .map_err(|e| attach_line(e, line_no))?;
            }
            Section::Header => unreachable!(),
        }
    }
    let q = q.ok_or_else(|| syntax(1, 1, "empty document"))?;
    if !saw_vertices {
        return Err(syntax(1, 1, "missing `vertices:` line"));
    }
    Ok(q)
}

pub fn serialize_quiver(q: &BoundQuiver) -> String {
    let mut out = format!("algebra {}\nvertices:", q.name);
    for v in &q.vertices {
        out.push(' ');
        out.push_str(&v.name);
    }
    out.push('\n');
    for a in &q.arrows {
        out.push_str(&format!(
            "arrow {}: {} -> {}\n",
            a.name, q.vertices[a.source].name, q.vertices[a.target].name
        ));
    }
    out.push_str("relations:\n");
    for r in &q.relations {
        out.push_str(&format!(
            "{} {}\n",
            q.arrows[r.second].name, q.arrows[r.first].name
        ));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    S1,
    S2,
    G1,
    G2,
    Admissible,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::S1 => "S1",
            Axiom::S2 => "S2",
            Axiom::G1 => "G1",
            Axiom::G2 => "G2",
            Axiom::Admissible => "ADMISSIBLE",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GentleReport {
    pub is_string_algebra: bool,
    pub is_gentle: bool,
    pub violations: Vec<Violation>,
}

pub fn validate_gentle(q: &BoundQuiver) -> GentleReport {
    let mut violations = Vec::new();
    let name = |a: ArrowId| q.arrow_name(a).to_string();

    for v in 0..q.num_vertices() {
        if q.incoming(v).len() > 2 {
            violations.push(Violation {
                axiom: Axiom::S1,
                witness: format!(
                    "vertex {} has {} incoming arrows",
                    q.vertex_name(v),
                    q.incoming(v).len()
                ),
            });
        }
        if q.outgoing(v).len() > 2 {
            violations.push(Violation {
                axiom: Axiom::S1,
                witness: format!(
                    "vertex {} has {} outgoing arrows",
                    q.vertex_name(v),
                    q.outgoing(v).len()
                ),
            });
        }
    }

    for a in 0..q.num_arrows() {
        let before = q.incoming(q.source(a));
        let after = q.outgoing(q.target(a));
        let (zero_b, free_b): (Vec<ArrowId>, Vec<ArrowId>) =
            before.iter().partition(|&&b| q.is_relation(a, b));
        let (zero_c, free_c): (Vec<ArrowId>, Vec<ArrowId>) =
            after.iter().partition(|&&c| q.is_relation(c, a));
        let list = |xs: &[ArrowId]| xs.iter().map(|&x| name(x)).collect::<Vec<_>>().join(", ");
        if free_b.len() > 1 {
            violations.push(Violation {
                axiom: Axiom::S2,
                witness: format!(
                    "arrows {} all compose with {} outside I",
                    list(&free_b),
                    name(a)
                ),
            });
        }
        if free_c.len() > 1 {
            violations.push(Violation {
                axiom: Axiom::S2,
                witness: format!("{} composes with {} outside I", name(a), list(&free_c)),
            });
        }
        if zero_b.len() > 1 {
            violations.push(Violation {
                axiom: Axiom::G2,
                witness: format!(
                    "{} composed with each of {} lies in I",
                    name(a),
                    list(&zero_b)
                ),
            });
        }
        if zero_c.len() > 1 {
            violations.push(Violation {
                axiom: Axiom::G2,
                witness: format!(
                    "each of {} composed with {} lies in I",
                    list(&zero_c),
                    name(a)
                ),
            });
        }
    }

    if let Some(cycle) = relation_free_cycle(q) {
        let words: Vec<String> = cycle.iter().map(|&a| name(a)).collect();
        violations.push(Violation {
            axiom: Axiom::Admissible,
            witness: format!("relation-free cycle {}", words.join(" then ")),
        });
    }

    let is_string_algebra = violations
        .iter()
        .all(|v| !matches!(v.axiom, Axiom::S1 | Axiom::S2 | Axiom::Admissible));
    GentleReport {
        is_string_algebra,
        is_gentle: violations.is_empty(),
        violations,
    }
}

/// Finds a directed cycle of arrows no consecutive pair of which lies in I.
fn relation_free_cycle(q: &BoundQuiver) -> Option<Vec<ArrowId>> {
    let n = q.num_arrows();
    let next = |a: ArrowId| {
        q.outgoing(q.target(a))
            .iter()
            .copied()
            .filter(move |&c| !q.is_relation(c, a))
    };
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut stack: Vec<ArrowId> = Vec::new();
    fn dfs<F, I>(
        a: ArrowId,
        next: &F,
        state: &mut [u8],
        stack: &mut Vec<ArrowId>,
    ) -> Option<Vec<ArrowId>>
    where
        F: Fn(ArrowId) -> I,
        I: Iterator<Item = ArrowId>,
    {
        state[a] = 1;
        stack.push(a);
        for c in next(a) {
            if state[c] == 1 {
                let pos = stack.iter().position(|&x| x == c).expect("on stack");
                return Some(stack[pos..].to_vec());
            }
            if state[c] == 0 {
                if let Some(cyc) = dfs(c, next, state, stack) {
                    return Some(cyc);
                }
            }
        }
        stack.pop();
        state[a] = 2;
        None
    }
    for a in 0..n {
        if state[a] == 0 {
            if let Some(cyc) = dfs(a, &next, &mut state, &mut stack) {
                return Some(cyc);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX22: &str = "algebra ex22\nvertices: 1 2 3 4\narrow a1: 2 -> 4\narrow b1: 1 -> 2\narrow a2: 1 -> 3\narrow b2: 3 -> 4\nrelations:\n";

    #[test]
    fn parses_four_vertex_example() {
        let q = parse_quiver(EX22).unwrap();
        assert_eq!(q.num_vertices(), 4);
        assert_eq!(q.num_arrows(), 4);
        assert!(q.relations().is_empty());
        assert!(validate_gentle(&q).is_gentle);
    }

    #[test]
    fn single_vertex() {
        let q = parse_quiver("algebra pt\nvertices: x\nrelations:\n").unwrap();
        assert_eq!(q.num_vertices(), 1);
        assert!(validate_gentle(&q).is_gentle);
        assert_eq!(
            serialize_quiver(&q),
            "algebra pt\nvertices: x\nrelations:\n"
        );
    }

    #[test]
    fn rejects_non_composable_relation() {
        let text =
            "algebra bad\nvertices: 1 2 3\narrow a1: 1 -> 2\narrow a2: 1 -> 3\nrelations:\na1 a2\n";
        let err = parse_quiver(text).unwrap_err();
        assert!(err.to_string().contains("non-composable relation"), "{err}");
        assert!(err.to_string().starts_with("line 6"), "{err}");
    }

    #[test]
    fn rejects_unknown_and_duplicate_ids() {
        let e = parse_quiver("algebra x\nvertices: 1\narrow a: 1 -> 2\n").unwrap_err();
        assert!(e.to_string().contains("unknown vertex `2`"));
        let e = parse_quiver("algebra x\nvertices: 1 1\n").unwrap_err();
        assert!(e.to_string().contains("duplicate id"));
        let e = parse_quiver("algebra x\nvertices: 1\narrow 1: 1 -> 1\n").unwrap_err();
        assert!(e.to_string().contains("duplicate id"));
        let e = parse_quiver("algebra x\nvertices: 1\nrelations:\na a\n").unwrap_err();
        assert!(e.to_string().contains("unknown arrow"));
        let e = parse_quiver("vertices: 1\n").unwrap_err();
        assert!(matches!(e, QuiverError::Syntax { line: 1, .. }));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\nalgebra c # name\n  vertices: 1 2\n\narrow a: 1 -> 2 # arrow\nrelations:\n";
        let q = parse_quiver(text).unwrap();
        assert_eq!(q.num_arrows(), 1);
        assert_eq!(q.name(), "c");
    }

    #[test]
    fn triple_outgoing_violates_s1() {
        let q = BoundQuiver::new(
            "t",
            &["0", "1", "2", "3"],
            &[("a", "0", "1"), ("b", "0", "2"), ("c", "0", "3")],
            &[],
        )
        .unwrap();
        let r = validate_gentle(&q);
        assert!(!r.is_gentle);
        assert!(!r.is_string_algebra);
        assert!(r.violations.iter().any(|v| v.axiom == Axiom::S1));
    }

    #[test]
    fn g2_and_admissibility() {
        let q = BoundQuiver::new(
            "g",
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4")],
            &[("b", "a"), ("c", "a")],
        )
        .unwrap();
        let r = validate_gentle(&q);
        assert!(r.is_string_algebra);
        assert!(!r.is_gentle);
        assert_eq!(r.violations[0].axiom, Axiom::G2);

        let loop_free = BoundQuiver::new("l", &["1"], &[("a", "1", "1")], &[]).unwrap();
        let r = validate_gentle(&loop_free);
        assert!(r.violations.iter().any(|v| v.axiom == Axiom::Admissible));

        let gls = BoundQuiver::new(
            "gls",
            &["1", "2"],
            &[("a", "1", "1"), ("b", "2", "1")],
            &[("a", "a")],
        )
        .unwrap();
        assert!(validate_gentle(&gls).is_gentle);
    }

    #[test]
    fn round_trip() {
        let q = parse_quiver(EX22).unwrap();
        assert_eq!(parse_quiver(&serialize_quiver(&q)).unwrap(), q);
    }
}
