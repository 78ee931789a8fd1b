//! Hooks, cohooks and the Auslander-Reiten translate of string modules.

use crate::fringe::FringedAlgebra;
use crate::quiver::{ArrowId, BoundQuiver, VertexId};
use crate::strings::{all_letters, can_follow, Letter, StringWalk};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Start,
    End,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TauResult {
    Zero,
    Module(StringWalk),
}

impl TauResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, TauResult::Zero)
    }

    pub fn module(&self) -> Option<&StringWalk> {
        match self {
            TauResult::Zero => None,
            TauResult::Module(w) => Some(w),
        }
    }

    pub fn display(&self, q: &BoundQuiver) -> String {
        match self {
            TauResult::Zero => "0".to_string(),
            TauResult::Module(w) => w.display(q),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LongKind {
    /// `walk = 𝒟 α⁻¹ base β ℐ` in traversal order with `|𝒟| = p`.
    Cohook {
        base: StringWalk,
        p: usize,
    },
    Injective(VertexId),
}

/// A string of the fringed quiver running between two fringe vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongString {
    pub walk: StringWalk,
    pub kind: LongKind,
}

/// Letter positions of a cohook completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arms {
    /// Length of the direct arm, also the index of the inverse shoulder.
    pub p: usize,
    /// Length of the completed string.
    pub m: usize,
    /// Length of the whole walk.
    pub n: usize,
}

impl Arms {
    pub fn start_shoulder(&self) -> usize {
        self.p
    }

    pub fn end_shoulder(&self) -> usize {
        self.p + self.m + 1
    }

    /// Slot range of the completed string.
    pub fn base_slots(&self) -> (usize, usize) {
        (self.p + 1, self.p + 1 + self.m)
    }

    /// Whether letter interval `start..end` lies on the direct arm.
    pub fn on_direct_arm(&self, start: usize, end: usize) -> bool {
        start <= end && end <= self.p
    }

    /// Whether letter interval `start..end` lies on the inverse arm.
    pub fn on_inverse_arm(&self, start: usize, end: usize) -> bool {
        start <= end && start >= self.p + self.m + 2
    }
}

impl LongString {
    pub fn arms(&self) -> Option<Arms> {
        match &self.kind {
            LongKind::Cohook { base, p } => Some(Arms {
                p: *p,
                m: base.len(),
                n: self.walk.len(),
            }),
            LongKind::Injective(_) => None,
        }
    }

    /// The same long string read backwards; arms are swapped accordingly.
    pub fn inverse(&self) -> LongString {
        let kind = match &self.kind {
            LongKind::Cohook { base, p } => LongKind::Cohook {
                base: base.inverse(),
                p: self.walk.len() - (p + base.len() + 2),
            },
            LongKind::Injective(v) => LongKind::Injective(*v),
        };
        LongString {
            walk: self.walk.inverse(),
            kind,
        }
    }
}

fn letter_before(q: &BoundQuiver, first: Letter, direct: bool) -> Option<Letter> {
    all_letters(q)
        .into_iter()
        .find(|&x| x.direct == direct && can_follow(q, x, first))
}

fn letter_after(q: &BoundQuiver, last: Letter, direct: bool) -> Option<Letter> {
    all_letters(q)
        .into_iter()
        .find(|&x| x.direct == direct && can_follow(q, last, x))
}

/// Maximal run of letters of one sign traversed before `first`, in
/// traversal order.
fn run_before(q: &BoundQuiver, first: Letter, direct: bool) -> Vec<Letter> {
    let mut run = Vec::new();
    let mut cur = first;
    while let Some(x) = letter_before(q, cur, direct) {
        run.push(x);
        cur = x;
        assert!(run.len() <= q.num_arrows() + 1, "unbounded run");
    }
    run.reverse();
    run
}

fn run_after(q: &BoundQuiver, last: Letter, direct: bool) -> Vec<Letter> {
    let mut run = Vec::new();
    let mut cur = last;
    while let Some(x) = letter_after(q, cur, direct) {
        run.push(x);
        cur = x;
        assert!(run.len() <= q.num_arrows() + 1, "unbounded run");
    }
    run
}

fn sorted_by_name(q: &BoundQuiver, arrows: &[ArrowId]) -> Vec<ArrowId> {
    let mut v = arrows.to_vec();
    v.sort_by(|&a, &b| q.arrow_name(a).cmp(q.arrow_name(b)));
    v
}

fn start_cohook(q: &BoundQuiver, shoulder: Letter) -> Vec<Letter> {
    let mut out = run_before(q, shoulder, true);
    out.push(shoulder);
    out
}

fn end_cohook(q: &BoundQuiver, shoulder: Letter) -> Vec<Letter> {
    let mut out = vec![shoulder];
    out.extend(run_after(q, shoulder, false));
    out
}

/// Adds a cohook at one end of a string of positive length.
pub fn add_cohook(q: &BoundQuiver, w: &StringWalk, side: Side) -> Option<StringWalk> {
    let letters = w.letters();
    match side {
        Side::Start => {
            let first = *letters.first()?;
            let shoulder = letter_before(q, first, false)?;
            let mut out = start_cohook(q, shoulder);
            out.extend_from_slice(letters);
            Some(StringWalk::from_valid(q, out[0].source(q), out))
        }
        Side::End => {
            let last = *letters.last()?;
            let shoulder = letter_after(q, last, true)?;
            let mut out = letters.to_vec();
            out.extend(end_cohook(q, shoulder));
            Some(StringWalk::from_valid(q, w.start(), out))
        }
    }
}

/// Removes a hook at one end; `None` when the string has no letter of the
/// required sign.
pub fn remove_hook(q: &BoundQuiver, w: &StringWalk, side: Side) -> Option<StringWalk> {
    let letters = w.letters();
    let n = letters.len();
    match side {
        Side::Start => {
            let i = letters.iter().position(|l| l.direct)?;
            Some(w.slice(q, i + 1, n))
        }
        Side::End => {
            let j = letters.iter().rposition(|l| !l.direct)?;
            Some(w.slice(q, 0, j))
        }
    }
}

/// Cohook shoulders for a lazy path: the outgoing arrows sorted by name, the
/// smaller one on the start side.
fn lazy_shoulders(q: &BoundQuiver, v: VertexId) -> (Option<Letter>, Option<Letter>) {
    let outs = sorted_by_name(q, q.outgoing(v));
    match outs.len() {
        0 => (None, None),
        1 => (Some(Letter::inverse(outs[0])), None),
        _ => (
            Some(Letter::inverse(outs[0])),
            Some(Letter::direct(outs[1])),
        ),
    }
}

/// Butler-Ringel translate: add cohooks where possible, then remove hooks
/// at the remaining ends.
pub fn tau(q: &BoundQuiver, w: &StringWalk) -> TauResult {
    let (walk, start_added, end_added) = if w.is_lazy() {
        let (s, e) = lazy_shoulders(q, w.start());
        let Some(s) = s else {
            return TauResult::Zero;
        };
        let mut letters = start_cohook(q, s);
        if let Some(e) = e {
            letters.extend(end_cohook(q, e));
        }
        let start = letters[0].source(q);
        (StringWalk::from_valid(q, start, letters), true, e.is_some())
    } else {
        let mut cur = w.clone();
        let s = add_cohook(q, &cur, Side::Start);
        let start_added = s.is_some();
        if let Some(s) = s {
            cur = s;
        }
        let e = add_cohook(q, &cur, Side::End);
        let end_added = e.is_some();
        if let Some(e) = e {
            cur = e;
        }
        (cur, start_added, end_added)
    };
    let mut cur = walk;
    if !start_added {
        match remove_hook(q, &cur, Side::Start) {
            Some(r) => cur = r,
            None => return TauResult::Zero,
        }
    }
    if !end_added {
        match remove_hook(q, &cur, Side::End) {
            Some(r) => cur = r,
            None => return TauResult::Zero,
        }
    }
    TauResult::Module(cur.canonical(q))
}

/// Both cohooks of a base string, added inside the fringed quiver.
pub fn cohook_completion(f: &FringedAlgebra, w: &StringWalk) -> LongString {
    let q = &f.hat;
    let (s, e) = if w.is_lazy() {
        let (s, e) = lazy_shoulders(q, w.start());
        (
            s.expect("two outgoing arrows"),
            e.expect("two outgoing arrows"),
        )
    } else {
        (
            letter_before(q, w.letters()[0], false).expect("start cohook in the fringed quiver"),
            letter_after(q, *w.letters().last().expect("nonempty"), true)
                .expect("end cohook in the fringed quiver"),
        )
    };
    let mut letters = start_cohook(q, s);
    let p = letters.len() - 1;
    letters.extend_from_slice(w.letters());
    letters.extend(end_cohook(q, e));
    let start = letters[0].source(q);
    LongString {
        walk: StringWalk::from_valid(q, start, letters),
        kind: LongKind::Cohook { base: w.clone(), p },
    }
}

/// The injective string at `v`: both maximal direct paths into `v`, the one
/// through the smaller-named arrow traversed first.
pub fn injective_walk(q: &BoundQuiver, v: VertexId) -> StringWalk {
    let ins = sorted_by_name(q, q.incoming(v));
    let mut letters = Vec::new();
    if let Some(&a) = ins.first() {
        letters = run_before(q, Letter::direct(a), true);
        letters.push(Letter::direct(a));
    }
    if let Some(&b) = ins.get(1) {
        let l = Letter::inverse(b);
        letters.push(l);
        letters.extend(run_after(q, l, false));
    }
    match letters.first() {
        Some(first) => StringWalk::from_valid(q, first.source(q), letters),
        None => StringWalk::lazy(v),
    }
}

/// The projective string at `v`: both maximal paths out of `v`.
pub fn projective_walk(q: &BoundQuiver, v: VertexId) -> StringWalk {
    let outs = sorted_by_name(q, q.outgoing(v));
    let mut letters = Vec::new();
    if let Some(&a) = outs.first() {
        let l = Letter::inverse(a);
        letters = run_before(q, l, false);
        letters.push(l);
    }
    if let Some(&b) = outs.get(1) {
        let l = Letter::direct(b);
        letters.push(l);
        letters.extend(run_after(q, l, true));
    }
    // with one outgoing arrow the path is read forwards
    if outs.len() == 1 {
        letters = letters.iter().rev().map(|l| l.inv()).collect();
        return StringWalk::from_valid(q, v, letters);
    }
    match letters.first() {
        Some(first) => StringWalk::from_valid(q, first.source(q), letters),
        None => StringWalk::lazy(v),
    }
}

pub fn injective_string(f: &FringedAlgebra, v: VertexId) -> LongString {
    LongString {
        walk: injective_walk(&f.hat, v),
        kind: LongKind::Injective(v),
    }
}

/// Position of the base translate inside the cohook completion, as a letter
/// interval of its walk; `None` when the string is projective over the base.
pub fn tau_interval(f: &FringedAlgebra, c: &LongString) -> Option<(usize, usize)> {
    let arms = c.arms().expect("cohook completion");
    let letters = c.walk.letters();
    let start_base = !f.is_fringe_arrow(letters[arms.start_shoulder()].arrow);
    let end_base = !f.is_fringe_arrow(letters[arms.end_shoulder()].arrow);
    // a base shoulder keeps its arm up to the outermost fringe letter
    let mut lo = if start_base { 1 } else { arms.p + 1 };
    let mut hi = if end_base {
        arms.n - 1
    } else {
        arms.end_shoulder()
    };
    if !start_base {
        while lo < hi && !letters[lo].direct {
            lo += 1;
        }
        if lo == hi {
            return None;
        }
        lo += 1;
    }
    if !end_base {
        while hi > lo && letters[hi - 1].direct {
            hi -= 1;
        }
        if hi == lo {
            return None;
        }
        hi -= 1;
    }
    Some((lo, hi))
}

pub fn is_submodule_interval(w: &StringWalk, start: usize, end: usize) -> bool {
    let l = w.letters();
    (start == 0 || l[start - 1].direct) && (end == l.len() || !l[end].direct)
}

pub fn is_quotient_interval(w: &StringWalk, start: usize, end: usize) -> bool {
    let l = w.letters();
    (start == 0 || !l[start - 1].direct) && (end == l.len() || l[end].direct)
}

/// Whether the base translate of `w` sits inside its cohook completion as a
/// submodule.
pub fn tau_submodule_check(f: &FringedAlgebra, w: &StringWalk) -> bool {
    let c = cohook_completion(f, w);
    match (tau(&f.base, w), tau_interval(f, &c)) {
        (TauResult::Zero, None) => true,
        (TauResult::Module(t), Some((lo, hi))) => {
            is_submodule_interval(&c.walk, lo, hi)
                && c.walk.slice(&f.hat, lo, hi).same_module(&f.hat, &t)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fringe::fringe;
    use crate::oracle::{rep_of_string, tau_linear, PathAlgebra};
    use crate::quiver::parse_quiver;
    use crate::strings::{dimension_vector, enumerate_strings, parse_string};

    fn load(text: &str) -> BoundQuiver {
        parse_quiver(text).unwrap()
    }

    #[test]
    fn hooks() {
        let q = load(include_str!("../corpus/ex22.quiver"));
        let w = parse_string(&q, "a2 b1^- a1^- b2").unwrap();
        let r = remove_hook(&q, &w, Side::Start).unwrap();
        assert_eq!(r.display(&q), "a2 b1^- a1^-");
        let inv = parse_string(&q, "b1^- a1^-").unwrap();
        assert_eq!(remove_hook(&q, &inv, Side::Start), None);
        let theta = parse_string(&q, "b2").unwrap();
        assert_eq!(
            remove_hook(&q, &theta, Side::Start),
            Some(StringWalk::lazy(q.vertex("4").unwrap()))
        );
    }

    #[test]
    fn a2_translates() {
        let q = load(include_str!("../corpus/a2.quiver"));
        let e1 = StringWalk::lazy(q.vertex("1").unwrap());
        let e2 = StringWalk::lazy(q.vertex("2").unwrap());
        assert!(tau(&q, &e1).is_zero());
        assert_eq!(tau(&q, &e2), TauResult::Module(e1.clone()));
        let a = parse_string(&q, "a").unwrap();
        assert!(tau(&q, &a).is_zero());
        assert_eq!(projective_walk(&q, 1), a);
        assert_eq!(projective_walk(&q, 0), e1);
        assert_eq!(injective_walk(&q, 0), a);
        assert_eq!(injective_walk(&q, 1), e2);
    }

    #[test]
    fn cohooks_in_fringed_quiver() {
        for text in [
            include_str!("../corpus/a2.quiver"),
            include_str!("../corpus/sq33.quiver"),
            include_str!("../corpus/gls.quiver"),
            include_str!("../corpus/a3.quiver"),
        ] {
            let q = load(text);
            let f = fringe(&q).unwrap();
            for w in enumerate_strings(&q, None).unwrap() {
                let c = cohook_completion(&f, &w);
                assert!(f.is_fringe_vertex(c.walk.start()) && f.is_fringe_vertex(c.walk.end()));
                let t = tau(&f.hat, &w);
                assert!(
                    t.module().unwrap().same_module(&f.hat, &c.walk),
                    "{}",
                    w.display(&q)
                );
                if !w.is_lazy() {
                    assert!(add_cohook(&f.hat, &w, Side::Start).is_some());
                    assert!(add_cohook(&f.hat, &w, Side::End).is_some());
                }
                assert!(tau_submodule_check(&f, &w), "{}", w.display(&q));
                let back = c.inverse().inverse();
                assert_eq!(back, c);
            }
        }
    }

    #[test]
    fn translate_matches_linear_algebra() {
        for text in [
            include_str!("../corpus/a2.quiver"),
            include_str!("../corpus/sq33.quiver"),
            include_str!("../corpus/gls.quiver"),
        ] {
            let q = load(text);
            let alg = PathAlgebra::new(&q);
            for w in enumerate_strings(&q, None).unwrap() {
                let lin = tau_linear(&q, &alg, &rep_of_string(&q, &w).rep);
                match tau(&q, &w) {
                    TauResult::Zero => assert!(lin.is_zero(), "{}", w.display(&q)),
                    TauResult::Module(t) => {
                        assert_eq!(lin.dims, dimension_vector(&q, &t), "{}", w.display(&q))
                    }
                }
            }
        }
    }

    #[test]
    fn injective_strings_of_fringed_a2() {
        let q = load(include_str!("../corpus/a2.quiver"));
        let f = fringe(&q).unwrap();
        for v in f.sink_fringe_vertices() {
            assert!(injective_string(&f, v).walk.is_direct());
        }
        for &v in &f.fringe_vertices {
            if f.hat.incoming(v).is_empty() {
                assert!(injective_string(&f, v).walk.is_lazy());
            }
        }
        for v in 0..q.num_vertices() {
            let w = injective_string(&f, v).walk;
            assert!(f.is_fringe_vertex(w.start()) && f.is_fringe_vertex(w.end()));
        }
    }
}
