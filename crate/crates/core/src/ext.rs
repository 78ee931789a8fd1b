//! Extensions between string modules as explicit short exact sequences.

use crate::ar::{cohook_completion, injective_walk, Arms, LongString};
use crate::fringe::FringedAlgebra;
use crate::hom::{hom_basis, AdmissiblePair};
use crate::oracle::{compose, graph_map_matrix, rep_of_string};
use crate::quiver::{ArrowId, BoundQuiver, VertexId};
use crate::strings::{can_follow, dimension_vector, Interval, Letter, StringWalk};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arm {
    /// The direct arm, traversed before the completed string.
    Direct,
    /// The inverse arm, traversed after it.
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArmLocation {
    pub arm: Arm,
    pub interval: Interval,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtKind {
    Connecting { arrow: ArrowId },
    TwoSided(AdmissiblePair),
}

/// `0 -> left -> middle -> right -> 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSeq {
    pub left: StringWalk,
    pub right: StringWalk,
    pub middle: Vec<StringWalk>,
    pub kind: ExtKind,
}

impl ExtensionSeq {
    pub fn display(&self, q: &BoundQuiver) -> String {
        let mid: Vec<String> = self.middle.iter().map(|m| m.display(q)).collect();
        format!(
            "0 -> {} -> {} -> {} -> 0",
            self.left.display(q),
            mid.join(" (+) "),
            self.right.display(q)
        )
    }

    /// Dimension vectors add up across the sequence.
    pub fn is_additive(&self, q: &BoundQuiver) -> bool {
        let mut lhs = dimension_vector(q, &self.left);
        for (x, y) in lhs.iter_mut().zip(dimension_vector(q, &self.right)) {
            *x += y;
        }
        let mut rhs = vec![0; q.num_vertices()];
        for m in &self.middle {
            for (x, y) in rhs.iter_mut().zip(dimension_vector(q, m)) {
                *x += y;
            }
        }
        lhs == rhs
    }
}

/// At least one of `D₁, D₂` and at least one of `F₁, F₂` has positive length.
pub fn is_two_sided(t: &AdmissiblePair, n_source: usize, n_target: usize) -> bool {
    let d1 = t.quotient.start;
    let f1 = n_source - t.quotient.end;
    let (d2, f2) = if t.flip {
        (n_target - t.submodule.end, t.submodule.start)
    } else {
        (t.submodule.start, n_target - t.submodule.end)
    };
    (d1 > 0 || d2 > 0) && (f1 > 0 || f2 > 0)
}

fn orientations(w: &StringWalk) -> Vec<(bool, StringWalk)> {
    if w.is_lazy() {
        vec![(false, w.clone())]
    } else {
        vec![(false, w.clone()), (true, w.inverse())]
    }
}

fn join(q: &BoundQuiver, parts: &[&[Letter]], start: VertexId) -> Option<StringWalk> {
    let letters: Vec<Letter> = parts.iter().flat_map(|p| p.iter().copied()).collect();
    if letters.is_empty() {
        return Some(StringWalk::lazy(start));
    }
    let w = StringWalk::from_letters(q, letters).ok()?;
    (w.start() == start).then_some(w)
}

/// The strings `Yα⁻¹X` (read right to left) over all orientations, with the
/// arrow used.
pub fn connecting_walks(
    q: &BoundQuiver,
    y: &StringWalk,
    x: &StringWalk,
) -> Vec<(ArrowId, StringWalk)> {
    let mut out: Vec<(ArrowId, StringWalk)> = Vec::new();
    for (_, xo) in orientations(x) {
        for (_, yo) in orientations(y) {
            for a in 0..q.num_arrows() {
                if xo.end() != q.target(a) || yo.start() != q.source(a) {
                    continue;
                }
                let shoulder = [Letter::inverse(a)];
                if let Some(w) = join(q, &[xo.letters(), &shoulder, yo.letters()], xo.start()) {
                    if !out.iter().any(|(_, v)| *v == w) {
                        out.push((a, w));
                    }
                }
            }
        }
    }
    out
}

/// Arrows `α` such that `Yα⁻¹X` is a string for some orientations.
pub fn connectable(q: &BoundQuiver, y: &StringWalk, x: &StringWalk) -> Vec<ArrowId> {
    let mut arrows: Vec<ArrowId> = connecting_walks(q, y, x)
        .into_iter()
        .map(|(a, _)| a)
        .collect();
    arrows.sort_unstable();
    arrows.dedup();
    arrows
}

pub fn arm_location(arms: &Arms, t: &AdmissiblePair) -> Option<ArmLocation> {
    let iv = t.submodule;
    if arms.on_direct_arm(iv.start, iv.end) {
        Some(ArmLocation {
            arm: Arm::Direct,
            interval: iv,
        })
    } else if arms.on_inverse_arm(iv.start, iv.end) {
        Some(ArmLocation {
            arm: Arm::Inverse,
            interval: iv,
        })
    } else {
        None
    }
}

/// Whether a graph map from `X` into the cohook completion of `Y` is the
/// connecting map of some `Yα⁻¹X`: its middle lies on an arm, the side of
/// `X` facing `Y` is empty, and `X` continues through the shoulder.
pub fn is_connecting_map(
    q: &BoundQuiver,
    c: &LongString,
    x: &StringWalk,
    t: &AdmissiblePair,
) -> bool {
    let Some(arms) = c.arms() else {
        return false;
    };
    let Some(loc) = arm_location(&arms, t) else {
        return false;
    };
    let n = x.len();
    let (a, b) = (t.quotient.start, t.quotient.end);
    if a != b {
        return match (loc.arm, t.flip) {
            (Arm::Direct, false) | (Arm::Inverse, true) => b == n,
            (Arm::Direct, true) | (Arm::Inverse, false) => a == 0,
        };
    }
    if n == 0 {
        return true;
    }
    let cl = c.walk.letters();
    match loc.arm {
        Arm::Direct => {
            let shoulder = cl[arms.start_shoulder()];
            let last = |w: &StringWalk| *w.letters().last().expect("nonempty");
            (a == n && can_follow(q, last(x), shoulder))
                || (a == 0 && can_follow(q, last(&x.inverse()), shoulder))
        }
        Arm::Inverse => {
            let shoulder = cl[arms.end_shoulder()];
            (a == 0 && can_follow(q, shoulder, x.letters()[0]))
                || (a == n && can_follow(q, shoulder, x.inverse().letters()[0]))
        }
    }
}

/// A graph map into `cohook(Y)` with the data of a factorization through the
/// injective string at `vertex`, all read in normalized orientations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectiveFactorization {
    /// The map in the original orientations of `X` and `cohook(Y)`.
    pub map: AdmissiblePair,
    pub vertex: VertexId,
    pub source: StringWalk,
    pub injective: StringWalk,
    pub target: StringWalk,
    pub normalized: AdmissiblePair,
    pub into_injective: AdmissiblePair,
    pub from_injective: AdmissiblePair,
}

impl InjectiveFactorization {
    /// Checks the factorization on explicit matrices.
    pub fn verify(&self, f: &FringedAlgebra) -> bool {
        let q = &f.hat;
        if !hom_basis(q, &self.source, &self.injective).contains(&self.into_injective)
            || !hom_basis(q, &self.injective, &self.target).contains(&self.from_injective)
        {
            return false;
        }
        let x = rep_of_string(q, &self.source);
        let i = rep_of_string(q, &self.injective);
        let c = rep_of_string(q, &self.target);
        let m = |s, t, p: &AdmissiblePair| {
            let (xs, ys) = p.slots();
            graph_map_matrix(q, s, t, xs, ys, p.flip)
        };
        let direct = m(&x, &c, &self.normalized);
        let through = compose(
            q,
            &m(&i, &c, &self.from_injective),
            &m(&x, &i, &self.into_injective),
        );
        direct == through
    }
}

fn factor_through_injective(
    f: &FringedAlgebra,
    x: &StringWalk,
    c: &LongString,
    t: &AdmissiblePair,
) -> Option<InjectiveFactorization> {
    let q = &f.hat;
    let arms = c.arms()?;
    let loc = arm_location(&arms, t)?;
    // bring the middle onto the direct arm, read forwards in both walks
    let (c_norm, mut tn) = if loc.arm == Arm::Inverse {
        (c.inverse(), t.reoriented(x.len(), arms.n, false, true))
    } else {
        (c.clone(), *t)
    };
    let mut xn = x.clone();
    // a lazy middle leaves X along the direct letter that continues the arm
    let s = tn.submodule.start;
    let continues = |w: &StringWalk, b: usize| {
        w.letters().get(b).is_some_and(|l| {
            l.direct && (s == 0 || can_follow(q, c_norm.walk.letters()[s - 1], *l))
        })
    };
    if tn.flip || (tn.quotient.is_empty() && !continues(&xn, tn.quotient.end)) {
        tn = tn.reoriented(x.len(), arms.n, true, false);
        xn = x.inverse();
    }
    let p = c_norm.arms()?.p;
    let xl = xn.letters();
    let (a, b) = (tn.quotient.start, tn.quotient.end);
    let run = xl[b..].iter().take_while(|l| l.direct).count();
    if run == 0 {
        return None;
    }
    let tv = xn.vertex_at(q, b + run);
    let k = xl[b + run..].iter().take_while(|l| !l.direct).count();
    let gamma = xl[b + run - 1];
    let mut inj = injective_walk(q, tv);
    let arm_len = |w: &StringWalk| w.letters().iter().take_while(|l| l.direct).count();
    if arm_len(&inj) == 0 || inj.letters()[arm_len(&inj) - 1] != gamma {
        inj = inj.inverse();
    }
    let r = arm_len(&inj);
    if r == 0 || inj.letters()[r - 1] != gamma || r < b + run - a {
        return None;
    }
    let into_injective = AdmissiblePair {
        quotient: Interval::new(a, b + run + k),
        submodule: Interval::new(r - (b + run - a), r + k),
        flip: false,
    };
    let from_injective = AdmissiblePair {
        quotient: Interval::new(0, p),
        submodule: Interval::new(0, p),
        flip: false,
    };
    Some(InjectiveFactorization {
        map: *t,
        vertex: tv,
        source: xn,
        injective: inj,
        target: c_norm.walk,
        normalized: tn,
        into_injective,
        from_injective,
    })
}

/// Graph maps into `τ_Â Y = cohook(Y)` with middle on an arm that are not
/// connecting maps; they span the maps factoring through injectives.
pub fn injective_factoring_basis(
    f: &FringedAlgebra,
    x: &StringWalk,
    y: &StringWalk,
) -> Vec<InjectiveFactorization> {
    let c = cohook_completion(f, y);
    let arms = c.arms().expect("cohook completion");
    hom_basis(&f.hat, x, &c.walk)
        .into_iter()
        .filter(|t| arm_location(&arms, t).is_some() && !is_connecting_map(&f.hat, &c, x, t))
        .map(|t| {
            factor_through_injective(f, x, &c, &t).expect("arm map factors through an injective")
        })
        .collect()
}

/// Middle terms `F₁ E D₂` and `F₂ E D₁` of a non-flipped pair.
fn two_sided_middles(
    q: &BoundQuiver,
    x: &StringWalk,
    y: &StringWalk,
    t: &AdmissiblePair,
) -> Option<[StringWalk; 2]> {
    let b = t.quotient.end;
    let d = t.submodule.end;
    let m1 = join(q, &[&y.letters()[..d], &x.letters()[b..]], y.start())?;
    let m2 = join(q, &[&x.letters()[..b], &y.letters()[d..]], x.start())?;
    Some([m1, m2])
}

/// A two-sided graph map from `X` to `Y`, read with `Y` oriented so that the
/// middle is not flipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSided {
    pub map: AdmissiblePair,
    pub target_inverted: bool,
    pub normalized: AdmissiblePair,
    pub middles: [StringWalk; 2],
}

pub fn two_sided_maps(q: &BoundQuiver, x: &StringWalk, y: &StringWalk) -> Vec<TwoSided> {
    let mut out = Vec::new();
    for t in hom_basis(q, x, y) {
        let candidates: Vec<(bool, StringWalk, AdmissiblePair)> = if t.quotient.is_empty() {
            orientations(y)
                .into_iter()
                .map(|(inv, yo)| {
                    let tn = if inv {
                        t.reoriented(x.len(), y.len(), false, true)
                    } else {
                        t
                    };
                    (inv, yo, tn)
                })
                .collect()
        } else if t.flip {
            vec![(
                true,
                y.inverse(),
                t.reoriented(x.len(), y.len(), false, true),
            )]
        } else {
            vec![(false, y.clone(), t)]
        };
        for (inv, yo, tn) in candidates {
            if !is_two_sided(&tn, x.len(), yo.len()) {
                continue;
            }
            if let Some(middles) = two_sided_middles(q, x, &yo, &tn) {
                out.push(TwoSided {
                    map: t,
                    target_inverted: inv,
                    normalized: tn,
                    middles,
                });
                break;
            }
        }
    }
    out
}

/// The graph map into `cohook(Y)` attached to a two-sided map, in the
/// orientation of `cohook(Y)`.
pub fn lift_two_sided(
    f: &FringedAlgebra,
    x: &StringWalk,
    y: &StringWalk,
    ts: &TwoSided,
) -> Option<AdmissiblePair> {
    let c = cohook_completion(f, y);
    // a lazy Y fixes no orientation of its cohook
    let mut tries = vec![ts.target_inverted];
    if y.is_empty() {
        tries.push(!ts.target_inverted);
    }
    tries
        .into_iter()
        .find_map(|inv| lift_in(x, &c, inv, &ts.normalized))
}

fn lift_in(
    x: &StringWalk,
    c: &LongString,
    inverted: bool,
    t: &AdmissiblePair,
) -> Option<AdmissiblePair> {
    let co = if inverted { c.inverse() } else { c.clone() };
    let arms = co.arms()?;
    let (p, m) = (arms.p, arms.m);
    let cl = co.walk.letters();
    let xl = x.letters();
    let (a, b) = (t.quotient.start, t.quotient.end);
    let (cs, ds) = (t.submodule.start, t.submodule.end);
    let (x_end, c_end) = if ds < m {
        (b, ds + p + 1)
    } else {
        if b >= xl.len() || xl[b] != cl[arms.end_shoulder()] {
            return None;
        }
        let k = xl[b + 1..].iter().take_while(|l| !l.direct).count();
        (b + 1 + k, arms.end_shoulder() + 1 + k)
    };
    let (x_start, c_start) = if cs > 0 {
        (a, cs + p + 1)
    } else {
        if a == 0 || xl[a - 1] != cl[p] {
            return None;
        }
        let k = xl[..a - 1].iter().rev().take_while(|l| l.direct).count();
        if k > p {
            return None;
        }
        (a - 1 - k, p - k)
    };
    let lifted = AdmissiblePair {
        quotient: Interval::new(x_start, x_end),
        submodule: Interval::new(c_start, c_end),
        flip: false,
    };
    Some(if inverted {
        lifted.reoriented(x.len(), arms.n, false, true)
    } else {
        lifted
    })
}

/// A basis of `Ext¹(Y, X)`: one sequence per connecting string and one per
/// two-sided map `X -> Y`.
pub fn ext_basis(q: &BoundQuiver, y: &StringWalk, x: &StringWalk) -> Vec<ExtensionSeq> {
    let mut out: Vec<ExtensionSeq> = connecting_walks(q, y, x)
        .into_iter()
        .map(|(a, w)| ExtensionSeq {
            left: x.clone(),
            right: y.clone(),
            middle: vec![w.canonical(q)],
            kind: ExtKind::Connecting { arrow: a },
        })
        .collect();
    for ts in two_sided_maps(q, x, y) {
        out.push(ExtensionSeq {
            left: x.clone(),
            right: y.clone(),
            middle: ts.middles.iter().map(|m| m.canonical(q)).collect(),
            kind: ExtKind::TwoSided(ts.map),
        });
    }
    out
}

/// `dim Ext¹(Y, X) = dim Hom(X, τY) - dim I(X, τY)`, computed in the fringed
/// algebra.
pub fn ext_dim(f: &FringedAlgebra, y: &StringWalk, x: &StringWalk) -> usize {
    let c = cohook_completion(f, y);
    let hom = hom_basis(&f.hat, x, &c.walk).len();
    hom - injective_factoring_basis(f, x, y).len()
}

/// How the basis of `Hom(X, τ_Â Y)` splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExtBookkeeping {
    pub hom_tau: usize,
    pub connecting: usize,
    pub injective_factoring: usize,
    pub off_arm: usize,
    pub connecting_walks: usize,
    pub two_sided: usize,
    /// Two-sided maps whose lift is a distinct off-arm basis element.
    pub lifted: usize,
}

impl ExtBookkeeping {
    pub fn consistent(&self) -> bool {
        self.hom_tau == self.connecting + self.injective_factoring + self.off_arm
            && self.connecting == self.connecting_walks
            && self.two_sided == self.off_arm
            && self.lifted == self.two_sided
    }

    pub fn ext_dim(&self) -> usize {
        self.hom_tau - self.injective_factoring
    }
}

pub fn bookkeeping(f: &FringedAlgebra, y: &StringWalk, x: &StringWalk) -> ExtBookkeeping {
    let c = cohook_completion(f, y);
    let arms = c.arms().expect("cohook completion");
    let basis = hom_basis(&f.hat, x, &c.walk);
    let mut out = ExtBookkeeping {
        hom_tau: basis.len(),
        ..Default::default()
    };
    for t in &basis {
        if arm_location(&arms, t).is_none() {
            out.off_arm += 1;
        } else if is_connecting_map(&f.hat, &c, x, t) {
            out.connecting += 1;
        } else {
            out.injective_factoring += 1;
        }
    }
    out.connecting_walks = connecting_walks(&f.base, y, x).len();
    let two_sided = two_sided_maps(&f.base, x, y);
    out.two_sided = two_sided.len();
    let mut seen = Vec::new();
    for ts in &two_sided {
        if let Some(l) = lift_two_sided(f, x, y, ts) {
            if basis.contains(&l) && arm_location(&arms, &l).is_none() && !seen.contains(&l) {
                seen.push(l);
            }
        }
    }
    out.lifted = seen.len();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar::injective_string;
    use crate::fringe::fringe;
    use crate::oracle::{ext1_dim_linear, PathAlgebra};
    use crate::quiver::parse_quiver;
    use crate::strings::enumerate_strings;

    fn load(text: &str) -> BoundQuiver {
        parse_quiver(text).unwrap()
    }

    #[test]
    fn a2_simple_extension() {
        let q = load(include_str!("../corpus/a2.quiver"));
        let f = fringe(&q).unwrap();
        let s1 = StringWalk::lazy(0);
        let s2 = StringWalk::lazy(1);
        assert_eq!(connectable(&q, &s2, &s1), vec![0]);
        let basis = ext_basis(&q, &s2, &s1);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].middle[0].display(&q), "a");
        assert_eq!(ext_dim(&f, &s2, &s1), 1);
        assert_eq!(ext_dim(&f, &s1, &s2), 0);
    }

    #[test]
    fn lazy_pair_is_not_two_sided() {
        let t = AdmissiblePair {
            quotient: Interval::new(0, 0),
            submodule: Interval::new(0, 0),
            flip: false,
        };
        assert!(!is_two_sided(&t, 0, 0));
        let t = AdmissiblePair {
            quotient: Interval::new(0, 1),
            submodule: Interval::new(1, 2),
            flip: false,
        };
        assert!(is_two_sided(&t, 2, 2));
    }

    #[test]
    fn matches_linear_algebra() {
        for text in [
            include_str!("../corpus/a3.quiver"),
            include_str!("../corpus/sq33.quiver"),
            include_str!("../corpus/gls.quiver"),
            include_str!("../corpus/ex22.quiver"),
            include_str!("../corpus/grid_2_4.quiver"),
        ] {
            let q = load(text);
            let f = fringe(&q).unwrap();
            let alg = PathAlgebra::new(&q);
            let strings = enumerate_strings(&q, Some(4)).unwrap();
            for y in &strings {
                for x in &strings {
                    let lin = ext1_dim_linear(
                        &q,
                        &alg,
                        &rep_of_string(&q, y).rep,
                        &rep_of_string(&q, x).rep,
                    );
                    let book = bookkeeping(&f, y, x);
                    let label = format!("Ext({}, {})", y.display(&q), x.display(&q));
                    assert!(book.consistent(), "{label}: {book:?}");
                    assert_eq!(ext_dim(&f, y, x), lin, "{label}");
                    let basis = ext_basis(&q, y, x);
                    assert_eq!(basis.len(), lin, "{label}");
                    for e in &basis {
                        assert!(e.is_additive(&q), "{label}");
                    }
                    for fac in injective_factoring_basis(&f, x, y) {
                        assert!(fac.verify(&f), "{label}");
                    }
                }
            }
        }
    }

    #[test]
    fn maps_out_of_injectives_are_one_sided() {
        let q = load(include_str!("../corpus/sq33.quiver"));
        let f = fringe(&q).unwrap();
        let strings = enumerate_strings(&q, None).unwrap();
        for v in 0..f.hat.num_vertices() {
            let i = injective_string(&f, v).walk;
            for y in &strings {
                let c = cohook_completion(&f, y).walk;
                for target in [y, &c] {
                    for t in hom_basis(&f.hat, &i, target) {
                        assert!(!is_two_sided(&t, i.len(), target.len()));
                    }
                }
            }
        }
    }
}
