//! Factorizations, graph maps and kisses.

use crate::ar::{
    cohook_completion, is_quotient_interval, is_submodule_interval, tau_interval, LongString,
};
use crate::error::TiltingError;
use crate::fringe::FringedAlgebra;
use crate::quiver::BoundQuiver;
use crate::strings::{Interval, Letter, StringWalk};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Quotient,
    Submodule,
}

/// `C = F E D` with `E` at `middle`; `D` is traversed before `E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub middle: Interval,
    pub kind: FactorKind,
}

impl Factorization {
    /// Lengths of `(F, E, D)` inside a string of length `n`.
    pub fn lengths(&self, n: usize) -> (usize, usize, usize) {
        (n - self.middle.end, self.middle.len(), self.middle.start)
    }
}

pub fn quotient_factorizations(w: &StringWalk) -> Vec<Factorization> {
    intervals(w, is_quotient_interval)
        .map(|middle| Factorization {
            middle,
            kind: FactorKind::Quotient,
        })
        .collect()
}

pub fn submodule_factorizations(w: &StringWalk) -> Vec<Factorization> {
    intervals(w, is_submodule_interval)
        .map(|middle| Factorization {
            middle,
            kind: FactorKind::Submodule,
        })
        .collect()
}

fn intervals<'a>(
    w: &'a StringWalk,
    keep: fn(&StringWalk, usize, usize) -> bool,
) -> impl Iterator<Item = Interval> + 'a {
    let n = w.len();
    (0..=n)
        .flat_map(move |a| (a..=n).map(move |b| Interval::new(a, b)))
        .filter(move |iv| keep(w, iv.start, iv.end))
}

/// A quotient factorization of the source paired with a submodule
/// factorization of the target with the same middle, read backwards in the
/// target when `flip` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    pub quotient: Interval,
    pub submodule: Interval,
    pub flip: bool,
}

impl AdmissiblePair {
    /// The same map after reversing the source and/or target walks.
    pub fn reoriented(
        &self,
        n_source: usize,
        n_target: usize,
        inv_source: bool,
        inv_target: bool,
    ) -> Self {
        let mirror = |iv: Interval, n: usize| Interval::new(n - iv.end, n - iv.start);
        let lazy = self.quotient.is_empty();
        let mut flip = self.flip;
        let quotient = if inv_source {
            flip ^= !lazy;
            mirror(self.quotient, n_source)
        } else {
            self.quotient
        };
        let submodule = if inv_target {
            flip ^= !lazy;
            mirror(self.submodule, n_target)
        } else {
            self.submodule
        };
        AdmissiblePair {
            quotient,
            submodule,
            flip,
        }
    }

    /// Source slot range and target slot range matched by the graph map.
    pub fn slots(&self) -> ((usize, usize), (usize, usize)) {
        (
            (self.quotient.start, self.quotient.end),
            (self.submodule.start, self.submodule.end),
        )
    }
}

fn same_middle(
    q: &BoundQuiver,
    x: &StringWalk,
    a: Interval,
    y: &StringWalk,
    c: Interval,
    flip: bool,
) -> bool {
    if a.len() != c.len() {
        return false;
    }
    let xl = &x.letters()[a.start..a.end];
    let yl = &y.letters()[c.start..c.end];
    if xl.is_empty() {
        return !flip && x.vertex_at(q, a.start) == y.vertex_at(q, c.start);
    }
    if flip {
        xl.iter().zip(yl.iter().rev()).all(|(l, r)| *l == r.inv())
    } else {
        xl == yl
    }
}

/// Admissible pairs from `x` to `y`; their graph maps form a basis of
/// `Hom(x, y)`.
pub fn hom_basis(q: &BoundQuiver, x: &StringWalk, y: &StringWalk) -> Vec<AdmissiblePair> {
    let quots: Vec<Interval> = intervals(x, is_quotient_interval).collect();
    let subs: Vec<Interval> = intervals(y, is_submodule_interval).collect();
    let mut out = Vec::new();
    for &a in &quots {
        for &c in &subs {
            for flip in [false, true] {
                if same_middle(q, x, a, y, c, flip) {
                    out.push(AdmissiblePair {
                        quotient: a,
                        submodule: c,
                        flip,
                    });
                }
            }
        }
    }
    out
}

pub fn hom_dim(q: &BoundQuiver, x: &StringWalk, y: &StringWalk) -> usize {
    hom_basis(q, x, y).len()
}

/// A kiss: an admissible pair whose four flanks all have positive length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Kiss {
    pub pair: AdmissiblePair,
    /// Letters of the source just before and after the middle, then the
    /// same for the target (in its own traversal order).
    pub flanks: [Letter; 4],
}

pub fn kisses_between(q: &BoundQuiver, x: &StringWalk, y: &StringWalk) -> Vec<Kiss> {
    let (nx, ny) = (x.len(), y.len());
    hom_basis(q, x, y)
        .into_iter()
        .filter(|t| {
            t.quotient.start > 0
                && t.quotient.end < nx
                && t.submodule.start > 0
                && t.submodule.end < ny
        })
        .map(|t| Kiss {
            pair: t,
            flanks: [
                x.letters()[t.quotient.start - 1],
                x.letters()[t.quotient.end],
                y.letters()[t.submodule.start - 1],
                y.letters()[t.submodule.end],
            ],
        })
        .collect()
}

/// All kisses from `x` to `y`.
pub fn kisses(f: &FringedAlgebra, x: &LongString, y: &LongString) -> Vec<Kiss> {
    kisses_between(&f.hat, &x.walk, &y.walk)
}

pub fn kiss_count(f: &FringedAlgebra, x: &LongString, y: &LongString) -> usize {
    kisses(f, x, y).len()
}

/// `dim Hom(x, τ y)` as the number of kisses between cohook completions.
pub fn hom_tau_dim(f: &FringedAlgebra, x: &StringWalk, y: &StringWalk) -> usize {
    kiss_count(f, &cohook_completion(f, x), &cohook_completion(f, y))
}

/// Re-reads a kiss from `cohook(x)` to `cohook(y)` as a graph map from `x`
/// into the base translate of `y`, returned with that translate's walk.
pub fn kiss_to_graph_map(
    f: &FringedAlgebra,
    cx: &LongString,
    cy: &LongString,
    kiss: &Kiss,
) -> Result<(StringWalk, AdmissiblePair), TiltingError> {
    let (lo, hi) = tau_interval(f, cy).ok_or_else(|| {
        let base = match &cy.kind {
            crate::ar::LongKind::Cohook { base, .. } => base.display(&f.base),
            crate::ar::LongKind::Injective(v) => f.hat.vertex_name(*v).to_string(),
        };
        TiltingError::YIsProjective(base)
    })?;
    let ax = cx.arms().expect("cohook completion");
    let (xs, _) = ax.base_slots();
    let t = kiss.pair;
    assert!(
        t.quotient.start >= xs && t.quotient.end <= xs + ax.m,
        "kiss middle leaves the source string"
    );
    assert!(
        t.submodule.start >= lo && t.submodule.end <= hi,
        "kiss middle leaves the translate"
    );
    let walk = cy.walk.slice(&f.hat, lo, hi);
    Ok((
        walk,
        AdmissiblePair {
            quotient: Interval::new(t.quotient.start - xs, t.quotient.end - xs),
            submodule: Interval::new(t.submodule.start - lo, t.submodule.end - lo),
            flip: t.flip,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar::{injective_string, tau, TauResult};
    use crate::fringe::fringe;
    use crate::oracle::{hom_dim_linear, rep_of_string, tau_linear, PathAlgebra};
    use crate::quiver::parse_quiver;
    use crate::strings::{enumerate_strings, parse_string};

    fn load(text: &str) -> BoundQuiver {
        parse_quiver(text).unwrap()
    }

    #[test]
    fn lazy_factorizations() {
        let w = StringWalk::lazy(0);
        assert_eq!(quotient_factorizations(&w).len(), 1);
        assert_eq!(submodule_factorizations(&w).len(), 1);
        assert_eq!(
            hom_dim(&load("algebra p\nvertices: x\nrelations:\n"), &w, &w),
            1
        );
    }

    #[test]
    fn gls_endomorphisms() {
        let q = load(include_str!("../corpus/gls.quiver"));
        let p1 = parse_string(&q, "a").unwrap();
        assert_eq!(hom_dim(&q, &p1, &p1), 2);
    }

    #[test]
    fn basis_matches_linear_algebra() {
        for text in [
            include_str!("../corpus/gls.quiver"),
            include_str!("../corpus/sq33.quiver"),
        ] {
            let q = load(text);
            let strings = enumerate_strings(&q, None).unwrap();
            for x in &strings {
                for y in &strings {
                    let lin =
                        hom_dim_linear(&q, &rep_of_string(&q, x).rep, &rep_of_string(&q, y).rep);
                    assert_eq!(
                        hom_dim(&q, x, y),
                        lin,
                        "{} -> {}",
                        x.display(&q),
                        y.display(&q)
                    );
                }
            }
        }
    }

    #[test]
    fn kisses_match_hom_into_translate() {
        let q = load(include_str!("../corpus/gls.quiver"));
        let f = fringe(&q).unwrap();
        let alg = PathAlgebra::new(&q);
        let strings = enumerate_strings(&q, None).unwrap();
        for x in &strings {
            for y in &strings {
                let ty = tau_linear(&q, &alg, &rep_of_string(&q, y).rep);
                let lin = hom_dim_linear(&q, &rep_of_string(&q, x).rep, &ty);
                assert_eq!(hom_tau_dim(&f, x, y), lin);
                let cx = cohook_completion(&f, x);
                let cy = cohook_completion(&f, y);
                for k in kisses(&f, &cx, &cy) {
                    let (walk, t) = kiss_to_graph_map(&f, &cx, &cy, &k).unwrap();
                    assert_eq!(tau(&q, y), TauResult::Module(walk.canonical(&q)));
                    assert!(hom_basis(&q, x, &walk).contains(&t));
                }
            }
        }
    }

    #[test]
    fn injectives_never_kiss_out() {
        let q = load(include_str!("../corpus/sq33.quiver"));
        let f = fringe(&q).unwrap();
        let strings = enumerate_strings(&q, None).unwrap();
        for v in 0..f.hat.num_vertices() {
            let iv = injective_string(&f, v);
            for y in &strings {
                assert!(kisses(&f, &iv, &cohook_completion(&f, y)).is_empty());
            }
        }
    }

    #[test]
    fn reorientation_round_trip() {
        let q = load(include_str!("../corpus/ex22.quiver"));
        let x = parse_string(&q, "a2 b1^- a1^- b2").unwrap();
        for t in hom_basis(&q, &x, &x) {
            let r = t.reoriented(4, 4, true, false);
            assert!(hom_basis(&q, &x.inverse(), &x).contains(&r));
            assert_eq!(r.reoriented(4, 4, true, false), t);
        }
    }
}
