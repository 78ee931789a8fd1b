//! The bundled example algebras.

use crate::quiver::{parse_quiver, BoundQuiver};

pub const CORPUS: &[(&str, &str)] = &[
    ("a2", include_str!("../corpus/a2.quiver")),
    ("a3", include_str!("../corpus/a3.quiver")),
    ("ex22", include_str!("../corpus/ex22.quiver")),
    ("sq33", include_str!("../corpus/sq33.quiver")),
    ("grid_2_4", include_str!("../corpus/grid_2_4.quiver")),
    ("grid_2_5", include_str!("../corpus/grid_2_5.quiver")),
    ("gls", include_str!("../corpus/gls.quiver")),
    ("kronecker", include_str!("../corpus/kronecker.quiver")),
];

pub fn corpus_text(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn corpus_quiver(name: &str) -> Option<BoundQuiver> {
    corpus_text(name).map(|t| parse_quiver(t).expect("corpus files parse"))
}

/// Every corpus algebra, in the order above.
pub fn corpus() -> Vec<BoundQuiver> {
    CORPUS
        .iter()
        .map(|(_, t)| parse_quiver(t).expect("corpus files parse"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::validate_gentle;

    #[test]
    fn all_gentle() {
        for q in corpus() {
            assert!(validate_gentle(&q).is_gentle, "{}", q.name());
        }
        assert_eq!(corpus_quiver("gls").unwrap().num_vertices(), 2);
        assert!(corpus_text("missing").is_none());
    }
}
