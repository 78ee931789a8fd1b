//! Combinatorics of gentle algebras.

pub mod ar;
pub mod corpus;
pub mod error;
pub mod ext;
pub mod fringe;
pub mod hom;
pub mod oracle;
pub mod quiver;
pub mod strings;
pub mod tilting;

pub use ar::{
    cohook_completion, injective_string, injective_walk, projective_walk, tau, Arms, LongKind,
    LongString, TauResult,
};
pub use error::{Error, FringeError, QuiverError, StringError, TiltingError};
pub use ext::{
    bookkeeping, ext_basis, ext_dim, injective_factoring_basis, ExtBookkeeping, ExtensionSeq,
};
pub use fringe::{fringe, FringedAlgebra};
pub use hom::{
    hom_basis, hom_dim, hom_tau_dim, kiss_count, kisses, AdmissiblePair, Factorization, Kiss,
};
pub use quiver::{
    parse_quiver, serialize_quiver, validate_gentle, Arrow, ArrowId, Axiom, BoundQuiver,
    GentleReport, Relation, Vertex, VertexId, Violation,
};
pub use strings::{
    detect_bands, dimension_vector, enumerate_strings, make_string, parse_string, substring, Band,
    Interval, Letter, StringWalk,
};
pub use tilting::{
    compatible, fac_contains, is_brick, is_tau_rigid, kiss_uniqueness_report, maximal_collections,
    mc_walk, poset, torsion_class_strings, verify_cang, Collection, CollectionItem, TorsionPoset,
};
