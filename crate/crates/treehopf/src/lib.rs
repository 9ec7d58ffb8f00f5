//! Exact computer algebra for rooted-tree families and the graded Hopf
//! algebras they carry.
//!
//! The crate covers six families — plain (`T`), labeled (`LT`), ordered
//! (`OT`), labeled ordered (`LOT`), heap-ordered (`HOT`), and labeled
//! heap-ordered (`LHOT`) trees — with:
//!
//! * canonical tree/forest representations and the four structural
//!   operations (root deletion, restriction, attachment, units),
//! * the product, coproduct, counit, and antipode on exact-rational
//!   linear combinations of trees,
//! * exhaustive enumeration, counting recurrences, generating-function
//!   identities, and the ⊙-product with indecomposable factorization,
//! * verification suites that sweep every axiom and identity over all
//!   instances up to a size bound and emit machine-readable reports.

pub mod algebra;
pub mod enumeration;
pub mod error;
pub mod family;
pub mod linalg;
pub mod linking;
pub mod ops;
pub mod series;
pub mod text;
pub mod verify;

pub use error::Error;
pub use family::{
    CanonicalForest, CanonicalTree, FamilyId, FamilyKind, Selector, StructureKind, Subtree,
};
pub use linking::LinkingMap;
