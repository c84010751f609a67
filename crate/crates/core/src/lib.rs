//! Analysis of `Out(A_Γ)` for right-angled Artin groups: link-star order,
//! SIL pairs, maximal SIL-pair systems, partial conjugations, the standard
//! presentation of the pure symmetric outer automorphism group, and a rule
//! chain deciding acylindrical hyperbolicity with re-checkable certificates.

pub mod decide;
pub mod error;
pub mod gen;
pub mod graph;
pub mod mc;
pub mod order;
pub mod pconj;
pub mod presentation;
pub mod sil;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{SimplicialGraph, VertexId, VertexSet, MAX_VERTICES};
