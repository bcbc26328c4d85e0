//! Explicit representations of Dynkin quivers, used as an independent oracle.

pub mod graded;
pub mod representation;
pub mod torsion;

pub use graded::{ext_quiver, ext_quiver_framed, lemma_kq_check, GradedQuiver};
pub use representation::{
    all_indecomposables, end_dim, ext_dim, framed_quiver, hom_basis, hom_dim, indecomposable_of_root, Morphism,
    Representation,
};
pub use torsion::{is_torsion_class, simples_of_wide, torsion_closure_brute, wide_brute, DEFAULT_CAP};
