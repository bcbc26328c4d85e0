use thiserror::Error;

use crate::quiver::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("2-cycle between vertices {0} and {1}")]
    TwoCycle(Vertex, Vertex),
    #[error("quiver has an oriented cycle")]
    Cyclic,
    /// `index` is 1-based, matching how sequences are written by hand.
    #[error("not green at step {index} (vertex {vertex})")]
    NotGreenAt { index: usize, vertex: Vertex },
    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("order is not admissible for the quiver")]
    NotAdmissible,
    #[error("word is not reduced")]
    NonReducedWord,
    #[error("word is not c-sortable")]
    NotSortable,
    #[error("vector is isotropic")]
    Isotropic,
    #[error("reflection along this vector is not integral")]
    NonIntegralReflection,
    #[error("quiver is not of Dynkin type")]
    NonDynkin,
    #[error("{0:?} is not a positive root")]
    NotARoot(Vec<i64>),
    #[error("set is not a torsion class")]
    NotATorsionClass,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("integer overflow in mutation")]
    Overflow,
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
