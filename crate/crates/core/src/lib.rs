//! Green quiver mutation, simple tilting of hearts, c-sortable words, and an explicit
//! representation-theoretic oracle for Dynkin quivers.

pub mod bridge;
pub mod coxeter;
pub mod error;
pub mod hearts;
pub mod linalg;
pub mod quiver;
pub mod repr;
pub mod verify;

pub use error::{Error, Result};
