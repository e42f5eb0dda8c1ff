//! Finite projective geometry over GF(2) and GF(4): Desarguesian line
//! spreads, quadrics, Hermitian varieties and the N-qubit Pauli group.

pub mod cli;
pub mod error;
pub mod forms;
pub mod galois;
pub mod pauli;
pub mod projgeom;
pub mod spreads;
pub mod theorems;

pub use error::{GeometryError, Result};
