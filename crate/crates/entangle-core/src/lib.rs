//! Multipartite entanglement toolkit: states, orthogonal arrays, hypergraph
//! excitation states, symmetry groups, entanglement measures, multiunitary
//! matrices, SLOCC discrimination of four-qubit states and few-body dynamics.

pub mod algebra;
pub mod dynamics;
pub mod error;
pub mod hypergraph;
pub mod linalg;
pub mod measures;
pub mod multiunitary;
pub mod poly;
pub mod slocc;
pub mod state;
pub mod states;
pub mod symmetry;

pub use error::{Error, Result};
pub use linalg::{CMatrix, C64};
pub use state::{DensityMatrix, PureState};
