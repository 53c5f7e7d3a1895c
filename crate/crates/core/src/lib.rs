//! Anyonic entanglement entropies and topological entanglement entropy
//! computed from anyon-model data.

pub mod error;
mod linalg;
pub mod state;
pub mod entropy;
pub mod model;
pub mod tee;
pub mod fermionic;
pub mod io;
pub mod random;

pub use error::{Error, Result};
pub use model::{AnyonModel, ChargeId};
