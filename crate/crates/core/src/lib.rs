//! Formal integrability, involution and purity for linear PDE systems with
//! constant coefficients.

pub mod completion;
pub mod error;
pub mod hilbert;
pub mod inverse;
pub mod jetspace;
pub mod pdesystem;
pub mod purity;
pub mod ratlinalg;
pub mod spencer;

pub use error::{Error, Result};
