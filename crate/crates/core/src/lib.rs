//! Exact-arithmetic toolkit for left-invariant almost contact B-metric
//! structures on Lie algebras: Levi-Civita and torsion connections, their
//! curvature tensors, class membership and a registry of identity checks.

pub mod error;
pub mod exact;
pub mod tensor;
pub mod liealg;
pub mod structure;
pub mod fixtures;
pub mod levicivita;
pub mod classify;
pub mod phikt;
pub mod curvature;
pub mod verify;
pub mod specfile;

pub use error::{Error, Result};
pub use exact::{ParamSpace, Rat, Scalar};
