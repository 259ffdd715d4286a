//! Octonions, the exceptional Jordan algebra `H₃(𝕆)`, and a generator-level
//! construction of `E₆` together with its subgroups `F₄`, `SO(9,1)`, `SO(9)`,
//! `SO(8)`, `SO(7)` and `G₂`.
//!
//! Group elements are nested octonionic matrix maps ([`transform::NestedMap`]);
//! Lie algebra dimensions are measured by numerically differentiating
//! generator curves and taking the rank of the resulting 27×27 matrices
//! ([`generators`]). The [`cayley`] module covers Cayley spinors, the
//! octonionic Dirac equation and p-square decompositions.

pub mod cayley;
pub mod cubic;
pub mod error;
pub mod exec;
pub mod generators;
pub mod jordan;
pub mod octonion;
pub mod random;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use jordan::{Hermitian2, JordanMatrix};
pub use octonion::{ImaginaryUnit, Octonion, OctonionMap};
pub use transform::{NestedMap, NestedMap2, NestedMap3, OctMatrix, OctMatrix2, OctMatrix3, Slot};

/// Default absolute tolerance for algebraic identity residuals on unit-scale inputs.
pub const IDENTITY_TOL: f64 = 1e-9;
