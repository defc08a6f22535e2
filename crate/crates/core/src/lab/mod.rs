//! Dense Terwilliger-algebra computations on small schemes.
//!
//! Everything here is floating point; rank and residual decisions use
//! [`ops::TAU`] and are cross-checked against exact integer constraints
//! (dimension sums, multiplicities) by the callers.

pub mod checks;
pub mod modules;
pub mod ops;
pub mod summary;

pub use checks::{
    module_orthogonality_test, split_decomposition, split_orthogonality, split_spaces,
    verify_itt, verify_tridiagonal, OrthogonalityReport, Side, SplitReport,
};
pub use modules::{decompose_modules, Decomposition, IrreducibleModule, ModuleSignature};
pub use ops::{DenseOperatorSet, TAU};
pub use summary::{summarize, DecompositionSummary};
