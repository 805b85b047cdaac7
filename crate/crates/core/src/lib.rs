//! Exact computations with finite-dimensional group-graded algebras:
//! epsilon-strong gradings, separability over the principal component,
//! Frobenius systems, and unital twisted partial actions.

pub mod algebra;
pub mod exactnum;
pub mod gallery;
pub mod grading;
pub mod groups;
pub mod linalg;
pub mod partialaction;
pub mod separability;

pub use algebra::{AlgebraError, AlgebraViolation, StructureAlgebra, TensorOverBase};
pub use exactnum::{FieldSpec, Scalar, ScalarError};
pub use grading::{Classification, EpsilonData, GradedRing};
pub use groups::{GradingGroup, GroupElement, GroupError};
pub use linalg::{Matrix, Subspace, Vector};
pub use partialaction::{CrossedProduct, TwistedPartialAction};
