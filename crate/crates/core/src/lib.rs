//! Exact analysis of pseudo-Boolean functions `f: {0,1}^n → Q`.
//!
//! Tables are indexed by bit masks with `x_1` the least significant bit.
//! Values are exact rationals throughout.

pub mod analysis;
pub mod calculus;
pub mod decomposition;
pub mod error;
pub mod families;
pub mod games;
pub mod io;
pub mod monotonicity;
pub mod permutability;
pub mod point;
pub mod polyform;
pub mod rational;
pub mod reconstruction;
pub mod sweep;
pub mod symmetric;
pub mod table;

pub use analysis::{analyze, AnalysisReport};
pub use calculus::{apply_sequence, delta, delta2, join_derivative, meet_derivative, DerivativeOp, OpKind, OpSequence};
pub use decomposition::{decompose, Orientation, PseudoPolynomialDecomposition};
pub use error::{Error, Result};
pub use monotonicity::{is_monotone, is_p_locally_monotone, local_monotonicity_degree, LocalMonotonicityReport};
pub use permutability::{has_p_permutable_derivatives, max_permutability_degree, PermutabilityReport};
pub use point::{Point, SubsetMask, MAX_ARITY};
pub use polyform::MultilinearPolynomial;
pub use rational::Rational;
pub use reconstruction::{profile_of, reconstruct, DerivativeProfile, ReconstructionResult};
pub use symmetric::{detect_symmetric, staircase, SymmetricSequence};
pub use table::FunctionTable;
