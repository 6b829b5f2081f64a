//! Exact decision procedures for fractional [a,b]-covered and fractional
//! (a,b,k)-critical covered graphs.
//!
//! * [`graph`] and [`graph6`]: bitset graphs, constructions, the graph6 codec.
//! * [`invariants`]: exact `δ`, `κ` (Menger via max-flow) and `α` (branch and bound).
//! * [`covered`]: the subset characterization (`θ`, `ε`, `Y`) and both checkers.
//! * [`lp`]: an independent feasibility oracle (exact simplex or double-cover flow).
//! * [`harness`]: connectivity bounds, sharpness constructions, stream verification.
//! * [`cli`]: the `factorlab` command line.
//!
//! ```
//! use factorlab::{covered, graph};
//!
//! let g = graph::join(&graph::complete(3).unwrap(), &graph::disjoint_clique_union(2, 1).unwrap()).unwrap();
//! let verdict = covered::is_fractional_ab_covered(&g, covered::FactorParams::covered(1, 1).unwrap());
//! let w = verdict.witness.unwrap();
//! assert_eq!((w.theta, w.epsilon), (1, 2));
//! ```

pub mod cli;
pub mod covered;
pub mod flow;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod invariants;
pub mod lp;
pub mod scalar;

pub use covered::{CoveredVerdict, CriticalVerdict, FactorParams, LemmaWitness};
pub use graph::{Edge, Graph, VertexSet};
pub use scalar::Scalar;

/// Exact arbitrary-precision rational; carries every bound and verdict-path LP.
pub type Rational = num_rational::BigRational;

/// Phase-I problem over exact rationals.
pub type ExactProblem = lp::FeasibilityProblem<Rational>;
/// Phase-I problem over `f64`, for exploration only.
pub type FloatProblem = lp::FeasibilityProblem<f64>;
/// Phase-I problem over `f32`.
pub type Float32Problem = lp::FeasibilityProblem<f32>;

/// Fractional factor with exact weights.
pub type ExactAssignment = lp::FractionalAssignment<Rational>;
/// Fractional factor with `f64` weights.
pub type FloatAssignment = lp::FractionalAssignment<f64>;
