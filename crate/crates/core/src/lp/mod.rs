//! Ground-truth oracle for fractional [a,b]-factors, independent of the
//! subset test in [`crate::covered`].

pub mod oracle;
pub mod simplex;

pub use oracle::{
    feasible_fractional_factor, feasible_fractional_factor_with, oracle_is_covered, oracle_is_critical_covered,
    validate_assignment, AssignmentViolation, FractionalAssignment, Oracle, OracleError, OracleMethod,
};
pub use simplex::{Constraint, FeasibilityProblem, PhaseOneOutcome, PhaseOneRun, Relation};
