//! Independent oracles and the property suites built on them.

mod convergence;
mod elliptic;
mod quadrature;
mod report;
pub mod studies;
mod suites;

pub use convergence::{convergence_order, fit_order, ConvergenceStudy, DEFAULT_ORDER_THRESHOLD};
pub use elliptic::{brute_force_elliptic_solve, EllipticProblem, MIN_OUTER_RADIUS};
pub use quadrature::{adaptive_simpson, composite_simpson, total_charge, Quadrature};
pub use quadrature::charge_cutoff;
pub use report::{Check, VerificationReport};
pub use suites::{run_property_suites, sign_convention, tol, Mutation, SuiteConfig};
