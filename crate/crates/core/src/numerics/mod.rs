//! Shared numerical kernels: bracketed root finding, adaptive quadrature
//! with square-root endpoint substitutions, and an adaptive explicit ODE
//! stepper. Every kernel is deterministic for fixed inputs and callbacks.

pub mod ode;
pub mod quad;
pub mod root;

pub use ode::{ode_solve, OdeOptions, OdeSolution, OdeStatus};
pub use quad::{integrate, integrate_fn, Abscissa, Quadrature, QuadratureProblem, Singularity};
pub use root::{find_root, RootProblem};
