//! Batch front end: reads a problem description, runs the slope, Euler
//! characteristic and Donaldson-Futaki computations, and writes a JSON report.

pub mod problem;
pub mod report;

pub use problem::{Exact, MaxOrder, Problem, ProblemSpec, Violation, ViolationKind};
pub use report::RunOptions;
