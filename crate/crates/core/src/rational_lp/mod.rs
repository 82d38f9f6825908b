//! Exact rational arithmetic and an exact simplex solver.
//!
//! Every width value in this crate is an exact rational like `38/27`, and the
//! certificate extraction in [`crate::shannon`] consumes exact dual
//! multipliers, so the solver works over [`Rat`] with no rounding anywhere.
//! Internally the simplex first runs on a checked machine-word fraction type
//! and transparently falls back to big rationals if any intermediate
//! overflows; both paths produce identical results.

mod rat;
mod simplex;

pub use rat::Rat;
pub use simplex::{
    solve_lp, verify_certificate, CertificateError, Constraint, LinearProgram, LpSolution,
    LpStatus, Relation, VarBound,
};
