//! Exactly solvable nonlinear Schrödinger equations obtained by rewriting
//! the potential of a solvable linear problem as a functional of its own
//! ground state, plus the numerical machinery that checks every closed
//! form: quadrature, residuals, uncertainty moments, singular limits and
//! split-step/Crank–Nicolson time evolution.

// `!(x > 0.0)` style checks are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Gauss-Kronrod tables keep their published digits.
#![allow(clippy::excessive_precision)]

pub mod construct;
pub mod evolve;
pub mod field;
pub mod models;
pub mod numerics;
pub mod verify;
