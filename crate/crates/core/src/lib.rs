//! Exact evaluation of `gl_n` webs as maps between tensor products of quantum
//! exterior powers, together with skew Howe duality checks, ladders and braidings.

pub mod braiding;
pub mod exterior;
pub mod functor;
pub mod harness;
pub mod ladderize;
pub mod linalg;
pub mod qgroup;
pub mod scalar;
pub mod web;

pub use braiding::{
    braid_invariant, braid_matrix, crossing_web, lusztig_t, BraidError, Closure, ColoredBraid,
    Crossing, CrossingSign,
};
pub use exterior::{
    ell, Basis, ExteriorError, Factor, Gen, LinearMap, Orient, Side, Sign, SpaceObject, Subset,
    Vector,
};
pub use functor::{eval, eval_closed, eval_lincomb, FunctorError};
pub use ladderize::{ladderize, ladderize_verify, LadderizeError, SignedLadder};
pub use qgroup::{GlWeight, Ladder, Letter, QError, Rung, UGen, UWord};
pub use scalar::{
    quantum_binomial, quantum_factorial, quantum_int, RootOrder, Scalar, ScalarError,
};
pub use web::{Cell, Diagnostic, ParseError, Validation, WebBuilder, WebError, WebIR, WebLinComb};
