//! Exact-numeric deduction of closed-form expressions.
//!
//! An expensive exact evaluator (here, a Lie-transform normal form engine)
//! is run at simple exact parameter values; the common symbolic skeleton of
//! the results is stripped off and the per-point numeric remnants are
//! interpolated by rational functions in exact arithmetic.

pub mod distortion;
pub mod normal_form;
pub mod numeric;
pub mod pade;
pub mod pipeline;
pub mod remnant;
