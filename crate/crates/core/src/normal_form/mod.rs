//! Lie-transform normal forms of polynomial Hamiltonians with exact
//! rational frequencies.
//!
//! The input Hamiltonian must already have the diagonal quadratic part
//! `Σ λ_j (q_j² + p_j²)/2`. Everything else is removed order by order except
//! the action-only terms and the terms of declared resonances, and the
//! result is reported in action-angle variables.

pub mod extract;
pub mod gauss;
pub mod hamfile;
pub mod normalize;
pub mod resonance;
pub mod series;

use thiserror::Error;

use crate::remnant::RemnantError;

pub use extract::Quantity;
pub use gauss::GaussRat;
pub use hamfile::{HamiltonianSpec, Instance};
pub use normalize::{
    coordinate_map, normalize, quadratic_part, to_polar, NormalFormReport, PolarTerm, ResonantTerm, Trig,
};
pub use resonance::{resonance_vectors, FrequencySpec, ResonanceVector};
pub use series::PolySeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("bad frequencies: {0}")]
    BadFrequencies(String),
    #[error("{0:?} is not a resonance vector of these frequencies")]
    BadResonance(Vec<i64>),
    #[error("series has {series} degrees of freedom, frequencies have {frequencies}")]
    DofMismatch { series: usize, frequencies: usize },
    #[error("normalization order {0} is below 3")]
    OrderTooLow(u32),
    #[error("Hamiltonian has linear terms")]
    LinearTerms,
    #[error("quadratic part is not the diagonal form of the declared frequencies")]
    NonDiagonalQuadraticPart,
    #[error("zero divisor at monomial {monomial}: resonance not declared")]
    SmallDivisorZero { monomial: String },
    #[error("monomial {monomial} is not in the normal-form kernel")]
    NotInKernel { monomial: String },
    #[error("monomial {monomial} is the conjugate, not the representative, of its pair")]
    NotRepresentative { monomial: String },
    #[error("coefficients at {monomial} do not form a real term")]
    NonReal { monomial: String },
    #[error("internal: {0}")]
    Internal(String),
    #[error("Hamiltonian file line {line}: {msg}")]
    File { line: usize, msg: String },
    #[error(transparent)]
    Expr(#[from] RemnantError),
    #[error("bad quantity `{0}`")]
    BadQuantity(String),
}
