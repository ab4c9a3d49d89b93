//! Confluent hypergeometric functions, Laguerre polynomials and generalized
//! (finite-part) integrals on the half line.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] – gamma, digamma and polygamma functions for complex
//!   arguments, Pochhammer symbols and harmonic numbers, plus exact rational
//!   helpers.
//! * [`laurent`] – truncated Laurent series in a small parameter, used to take
//!   the finite limits of expressions whose individual factors have poles.
//! * [`confluent`] – Kummer's `F`, Olver's normalised `F` and Tricomi's `U` in
//!   the Lie-algebraic parametrisation `(θ, α)`.
//! * [`laguerre`] – Laguerre polynomials for arbitrary `α`, with exact
//!   rational coefficients when `α` is rational.
//! * [`genquad`] – the generalized integral on `(0, ∞)`, the regular value at
//!   the origin and integration by parts.
//! * [`expansions`] – small-`z` expansions of bilinear integrands.
//! * [`closed_forms`] – closed forms of the bilinear integrals and the
//!   generalized Gram matrix of Laguerre polynomials.
//! * [`dimreg`] – anomalous generalized integrals through analytic
//!   continuation in the exponent.
//! * [`verify`] – verification suites that compare closed forms with the
//!   numerical oracles and produce deterministic reports.

pub mod closed_forms;
pub mod confluent;
pub mod dimreg;
mod error;
pub mod expansions;
pub mod genquad;
pub mod laguerre;
pub mod laurent;
pub mod local_series;
pub mod scalar;
pub mod verify;

pub use num_complex::Complex64;

pub use closed_forms::{
    gram_matrix, laguerre_gram_entry, tricomi_bilinear, tricomi_bilinear_finite_part, GramMatrix,
    Regime,
};
pub use confluent::{
    asymptotic_2f0, kummer_f, olver_bf, tricomi_u, tricomi_u_degenerate, LieParams,
};
pub use dimreg::{anomalous_value, finite_part, AlphaFamily};
pub use error::{Error, Result};
pub use expansions::{laguerre_pair_expansion, tricomi_pair_coefficient, BilinearIntegrandSpec};
pub use genquad::{
    gen_integrate, gen_integrate_local, integrate_by_parts_check, regular_value,
    GenIntegralResult, QuadratureConfig, SingularExpansion,
};
pub use laguerre::{laguerre_build, laguerre_eval, LaguerrePoly};
pub use local_series::LocalSeries;

/// Shorthand for a complex number with real part `re`.
#[inline]
pub fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
