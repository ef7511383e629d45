//! Fractional-order operators of convolution type on a uniform time grid.
//!
//! The crate evaluates operators of the form
//!
//! ```text
//! (D f)(t) = P(α) · ∫₀ᵗ k(t − τ) f'(τ) dτ
//! ```
//!
//! for five kernel families `k` — power-law, exponential, Mittag-Leffler,
//! sine, and cosine — that share the rate constant λ = α / (1 − α) for a
//! fractional order α ∈ (0, 1]. The trigonometric kernels have closed-form
//! Laplace transforms, which makes operator outputs independently checkable;
//! the [`laplace`] module carries those transforms and a numerical
//! cross-check, and the [`memristor`] module works a nonlinear circuit
//! example end to end.
//!
//! Everything is deterministic: evaluation order is fixed, summations are
//! compensated, and repeated runs produce bitwise-identical results.
//!
//! * [`specfun`] — gamma and Mittag-Leffler functions with pinned accuracy.
//! * [`kernels`] — orders, kernel kinds, operator specifications, and exact
//!   segment integrals of kernel × linear factor.
//! * [`quadrature`] — time grids, source functions, and the second-order
//!   product-integration evaluator.
//! * [`laplace`] — closed-form transforms of the sine/cosine-kernel operators
//!   plus a trapezoid transform for verification.
//! * [`memristor`] — charge-controlled memristor state, a linearization
//!   identity check, and power-law window approximations.

pub mod error;
pub mod kernels;
pub mod laplace;
pub mod memristor;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
