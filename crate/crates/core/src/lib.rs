//! Exact values and asymptotics of the Catalan-Larcombe-French numbers.
//!
//! The crate is organised around four independent routes to the ratio
//!
//! ```text
//! f(n) = 3F2(-n, 1/2, 1/2; 1/2-n, 1/2-n; -1) = P_n / C(2n, n)^2
//! ```
//!
//! * [`exact`] evaluates `P_n`, `f(n)` and the generating-function
//!   coefficients `F_n` in exact rational arithmetic and checks the identities
//!   that tie them together.
//! * [`watson`] derives the complete large-`n` expansion
//!   `f(n) ~ 2 (1 + 1/(4n) + 17/(32n^2) + ...)` symbolically, by reverting the
//!   logarithmic change of variables and integrating the resulting
//!   coefficient polynomials.
//! * [`quadrature`] evaluates the single and double integral representations
//!   with Gauss-Legendre rules.
//! * [`saddle`] rebuilds `F_n` from the convergent saddle-point expansion of
//!   the squared Kummer function.
//!
//! [`validate`] compares every floating-point route against the exact value.

pub mod error;
pub mod exact;
pub mod quadrature;
pub mod rational;
pub mod saddle;
pub mod validate;
pub mod watson;

pub use error::{Error, Identity, Result};
pub use exact::ClfValue;
pub use rational::BigRational;
