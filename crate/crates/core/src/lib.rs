//! Bound states of the Morse potential in closed form, obtained by solving
//! the radial equation with a line Laplace integral, together with the
//! numerical machinery used to check every step of the construction.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: Γ, Beta, Kummer's ₁F₁ and generalized Laguerre polynomials.
//! - [`kernel`]: the transformed ODE in ξ, the first-order kernel ODE, its
//!   closed-form solution and the contour boundary term.
//! - [`contour`]: Gauss–Jacobi quadrature of the segment-contour integral.
//! - [`model`]: Morse parameters, quantization, energies and normalized
//!   wavefunctions.
//! - [`fd`]: an independent finite-difference eigensolver used as an oracle.
//!
//! Shared numerical helpers live in [`numdiff`] and [`quad`]; [`checks`] runs
//! the residual and identity sweeps over fixed sample sets.

// Negated comparisons are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod contour;
pub mod error;
pub mod fd;
pub mod kernel;
pub mod model;
pub mod numdiff;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
pub use numdiff::ScaledResidual;
