//! Five-point central difference stencils and the residual type shared by
//! the ODE verifiers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default step rule: h = max(1e−4, 1e−6·|x|).
pub fn default_step(x: f64) -> f64 {
    (1e-6 * x.abs()).max(1e-4)
}

/// Step for stencils that feed a second derivative: h = 3e−4·max(1, |x|).
///
/// The roundoff term of the second difference grows like ε_f/h², where ε_f is
/// the relative noise of the sampled function (about 1e−14 for e^{−ξ/2}ξ^β
/// products), so these stencils need a wider step than first differences.
pub fn second_derivative_step(x: f64) -> f64 {
    3e-4 * x.abs().max(1.0)
}

/// An ODE residual together with the magnitude it should be judged against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledResidual {
    pub residual: f64,
    pub scale: f64,
}

impl ScaledResidual {
    /// Builds a residual from its individual terms; the scale is the largest
    /// term magnitude.
    pub fn from_terms(terms: &[f64]) -> Self {
        Self {
            residual: terms.iter().sum(),
            scale: terms.iter().fold(0.0, |m: f64, t| m.max(t.abs())),
        }
    }

    /// |residual| / scale, or |residual| itself when the scale vanishes.
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.residual.abs() / self.scale
        } else {
            self.residual.abs()
        }
    }

    pub fn within(&self, tolerance: f64) -> bool {
        self.residual.abs() <= tolerance * self.scale || self.residual == 0.0
    }
}

/// Samples f at x + j·h for j = −2..=2.
pub fn stencil<F>(f: F, x: f64, h: f64) -> Result<[f64; 5]>
where
    F: Fn(f64) -> f64,
{
    let mut out = [0.0; 5];
    for (slot, j) in out.iter_mut().zip(-2i32..=2) {
        let at = x + j as f64 * h;
        let v = f(at);
        if !v.is_finite() {
            return Err(Error::NonFinite { at });
        }
        *slot = v;
    }
    Ok(out)
}

/// First derivative from a five-point stencil.
pub fn first_derivative(s: &[f64; 5], h: f64) -> f64 {
    (s[0] - 8.0 * s[1] + 8.0 * s[3] - s[4]) / (12.0 * h)
}

/// Second derivative from a five-point stencil.
pub fn second_derivative(s: &[f64; 5], h: f64) -> f64 {
    (-s[0] + 16.0 * s[1] - 30.0 * s[2] + 16.0 * s[3] - s[4]) / (12.0 * h * h)
}
