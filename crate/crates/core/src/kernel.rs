//! The Laplace-transform kernel of the Morse problem.
//!
//! With ξ = k·e^{−ax} and ψ = ξ^{−β}F the radial equation becomes
//!
//! ```text
//! ξ F″ − (2β − 1) F′ − ξ F / 4 + (k/2) F = 0
//! ```
//!
//! Writing F(ξ) = ∫ f(t) e^{ξt} dt over a contour turns this into the
//! first-order kernel equation
//!
//! ```text
//! d[t² f]/dt − (1/4) df/dt + [(2β − 1) t − k/2] f = 0,
//! ```
//!
//! solved by f(t) = (t − 1/2)^{p−1} (t + 1/2)^{q−1} with
//! p = 1 + (k − 2β − 1)/2 and q = 1 − (k + 2β + 1)/2. The integration
//! constant is fixed to 1. On the segment t ∈ (−1/2, 1/2) the first factor
//! has a constant phase (−1)^{p−1}, which is carried by [`SegmentPhase`] and
//! never folded into the real values returned here.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numdiff::{self, ScaledResidual};

/// The kernel exponents (p, q).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelExponents {
    pub p: f64,
    pub q: f64,
}

impl KernelExponents {
    /// Recovers the (k, β) pair these exponents belong to, using
    /// p − q = k and p + q = 1 − 2β.
    pub fn strength_and_beta(&self) -> (f64, f64) {
        (self.p - self.q, 0.5 * (1.0 - self.p - self.q))
    }

    /// Both exponents are positive: the boundary term then vanishes at both
    /// branch points and the segment is an admissible contour.
    pub fn segment_admissible(&self) -> bool {
        self.p > 0.0 && self.q > 0.0
    }

    /// The constant phase (−1)^{p−1} picked up by (t − 1/2)^{p−1} on the cut.
    pub fn segment_phase(&self) -> SegmentPhase {
        SegmentPhase {
            half_turns: self.p - 1.0,
        }
    }
}

/// A phase factor e^{iπ·half_turns}, kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentPhase {
    pub half_turns: f64,
}

impl SegmentPhase {
    /// The real sign ±1 when the phase is real, i.e. when `half_turns` is an
    /// integer.
    pub fn real_sign(&self) -> Option<f64> {
        let r = self.half_turns.round();
        if (self.half_turns - r).abs() > 1e-12 {
            return None;
        }
        Some(if r.rem_euclid(2.0) == 0.0 { 1.0 } else { -1.0 })
    }
}

/// p = k/2 − (2β+1)/2 + 1 and q = −k/2 − (2β+1)/2 + 1.
pub fn kernel_exponents(k: f64, beta: f64) -> Result<KernelExponents> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(domain(format!("kernel_exponents requires k > 0, got {k}")));
    }
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(domain(format!(
            "kernel_exponents requires beta >= 0, got {beta}"
        )));
    }
    let shift = 1.0 - (2.0 * beta + 1.0) / 2.0;
    Ok(KernelExponents {
        p: k / 2.0 + shift,
        q: -k / 2.0 + shift,
    })
}

fn check_open_segment(t: f64) -> Result<()> {
    if t > -0.5 && t < 0.5 {
        Ok(())
    } else {
        Err(domain(format!(
            "t = {t} is not inside the open cut (-1/2, 1/2)"
        )))
    }
}

/// The phase-stripped kernel (1/2 − t)^{p−1} (t + 1/2)^{q−1} on the open cut.
pub fn kernel_function(t: f64, exps: KernelExponents) -> Result<f64> {
    check_open_segment(t)?;
    Ok(kernel_unchecked(t, exps))
}

fn kernel_unchecked(t: f64, exps: KernelExponents) -> f64 {
    (0.5 - t).powf(exps.p - 1.0) * (t + 0.5).powf(exps.q - 1.0)
}

/// Residual of the kernel ODE for the kernel built from `exps`, evaluated
/// with five-point differences. The default step is shrunk so the whole
/// stencil stays inside the cut. The scale is max(1, |f(t)|).
pub fn kernel_ode_residual(
    t: f64,
    exps: KernelExponents,
    k: f64,
    beta: f64,
) -> Result<ScaledResidual> {
    check_open_segment(t)?;
    let distance = (0.5 - t).min(0.5 + t);
    let h = numdiff::default_step(t).min(distance / 4.0);
    if h < 1e-10 {
        return Err(domain(format!(
            "t = {t} is too close to a branch point for a difference stencil"
        )));
    }
    let f = |s: f64| kernel_unchecked(s, exps);
    let g = |s: f64| s * s * kernel_unchecked(s, exps);
    let fs = numdiff::stencil(f, t, h)?;
    let gs = numdiff::stencil(g, t, h)?;
    let value = fs[2];
    let residual = numdiff::first_derivative(&gs, h) - 0.25 * numdiff::first_derivative(&fs, h)
        + ((2.0 * beta - 1.0) * t - k / 2.0) * value;
    Ok(ScaledResidual {
        residual,
        scale: value.abs().max(1.0),
    })
}

/// |1/2 − t|^p · |t + 1/2|^q · e^{ξt}, the magnitude of the quantity whose
/// increment along the contour must vanish.
///
/// At a branch point the result is exactly zero when the matching exponent
/// (p at +1/2, q at −1/2) is positive and a
/// [`DivergentEndpoint`](Error::DivergentEndpoint) error otherwise.
pub fn boundary_term(t: f64, exps: KernelExponents, xi: f64) -> Result<f64> {
    if !(-0.5..=0.5).contains(&t) {
        return Err(domain(format!("t = {t} is outside the cut [-1/2, 1/2]")));
    }
    if t == 0.5 {
        return if exps.p > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::DivergentEndpoint {
                endpoint: 0.5,
                exponent: exps.p,
            })
        };
    }
    if t == -0.5 {
        return if exps.q > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::DivergentEndpoint {
                endpoint: -0.5,
                exponent: exps.q,
            })
        };
    }
    Ok((0.5 - t).powf(exps.p) * (t + 0.5).powf(exps.q) * (xi * t).exp())
}

/// Residual ξF″ − (2β−1)F′ − ξF/4 + (k/2)F of a candidate solution, by
/// five-point differences with h = 3e−4·max(1, ξ). The scale is the largest
/// of the four term magnitudes.
///
/// `k` and `beta` are not sign-restricted so that exponents outside the
/// physical range can be checked too.
pub fn transformed_ode_residual<F>(f: F, xi: f64, k: f64, beta: f64) -> Result<ScaledResidual>
where
    F: Fn(f64) -> f64,
{
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(domain(format!(
            "transformed_ode_residual requires xi > 0, got {xi}"
        )));
    }
    let h = numdiff::second_derivative_step(xi);
    let s = numdiff::stencil(f, xi, h)?;
    let value = s[2];
    Ok(ScaledResidual::from_terms(&[
        xi * numdiff::second_derivative(&s, h),
        -(2.0 * beta - 1.0) * numdiff::first_derivative(&s, h),
        -0.25 * xi * value,
        0.5 * k * value,
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exponents_examples() {
        let e = kernel_exponents(8.0, 3.5).unwrap();
        assert_eq!(e, KernelExponents { p: 1.0, q: -7.0 });
        for beta in [0.0, 0.3, 2.0, 7.25] {
            let e = kernel_exponents(2.0 * beta + 1.0, beta).unwrap();
            assert!((e.p - 1.0).abs() < 1e-14);
            assert!((e.p + e.q - (1.0 - 2.0 * beta)).abs() < 1e-14);
        }
    }

    #[test]
    fn exponents_domain() {
        assert!(kernel_exponents(0.0, 1.0).is_err());
        assert!(kernel_exponents(1.0, -0.1).is_err());
    }

    #[test]
    fn strength_recovery() {
        let e = kernel_exponents(5.5, 1.25).unwrap();
        let (k, b) = e.strength_and_beta();
        assert!((k - 5.5).abs() < 1e-14 && (b - 1.25).abs() < 1e-14);
        assert!(!e.segment_admissible());
    }

    #[test]
    fn phase_tag() {
        assert_eq!(
            KernelExponents { p: 1.0, q: -7.0 }
                .segment_phase()
                .real_sign(),
            Some(1.0)
        );
        assert_eq!(
            KernelExponents { p: 2.0, q: 1.0 }
                .segment_phase()
                .real_sign(),
            Some(-1.0)
        );
        assert_eq!(
            KernelExponents { p: 1.5, q: 1.0 }
                .segment_phase()
                .real_sign(),
            None
        );
    }

    #[test]
    fn kernel_function_examples() {
        assert_eq!(
            kernel_function(0.0, KernelExponents { p: 1.0, q: 1.0 }).unwrap(),
            1.0
        );
        assert!(
            (kernel_function(0.25, KernelExponents { p: 2.0, q: 1.0 }).unwrap() - 0.25).abs()
                < 1e-15
        );
        assert!(kernel_function(0.5, KernelExponents { p: 2.0, q: 1.0 }).is_err());
        assert!(kernel_function(-0.7, KernelExponents { p: 2.0, q: 1.0 }).is_err());
    }

    #[test]
    fn kernel_residual_synthetic_exponents() {
        // p = 1.7, q = 2.4 belong to k = −0.7, β = (1 − 4.1)/2.
        let e = KernelExponents { p: 1.7, q: 2.4 };
        let (k, beta) = e.strength_and_beta();
        let r = kernel_ode_residual(0.3, e, k, beta).unwrap();
        assert!(r.within(1e-8), "{r:?}");
    }

    #[test]
    fn kernel_residual_examples() {
        let e = kernel_exponents(3.0, 0.7).unwrap();
        let r = kernel_ode_residual(0.0, e, 3.0, 0.7).unwrap();
        assert!(r.within(1e-8), "{r:?}");

        let perturbed = KernelExponents {
            p: e.p + 0.1,
            q: e.q,
        };
        let r = kernel_ode_residual(0.25, perturbed, 3.0, 0.7).unwrap();
        assert!(r.residual.abs() > 1e-3, "{r:?}");

        let constant = KernelExponents { p: 1.0, q: 1.0 };
        let r = kernel_ode_residual(0.0, constant, 0.0, 0.5).unwrap();
        assert!(r.residual.abs() < 1e-12);
    }

    #[test]
    fn kernel_residual_physical_exponents() {
        // Bound-state exponents p = n + 1, q = −2β − n of the k = 8 well.
        for n in 0..4 {
            let beta = (8.0 - 2.0 * n as f64 - 1.0) / 2.0;
            let e = kernel_exponents(8.0, beta).unwrap();
            for t in [-0.3, -0.1, 0.0, 0.2, 0.4] {
                let r = kernel_ode_residual(t, e, 8.0, beta).unwrap();
                assert!(r.within(1e-8), "n = {n}, t = {t}: {r:?}");
            }
        }
    }

    #[test]
    fn kernel_residual_rejects_endpoints() {
        let e = KernelExponents { p: 1.5, q: 1.5 };
        assert!(kernel_ode_residual(0.5, e, 0.0, -0.5).is_err());
        assert!(kernel_ode_residual(0.5 - 1e-12, e, 0.0, -0.5).is_err());
    }

    #[test]
    fn boundary_term_examples() {
        assert_eq!(
            boundary_term(0.5, KernelExponents { p: 0.5, q: 1.3 }, 2.0).unwrap(),
            0.0
        );
        assert_eq!(
            boundary_term(-0.5, KernelExponents { p: 1.2, q: 0.3 }, 5.0).unwrap(),
            0.0
        );
        let err = boundary_term(-0.5, KernelExponents { p: 1.0, q: -7.0 }, 2.0).unwrap_err();
        assert_eq!(
            err,
            Error::DivergentEndpoint {
                endpoint: -0.5,
                exponent: -7.0
            }
        );
        assert!(boundary_term(0.6, KernelExponents { p: 1.0, q: 1.0 }, 0.0).is_err());
        let interior = boundary_term(0.0, KernelExponents { p: 1.0, q: 1.0 }, 0.0).unwrap();
        assert!((interior - 0.25).abs() < 1e-15);
    }

    #[test]
    fn transformed_residual_of_zero() {
        let r = transformed_ode_residual(|_| 0.0, 2.0, 3.0, 0.5).unwrap();
        assert_eq!(r.residual, 0.0);
        assert!(r.within(1e-6));
    }

    #[test]
    fn transformed_residual_detects_non_solution() {
        let r = transformed_ode_residual(|x: f64| x.exp(), 2.0, 3.0, 0.5).unwrap();
        assert!(r.relative() > 1e-2);
        assert!(transformed_ode_residual(|x| x, 0.0, 1.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn exponent_identities(k in 1e-6f64..=50.0, beta in 0.0f64..=10.0) {
            let e = kernel_exponents(k, beta).unwrap();
            prop_assert!((e.p - e.q - k).abs() <= 1e-12 * k.max(1.0));
            prop_assert!((e.p + e.q - (1.0 - 2.0 * beta)).abs() <= 1e-12 * beta.max(1.0));
        }

        #[test]
        fn boundary_vanishes_for_positive_exponents(p in 1e-3f64..5.0, q in 1e-3f64..5.0, xi in 0.0f64..=50.0) {
            let e = KernelExponents { p, q };
            prop_assert_eq!(boundary_term(0.5, e, xi).unwrap(), 0.0);
            prop_assert_eq!(boundary_term(-0.5, e, xi).unwrap(), 0.0);
        }
    }
}
