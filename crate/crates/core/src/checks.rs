//! Batch residual and identity checks over fixed sample sets.
//!
//! Each function returns the worst scaled error it saw so callers can compare
//! against their own tolerance. Sampling is deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::contour::{self, KummerIntegralCheck};
use crate::error::Result;
use crate::kernel::{self, KernelExponents};
use crate::model::{self, MorseParameters};

pub const SEED: u64 = 0x00c0_ffee;

/// (α, γ) pairs and ξ values for the Kummer integral sweep.
pub const KUMMER_PAIRS: [(f64, f64); 3] = [(0.9, 2.6), (1.7, 3.2), (2.5, 6.0)];
pub const KUMMER_XI: [f64; 4] = [0.1, 1.0, 5.0, 10.0];
pub const KUMMER_ORDERS: [usize; 4] = [8, 16, 32, 64];

/// Synthetic segment exponents (p, q) for the contour-built solution.
pub const CONTOUR_EXPONENTS: [(f64, f64); 4] = [(1.7, 0.9), (1.4, 0.8), (2.5, 1.2), (0.6, 0.4)];
/// ξ samples used by the transformed-equation checks.
pub const ODE_XI: [f64; 6] = [0.5, 1.0, 2.0, 5.0, 10.0, 15.0];

/// Errors below this are treated as equal when testing the order sweep for
/// monotonicity.
pub const ROUNDOFF_FLOOR: f64 = 64.0 * f64::EPSILON;

/// Draws `count` pairs with p, q > 0: k ∈ [0.05, 0.95], β ∈ [0, 0.98·(1−k)/2).
pub fn admissible_pairs(count: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.random_range(0.05..0.95);
            let beta = rng.random_range(0.0..0.98 * (1.0 - k) / 2.0);
            (k, beta)
        })
        .collect()
}

/// Worst kernel-ODE residual over `pairs` and `points` evenly spaced interior
/// points of the cut.
pub fn kernel_suite(pairs: &[(f64, f64)], points: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for &(k, beta) in pairs {
        let exps = kernel::kernel_exponents(k, beta)?;
        for j in 0..points {
            let t = -0.5 + (j + 1) as f64 / (points + 1) as f64;
            let r = kernel::kernel_ode_residual(t, exps, k, beta)?;
            worst = worst.max(r.relative());
        }
    }
    Ok(worst)
}

/// Worst transformed-equation residual of the quadrature-built solution.
pub fn contour_ode_suite(exponents: &[(f64, f64)], xis: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &(p, q) in exponents {
        let exps = KernelExponents { p, q };
        let (k, beta) = exps.strength_and_beta();
        let rule = contour::gauss_jacobi_rule(p, q, contour::DEFAULT_ORDER)?;
        for &xi in xis {
            let r = kernel::transformed_ode_residual(
                |x| rule.segment_transform(x).unwrap_or(f64::NAN),
                xi,
                k,
                beta,
            )?;
            worst = worst.max(r.relative());
        }
    }
    Ok(worst)
}

/// Worst transformed-equation residual of the closed-form solution over all
/// bound states.
pub fn closed_form_ode_suite(params: &MorseParameters, xis: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    let Some(top) = model::n_max(params) else {
        return Ok(worst);
    };
    for n in 0..=top {
        let beta = model::beta_n(n, params)?;
        for &xi in xis {
            let r = kernel::transformed_ode_residual(
                |x| model::confluent_f(x, n, params).unwrap_or(f64::NAN),
                xi,
                params.k(),
                beta,
            )?;
            worst = worst.max(r.relative());
        }
    }
    Ok(worst)
}

/// Samples where |ψ| is below this are skipped: the stencil values would be
/// subnormal or zero.
pub const TAIL_FLOOR: f64 = 1e-150;

/// Worst Schrödinger residual at `samples` evenly spaced points of
/// [x_min, x_max] for every normalized bound state.
pub fn schrodinger_suite(
    params: &MorseParameters,
    x_min: f64,
    x_max: f64,
    samples: usize,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for state in model::bound_states(params)? {
        for j in 0..samples {
            let x = x_min + (x_max - x_min) * j as f64 / (samples - 1).max(1) as f64;
            if model::wavefunction(x, &state, params).abs() < TAIL_FLOOR {
                continue;
            }
            let r = model::schrodinger_residual(&state, x, params)?;
            worst = worst.max(r.relative());
        }
    }
    Ok(worst)
}

/// Gram matrix of the normalized bound states.
pub fn gram_matrix(params: &MorseParameters) -> Result<Vec<Vec<f64>>> {
    let states = model::bound_states(params)?;
    states
        .iter()
        .map(|a| {
            states
                .iter()
                .map(|b| model::inner_product(a, b, params))
                .collect()
        })
        .collect()
}

/// max |G − I|.
pub fn gram_deviation(gram: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0f64;
    for (i, row) in gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - target).abs());
        }
    }
    worst
}

/// Order sweep of the Kummer integral at one (α, γ, ξ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KummerSweep {
    pub alpha: f64,
    pub gamma: f64,
    pub xi: f64,
    pub rows: Vec<KummerIntegralCheck>,
}

impl KummerSweep {
    pub fn final_error(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.rel_error)
    }

    /// Each error is at most the previous one, or below [`ROUNDOFF_FLOOR`].
    pub fn non_increasing(&self) -> bool {
        non_increasing(self.rows.iter().map(|r| r.rel_error))
    }
}

pub fn non_increasing<I: IntoIterator<Item = f64>>(errors: I) -> bool {
    let mut previous = f64::INFINITY;
    for e in errors {
        if !(e <= previous.max(ROUNDOFF_FLOOR)) {
            return false;
        }
        previous = e;
    }
    true
}

pub fn kummer_sweep(alpha: f64, gamma: f64, xi: f64, orders: &[usize]) -> Result<KummerSweep> {
    let rows = orders
        .iter()
        .map(|&order| contour::verify_kummer_integral(alpha, gamma, xi, order))
        .collect::<Result<Vec<_>>>()?;
    Ok(KummerSweep {
        alpha,
        gamma,
        xi,
        rows,
    })
}

/// The full sweep over [`KUMMER_PAIRS`] × [`KUMMER_XI`] × [`KUMMER_ORDERS`].
pub fn kummer_suite() -> Result<Vec<KummerSweep>> {
    let mut out = Vec::new();
    for &(alpha, gamma) in &KUMMER_PAIRS {
        for &xi in &KUMMER_XI {
            out.push(kummer_sweep(alpha, gamma, xi, &KUMMER_ORDERS)?);
        }
    }
    Ok(out)
}
