//! The Morse oscillator V(x) = V₀(1 − e^{−ax})²: parameters, quantization,
//! energy levels and normalized bound-state wavefunctions.
//!
//! In the variable ξ = k·e^{−ax}, k = 2√(2mV₀)/(aħ), the bound states are
//!
//! ```text
//! ψₙ(ξ) = Nₙ e^{−ξ/2} ξ^{βₙ} ₁F₁(−n; 2βₙ + 1; ξ),   βₙ = (k − 2n − 1)/2 > 0,
//! Eₙ = V₀ − V₀ [1 − (aħ/√(2mV₀)) (n + 1/2)]².
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numdiff::{self, ScaledResidual};
use crate::quad;
use crate::specfun::{kummer_1f1, laguerre, laguerre_to_kummer_factor, ln_gamma};

/// Integrand values below this fraction of their peak are dropped by the
/// normalization quadrature.
pub const TRUNCATION_CUTOFF: f64 = 1e-18;

/// Physical inputs of the oscillator and the derived well strength k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParameters")]
pub struct MorseParameters {
    mass: f64,
    hbar: f64,
    a: f64,
    v0: f64,
    k: f64,
}

#[derive(Deserialize)]
struct RawParameters {
    mass: f64,
    hbar: f64,
    a: f64,
    v0: f64,
}

impl TryFrom<RawParameters> for MorseParameters {
    type Error = crate::Error;

    fn try_from(raw: RawParameters) -> Result<Self> {
        MorseParameters::new(raw.mass, raw.hbar, raw.a, raw.v0)
    }
}

impl MorseParameters {
    pub fn new(mass: f64, hbar: f64, a: f64, v0: f64) -> Result<Self> {
        for (name, value) in [("mass", mass), ("hbar", hbar), ("a", a), ("v0", v0)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(domain(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        let k = 2.0 * (2.0 * mass * v0).sqrt() / (a * hbar);
        Ok(Self {
            mass,
            hbar,
            a,
            v0,
            k,
        })
    }

    /// Natural units m = ħ = a = 1 and the given well depth.
    pub fn natural(v0: f64) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, v0)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    /// Dimensionless strength k = 2√(2mV₀)/(aħ).
    pub fn k(&self) -> f64 {
        self.k
    }

    /// 2m/ħ², the factor in front of (E − V) in the Schrödinger equation.
    pub fn kinetic_factor(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }
}

/// One vibrational level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub n: usize,
    pub beta_n: f64,
    pub energy: f64,
    /// Amplitude multiplying e^{−ξ/2} ξ^β ₁F₁(−n; 2β+1; ξ).
    pub norm: f64,
    /// Exponent of the ξ^μ prefactor that removes the indicial power; −βₙ.
    pub mu: f64,
}

impl BoundState {
    /// The amplitude multiplying e^{−ξ/2} ξ^β L_n^{2β}(ξ) instead.
    pub fn laguerre_norm(&self) -> f64 {
        self.norm * laguerre_to_kummer_factor(self.n, 2.0 * self.beta_n)
    }
}

pub fn potential(x: f64, params: &MorseParameters) -> f64 {
    let s = 1.0 - (-params.a * x).exp();
    params.v0 * s * s
}

pub fn xi_of_x(x: f64, params: &MorseParameters) -> f64 {
    params.k * (-params.a * x).exp()
}

pub fn x_of_xi(xi: f64, params: &MorseParameters) -> f64 {
    (params.k / xi).ln() / params.a
}

/// β = √(2m(V₀ − E))/(aħ) for E ≤ V₀.
pub fn beta_of_e(e: f64, params: &MorseParameters) -> Result<f64> {
    if !(e <= params.v0) {
        return Err(domain(format!(
            "continuum state: E = {e} lies above the dissociation limit V0 = {}",
            params.v0
        )));
    }
    Ok((2.0 * params.mass * (params.v0 - e)).sqrt() / (params.a * params.hbar))
}

/// Largest n with k − (2n + 1) > 0, or `None` when k ≤ 1.
pub fn n_max(params: &MorseParameters) -> Option<usize> {
    let bound = (params.k - 1.0) / 2.0;
    if bound <= 0.0 {
        return None;
    }
    Some(bound.ceil() as usize - 1)
}

fn check_level(n: usize, params: &MorseParameters) -> Result<()> {
    match n_max(params) {
        Some(top) if n <= top => Ok(()),
        Some(top) => Err(domain(format!(
            "level n = {n} is above dissociation (n_max = {top})"
        ))),
        None => Err(domain(format!(
            "no bound states (k = {} <= 1), level n = {n} is above dissociation",
            params.k
        ))),
    }
}

/// βₙ = (k − 2n − 1)/2.
pub fn beta_n(n: usize, params: &MorseParameters) -> Result<f64> {
    check_level(n, params)?;
    Ok((params.k - 2.0 * n as f64 - 1.0) / 2.0)
}

/// Eₙ = −V₀[1 − (aħ/√(2mV₀))(n + 1/2)]² + V₀.
pub fn energy(n: usize, params: &MorseParameters) -> Result<f64> {
    check_level(n, params)?;
    let omega = params.a * params.hbar / (2.0 * params.mass * params.v0).sqrt();
    let bracket = 1.0 - omega * (n as f64 + 0.5);
    Ok(-params.v0 * bracket * bracket + params.v0)
}

/// e^{−ξ/2} ξ^{2βₙ} ₁F₁(−n; 2βₙ + 1; ξ), the regular-at-zero ξ^{2β} branch of
/// the transformed equation, with unit amplitude. Summed by the Kummer
/// series rather than the Laguerre recurrence used for wavefunctions.
pub fn confluent_f(xi: f64, n: usize, params: &MorseParameters) -> Result<f64> {
    let beta = beta_n(n, params)?;
    if !(xi > 0.0) {
        return Err(domain(format!("confluent_f requires xi > 0, got {xi}")));
    }
    let series = kummer_1f1(-(n as f64), 2.0 * beta + 1.0, xi)?;
    Ok((-0.5 * xi + 2.0 * beta * xi.ln()).exp() * series.value)
}

/// e^{−ξ/2} ξ^β ₁F₁(−n; 2β+1; ξ) via L_n^{2β}.
fn profile(xi: f64, n: usize, beta: f64) -> f64 {
    if !(xi > 0.0) || !xi.is_finite() {
        return 0.0;
    }
    let log_prefactor = -0.5 * xi + beta * xi.ln();
    if log_prefactor < -745.0 {
        return 0.0;
    }
    let poly = laguerre_to_kummer_factor(n, 2.0 * beta)
        * laguerre(n, 2.0 * beta, xi).expect("2β > 0 for bound states");
    log_prefactor.exp() * poly
}

/// ψ(x) for a bound state, with ξ = k·e^{−ax}.
pub fn wavefunction(x: f64, state: &BoundState, params: &MorseParameters) -> f64 {
    wavefunction_of_xi(xi_of_x(x, params), state)
}

pub fn wavefunction_of_xi(xi: f64, state: &BoundState) -> f64 {
    state.norm * profile(xi, state.n, state.beta_n)
}

/// ∫ f(x) dx with dx = dξ/(aξ), integrated in ln ξ and truncated where
/// |f| drops below [`TRUNCATION_CUTOFF`] of its peak.
fn integrate_over_xi<F>(f: F, params: &MorseParameters, xi_top: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    const SAMPLES: usize = 20_000;
    let y_lo = (1e-300f64).ln();
    let y_hi = xi_top.ln();
    let dy = (y_hi - y_lo) / (SAMPLES - 1) as f64;
    let values: Vec<f64> = (0..SAMPLES)
        .map(|i| f((y_lo + i as f64 * dy).exp()).abs())
        .collect();
    let peak = values.iter().cloned().fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(0.0);
    }
    let threshold = TRUNCATION_CUTOFF * peak;
    let first = values.iter().position(|&v| v >= threshold).unwrap_or(0);
    let last = values
        .iter()
        .rposition(|&v| v >= threshold)
        .unwrap_or(SAMPLES - 1);
    let a = y_lo + first.saturating_sub(1) as f64 * dy;
    let b = y_lo + (last + 1) as f64 * dy;
    let integral = quad::integrate(|y| f(y.exp()), a, b, 1e-16 * peak, 1e-14)?;
    // Near threshold β is tiny and the integrand is still significant at
    // ξ = 1e−300. There it is a pure power ξ^s, so the rest is g(a)/s.
    let tail = if first == 0 { power_tail(&f, a) } else { 0.0 };
    Ok((integral.value + tail) / params.a)
}

/// ∫_{−∞}^{y} e^{s·t} g(y) dt for an integrand g that behaves as e^{s·t} below y.
fn power_tail<F: Fn(f64) -> f64>(f: &F, y: f64) -> f64 {
    const DY: f64 = 1.0;
    let (g0, g1) = (f(y.exp()), f((y + DY).exp()));
    if g0 == 0.0 || g1 == 0.0 || g0.signum() != g1.signum() {
        return 0.0;
    }
    let rate = (g1 / g0).ln() / DY;
    if rate > 0.0 {
        g0 / rate
    } else {
        0.0
    }
}

fn xi_top(n: usize, beta: f64) -> f64 {
    2.0 * (4.0 * n as f64 + 4.0 * beta + 10.0) + 100.0
}

/// Returns state `n` with its amplitude fixed by ∫|ψ|² dx = 1.
pub fn normalize(n: usize, params: &MorseParameters) -> Result<BoundState> {
    let beta = beta_n(n, params)?;
    let energy = energy(n, params)?;
    let integral = integrate_over_xi(
        |xi| {
            let v = profile(xi, n, beta);
            v * v
        },
        params,
        xi_top(n, beta),
    )?;
    Ok(BoundState {
        n,
        beta_n: beta,
        energy,
        norm: integral.sqrt().recip(),
        mu: -beta,
    })
}

/// All bound states, normalized, in order of n.
pub fn bound_states(params: &MorseParameters) -> Result<Vec<BoundState>> {
    match n_max(params) {
        Some(top) => (0..=top).map(|n| normalize(n, params)).collect(),
        None => Ok(Vec::new()),
    }
}

/// ⟨ψ_a|ψ_b⟩ over the whole line, by the same quadrature as [`normalize`].
pub fn inner_product(a: &BoundState, b: &BoundState, params: &MorseParameters) -> Result<f64> {
    let top = xi_top(a.n.max(b.n), a.beta_n.max(b.beta_n));
    integrate_over_xi(
        |xi| wavefunction_of_xi(xi, a) * wavefunction_of_xi(xi, b),
        params,
        top,
    )
}

/// Amplitude from Laguerre orthogonality, ∫₀^∞ e^{−ξ} ξ^{α−1} [L_n^α]² dξ =
/// Γ(n+α+1)/(n!·α) with α = 2β:
/// N² = a Γ(k−n)(k−2n−1) / (n! Γ(2β+1)²).
pub fn norm_closed_form(n: usize, params: &MorseParameters) -> Result<f64> {
    let beta = beta_n(n, params)?;
    let ln_sq = params.a.ln() + ln_gamma(params.k - n as f64)? + (2.0 * beta).ln()
        - ln_gamma(n as f64 + 1.0)?
        - 2.0 * ln_gamma(2.0 * beta + 1.0)?;
    Ok((0.5 * ln_sq).exp())
}

/// ψ″ + (2m/ħ²)(E − V(x))ψ by five-point differences, scaled by
/// max(|ψ″|, (2m/ħ²)V₀|ψ|). The step is measured in units of 1/a.
pub fn schrodinger_residual(
    state: &BoundState,
    x: f64,
    params: &MorseParameters,
) -> Result<ScaledResidual> {
    let h = numdiff::second_derivative_step(params.a * x) / params.a;
    let s = numdiff::stencil(|y| wavefunction(y, state, params), x, h)?;
    let second = numdiff::second_derivative(&s, h);
    let factor = params.kinetic_factor();
    let psi = s[2];
    Ok(ScaledResidual {
        residual: second + factor * (state.energy - potential(x, params)) * psi,
        scale: second.abs().max(factor * params.v0 * psi.abs()),
    })
}
