//! Quadrature of the line Laplace integral along the cut t ∈ [−1/2, 1/2].
//!
//! With t = u − 1/2 the segment integral becomes
//!
//! ```text
//! F(ξ) = e^{−ξ/2} ∫₀¹ u^{q−1} (1 − u)^{p−1} e^{ξu} du
//! ```
//!
//! (phase stripped, integration constant 1). Both branch-point
//! singularities sit in the Jacobi weight u^{q−1}(1−u)^{p−1}, so a
//! Gauss–Jacobi rule on (0, 1) integrates the smooth remainder e^{ξu}
//! without any special endpoint handling, and one rule serves every ξ.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun::{beta, kummer_1f1, ln_beta_positive};

pub const DEFAULT_ORDER: usize = 64;
pub const MAX_ORDER: usize = 256;
/// e^{ξ/2} overflows past this.
pub const MAX_XI: f64 = 700.0;

/// Gauss–Jacobi nodes and weights for ∫₀¹ u^{q−1}(1−u)^{p−1} g(u) du.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub order: usize,
    pub p: f64,
    pub q: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn integrate<G: Fn(f64) -> f64>(&self, g: G) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&u, &w)| w * g(u))
            .sum()
    }

    /// e^{−ξ/2} ∫₀¹ u^{q−1}(1−u)^{p−1} e^{ξu} du with this rule.
    pub fn segment_transform(&self, xi: f64) -> Result<f64> {
        check_xi(xi)?;
        Ok(self.integrate(|u| (xi * (u - 0.5)).exp()))
    }
}

fn check_xi(xi: f64) -> Result<()> {
    if !(xi >= 0.0) {
        return Err(domain(format!("xi must be nonnegative, got {xi}")));
    }
    if !(xi <= MAX_XI) {
        return Err(Error::Range(format!(
            "xi = {xi} exceeds the overflow guard {MAX_XI}"
        )));
    }
    Ok(())
}

/// Builds the Gauss–Jacobi rule by the Golub–Welsch method: the nodes are the
/// eigenvalues of the Jacobi matrix of the monic recurrence and the weights
/// are B(q, p) times the squared first eigenvector components.
#[allow(clippy::needless_range_loop)]
pub fn gauss_jacobi_rule(p: f64, q: f64, order: usize) -> Result<QuadratureRule> {
    if !(p > 0.0 && q > 0.0) || !p.is_finite() || !q.is_finite() {
        return Err(domain(format!(
            "Jacobi weight u^(q-1)(1-u)^(p-1) is not integrable for p = {p}, q = {q}; \
             both exponents must be positive"
        )));
    }
    if order == 0 || order > MAX_ORDER {
        return Err(domain(format!(
            "quadrature order must be in 1..={MAX_ORDER}, got {order}"
        )));
    }
    // Standard Jacobi parameters on [−1, 1]: (1 − x)^α (1 + x)^β.
    let (a, b) = (p - 1.0, q - 1.0);
    let mut diag = Vec::with_capacity(order);
    let mut off = vec![0.0; order];
    for n in 0..order {
        let nf = n as f64;
        let s = 2.0 * nf + a + b;
        let an = if n == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        // Shift to (0, 1): u = (1 + x)/2.
        diag.push(0.5 * (1.0 + an));
        if n + 1 < order {
            let m = nf + 1.0;
            let s = 2.0 * m + a + b;
            let bn = if n == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
            } else {
                4.0 * m * (m + a) * (m + b) * (m + a + b) / (s * s * (s + 1.0) * (s - 1.0))
            };
            off[n] = 0.5 * bn.sqrt();
        }
    }
    let first = symmetric_tridiagonal_eigen(&mut diag, &mut off)?;
    let total = ln_beta_positive(q, p).exp();
    let mut pairs: Vec<(f64, f64)> = diag
        .iter()
        .zip(&first)
        .map(|(&u, &z)| (u, total * z * z))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let (nodes, weights): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();

    let ordered = nodes.windows(2).all(|w| w[0] < w[1]);
    let inside = nodes.iter().all(|&u| u > 0.0 && u < 1.0);
    if !ordered || !inside || weights.iter().any(|&w| !(w > 0.0)) {
        return Err(Error::NoConvergence {
            what: format!("Gauss-Jacobi rule for p = {p}, q = {q} lost node ordering"),
            iterations: order,
        });
    }
    Ok(QuadratureRule {
        order,
        p,
        q,
        nodes,
        weights,
    })
}

/// Implicit QL iteration on a symmetric tridiagonal matrix. On return `diag`
/// holds the eigenvalues; the result holds the first component of each
/// normalized eigenvector. `off[i]` couples rows i and i + 1; its last entry
/// is workspace.
fn symmetric_tridiagonal_eigen(diag: &mut [f64], off: &mut [f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    if n == 1 {
        return Ok(z);
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 60 {
                return Err(Error::NoConvergence {
                    what: "tridiagonal QL iteration".into(),
                    iterations,
                });
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(z)
}

/// Segment-contour value e^{−ξ/2} ∫₀¹ u^{q−1}(1−u)^{p−1} e^{ξu} du for
/// positive exponents, by a Gauss–Jacobi rule of the given order.
pub fn line_laplace_value(xi: f64, p: f64, q: f64, order: usize) -> Result<f64> {
    check_xi(xi)?;
    gauss_jacobi_rule(p, q, order)?.segment_transform(xi)
}

/// Closed form of the segment integral through the Kummer series:
/// e^{−ξ/2} B(q, p) ₁F₁(q; p + q; ξ).
pub fn line_laplace_series(xi: f64, p: f64, q: f64) -> Result<f64> {
    check_xi(xi)?;
    let series = kummer_1f1(q, p + q, xi)?;
    Ok((-0.5 * xi).exp() * beta(q, p)? * series.value)
}

/// Quadrature and series values of the Kummer integral representation
/// ₁F₁(α; γ; ξ) = ξ^{1−γ}/B(α, γ−α) ∫₀^ξ s^{α−1}(ξ−s)^{γ−α−1} eˢ ds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KummerIntegralCheck {
    pub order: usize,
    pub quadrature: f64,
    pub series: f64,
    pub rel_error: f64,
}

/// Evaluates both sides of the Kummer integral representation. After
/// s = ξu the ξ powers cancel and the integral is a Jacobi-weighted one with
/// q = α, p = γ − α.
pub fn verify_kummer_integral(
    alpha: f64,
    gamma: f64,
    xi: f64,
    order: usize,
) -> Result<KummerIntegralCheck> {
    if !(gamma > alpha && alpha > 0.0) {
        return Err(domain(format!(
            "the integral representation needs gamma > alpha > 0, got alpha = {alpha}, gamma = {gamma}"
        )));
    }
    if !(xi > 0.0) {
        return Err(domain(format!("xi must be positive, got {xi}")));
    }
    check_xi(xi)?;
    let rule = gauss_jacobi_rule(gamma - alpha, alpha, order)?;
    let integral = rule.integrate(|u| (xi * u).exp());
    let quadrature = integral / beta(alpha, gamma - alpha)?;
    let series = kummer_1f1(alpha, gamma, xi)?.value;
    Ok(KummerIntegralCheck {
        order,
        quadrature,
        series,
        rel_error: (quadrature - series).abs() / series.abs(),
    })
}
