//! Finite-difference oracle for the Schrödinger equation in x.
//!
//! The Hamiltonian is discretized with the three-point Laplacian on a
//! uniform grid with hard walls (ψ = 0 one step beyond each end). Eigenvalues
//! come from Sturm-sequence bisection and eigenvectors from inverse
//! iteration. Nothing here uses the closed-form machinery of [`crate::model`]
//! apart from the potential itself.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::model::{self, MorseParameters};

pub const DEFAULT_POINTS: usize = 4001;
/// ξ at the left edge of the automatic box.
pub const AUTO_XI_LEFT: f64 = 60.0;
/// ξ^{β_min} at the right edge of the automatic box.
pub const AUTO_RIGHT_DECAY: f64 = 1e-12;

const MAX_SWEEPS: usize = 20;
const MIN_SWEEPS: usize = 2;

/// A uniform grid of `count` points on [x_min, x_max].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    count: usize,
    spacing: f64,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, count: usize) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(domain(format!(
                "grid needs x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if count < 3 {
            return Err(domain(format!("grid needs at least 3 points, got {count}")));
        }
        Ok(Self {
            x_min,
            x_max,
            count,
            spacing: (x_max - x_min) / (count - 1) as f64,
        })
    }

    /// Box tied to the decay of the bound states: ξ(x_min) = 60, where
    /// e^{−ξ/2} < 1e−13, and ξ(x_max)^{β_min} = 1e−12 with β_min the exponent
    /// of the highest level.
    pub fn auto(params: &MorseParameters, count: usize) -> Result<Self> {
        let top = model::n_max(params)
            .ok_or_else(|| domain(format!("no bound states (k = {} <= 1)", params.k())))?;
        let beta_min = model::beta_n(top, params)?;
        let xi_right = AUTO_RIGHT_DECAY.powf(1.0 / beta_min);
        let x_min = model::x_of_xi(AUTO_XI_LEFT, params);
        let x_max = model::x_of_xi(xi_right, params);
        Self::new(x_min, x_max, count)
    }

    /// Same box, half the spacing.
    pub fn refined(&self) -> Self {
        Self::new(self.x_min, self.x_max, 2 * self.count - 1).expect("refining a valid grid")
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }
}

/// Function values on a set of abscissae.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    pub x: Vec<f64>,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn from_fn<F: Fn(f64) -> f64>(grid: &Grid, f: F) -> Self {
        let x = grid.points();
        let values = x.iter().map(|&xi| f(xi)).collect();
        Self { x, values }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Symmetric tridiagonal matrix with a constant off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub grid: Grid,
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

/// −(ħ²/2m) d²/dx² + V(x) on the Morse potential.
pub fn build_hamiltonian(params: &MorseParameters, grid: &Grid) -> TridiagonalOperator {
    build_with_potential(params.mass(), params.hbar(), grid, |x| {
        model::potential(x, params)
    })
}

/// Same discretization with an arbitrary potential.
pub fn build_with_potential<V>(
    mass: f64,
    hbar: f64,
    grid: &Grid,
    potential: V,
) -> TridiagonalOperator
where
    V: Fn(f64) -> f64,
{
    let h = grid.spacing();
    let kinetic = hbar * hbar / (mass * h * h);
    let diagonal = grid
        .points()
        .iter()
        .map(|&x| kinetic + potential(x))
        .collect();
    let off_diagonal = vec![-0.5 * kinetic; grid.count() - 1];
    TridiagonalOperator {
        grid: *grid,
        diagonal,
        off_diagonal,
    }
}

impl TridiagonalOperator {
    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.dimension();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.off_diagonal[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.off_diagonal[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }

    /// Largest |λ| allowed by the Gershgorin discs.
    pub fn gershgorin_radius(&self) -> f64 {
        let (lo, hi) = self.gershgorin_bounds();
        lo.abs().max(hi.abs())
    }

    /// Number of eigenvalues strictly below `lambda` (negative LDLᵀ pivots).
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let guard = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut pivot = self.diagonal[0] - lambda;
        if pivot < 0.0 {
            count += 1;
        }
        for i in 1..self.dimension() {
            let safe = if pivot.abs() < guard {
                guard.copysign(pivot)
            } else {
                pivot
            };
            let e = self.off_diagonal[i - 1];
            pivot = self.diagonal[i] - lambda - e * e / safe;
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dimension();
        (0..n)
            .map(|i| {
                let mut s = self.diagonal[i] * v[i];
                if i > 0 {
                    s += self.off_diagonal[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off_diagonal[i] * v[i + 1];
                }
                s
            })
            .collect()
    }
}

/// The `count_wanted` smallest eigenvalues by bisection on the Sturm count,
/// each bracketed to 1e−12 of the Gershgorin radius.
pub fn eigen_lowest(op: &TridiagonalOperator, count_wanted: usize) -> Result<Vec<f64>> {
    if count_wanted == 0 || count_wanted > op.dimension() {
        return Err(domain(format!(
            "asked for {count_wanted} eigenvalues of a {}-dimensional operator",
            op.dimension()
        )));
    }
    let (lo, hi) = op.gershgorin_bounds();
    let tolerance = 1e-12 * op.gershgorin_radius();
    let mut out = Vec::with_capacity(count_wanted);
    let mut floor = lo;
    for j in 0..count_wanted {
        let (mut a, mut b) = (floor, hi);
        while b - a > tolerance {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if op.sturm_count(mid) > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        let lambda = 0.5 * (a + b);
        out.push(lambda);
        floor = a;
    }
    Ok(out)
}

/// LU factors of a shifted tridiagonal matrix with partial pivoting.
struct TridiagonalLu {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
    upper2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    fn new(op: &TridiagonalOperator, shift: f64) -> Self {
        let n = op.dimension();
        let tiny = f64::EPSILON * op.gershgorin_radius().max(f64::MIN_POSITIVE);
        let mut lower = op.off_diagonal.clone();
        let mut diag: Vec<f64> = op.diagonal.iter().map(|d| d - shift).collect();
        let mut upper = op.off_diagonal.clone();
        let mut upper2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if diag[i].abs() >= lower[i].abs() {
                if diag[i] == 0.0 {
                    diag[i] = tiny;
                }
                let l = lower[i] / diag[i];
                lower[i] = l;
                diag[i + 1] -= l * upper[i];
            } else {
                let l = diag[i] / lower[i];
                diag[i] = lower[i];
                lower[i] = l;
                let old_upper = upper[i];
                upper[i] = diag[i + 1];
                diag[i + 1] = old_upper - l * diag[i + 1];
                if i + 2 < n {
                    upper2[i] = upper[i + 1];
                    upper[i + 1] = -l * upper2[i];
                }
                swapped[i] = true;
            }
        }
        if diag[n - 1] == 0.0 {
            diag[n - 1] = tiny;
        }
        Self {
            lower,
            diag,
            upper,
            upper2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.diag.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.lower[i] * b[i];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= self.upper[i] * b[i + 1];
            }
            if i + 2 < n {
                s -= self.upper2[i] * b[i + 2];
            }
            b[i] = s / self.diag[i];
        }
    }
}

fn euclidean_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// ‖Hv − λv‖ / ‖v‖.
pub fn eigen_residual(op: &TridiagonalOperator, lambda: f64, v: &[f64]) -> f64 {
    let hv = op.apply(v);
    let r: f64 = hv
        .iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b).powi(2))
        .sum::<f64>()
        .sqrt();
    r / euclidean_norm(v)
}

/// Eigenvector for `eigenvalue` by inverse iteration from a seeded random
/// start. The result has unit trapezoidal norm on the grid and is positive at
/// its first extremum.
pub fn eigenvector(op: &TridiagonalOperator, eigenvalue: f64) -> Result<SampledFunction> {
    let n = op.dimension();
    let lu = TridiagonalLu::new(op, eigenvalue);
    let tolerance = 1e-8 * op.gershgorin_radius();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0005_eed0_fa11);
    let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut converged = false;
    for sweep in 1..=MAX_SWEEPS {
        lu.solve(&mut v);
        let norm = euclidean_norm(&v);
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NoConvergence {
                what: "inverse iteration produced a degenerate vector".into(),
                iterations: sweep,
            });
        }
        v.iter_mut().for_each(|x| *x /= norm);
        if sweep >= MIN_SWEEPS && eigen_residual(op, eigenvalue, &v) <= tolerance {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: format!("inverse iteration at lambda = {eigenvalue}"),
            iterations: MAX_SWEEPS,
        });
    }

    let x = op.grid.points();
    let mut f = SampledFunction { x, values: v };
    let norm = overlap(&f, &f)?.sqrt();
    f.values.iter_mut().for_each(|y| *y /= norm);
    if first_extremum(&f.values) < 0.0 {
        f.values.iter_mut().for_each(|y| *y = -*y);
    }
    Ok(f)
}

/// Value at the first local extremum of |v| that rises above tail noise.
fn first_extremum(values: &[f64]) -> f64 {
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = 1e-6 * peak;
    for i in 1..values.len().saturating_sub(1) {
        let m = values[i].abs();
        if m > floor && m >= values[i - 1].abs() && m >= values[i + 1].abs() {
            return values[i];
        }
    }
    values
        .iter()
        .cloned()
        .find(|v| v.abs() > floor)
        .unwrap_or(1.0)
}

/// Trapezoidal ∫ fa·fb dx over shared abscissae.
pub fn overlap(fa: &SampledFunction, fb: &SampledFunction) -> Result<f64> {
    if fa.x.len() != fb.x.len() || fa.values.len() != fa.x.len() || fb.values.len() != fb.x.len() {
        return Err(Error::GridMismatch(format!(
            "{} vs {} samples",
            fa.x.len(),
            fb.x.len()
        )));
    }
    let span = fa.x.last().copied().unwrap_or(0.0) - fa.x.first().copied().unwrap_or(0.0);
    if fa
        .x
        .iter()
        .zip(&fb.x)
        .any(|(a, b)| (a - b).abs() > 1e-12 * span.abs().max(1.0))
    {
        return Err(Error::GridMismatch("abscissae differ".into()));
    }
    let mut sum = 0.0;
    for i in 1..fa.x.len() {
        let dx = fa.x[i] - fa.x[i - 1];
        sum += 0.5 * dx * (fa.values[i] * fb.values[i] + fa.values[i - 1] * fb.values[i - 1]);
    }
    Ok(sum)
}

/// Strict sign changes between consecutive samples with |f| > floor.
pub fn count_nodes(f: &SampledFunction, floor: f64) -> usize {
    let mut last_sign = 0.0;
    let mut nodes = 0;
    for &v in &f.values {
        if v.abs() <= floor {
            continue;
        }
        let s = v.signum();
        if last_sign != 0.0 && s != last_sign {
            nodes += 1;
        }
        last_sign = s;
    }
    nodes
}

/// (4·E_{h/2} − E_h)/3.
pub fn richardson(coarse: f64, fine: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

/// Lowest levels on a grid and on its h/2 refinement, with the extrapolation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RichardsonSpectrum {
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    pub extrapolated: Vec<f64>,
}

pub fn richardson_spectrum(
    params: &MorseParameters,
    grid: &Grid,
    levels: usize,
) -> Result<RichardsonSpectrum> {
    let coarse = eigen_lowest(&build_hamiltonian(params, grid), levels)?;
    let fine = eigen_lowest(&build_hamiltonian(params, &grid.refined()), levels)?;
    let extrapolated = coarse
        .iter()
        .zip(&fine)
        .map(|(&c, &f)| richardson(c, f))
        .collect();
    Ok(RichardsonSpectrum {
        coarse,
        fine,
        extrapolated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn reference() -> MorseParameters {
        MorseParameters::natural(8.0).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(1.0, 0.0, 10).is_err());
        assert!(Grid::new(0.0, 1.0, 2).is_err());
        let g = Grid::new(0.0, 1.0, 11).unwrap();
        assert!((g.spacing() - 0.1).abs() < 1e-15);
        assert_eq!(g.points().last(), Some(&1.0));
        let r = g.refined();
        assert_eq!(r.count(), 21);
        assert!((r.spacing() - 0.05).abs() < 1e-15);
    }

    #[test]
    fn auto_box_follows_decay_rule() {
        let p = reference();
        let g = Grid::auto(&p, DEFAULT_POINTS).unwrap();
        assert!((model::xi_of_x(g.x_min(), &p) - 60.0).abs() < 1e-10);
        // β₃ = 1/2: ξ(x_max) = 1e−24.
        assert!((model::xi_of_x(g.x_max(), &p) / 1e-24 - 1.0).abs() < 1e-9);
        assert!(Grid::auto(&MorseParameters::natural(0.1).unwrap(), 101).is_err());
    }

    #[test]
    fn free_operator_structure() {
        let g = Grid::new(0.0, 2.0, 3).unwrap();
        let op = build_with_potential(1.0, 1.0, &g, |_| 0.0);
        assert_eq!(op.diagonal, vec![1.0; 3]);
        assert_eq!(op.off_diagonal, vec![-0.5; 2]);
    }

    #[test]
    fn morse_operator_entries() {
        let p = reference();
        let g = Grid::new(-3.0, 12.0, 4001).unwrap();
        let op = build_hamiltonian(&p, &g);
        let kinetic = 1.0 / (g.spacing() * g.spacing());
        let i0 = 800; // x = 0
        assert!(g.point(i0).abs() < 1e-12);
        assert!((op.diagonal[i0] - kinetic).abs() < 1e-12 * kinetic);
        let edge = kinetic + 8.0 * (1.0 - (-12.0f64).exp()).powi(2);
        assert!((op.diagonal[4000] - edge).abs() < 1e-12 * edge);
    }

    #[test]
    fn sturm_count_small_matrix() {
        // [[1, −1], [−1, 3]] has eigenvalues 2 ± √2.
        let g = Grid::new(0.0, 1.0, 3).unwrap();
        let op = TridiagonalOperator {
            grid: g,
            diagonal: vec![1.0, 3.0, 10.0],
            off_diagonal: vec![-1.0, 0.0],
        };
        assert_eq!(op.sturm_count(0.0), 0);
        assert_eq!(op.sturm_count(1.0), 1);
        assert_eq!(op.sturm_count(4.0), 2);
        assert_eq!(op.sturm_count(11.0), 3);
        let ev = eigen_lowest(&op, 3).unwrap();
        assert!((ev[0] - (2.0 - 2f64.sqrt())).abs() < 1e-10);
        assert!((ev[1] - (2.0 + 2f64.sqrt())).abs() < 1e-10);
        assert!((ev[2] - 10.0).abs() < 1e-10);
    }

    #[test]
    fn particle_in_a_box() {
        let g = Grid::new(0.0, 1.0, 2001).unwrap();
        let op = build_with_potential(1.0, 1.0, &g, |_| 0.0);
        let ev = eigen_lowest(&op, 3).unwrap();
        assert!((ev[0] - PI * PI / 2.0).abs() < 1e-2, "{}", ev[0]);
        assert!((ev[1] - 4.0 * PI * PI / 2.0).abs() < 4e-2);
        assert!(ev.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn eigen_lowest_rejects_bad_counts() {
        let g = Grid::new(0.0, 1.0, 5).unwrap();
        let op = build_with_potential(1.0, 1.0, &g, |_| 0.0);
        assert!(eigen_lowest(&op, 0).is_err());
        assert!(eigen_lowest(&op, 6).is_err());
        assert_eq!(eigen_lowest(&op, 5).unwrap().len(), 5);
    }

    #[test]
    fn reference_ground_state_vector() {
        let p = reference();
        let g = Grid::new(-3.0, 12.0, 2001).unwrap();
        let op = build_hamiltonian(&p, &g);
        let ev = eigen_lowest(&op, 2).unwrap();
        let v0 = eigenvector(&op, ev[0]).unwrap();
        assert!(eigen_residual(&op, ev[0], &v0.values) <= 1e-8 * op.gershgorin_radius());
        assert_eq!(count_nodes(&v0, 1e-10), 0);
        let peak = v0.values.iter().cloned().fold(0.0, f64::max);
        let maxima = (1..v0.len() - 1)
            .filter(|&i| v0.values[i] > 1e-8 * peak)
            .filter(|&i| v0.values[i] > v0.values[i - 1] && v0.values[i] >= v0.values[i + 1])
            .count();
        assert_eq!(maxima, 1);
        assert!((overlap(&v0, &v0).unwrap() - 1.0).abs() < 1e-12);

        let v1 = eigenvector(&op, ev[1]).unwrap();
        assert!(overlap(&v0, &v1).unwrap().abs() < 1e-8);
        assert_eq!(count_nodes(&v1, 1e-10), 1);
    }

    #[test]
    fn overlap_grid_mismatch() {
        let a = SampledFunction {
            x: vec![0.0, 1.0],
            values: vec![1.0, 1.0],
        };
        let b = SampledFunction {
            x: vec![0.0, 1.0, 2.0],
            values: vec![1.0; 3],
        };
        let c = SampledFunction {
            x: vec![0.0, 2.0],
            values: vec![1.0, 1.0],
        };
        assert!(matches!(overlap(&a, &b), Err(Error::GridMismatch(_))));
        assert!(matches!(overlap(&a, &c), Err(Error::GridMismatch(_))));
        assert_eq!(overlap(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn node_counting() {
        let g = Grid::new(0.0, 1.0, 50).unwrap();
        assert_eq!(count_nodes(&SampledFunction::from_fn(&g, |_| 2.0), 0.0), 0);
        let g = Grid::new(0.0, 2.0 * PI, 1000).unwrap();
        let s = SampledFunction::from_fn(&g, f64::sin);
        assert_eq!(count_nodes(&s, 1e-12), 1);
        let noisy = SampledFunction {
            x: vec![0.0, 1.0, 2.0, 3.0],
            values: vec![1.0, -1e-14, 1e-14, 2.0],
        };
        assert_eq!(count_nodes(&noisy, 1e-12), 0);
    }

    #[test]
    fn richardson_cancels_quadratic_error() {
        // E(h) = E* + c h²
        let (exact, c, h) = (3.0, 7.0, 0.1);
        let coarse = exact + c * h * h;
        let fine = exact + c * h * h / 4.0;
        assert!((richardson(coarse, fine) - exact).abs() < 1e-14);
    }
}
