//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every tolerance used here is a named constant below.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use morse_laplace::checks;
use morse_laplace::fd::{self, Grid, SampledFunction};
use morse_laplace::model::{self, MorseParameters};
use morse_laplace::specfun::{beta, kummer_1f1, laguerre, laguerre_to_kummer_factor};
use morse_laplace::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SPECTRUM_TOL_PER_V0: f64 = 1e-4;
const SPECTRUM_TIME_LIMIT: Duration = Duration::from_secs(10);
const OVERLAP_TOL: f64 = 1e-6;
const KUMMER_INTEGRAL_TOL: f64 = 1e-10;
const KERNEL_TOL: f64 = 1e-8;
const TRANSFORMED_ODE_TOL: f64 = 1e-6;
const SCHRODINGER_TOL: f64 = 1e-6;
const GRAM_TOL: f64 = 1e-8;
const KUMMER_PROPERTY_TOL: f64 = 1e-10;
const LAGUERRE_TOL: f64 = 1e-12;
const BETA_TOL: f64 = 1e-12;
const COVARIANCE_TOL: f64 = 1e-12;

const REFERENCE_LEVELS: [f64; 4] = [1.875, 4.875, 6.875, 7.875];
const BOX: (f64, f64) = (-3.0, 12.0);
const KERNEL_PAIRS: usize = 50;
const KERNEL_POINTS: usize = 20;
const SCHRODINGER_SAMPLES: usize = 100;
const NODE_SAMPLES: usize = 10_000;
const NODE_FLOOR: f64 = 1e-12;
const PROPERTY_SAMPLES: usize = 500;

type Criterion = fn() -> Result<Outcome>;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn reference() -> MorseParameters {
    MorseParameters::natural(8.0).expect("reference parameters")
}

fn spectrum_reproduction() -> Result<Outcome> {
    let params = reference();
    let start = Instant::now();
    let grid = Grid::new(BOX.0, BOX.1, fd::DEFAULT_POINTS)?;
    let spectrum = fd::richardson_spectrum(&params, &grid, REFERENCE_LEVELS.len())?;
    let elapsed = start.elapsed();
    let mut worst = 0.0f64;
    for (n, (&expected, &got)) in REFERENCE_LEVELS
        .iter()
        .zip(&spectrum.extrapolated)
        .enumerate()
    {
        let closed = model::energy(n, &params)?;
        worst = worst
            .max((got - expected).abs())
            .max((closed - expected).abs());
    }
    let limit = SPECTRUM_TOL_PER_V0 * params.v0();
    Ok(outcome(
        worst <= limit && elapsed <= SPECTRUM_TIME_LIMIT,
        format!(
            "max |dE| = {worst:.3e} (limit {limit:.1e}), {:.2} s (limit {} s)",
            elapsed.as_secs_f64(),
            SPECTRUM_TIME_LIMIT.as_secs()
        ),
    ))
}

fn bound_state_count() -> Result<Outcome> {
    let params = reference();
    let grid = Grid::new(BOX.0, BOX.1, fd::DEFAULT_POINTS)?;
    let count = fd::build_hamiltonian(&params, &grid).sturm_count(params.v0());

    // k = 2√(2·V0) = 2 at V0 = 1/2.
    let shallow = MorseParameters::natural(0.5)?;
    let shallow_grid = Grid::auto(&shallow, fd::DEFAULT_POINTS)?;
    let shallow_count = fd::build_hamiltonian(&shallow, &shallow_grid).sturm_count(shallow.v0());
    let expected = model::n_max(&params).map_or(0, |n| n + 1);
    Ok(outcome(
        count == 4 && expected == 4 && shallow_count == 1,
        format!(
            "k = {}: {count} below V0 (closed form {expected}); k = {}: {shallow_count}",
            params.k(),
            shallow.k()
        ),
    ))
}

fn wavefunction_agreement() -> Result<Outcome> {
    let params = reference();
    let grid = Grid::auto(&params, fd::DEFAULT_POINTS)?;
    let op = fd::build_hamiltonian(&params, &grid);
    let levels = fd::eigen_lowest(&op, REFERENCE_LEVELS.len())?;
    let mut worst = f64::INFINITY;
    for (n, &lambda) in levels.iter().enumerate() {
        let vector = fd::eigenvector(&op, lambda)?;
        let state = model::normalize(n, &params)?;
        let sampled = SampledFunction::from_fn(&grid, |x| model::wavefunction(x, &state, &params));
        let norm = fd::overlap(&sampled, &sampled)?.sqrt();
        let o = fd::overlap(&sampled, &vector)?.abs() / norm;
        worst = worst.min(o);
    }
    Ok(outcome(
        1.0 - worst <= OVERLAP_TOL,
        format!(
            "min |overlap| = {worst:.12} on [{:.3}, {:.3}] (limit 1 - {OVERLAP_TOL:.0e})",
            grid.x_min(),
            grid.x_max()
        ),
    ))
}

fn kummer_integral_identity() -> Result<Outcome> {
    let sweeps = checks::kummer_suite()?;
    let worst = sweeps.iter().map(|s| s.final_error()).fold(0.0, f64::max);
    let monotone = sweeps.iter().all(|s| s.non_increasing());
    Ok(outcome(
        worst <= KUMMER_INTEGRAL_TOL && monotone,
        format!(
            "max rel error at order 64 = {worst:.3e} (limit {KUMMER_INTEGRAL_TOL:.0e}), non-increasing over {:?}: {monotone}",
            checks::KUMMER_ORDERS
        ),
    ))
}

fn ode_residual_suites() -> Result<Outcome> {
    let params = reference();
    let pairs = checks::admissible_pairs(KERNEL_PAIRS, checks::SEED);
    let kernel = checks::kernel_suite(&pairs, KERNEL_POINTS)?;
    let contour = checks::contour_ode_suite(&checks::CONTOUR_EXPONENTS, &checks::ODE_XI)?;
    let closed = checks::closed_form_ode_suite(&params, &checks::ODE_XI)?;
    let schrodinger = checks::schrodinger_suite(&params, BOX.0, BOX.1, SCHRODINGER_SAMPLES)?;
    Ok(outcome(
        kernel <= KERNEL_TOL
            && contour <= TRANSFORMED_ODE_TOL
            && closed <= TRANSFORMED_ODE_TOL
            && schrodinger <= SCHRODINGER_TOL,
        format!(
            "kernel {kernel:.2e} (limit {KERNEL_TOL:.0e}), contour {contour:.2e} and closed form {closed:.2e} (limit {TRANSFORMED_ODE_TOL:.0e}), Schrodinger {schrodinger:.2e} (limit {SCHRODINGER_TOL:.0e})"
        ),
    ))
}

fn orthonormality() -> Result<Outcome> {
    let gram = checks::gram_matrix(&reference())?;
    let deviation = checks::gram_deviation(&gram);
    Ok(outcome(
        gram.len() == 4 && deviation <= GRAM_TOL,
        format!(
            "{0}x{0} Gram matrix, max |G - I| = {deviation:.3e} (limit {GRAM_TOL:.0e})",
            gram.len()
        ),
    ))
}

fn node_theorem() -> Result<Outcome> {
    let params = reference();
    let grid = Grid::new(BOX.0, BOX.1, NODE_SAMPLES)?;
    let mut counts = Vec::new();
    for state in model::bound_states(&params)? {
        let sampled = SampledFunction::from_fn(&grid, |x| model::wavefunction(x, &state, &params));
        counts.push(fd::count_nodes(&sampled, NODE_FLOOR));
    }
    let ok = counts.len() == 4 && counts.iter().enumerate().all(|(n, &c)| c == n);
    Ok(outcome(ok, format!("node counts {counts:?}")))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn special_functions() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(checks::SEED);
    let mut trivial = 0.0f64;
    let mut transformation = 0.0f64;
    let mut contiguity = 0.0f64;
    let mut laguerre_gap = 0.0f64;
    for _ in 0..PROPERTY_SAMPLES {
        let alpha: f64 = rng.random_range(0.5..5.0);
        let gamma = (alpha + rng.random_range(0.5..5.0)).min(10.0);
        let xi = rng.random_range(0.0..20.0);

        trivial = trivial.max((kummer_1f1(alpha, gamma, 0.0)?.value - 1.0).abs());
        trivial = trivial.max(rel(kummer_1f1(gamma, gamma, xi)?.value, xi.exp()));

        let f = kummer_1f1(alpha, gamma, xi)?.value;
        let mirrored = xi.exp() * kummer_1f1(gamma - alpha, gamma, -xi)?.value;
        transformation = transformation.max(rel(mirrored, f));

        let f_lower = kummer_1f1(alpha - 1.0, gamma, xi)?.value;
        let f_up = kummer_1f1(alpha, gamma + 1.0, xi)?.value;
        let terms = [gamma * f, gamma * f_lower, xi * f_up];
        let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        contiguity = contiguity.max((terms[0] - terms[1] - terms[2]).abs() / scale);

        let n = rng.random_range(0..=12usize);
        let a = rng.random_range(1e-3..15.0);
        let x = rng.random_range(0.0..30.0);
        let via_laguerre = laguerre_to_kummer_factor(n, a) * laguerre(n, a, x)?;
        let series = kummer_1f1(-(n as f64), a + 1.0, x)?;
        let abs_scale = polynomial_abs_scale(n, a + 1.0, x);
        laguerre_gap = laguerre_gap.max((via_laguerre - series.value).abs() / abs_scale);
    }
    let beta_gap = [
        rel(beta(1.0, 1.0)?, 1.0),
        rel(beta(2.0, 3.0)?, 1.0 / 12.0),
        rel(beta(0.5, 0.5)?, PI),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Ok(outcome(
        trivial <= KUMMER_PROPERTY_TOL
            && transformation <= KUMMER_PROPERTY_TOL
            && contiguity <= KUMMER_PROPERTY_TOL
            && laguerre_gap <= LAGUERRE_TOL
            && beta_gap <= BETA_TOL,
        format!(
            "trivial {trivial:.1e}, Kummer transformation {transformation:.1e}, contiguity {contiguity:.1e} (limit {KUMMER_PROPERTY_TOL:.0e}); Laguerre {laguerre_gap:.1e} (limit {LAGUERRE_TOL:.0e}); Beta {beta_gap:.1e} (limit {BETA_TOL:.0e})"
        ),
    ))
}

/// Σ_j |c_j ξ^j| for the terminating series ₁F₁(−n; γ; ξ).
fn polynomial_abs_scale(n: usize, gamma: f64, xi: f64) -> f64 {
    let mut term = 1.0f64;
    let mut sum = 1.0;
    for j in 0..n {
        let jf = j as f64;
        term *= (jf - n as f64) / ((gamma + jf) * (jf + 1.0)) * xi;
        sum += term.abs();
    }
    sum
}

fn scale_covariance() -> Result<Outcome> {
    let first = reference();
    let second = MorseParameters::new(2.0, 1.0, 1.0, 4.0)?;
    let ratios = |p: &MorseParameters| -> Result<Vec<f64>> {
        let top = model::n_max(p).map_or(0, |n| n + 1);
        (0..top)
            .map(|n| Ok(model::energy(n, p)? / p.v0()))
            .collect()
    };
    let (a, b) = (ratios(&first)?, ratios(&second)?);
    let worst = a
        .iter()
        .zip(&b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    Ok(outcome(
        a.len() == b.len() && !a.is_empty() && worst <= COVARIANCE_TOL,
        format!(
            "k = {} and {}, {} levels each, max |dE/V0| = {worst:.1e} (limit {COVARIANCE_TOL:.0e})",
            first.k(),
            second.k(),
            a.len()
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 9] = [
        ("spectrum reproduction", spectrum_reproduction),
        ("bound-state count", bound_state_count),
        ("wavefunction agreement", wavefunction_agreement),
        ("Kummer integral identity", kummer_integral_identity),
        ("ODE residual suites", ode_residual_suites),
        ("orthonormality", orthonormality),
        ("node theorem", node_theorem),
        ("special-function suite", special_functions),
        ("scale covariance", scale_covariance),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (passed, detail) = match run() {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failures += 1;
        }
        println!(
            "[{}] {}. {name}: {detail}",
            if passed { "PASS" } else { "FAIL" },
            i + 1
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
