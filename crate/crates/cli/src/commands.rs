use morse_laplace::checks;
use morse_laplace::contour;
use morse_laplace::fd::{self, Grid, SampledFunction};
use morse_laplace::model::{self, BoundState, MorseParameters};

use crate::args::{PhysicsArgs, QuadcheckArgs, SpectrumArgs, VerifyArgs, WavefunctionArgs};
use crate::config::ParameterFile;
use crate::error::{CliError, CliResult};
use crate::report::{
    CheckResult, ParamsEcho, QuadcheckReport, QuadcheckRow, SpectrumReport, SpectrumRow, TopLevel,
    VerifyReport, WavefunctionReport, WavefunctionSample,
};

/// Limits applied by `spectrum --verify`.
pub const SPECTRUM_ENERGY_TOL_PER_V0: f64 = 1e-4;
pub const SPECTRUM_OVERLAP_TOL: f64 = 1e-6;
/// Finite-difference samples below this fraction of the peak do not count
/// toward sign changes.
pub const NODE_FLOOR_FRACTION: f64 = 1e-10;

pub const KERNEL_TOL: f64 = 1e-8;
pub const ODE_TOL: f64 = 1e-6;
pub const SCHRODINGER_TOL: f64 = 1e-6;
pub const IDENTITY_TOL: f64 = 1e-10;
pub const GRAM_TOL: f64 = 1e-8;
pub const KERNEL_PAIRS: usize = 50;
pub const KERNEL_POINTS: usize = 20;
pub const SCHRODINGER_SAMPLES: usize = 100;

pub fn parameters(physics: &PhysicsArgs) -> CliResult<MorseParameters> {
    let file = match &physics.config {
        Some(path) => ParameterFile::load(path)?,
        None => ParameterFile::default(),
    };
    file.overlay(physics.flags()).resolve()
}

fn require_bound_states(params: &MorseParameters) -> CliResult<usize> {
    model::n_max(params)
        .ok_or_else(|| CliError::Domain(format!("no bound states (k ≤ 1): k = {}", params.k())))
}

/// The report, plus a description of what failed when verification ran and
/// did not pass.
pub type Checked<R> = (R, Option<String>);

pub fn spectrum(args: &SpectrumArgs) -> CliResult<Checked<SpectrumReport>> {
    let params = parameters(&args.physics)?;
    let top = require_bound_states(&params)?;
    let echo = ParamsEcho::from(&params);
    let energies = (0..=top)
        .map(|n| model::energy(n, &params))
        .collect::<morse_laplace::Result<Vec<_>>>()?;
    if !args.verify {
        let rows = energies
            .iter()
            .enumerate()
            .map(|(n, &e)| SpectrumRow::new(n, e, None, None, None))
            .collect();
        return Ok((SpectrumReport::new(echo, TopLevel(Some(top)), rows), None));
    }

    let grid = Grid::auto(&params, args.points as usize)?;
    let levels = top + 1;
    let richardson = fd::richardson_spectrum(&params, &grid, levels)?;
    let op = fd::build_hamiltonian(&params, &grid);
    let mut rows = Vec::with_capacity(levels);
    let mut failures = Vec::new();
    for (n, &e_closed) in energies.iter().enumerate() {
        let vector = fd::eigenvector(&op, richardson.coarse[n])?;
        let state = model::normalize(n, &params)?;
        let sampled = SampledFunction::from_fn(&grid, |x| model::wavefunction(x, &state, &params));
        // The two sign conventions differ, so only the magnitude is reported.
        let overlap =
            (fd::overlap(&sampled, &vector)? / fd::overlap(&sampled, &sampled)?.sqrt()).abs();
        let peak = vector.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let nodes = fd::count_nodes(&vector, NODE_FLOOR_FRACTION * peak);
        let row = SpectrumRow::new(
            n,
            e_closed,
            Some(richardson.extrapolated[n]),
            Some(overlap),
            Some(nodes),
        );
        if row.abs_diff.unwrap_or(f64::INFINITY) > SPECTRUM_ENERGY_TOL_PER_V0 * params.v0() {
            failures.push(format!("energy of level {n}"));
        }
        if !(1.0 - overlap <= SPECTRUM_OVERLAP_TOL) {
            failures.push(format!("overlap of level {n}"));
        }
        if nodes != n {
            failures.push(format!("node count of level {n}"));
        }
        rows.push(row);
    }
    let failed = (!failures.is_empty()).then(|| failures.join(", "));
    Ok((SpectrumReport::new(echo, TopLevel(Some(top)), rows), failed))
}

pub fn wavefunction(args: &WavefunctionArgs) -> CliResult<WavefunctionReport> {
    let params = parameters(&args.physics)?;
    let top = require_bound_states(&params)?;
    if args.n > top {
        return Err(CliError::Domain(format!(
            "level {} is above dissociation: the highest bound level is {top}",
            args.n
        )));
    }
    let auto = Grid::auto(&params, 3)?;
    let x_min = args.x_min.unwrap_or(auto.x_min());
    let x_max = args.x_max.unwrap_or(auto.x_max());
    if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
        return Err(CliError::Usage(format!(
            "need x_min < x_max, got [{x_min}, {x_max}]"
        )));
    }
    let state = if args.unnormalized {
        BoundState {
            norm: 1.0,
            ..model::normalize(args.n, &params)?
        }
    } else {
        model::normalize(args.n, &params)?
    };
    let grid = Grid::new(x_min, x_max, args.samples as usize)?;
    let samples = grid
        .points()
        .into_iter()
        .map(|x| WavefunctionSample {
            x,
            xi: model::xi_of_x(x, &params),
            psi: model::wavefunction(x, &state, &params),
        })
        .collect();
    Ok(WavefunctionReport {
        params: ParamsEcho::from(&params),
        n: args.n,
        energy: state.energy,
        normalized: !args.unnormalized,
        samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub kernel: f64,
    pub ode: f64,
    pub schrodinger: f64,
    pub identity: f64,
    pub gram: f64,
}

impl Tolerances {
    pub fn from_args(args: &VerifyArgs) -> Self {
        let pick =
            |specific: Option<f64>, default: f64| specific.or(args.tolerance).unwrap_or(default);
        Self {
            kernel: pick(args.kernel_tol, KERNEL_TOL),
            ode: pick(args.ode_tol, ODE_TOL),
            schrodinger: pick(args.schrodinger_tol, SCHRODINGER_TOL),
            identity: pick(args.identity_tol, IDENTITY_TOL),
            gram: pick(args.gram_tol, GRAM_TOL),
        }
    }
}

pub fn verify(args: &VerifyArgs) -> CliResult<Checked<VerifyReport>> {
    let params = parameters(&args.physics)?;
    require_bound_states(&params)?;
    let tol = Tolerances::from_args(args);

    let pairs = checks::admissible_pairs(KERNEL_PAIRS, checks::SEED);
    let kernel = checks::kernel_suite(&pairs, KERNEL_POINTS)?;
    let contour = checks::contour_ode_suite(&checks::CONTOUR_EXPONENTS, &checks::ODE_XI)?;
    let closed = checks::closed_form_ode_suite(&params, &checks::ODE_XI)?;
    let domain = Grid::auto(&params, 3)?;
    let schrodinger =
        checks::schrodinger_suite(&params, domain.x_min(), domain.x_max(), SCHRODINGER_SAMPLES)?;
    let sweeps = checks::kummer_suite()?;
    let identity = sweeps.iter().map(|s| s.final_error()).fold(0.0, f64::max);
    // A sweep whose error grows with the order counts as an infinite error.
    let convergence = if sweeps.iter().all(|s| s.non_increasing()) {
        0.0
    } else {
        f64::MAX
    };
    let gram = checks::gram_deviation(&checks::gram_matrix(&params)?);

    let report = VerifyReport::new(
        ParamsEcho::from(&params),
        vec![
            CheckResult::new("kernel_ode_residual", kernel, tol.kernel),
            CheckResult::new("transformed_ode_contour", contour, tol.ode),
            CheckResult::new("transformed_ode_closed_form", closed, tol.ode),
            CheckResult::new("schrodinger_residual", schrodinger, tol.schrodinger),
            CheckResult::new("kummer_integral_identity", identity, tol.identity),
            CheckResult::new("kummer_integral_convergence", convergence, 0.0),
            CheckResult::new("orthonormality", gram, tol.gram),
        ],
    );
    let failed = (!report.passed).then(|| report.failed_names().join(", "));
    Ok((report, failed))
}

pub fn quadcheck(args: &QuadcheckArgs) -> CliResult<QuadcheckReport> {
    if !(args.p > 0.0 && args.q > 0.0) {
        return Err(CliError::Domain(format!(
            "p and q must be positive, got p = {}, q = {}: the segment integral converges only \
             for p, q > 0, while physical bound states have q = -(2β + n) < 0 and are built from \
             the series instead",
            args.p, args.q
        )));
    }
    if args.orders.is_empty() {
        return Err(CliError::Usage("at least one order is required".into()));
    }
    let series = contour::line_laplace_series(args.xi, args.p, args.q)?;
    let rows = args
        .orders
        .iter()
        .map(|&order| {
            let quadrature = contour::line_laplace_value(args.xi, args.p, args.q, order)?;
            Ok(QuadcheckRow {
                order,
                quadrature,
                series,
                rel_error: (quadrature - series).abs() / series.abs(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(QuadcheckReport {
        p: args.p,
        q: args.q,
        xi: args.xi,
        non_increasing: checks::non_increasing(rows.iter().map(|r: &QuadcheckRow| r.rel_error)),
        rows,
    })
}
