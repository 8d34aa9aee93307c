use pdm_core::masstransform::{x_to_z, ScaledEnergy};
use pdm_core::oracle::{fd_eigensolve, Grid};
use pdm_core::spectra::{
    sinh2_eigenstates, tanh_eigenstate_at, tanh_eigenstates, v0_eigenstate, v0_existence_check,
    Eigenstate, MAX_TANH_COUNT,
};

use super::{eigen_row, params, uses_fd, write, ANALYTIC, FD_ORACLE, SERIES_ROOT};
use crate::config::{Case, RunConfig, WavefnArgs};
use crate::error::{CliError, CliResult};
use crate::output::{Document, Fields, Meta};

/// Relative tolerance for matching `--eps` against an FD eigenvalue.
const FD_MATCH_TOL: f64 = 1e-4;

enum Resolved {
    State(Eigenstate),
    Fd {
        index: usize,
        eps: ScaledEnergy,
        phi: Vec<f64>,
        grid: Grid,
    },
}

impl Resolved {
    fn index(&self) -> usize {
        match self {
            Resolved::State(s) => s.n,
            Resolved::Fd { index, .. } => *index,
        }
    }

    fn eps(&self) -> ScaledEnergy {
        match self {
            Resolved::State(s) => s.eps,
            Resolved::Fd { eps, .. } => *eps,
        }
    }

    /// `(ψ(x), z, φ(z))`.
    fn sample(&self, x: f64) -> (f64, f64, f64) {
        let z = x_to_z(x);
        match self {
            Resolved::State(s) => (s.psi_x(x), z, s.phi_z(z)),
            Resolved::Fd { phi, grid, .. } => {
                let h = grid.spacing();
                let t = ((z - grid.z_min()) / h).clamp(0.0, (grid.n_points() - 1) as f64);
                let i = (t.floor() as usize).min(grid.n_points() - 2);
                let w = t - i as f64;
                let value = (1.0 - w) * phi[i] + w * phi[i + 1];
                (value / x.cosh().sqrt(), z, value)
            }
        }
    }
}

fn not_an_eigenvalue(eps: f64, case: Case) -> CliError {
    CliError::Solver(format!("{eps} is not an eigenvalue of the {} case", case.name()))
}

fn resolve(cfg: &RunConfig, args: &WavefnArgs) -> CliResult<(Resolved, &'static str)> {
    let index = match (args.n, args.eps) {
        (Some(0), _) => return Err(CliError::Config("--n must be at least 1".into())),
        (Some(n), None) => Some(n),
        (None, Some(_)) => None,
        _ => return Err(CliError::Config("give exactly one of --n or --eps".into())),
    };
    let p = cfg.potential()?;
    if uses_fd(cfg.case, args.solver) {
        let count = index.unwrap_or(cfg.count);
        let pairs = fd_eigensolve(p, &cfg.grid, count)?;
        let (i, pair) = match (index, args.eps) {
            (Some(n), _) => (n, pairs.into_iter().last().expect("count >= 1")),
            (None, Some(e)) => pairs
                .into_iter()
                .enumerate()
                .find(|(_, pair)| (pair.eps.value() - e).abs() <= FD_MATCH_TOL * e.abs().max(1.0))
                .map(|(i, pair)| (i + 1, pair))
                .ok_or_else(|| not_an_eigenvalue(e, cfg.case))?,
            (None, None) => unreachable!(),
        };
        let resolved = Resolved::Fd {
            index: i,
            eps: pair.eps,
            phi: pair.phi_samples,
            grid: cfg.grid,
        };
        return Ok((resolved, FD_ORACLE));
    }
    let state = match cfg.case {
        Case::V0 => {
            let n = match (index, args.eps) {
                (Some(n), _) => n,
                (None, Some(e)) => v0_existence_check(e)
                    .map(|(n, _)| n)
                    .ok_or_else(|| not_an_eigenvalue(e, cfg.case))?,
                (None, None) => unreachable!(),
            };
            (v0_eigenstate(n)?, ANALYTIC)
        }
        Case::Sinh2 => {
            let k = match (index, args.eps) {
                (Some(n), _) => n,
                (None, Some(e)) => {
                    let k = e.max(0.0).sqrt().round();
                    if k < 1.0 || (k * k - e).abs() > 1e-9 {
                        return Err(not_an_eigenvalue(e, cfg.case));
                    }
                    k as usize
                }
                (None, None) => unreachable!(),
            };
            let state = sinh2_eigenstates(k)?.pop().expect("k >= 1");
            (state, ANALYTIC)
        }
        Case::Tanh => match (index, args.eps) {
            (Some(n), _) => {
                if n > MAX_TANH_COUNT {
                    return Err(CliError::Config(format!(
                        "the series solver handles at most {MAX_TANH_COUNT} states"
                    )));
                }
                let state = tanh_eigenstates(cfg.v0_scaled, n)?.pop().expect("n >= 1");
                (state, SERIES_ROOT)
            }
            (None, Some(e)) => {
                let state = tanh_eigenstate_at(cfg.v0_scaled, ScaledEnergy(e))
                    .map_err(|err| CliError::Solver(err.to_string()))?;
                (state, SERIES_ROOT)
            }
            (None, None) => unreachable!(),
        },
        Case::Ordering | Case::Custom => unreachable!("handled above"),
    };
    Ok((Resolved::State(state.0), state.1))
}

pub fn run(args: &WavefnArgs) -> CliResult<i32> {
    if args.samples < 2 || args.x_min.partial_cmp(&args.x_max) != Some(std::cmp::Ordering::Less) {
        return Err(CliError::Config(
            "need --samples >= 2 and --x-min < --x-max".into(),
        ));
    }
    let cfg = RunConfig::build(args.case, &args.model, args.solver)?;
    let (state, provenance) = resolve(&cfg, args)?;
    let step = (args.x_max - args.x_min) / (args.samples - 1) as f64;
    let samples = (0..args.samples)
        .map(|i| {
            let x = if i + 1 == args.samples { args.x_max } else { args.x_min + step * i as f64 };
            let (psi, z, phi) = state.sample(x);
            Fields::default().num("x", x).num("psi", psi).num("z", z).num("phi", phi)
        })
        .collect();
    let doc = Document {
        meta: Meta::new(cfg.case.name(), params(&cfg, provenance == FD_ORACLE)),
        tables: vec![
            ("eigenvalues", vec![eigen_row(&cfg, state.index(), state.eps(), provenance)]),
            ("samples", samples),
        ],
        extra: Fields::default().bool("normalized", true),
        primary: "samples",
    };
    write(&doc, &args.out, &format!("wavefn-{}-{}", cfg.case.name(), state.index()))?;
    Ok(0)
}
