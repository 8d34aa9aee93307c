use pdm_core::masstransform::ScaledEnergy;
use pdm_core::oracle::fd_eigensolve;
use pdm_core::spectra::{sinh2_eigenstates, tanh_eigenvalues, v0_eigenvalue};

use super::{eigen_row, params, uses_fd, write, ANALYTIC, FD_ORACLE, SERIES_ROOT};
use crate::config::{Case, EigenArgs, RunConfig, Solver};
use crate::error::CliResult;
use crate::output::{Document, Meta};

pub fn spectrum(cfg: &RunConfig, solver: Solver) -> CliResult<(Vec<ScaledEnergy>, &'static str)> {
    let p = cfg.potential()?;
    if uses_fd(cfg.case, solver) {
        let pairs = fd_eigensolve(p, &cfg.grid, cfg.count)?;
        return Ok((pairs.into_iter().map(|e| e.eps).collect(), FD_ORACLE));
    }
    Ok(match cfg.case {
        Case::V0 => (
            (1..=cfg.count).map(v0_eigenvalue).collect::<Result<_, _>>()?,
            ANALYTIC,
        ),
        Case::Sinh2 => (
            sinh2_eigenstates(cfg.count)?.into_iter().map(|s| s.eps).collect(),
            ANALYTIC,
        ),
        Case::Tanh => (tanh_eigenvalues(cfg.v0_scaled, cfg.count)?, SERIES_ROOT),
        Case::Ordering | Case::Custom => unreachable!("handled above"),
    })
}

pub fn run(args: &EigenArgs) -> CliResult<i32> {
    let cfg = RunConfig::build(args.case, &args.model, args.solver)?;
    let (eps, provenance) = spectrum(&cfg, args.solver)?;
    let rows = eps
        .iter()
        .enumerate()
        .map(|(i, &e)| eigen_row(&cfg, i + 1, e, provenance))
        .collect();
    let doc = Document {
        meta: Meta::new(cfg.case.name(), params(&cfg, provenance == FD_ORACLE)),
        tables: vec![("eigenvalues", rows)],
        extra: Default::default(),
        primary: "eigenvalues",
    };
    write(&doc, &args.out, &format!("eigen-{}", cfg.case.name()))?;
    Ok(0)
}
