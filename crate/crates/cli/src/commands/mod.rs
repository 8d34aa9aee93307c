pub mod eigen;
pub mod ordering;
pub mod validate;
pub mod wavefn;

use pdm_core::masstransform::{unscale_energy, ScaledEnergy};

use crate::config::{Case, RunConfig, Solver};
use crate::output::{emit, Document, Fields};
use crate::config::{resolve_output, OutputArgs};
use crate::error::CliResult;

pub const ANALYTIC: &str = "analytic";
pub const SERIES_ROOT: &str = "series-root";
pub const FD_ORACLE: &str = "fd-oracle";

pub fn uses_fd(case: Case, solver: Solver) -> bool {
    solver == Solver::Fd || case == Case::Custom
}

pub fn params(cfg: &RunConfig, fd: bool) -> Fields {
    let mp = &cfg.mass;
    let mut f = Fields::default();
    if cfg.case == Case::Tanh {
        f = f
            .num("v0_scaled", cfg.v0_scaled)
            .num("v0_physical", cfg.v0_scaled * mp.energy_scale());
    }
    f = f
        .num("m0", mp.m0())
        .num("a", mp.a())
        .num("hbar", mp.hbar())
        .num("energy_scale", mp.energy_scale())
        .int("count", cfg.count);
    if fd {
        f = f
            .int("grid_points", cfg.grid.n_points())
            .num("grid_z_min", cfg.grid.z_min())
            .num("grid_z_max", cfg.grid.z_max());
    }
    f
}

pub fn eigen_row(cfg: &RunConfig, index: usize, eps: ScaledEnergy, provenance: &str) -> Fields {
    Fields::default()
        .int("index", index)
        .num("eps_scaled", eps.value())
        .num("E_physical", unscale_energy(&cfg.mass, eps))
        .text("provenance", provenance)
}

pub fn write(doc: &Document, out: &OutputArgs, stem: &str) -> CliResult<()> {
    let bytes = doc.encode(out.format)?;
    let path = resolve_output(out, stem)?;
    emit(&bytes, path.as_deref())
}
