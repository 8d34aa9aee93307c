use std::io::Write;

use pdm_core::masstransform::{MassProfile, PotentialSpec, ScaledEnergy};
use pdm_core::oracle::{fd_eigensolve, ode_residual_x_analytic, Grid};
use pdm_core::ordering::{is_ambiguity_free, kinematic_potential, OrderingParams};
use pdm_core::specfun::{
    f21_value_at_one, gauss_2f1, heun_local, is_nonpositive_integer, maier_reduce_21,
    SeriesControl,
};
use pdm_core::spectra::{
    asymmetry, count_nodes, inner_product, sinh2_eigenstates, sinh2_naive_form_report,
    tanh_eigenstates, v0_boundary_params, v0_eigenstates, v0_heun_params, v0_pole_quantity,
    Eigenstate, Parity,
};

use super::ordering::ordering_params;
use super::write;
use crate::config::{Case, RunConfig, Solver, ValidateArgs};
use crate::error::{CliResult, EXIT_VALIDATION};
use crate::output::{Document, Fields, Meta};

const TANH_REFERENCE: [f64; 6] = [
    1.9503339, 6.0115779, 12.0083261, 20.0055193, 30.0038467, 42.0028139,
];
const BOX_FD_STATES: usize = 4;

struct Check {
    name: String,
    value: f64,
    tolerance: f64,
    pass: bool,
    detail: String,
}

fn below(name: &str, value: f64, tolerance: f64, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        value,
        tolerance,
        pass: value < tolerance,
        detail: detail.into(),
    }
}

fn holds(name: &str, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        value: if ok { 0.0 } else { 1.0 },
        tolerance: 0.5,
        pass: ok,
        detail: detail.into(),
    }
}

fn max_residual(p: &PotentialSpec, states: &[Eigenstate], shift: f64) -> f64 {
    states
        .iter()
        .map(|s| {
            let eps = ScaledEnergy(s.eps.value() + shift);
            ode_residual_x_analytic(p, eps, |x| s.psi_x_derivs(x), (-5.0, 5.0), 2001)
        })
        .fold(0.0, f64::max)
}

fn orthonormality(states: &[Eigenstate]) -> CliResult<f64> {
    let mut worst = 0.0_f64;
    for (i, a) in states.iter().enumerate() {
        for b in &states[i..] {
            let want = if a.n == b.n { 1.0 } else { 0.0 };
            worst = worst.max((inner_product(a, b)? - want).abs());
        }
    }
    Ok(worst)
}

fn nodes_ok(states: &[Eigenstate]) -> bool {
    states
        .iter()
        .all(|s| count_nodes(|x| s.psi_x(x), (-15.0, 15.0), 10_000) == s.n - 1)
}

fn fd_gap(p: &PotentialSpec, grid: &Grid, eps: &[ScaledEnergy]) -> CliResult<f64> {
    let pairs = fd_eigensolve(p, grid, eps.len())?;
    Ok(pairs
        .iter()
        .zip(eps)
        .map(|(o, e)| (o.eps.value() - e.value()).abs())
        .fold(0.0, f64::max))
}

fn reduction_checks() -> CliResult<Vec<Check>> {
    let ctl = SeriesControl::default();
    let mut worst = 0.0_f64;
    for k2 in [2.0, 6.0, 12.0, 20.0] {
        for parity in [Parity::Even, Parity::Odd] {
            let hp = v0_heun_params(k2, parity)?;
            let (fp, map) = maier_reduce_21(&hp)?;
            for i in 0..50 {
                let t = 0.9 * i as f64 / 49.0;
                worst = worst.max((heun_local(&hp, t, &ctl)? - gauss_2f1(&fp, map.apply(t))?).abs());
            }
        }
    }
    let mut poles = true;
    for n in 1..=6usize {
        let k2 = (n * (n + 1)) as f64;
        let parity = if n % 2 == 1 { Parity::Even } else { Parity::Odd };
        poles &= is_nonpositive_integer(v0_pole_quantity(k2, parity)?, 1e-9);
        poles &= f21_value_at_one(&v0_boundary_params(k2, parity)?)? == 0.0;
    }
    for parity in [Parity::Even, Parity::Odd] {
        poles &= !is_nonpositive_integer(v0_pole_quantity(5.0, parity)?, 1e-9);
        poles &= f21_value_at_one(&v0_boundary_params(5.0, parity)?)? != 0.0;
    }
    Ok(vec![
        below("heun-2f1-reduction", worst, 1e-10, "k2 in {2,6,12,20}, both parities, 50 points on [0, 0.9]"),
        holds("gamma-pole-quantisation", poles, "k2 = n(n+1), n = 1..6 quantise; k2 = 5 does not"),
    ])
}

fn v0_checks(cfg: &RunConfig, shift: f64) -> CliResult<Vec<Check>> {
    let p = cfg.potential()?;
    let states = v0_eigenstates(cfg.count)?;
    let eps: Vec<_> = states.iter().map(|s| s.eps).collect();
    Ok(vec![
        below("v0-fd-agreement", fd_gap(p, &cfg.grid, &eps)?, 1e-5, "n(n+1) against the FD oracle"),
        below("v0-ode-residual", max_residual(p, &states, shift), 1e-7, "x in [-5, 5]"),
        below("v0-orthonormality", orthonormality(&states)?, 1e-8, "max |<n|m> - delta|"),
        holds("v0-node-count", nodes_ok(&states), "state n has n - 1 nodes"),
    ])
}

fn sinh2_checks(cfg: &RunConfig, shift: f64) -> CliResult<Vec<Check>> {
    let p = cfg.potential()?;
    let states = sinh2_eigenstates(cfg.count)?;
    let m = cfg.count.min(BOX_FD_STATES);
    let eps: Vec<_> = states[..m].iter().map(|s| s.eps).collect();
    let report = sinh2_naive_form_report(cfg.count.max(2))?;
    let rest: Vec<String> = report[1..]
        .iter()
        .map(|r| format!("k={}: overlap {:.4}, max dev {:.3e}", r.k, r.overlap, r.max_deviation))
        .collect();
    Ok(vec![
        below("sinh2-fd-agreement", fd_gap(p, &cfg.grid, &eps)?, 1e-6, format!("k^2 against the FD oracle, first {m} states")),
        below("sinh2-ode-residual", max_residual(p, &states, shift), 1e-7, "x in [-5, 5]"),
        below("sinh2-orthonormality", orthonormality(&states)?, 1e-8, "max |<n|m> - delta|"),
        holds("sinh2-node-count", nodes_ok(&states), "state k has k - 1 nodes"),
        below(
            "sinh2-naive-form-ground-state",
            report[0].max_deviation,
            1e-10,
            format!("naive x-forms agree only for k = 1; {}", rest.join("; ")),
        ),
    ])
}

fn tanh_checks(cfg: &RunConfig, shift: f64) -> CliResult<Vec<Check>> {
    let p = cfg.potential()?;
    let states = tanh_eigenstates(cfg.v0_scaled, cfg.count)?;
    let eps: Vec<_> = states.iter().map(|s| s.eps).collect();
    let mut checks = vec![
        below("tanh-fd-agreement", fd_gap(p, &cfg.grid, &eps)?, 1e-4, "series roots against the FD oracle"),
        below("tanh-ode-residual", max_residual(p, &states, shift), 1e-7, "x in [-5, 5]"),
        below("tanh-orthogonality", orthonormality(&states)?, 1e-6, "max |<n|m> - delta|"),
        holds("tanh-node-count", nodes_ok(&states), "state k has k - 1 nodes"),
    ];
    if cfg.v0_scaled == 1.0 {
        let rel = eps
            .iter()
            .zip(TANH_REFERENCE)
            .map(|(e, t)| ((e.value() - t) / t).abs())
            .fold(0.0, f64::max);
        checks.push(below("tanh-reference-values", rel, 1e-5, "relative deviation from the reference values"));
        let mut alternates = true;
        for s in &states {
            let sign = if s.n % 2 == 1 { 1.0 } else { -1.0 };
            alternates &= sign * asymmetry(s)? > 0.9;
        }
        checks.push(holds("tanh-quasi-parity", alternates, "asymmetry functional alternates near +1 / -1"));
    }
    Ok(checks)
}

fn custom_checks(cfg: &RunConfig) -> CliResult<Vec<Check>> {
    let p = cfg.potential()?;
    let fine = fd_eigensolve(p, &cfg.grid, cfg.count)?;
    let coarse_grid = Grid::new(cfg.grid.z_min(), cfg.grid.z_max(), cfg.grid.n_points() / 2 + 1)?;
    let coarse = fd_eigensolve(p, &coarse_grid, cfg.count)?;
    let estimate = fine
        .iter()
        .zip(&coarse)
        .map(|(f, c)| (f.eps.value() - c.eps.value()).abs() / 3.0)
        .fold(0.0, f64::max);
    Ok(vec![below("custom-fd-convergence", estimate, 1e-4, "Richardson error estimate from two grids")])
}

fn ordering_checks(o: &OrderingParams, mp: &MassProfile) -> Vec<Check> {
    let xs: Vec<f64> = (0..=2000).map(|i| -10.0 + 0.01 * i as f64).collect();
    let peak = xs.iter().map(|&x| kinematic_potential(o, mp, x).abs()).fold(0.0, f64::max);
    let free = is_ambiguity_free(o);
    let h = 1e-4;
    let closed = |x: f64| {
        let m = mp.mass(x);
        let d1 = (mp.mass(x + h) - mp.mass(x - h)) / (2.0 * h);
        let d2 = (mp.mass(x + h) - 2.0 * m + mp.mass(x - h)) / (h * h);
        -mp.hbar().powi(2) / (4.0 * m.powi(3))
            * ((o.alpha() + o.gamma() - 1.0) * 0.5 * m * d2
                + (1.0 - o.alpha() * o.gamma() - o.alpha() - o.gamma()) * d1 * d1)
    };
    let fd = xs
        .iter()
        .filter(|x| x.abs() <= 5.0)
        .map(|&x| {
            let u = kinematic_potential(o, mp, x);
            (u - closed(x)).abs() / (1.0 + u.abs())
        })
        .fold(0.0, f64::max);
    let weyl = kinematic_potential(&OrderingParams::weyl(), mp, 0.0);
    let weyl_want = -mp.hbar().powi(2) * mp.a().powi(2) / (4.0 * mp.m0());
    vec![
        holds(
            "ordering-ambiguity",
            free == (peak < 1e-14),
            format!(
                "alpha = {}, gamma = {}: ambiguity free = {free}, max |U_k| on [-10, 10] = {peak:.3e}",
                o.alpha(),
                o.gamma()
            ),
        ),
        below("ordering-finite-difference", fd, 1e-6, "ratio form against central differences of m"),
        below("ordering-weyl-origin", (weyl - weyl_want).abs(), 1e-12, "U_k(0) = -hbar^2 a^2 / (4 m0)"),
    ]
}

pub fn run(args: &ValidateArgs) -> CliResult<i32> {
    let o = ordering_params(args.alpha, args.gamma)?;
    let cases: Vec<Case> = match args.case {
        Some(c) => vec![c],
        None => vec![Case::V0, Case::Sinh2, Case::Tanh, Case::Ordering],
    };
    let mut checks = Vec::new();
    if args.case.is_none() || args.case == Some(Case::V0) {
        checks.extend(reduction_checks()?);
    }
    for case in cases {
        let cfg = RunConfig::build(case, &args.model, Solver::Auto)?;
        checks.extend(match case {
            Case::V0 => v0_checks(&cfg, args.perturb_eps)?,
            Case::Sinh2 => sinh2_checks(&cfg, args.perturb_eps)?,
            Case::Tanh => tanh_checks(&cfg, args.perturb_eps)?,
            Case::Custom => custom_checks(&cfg)?,
            Case::Ordering => ordering_checks(&o, &cfg.mass),
        });
    }
    let all_pass = checks.iter().all(|c| c.pass);

    let mut stderr = std::io::stderr().lock();
    for c in &checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(stderr, "[{verdict}] {}: {:.3e} (tolerance {:.1e})", c.name, c.value, c.tolerance);
    }

    let rows = checks
        .iter()
        .map(|c| {
            Fields::default()
                .text("name", c.name.clone())
                .bool("pass", c.pass)
                .num("value", c.value)
                .num("tolerance", c.tolerance)
                .text("detail", c.detail.clone())
        })
        .collect();
    let params = Fields::default()
        .num("v0_scaled", args.model.v0)
        .num("m0", args.model.m0)
        .num("a", args.model.a)
        .num("hbar", args.model.hbar)
        .int("count", args.model.count)
        .num("alpha", o.alpha())
        .num("gamma", o.gamma())
        .num("perturb_eps", args.perturb_eps);
    let case = args.case.map_or("all", Case::name);
    let doc = Document {
        meta: Meta::new(case, params),
        tables: vec![("checks", rows)],
        extra: Fields::default().bool("all_pass", all_pass),
        primary: "checks",
    };
    write(&doc, &args.out, &format!("validate-{case}"))?;
    Ok(if all_pass { 0 } else { EXIT_VALIDATION })
}
