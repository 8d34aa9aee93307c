use pdm_core::masstransform::MassProfile;
use pdm_core::ordering::{is_ambiguity_free, kinematic_potential, OrderingParams};

use super::write;
use crate::config::OrderingArgs;
use crate::error::{CliError, CliResult};
use crate::output::{Document, Fields, Meta};

pub fn ordering_params(alpha: f64, gamma: f64) -> CliResult<OrderingParams> {
    OrderingParams::new(alpha, gamma).map_err(CliError::config)
}

pub fn run(args: &OrderingArgs) -> CliResult<i32> {
    if args.samples < 2 || args.x_min.partial_cmp(&args.x_max) != Some(std::cmp::Ordering::Less) {
        return Err(CliError::Config(
            "need --samples >= 2 and --x-min < --x-max".into(),
        ));
    }
    let o = ordering_params(args.alpha, args.gamma)?;
    let mp = MassProfile::new(args.m0, args.a, args.hbar).map_err(CliError::config)?;
    let step = (args.x_max - args.x_min) / (args.samples - 1) as f64;
    let mut peak = 0.0_f64;
    let samples = (0..args.samples)
        .map(|i| {
            let x = if i + 1 == args.samples { args.x_max } else { args.x_min + step * i as f64 };
            let u = kinematic_potential(&o, &mp, x);
            peak = peak.max(u.abs());
            Fields::default().num("x", x).num("u_k", u)
        })
        .collect();
    let params = Fields::default()
        .num("alpha", o.alpha())
        .num("beta", o.beta())
        .num("gamma", o.gamma())
        .num("m0", mp.m0())
        .num("a", mp.a())
        .num("hbar", mp.hbar());
    let doc = Document {
        meta: Meta::new("ordering", params),
        tables: vec![("samples", samples)],
        extra: Fields::default()
            .bool("ambiguity_free", is_ambiguity_free(&o))
            .num("u_k_at_origin", kinematic_potential(&o, &mp, 0.0))
            .num("max_abs_u_k", peak),
        primary: "samples",
    };
    write(&doc, &args.out, "ordering")?;
    Ok(0)
}
