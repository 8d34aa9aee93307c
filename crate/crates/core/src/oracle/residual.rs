use crate::masstransform::{PotentialSpec, ScaledEnergy};

/// Step of the five-point difference stencils in [`ode_residual_x`].
pub const STENCIL_STEP: f64 = 1e-4;

fn sample_points(x_range: (f64, f64), samples: usize) -> impl Iterator<Item = f64> {
    let (a, b) = x_range;
    let n = samples.max(2);
    (0..n).map(move |i| a + (b - a) * i as f64 / (n - 1) as f64)
}

fn residual_at(p: &PotentialSpec, eps: f64, x: f64, psi: f64, dpsi: f64, d2psi: f64) -> f64 {
    let sech = 1.0 / x.cosh();
    d2psi + 2.0 * x.tanh() * dpsi + (eps - p.scaled_in_x(x)) * sech * sech * psi
}

/// `max |ψ'' + 2 tanh(x) ψ' + (ℰ - Ṽ(x)) sech²(x) ψ| / max |ψ|` over
/// `samples` evenly spaced points, with derivatives from five-point stencils.
pub fn ode_residual_x<F>(
    p: &PotentialSpec,
    eps: ScaledEnergy,
    psi: F,
    x_range: (f64, f64),
    samples: usize,
) -> f64
where
    F: Fn(f64) -> f64,
{
    let h = STENCIL_STEP;
    ode_residual_x_analytic(
        p,
        eps,
        |x| {
            let (m2, m1, c, p1, p2) = (psi(x - 2.0 * h), psi(x - h), psi(x), psi(x + h), psi(x + 2.0 * h));
            let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
            let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
            (c, d1, d2)
        },
        x_range,
        samples,
    )
}

/// As [`ode_residual_x`], with `(ψ, ψ', ψ'')` supplied by the caller.
pub fn ode_residual_x_analytic<F>(
    p: &PotentialSpec,
    eps: ScaledEnergy,
    derivs: F,
    x_range: (f64, f64),
    samples: usize,
) -> f64
where
    F: Fn(f64) -> (f64, f64, f64),
{
    let mut worst = 0.0_f64;
    let mut peak = 0.0_f64;
    for x in sample_points(x_range, samples) {
        let (v, d1, d2) = derivs(x);
        peak = peak.max(v.abs());
        worst = worst.max(residual_at(p, eps.value(), x, v, d1, d2).abs());
    }
    if peak == 0.0 {
        return f64::INFINITY;
    }
    worst / peak
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::masstransform::MassProfile;

    // With step 1e-4 the five-point ψ'' carries roughly (68/12)·u·|ψ|/h² of
    // rounding error, about 1.1e-7 for O(1) states; the residual falls as 1/h².
    const STENCIL_FLOOR: f64 = 3e-7;

    fn sech2(x: f64) -> f64 {
        let s = 1.0 / x.cosh();
        s * s
    }

    fn sech2_derivs(x: f64) -> (f64, f64, f64) {
        let s2 = sech2(x);
        let t = x.tanh();
        (s2, -2.0 * s2 * t, s2 * (4.0 * t * t - 2.0 * s2))
    }

    #[test]
    fn free_ground_state_analytic() {
        let r = ode_residual_x_analytic(&PotentialSpec::Zero, ScaledEnergy(2.0), sech2_derivs, (-5.0, 5.0), 1001);
        assert!(r < 1e-7, "{r}");
    }

    #[test]
    fn free_ground_state_stencil() {
        let r = ode_residual_x(&PotentialSpec::Zero, ScaledEnergy(2.0), sech2, (-5.0, 5.0), 1001);
        assert!(r < STENCIL_FLOOR, "{r}");
    }

    #[test]
    #[ignore = "five-point stencil at step 1e-4 has a rounding floor of ~1.1e-7"]
    fn free_ground_state_stencil_strict() {
        let r = ode_residual_x(&PotentialSpec::Zero, ScaledEnergy(2.0), sech2, (-5.0, 5.0), 1001);
        assert!(r < 1e-7, "{r}");
    }

    #[test]
    fn wrong_energy_is_detected() {
        let r = ode_residual_x(&PotentialSpec::Zero, ScaledEnergy(2.5), sech2, (-5.0, 5.0), 1001);
        assert!(r > 1e-2, "{r}");
    }

    #[test]
    fn box_ground_state() {
        let mp = MassProfile::default();
        let p = PotentialSpec::sinh_squared_box(&mp);
        let c = (2.0 / std::f64::consts::PI).sqrt();
        let psi = |x: f64| c * (1.0 / x.cosh()).powf(1.5);
        let r = ode_residual_x(&p, ScaledEnergy(1.0), psi, (-5.0, 5.0), 1001);
        assert!(r < STENCIL_FLOOR, "{r}");
        let derivs = |x: f64| {
            let v = psi(x);
            let t = x.tanh();
            let s2 = sech2(x);
            (v, -1.5 * t * v, v * (2.25 * t * t - 1.5 * s2))
        };
        let r = ode_residual_x_analytic(&p, ScaledEnergy(1.0), derivs, (-5.0, 5.0), 1001);
        assert!(r < 1e-7, "{r}");
    }
}
