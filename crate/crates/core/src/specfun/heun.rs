use super::hypergeometric::F21Params;
use super::series::{is_nonpositive_integer, CompensatedSum, SeriesControl, StagnationTracker};
use crate::error::{PdmError, Result};

const PARAM_TOL: f64 = 1e-12;

/// Parameters of the general Heun equation
///
/// ```text
/// H'' + (γ/t + δ/(t-1) + ε/(t-d)) H' + (αβ t - q) / (t (t-1) (t-d)) H = 0
/// ```
///
/// with the Fuchsian relation `α + β + 1 = γ + δ + ε` enforced on
/// construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunParams {
    pub d: f64,
    pub q: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
}

impl HeunParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        d: f64,
        q: f64,
        alpha: f64,
        beta: f64,
        gamma: f64,
        delta: f64,
        epsilon: f64,
    ) -> Result<Self> {
        let values = [d, q, alpha, beta, gamma, delta, epsilon];
        if values.iter().any(|v| !v.is_finite()) {
            return Err(PdmError::Domain("non-finite Heun parameter".into()));
        }
        if d.abs() < PARAM_TOL || (d - 1.0).abs() < PARAM_TOL {
            return Err(PdmError::Domain(format!(
                "Heun singularity d = {d} collides with 0 or 1"
            )));
        }
        let lhs = alpha + beta + 1.0;
        let rhs = gamma + delta + epsilon;
        let scale = 1.0 + values[2..].iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if (lhs - rhs).abs() > PARAM_TOL * scale {
            return Err(PdmError::Fuchsian { lhs, rhs });
        }
        Ok(Self {
            d,
            q,
            alpha,
            beta,
            gamma,
            delta,
            epsilon,
        })
    }

    /// Builds the parameter set with `ε` fixed by the Fuchsian relation.
    pub fn with_fuchsian_epsilon(
        d: f64,
        q: f64,
        alpha: f64,
        beta: f64,
        gamma: f64,
        delta: f64,
    ) -> Result<Self> {
        Self::new(d, q, alpha, beta, gamma, delta, alpha + beta + 1.0 - gamma - delta)
    }
}

/// Series evaluation of the exponent-0 local Heun solution about `t = 0`,
/// normalised to `H(0) = 1`.
pub fn heun_local(p: &HeunParams, t: f64, ctl: &SeriesControl) -> Result<f64> {
    heun_local_derivatives(p, t, ctl).map(|(h, _, _)| h)
}

/// Returns `(H, H', H'')` at `t`, all summed term by term.
pub fn heun_local_derivatives(
    p: &HeunParams,
    t: f64,
    ctl: &SeriesControl,
) -> Result<(f64, f64, f64)> {
    let radius = p.d.abs().min(1.0);
    if !(t.abs() < radius) {
        return Err(PdmError::Domain(format!(
            "local Heun series needs |t| < {radius}, got t = {t}"
        )));
    }
    if is_nonpositive_integer(p.gamma, 1e-12) {
        return Err(PdmError::Precondition(format!(
            "exponent-0 Heun solution undefined for gamma = {}",
            p.gamma
        )));
    }

    let mut sums = [CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new()];
    let mut trackers = [
        StagnationTracker::new(ctl),
        StagnationTracker::new(ctl),
        StagnationTracker::new(ctl),
    ];
    sums[0].add(1.0);

    // c_{n+1} R_n = (Q_n + q) c_n - P_n c_{n-1}
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut last = 0.0;
    for n in 0..ctl.max_terms() {
        let nf = n as f64;
        let q_n = nf * ((nf - 1.0 + p.gamma) * (1.0 + p.d) + p.d * p.delta + p.epsilon);
        let p_n = (nf - 1.0 + p.alpha) * (nf - 1.0 + p.beta);
        let r_n = p.d * (nf + 1.0) * (nf + p.gamma);
        let next = ((q_n + p.q) * cur - p_n * prev) / r_n;
        prev = cur;
        cur = next;

        let m = n + 1; // power carried by `cur`
        let mf = m as f64;
        let terms = [
            cur * t.powi(m as i32),
            mf * cur * t.powi(m as i32 - 1),
            if m >= 2 {
                mf * (mf - 1.0) * cur * t.powi(m as i32 - 2)
            } else {
                0.0
            },
        ];
        let mut done = true;
        for i in 0..3 {
            sums[i].add(terms[i]);
            done &= trackers[i].push(terms[i], sums[i].value());
        }
        last = terms[0].abs();
        if done {
            return Ok((sums[0].value(), sums[1].value(), sums[2].value()));
        }
    }
    Err(PdmError::NonConvergence {
        terms: ctl.max_terms(),
        last_term: last,
    })
}

/// Polynomial argument map accompanying a Heun → ₂F₁ reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgumentMap {
    /// `R(t) = t (2 - t)`
    TwoMinusT,
}

impl ArgumentMap {
    pub fn apply(&self, t: f64) -> f64 {
        match self {
            ArgumentMap::TwoMinusT => t * (2.0 - t),
        }
    }
}

/// Reduction of a `(d, p) = (2, 1)` Heun function:
/// `H(2, αβ, α, β, γ, δ; t) = ₂F₁(α/2, β/2; γ; t(2-t))`.
///
/// Requires `d = 2`, `q = αβ`, and `ε = γ` (the map `t ↦ t(2-t)` folds
/// `t = 0` onto `t = 2`, so both singular points must share exponents).
pub fn maier_reduce_21(p: &HeunParams) -> Result<(F21Params, ArgumentMap)> {
    if (p.d - 2.0).abs() > PARAM_TOL {
        return Err(PdmError::Precondition(format!(
            "(2,1) reduction needs d = 2, got {}",
            p.d
        )));
    }
    let ab = p.alpha * p.beta;
    if (p.q - ab).abs() > PARAM_TOL * (1.0 + ab.abs()) {
        return Err(PdmError::Precondition(format!(
            "(2,1) reduction needs q = alpha*beta = {ab}, got {}",
            p.q
        )));
    }
    if (p.epsilon - p.gamma).abs() > PARAM_TOL * (1.0 + p.gamma.abs()) {
        return Err(PdmError::Precondition(format!(
            "(2,1) reduction needs epsilon = gamma, got {} and {}",
            p.epsilon, p.gamma
        )));
    }
    let f = F21Params::new(p.alpha / 2.0, p.beta / 2.0, p.gamma)?;
    Ok((f, ArgumentMap::TwoMinusT))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gauss_2f1;

    fn v0_even(k2: f64) -> HeunParams {
        let s = (1.0 + 4.0 * k2).sqrt();
        HeunParams::with_fuchsian_epsilon(2.0, -k2, (-1.0 + s) / 2.0, (-1.0 - s) / 2.0, 0.5, -1.0)
            .unwrap()
    }

    #[test]
    fn fuchsian_relation_is_enforced() {
        assert!(matches!(
            HeunParams::new(2.0, 0.0, 1.0, 1.0, 1.0, 1.0, 2.0),
            Err(PdmError::Fuchsian { .. })
        ));
        assert!(HeunParams::new(2.0, 0.0, 1.0, 1.0, 1.0, 0.5, 1.5).is_ok());
        assert!(HeunParams::new(1.0, 0.0, 1.0, 1.0, 1.0, 0.5, 1.5).is_err());
        assert!(HeunParams::new(0.0, 0.0, 1.0, 1.0, 1.0, 0.5, 1.5).is_err());
    }

    #[test]
    fn normalised_at_origin() {
        let p = HeunParams::with_fuchsian_epsilon(-1.0, 0.3, 0.7, -1.2, 0.5, 0.5).unwrap();
        assert_eq!(heun_local(&p, 0.0, &SeriesControl::default()).unwrap(), 1.0);
    }

    #[test]
    fn quantized_even_case_is_a_square() {
        // k^2 = 2 collapses to (1 - t)^2
        let p = v0_even(2.0);
        assert!((p.alpha - 1.0).abs() < 1e-15 && (p.beta + 2.0).abs() < 1e-15);
        let ctl = SeriesControl::default();
        assert!((heun_local(&p, 0.5, &ctl).unwrap() - 0.25).abs() < 1e-14);
        assert!((heun_local(&p, 0.2, &ctl).unwrap() - 0.64).abs() < 1e-14);
    }

    #[test]
    fn series_satisfies_the_heun_equation() {
        let ctl = SeriesControl::default();
        let params = [
            HeunParams::with_fuchsian_epsilon(2.0, -3.7, 1.3, -2.1, 0.5, -1.0).unwrap(),
            HeunParams::with_fuchsian_epsilon(-1.0, 0.4, 0.8, 1.9, 1.5, 0.5).unwrap(),
            HeunParams::with_fuchsian_epsilon(3.5, 1.1, -0.6, 2.2, 0.75, 0.25).unwrap(),
        ];
        for p in params {
            for t in [-0.6, -0.2, 0.1, 0.45, 0.8] {
                let (h, dh, d2h) = heun_local_derivatives(&p, t, &ctl).unwrap();
                let lhs = t * (t - 1.0) * (t - p.d) * d2h
                    + (p.gamma * (t - 1.0) * (t - p.d)
                        + p.delta * t * (t - p.d)
                        + p.epsilon * t * (t - 1.0))
                        * dh
                    + (p.alpha * p.beta * t - p.q) * h;
                let scale = 1.0 + h.abs() + dh.abs() + d2h.abs();
                assert!(lhs.abs() / scale < 1e-10, "{p:?} t={t}: {lhs}");
            }
        }
    }

    #[test]
    fn domain_is_checked() {
        let p = v0_even(3.3);
        assert!(heun_local(&p, 1.0, &SeriesControl::default()).is_err());
        let p = HeunParams::with_fuchsian_epsilon(0.5, 0.0, 1.0, 1.0, 1.0, 0.5).unwrap();
        assert!(heun_local(&p, 0.6, &SeriesControl::default()).is_err());
    }

    #[test]
    fn reduction_matches_even_and_odd_forms() {
        let p = v0_even(2.0);
        let (f, map) = maier_reduce_21(&p).unwrap();
        assert_eq!(map, ArgumentMap::TwoMinusT);
        assert!((f.a - p.alpha / 2.0).abs() < 1e-15);
        assert!((f.b - p.beta / 2.0).abs() < 1e-15);
        assert_eq!(f.c, 0.5);

        let k2: f64 = 6.0;
        let s = (1.0 + 4.0 * k2).sqrt();
        let odd = HeunParams::with_fuchsian_epsilon(
            2.0,
            -k2,
            (1.0 + s) / 2.0,
            (1.0 - s) / 2.0,
            1.5,
            -1.0,
        )
        .unwrap();
        let (f, _) = maier_reduce_21(&odd).unwrap();
        assert_eq!(f.c, 1.5);
        let ctl = SeriesControl::default();
        for t in [0.1, 0.5, 0.85] {
            let h = heun_local(&odd, t, &ctl).unwrap();
            let g = gauss_2f1(&f, map.apply(t)).unwrap();
            assert!((h - g).abs() < 1e-12);
        }
    }

    #[test]
    fn reduction_rejects_other_patterns() {
        let p = HeunParams::with_fuchsian_epsilon(3.0, -2.0, 1.0, -2.0, 0.5, -1.0).unwrap();
        assert!(matches!(maier_reduce_21(&p), Err(PdmError::Precondition(_))));
        let p = HeunParams::with_fuchsian_epsilon(2.0, -1.0, 1.0, -2.0, 0.5, -1.0).unwrap();
        assert!(maier_reduce_21(&p).is_err());
        let p = HeunParams::with_fuchsian_epsilon(2.0, -2.0, 1.0, -2.0, 0.5, -0.5).unwrap();
        assert!(maier_reduce_21(&p).is_err());
    }
}
