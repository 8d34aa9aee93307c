//! von Roos kinetic-energy orderings.
//!
//! The Hermitian family `m^α p m^β p m^γ` (with `α + β + γ = -1`) differs
//! from the plain `p²/2m` form by the kinematic potential
//!
//! ```text
//! U_k = -ħ²/(4m³) [ (α+γ-1) (m/2) m'' + (1 - αγ - α - γ) (m')² ]
//! ```
//!
//! which vanishes identically only for `(α, γ) ∈ {(0, 1), (1, 0)}`.

use crate::error::{PdmError, Result};
use crate::masstransform::MassProfile;

const ORDERING_TOL: f64 = 1e-12;

/// Ordering exponents; `β` is always derived from `α + β + γ = -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl OrderingParams {
    pub fn new(alpha: f64, gamma: f64) -> Result<Self> {
        if !(alpha.is_finite() && gamma.is_finite()) {
            return Err(PdmError::Domain("ordering exponents must be finite".into()));
        }
        Ok(Self {
            alpha,
            beta: -1.0 - alpha - gamma,
            gamma,
        })
    }

    /// Weyl (symmetrised) ordering, `α = γ = 0`.
    pub fn weyl() -> Self {
        Self {
            alpha: 0.0,
            beta: -1.0,
            gamma: 0.0,
        }
    }

    /// Ben Daniel–Duke ordering, `α = 0, γ = 1`.
    pub fn ben_daniel_duke() -> Self {
        Self {
            alpha: 0.0,
            beta: -2.0,
            gamma: 1.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// `α + γ = 1` and `αγ + α + γ = 1`.
pub fn is_ambiguity_free(o: &OrderingParams) -> bool {
    let sum = o.alpha + o.gamma;
    let mixed = o.alpha * o.gamma + sum;
    (sum - 1.0).abs() <= ORDERING_TOL && (mixed - 1.0).abs() <= ORDERING_TOL
}

/// Kinematic potential `U_k(x)` for the `sech²` mass profile, in physical
/// units.
///
/// Evaluated through the ratios `m'/m` and `m''/m`, which are bounded, so
/// that large `|a x|` does not produce `0/0`.
pub fn kinematic_potential(o: &OrderingParams, mp: &MassProfile, x: f64) -> f64 {
    let first = o.alpha + o.gamma - 1.0;
    let second = 1.0 - o.alpha * o.gamma - o.alpha - o.gamma;
    let d1 = mp.log_derivative(x);
    let d2 = mp.second_log_ratio(x);
    let bracket_over_m2 = first * 0.5 * d2 + second * d1 * d1;
    -mp.hbar() * mp.hbar() / (4.0 * mp.mass(x)) * bracket_over_m2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed_form(o: &OrderingParams, mp: &MassProfile, x: f64) -> f64 {
        // literal transcription with finite-difference derivatives of m
        let h = 1e-4;
        let m = mp.mass(x);
        let d1 = (mp.mass(x + h) - mp.mass(x - h)) / (2.0 * h);
        let d2 = (mp.mass(x + h) - 2.0 * m + mp.mass(x - h)) / (h * h);
        -mp.hbar().powi(2) / (4.0 * m.powi(3))
            * ((o.alpha + o.gamma - 1.0) * 0.5 * m * d2
                + (1.0 - o.alpha * o.gamma - o.alpha - o.gamma) * d1 * d1)
    }

    #[test]
    fn beta_is_derived() {
        let o = OrderingParams::new(0.0, 1.0).unwrap();
        assert_eq!(o.beta(), -2.0);
        assert_eq!(OrderingParams::new(1.0, 0.0).unwrap().beta(), -2.0);
        assert_eq!(OrderingParams::weyl().beta(), -1.0);
        assert!(OrderingParams::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn ambiguity_free_orderings() {
        assert!(is_ambiguity_free(&OrderingParams::new(0.0, 1.0).unwrap()));
        assert!(is_ambiguity_free(&OrderingParams::new(1.0, 0.0).unwrap()));
        assert!(is_ambiguity_free(&OrderingParams::ben_daniel_duke()));
        assert!(!is_ambiguity_free(&OrderingParams::weyl()));
        assert!(!is_ambiguity_free(&OrderingParams::new(0.5, 0.5).unwrap()));
    }

    #[test]
    fn kinematic_potential_vanishes_without_ambiguity() {
        let mp = MassProfile::new(1.4, 0.8, 1.1).unwrap();
        for o in [
            OrderingParams::new(0.0, 1.0).unwrap(),
            OrderingParams::new(1.0, 0.0).unwrap(),
        ] {
            for i in 0..=200 {
                let x = -10.0 + 0.1 * i as f64;
                assert!(kinematic_potential(&o, &mp, x).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn weyl_value_at_origin() {
        let mp = MassProfile::default();
        let u = kinematic_potential(&OrderingParams::weyl(), &mp, 0.0);
        assert!((u + 0.25).abs() < 1e-15);
        assert!((closed_form(&OrderingParams::weyl(), &mp, 0.0) + 0.25).abs() < 1e-7);
        let mp = MassProfile::new(2.0, 1.5, 0.5).unwrap();
        let u = kinematic_potential(&OrderingParams::weyl(), &mp, 0.0);
        // -ħ²a²/(4 m0)
        assert!((u + 0.25 * 1.5 * 1.5 / (4.0 * 2.0)).abs() < 1e-15);
    }

    #[test]
    fn ratio_form_matches_closed_form_and_is_even() {
        let mp = MassProfile::new(0.9, 1.2, 1.0).unwrap();
        for o in [
            OrderingParams::weyl(),
            OrderingParams::new(-0.5, 0.25).unwrap(),
            OrderingParams::new(2.0, -1.0).unwrap(),
        ] {
            for x in [-3.0, -1.2, 0.0, 0.4, 2.6] {
                let u = kinematic_potential(&o, &mp, x);
                let p = closed_form(&o, &mp, x);
                assert!((u - p).abs() < 1e-5 * (1.0 + u.abs()), "{o:?} {x}: {u} vs {p}");
                assert!((u - kinematic_potential(&o, &mp, -x)).abs() < 1e-12 * (1.0 + u.abs()));
            }
        }
    }
}
