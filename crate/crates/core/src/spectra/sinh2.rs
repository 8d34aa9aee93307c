use std::f64::consts::{FRAC_PI_2, PI};

use super::state::{integrate_line, Eigenstate, Kind, Parity};
use crate::error::{PdmError, Result};
use crate::masstransform::{MassProfile, PotentialSpec, ScaledEnergy};
use crate::oracle::ode_residual_x;

/// `k`-th box state, `φ = cos(kz)` for odd `k` and `sin(kz)` for even `k`
/// (unnormalised).
///
/// For `x ≥ 1` it is evaluated through `w = π/2 - z = atan(csch x)` so that
/// the tails keep full relative accuracy.
#[derive(Debug, Clone)]
pub(crate) struct BoxState {
    k: usize,
}

impl BoxState {
    fn parity_sign(&self) -> f64 {
        if self.k % 2 == 1 {
            1.0
        } else {
            -1.0
        }
    }

    /// `φ(z(x)) = σ sin(k w)`.
    fn sigma(&self) -> f64 {
        let half = if self.k % 2 == 1 { (self.k - 1) / 2 } else { self.k / 2 + 1 };
        if half % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub(crate) fn phi_z(&self, z: f64) -> f64 {
        if !(z.abs() < FRAC_PI_2) {
            return 0.0;
        }
        let kz = self.k as f64 * z;
        if self.k % 2 == 1 {
            kz.cos()
        } else {
            kz.sin()
        }
    }

    pub(crate) fn derivs(&self, x: f64) -> (f64, f64, f64) {
        if x < 0.0 {
            let p = self.parity_sign();
            let (v, d1, d2) = self.derivs(-x);
            return (p * v, -p * d1, p * d2);
        }
        let k = self.k as f64;
        let (sech, tanh) = (1.0 / x.cosh(), x.tanh());
        let (s, s1, s2) = if x < 1.0 {
            // φ(z) directly; exact zeros at the origin for odd states
            let z = x.sinh().atan();
            let (sin_kz, cos_kz) = (k * z).sin_cos();
            let (f, fz, fzz) = if self.k % 2 == 1 {
                (cos_kz, -k * sin_kz, -k * k * cos_kz)
            } else {
                (sin_kz, k * cos_kz, -k * k * sin_kz)
            };
            (f, fz * sech, fzz * sech * sech - fz * sech * tanh)
        } else {
            let sigma = self.sigma();
            let w = (1.0 / x.sinh()).atan();
            let (sin_kw, cos_kw) = (k * w).sin_cos();
            (
                sigma * sin_kw,
                -sigma * k * cos_kw * sech,
                sigma * (-k * k * sin_kw * sech * sech + k * cos_kw * sech * tanh),
            )
        };
        let g = sech.sqrt();
        let g1 = -0.5 * tanh * g;
        let g2 = g * (0.25 * tanh * tanh - 0.5 * sech * sech);
        (g * s, g1 * s + g * s1, g2 * s + 2.0 * g1 * s1 + g * s2)
    }
}

/// The first `count` states of the `sinh²` potential with the constant
/// `-a²ħ²/(4m0)`, for which the problem in `z` is a box: `ℰ = k²`.
pub fn sinh2_eigenstates(count: usize) -> Result<Vec<Eigenstate>> {
    if count == 0 {
        return Err(PdmError::Precondition("count must be at least 1".into()));
    }
    Ok((1..=count)
        .map(|k| Eigenstate {
            n: k,
            parity: if k % 2 == 1 { Parity::Even } else { Parity::Odd },
            eps: ScaledEnergy((k * k) as f64),
            norm_constant: (2.0 / PI).sqrt(),
            kind: Kind::Box(BoxState { k }),
        })
        .collect())
}

/// Comparison of the `x`-space closed forms `sech^{1/2}x sech(kx)` (odd `k`)
/// and `sech^{1/2}x tanh(kx)` (even `k`) with the mapped box states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaiveFormCheck {
    pub k: usize,
    pub eps: f64,
    /// `⟨naive, exact⟩` after normalising the naive form.
    pub overlap: f64,
    /// Max pointwise deviation on `[-10, 10]` after normalisation and sign
    /// alignment.
    pub max_deviation: f64,
    /// Stencil ODE residual of the naive form at `ℰ = k²` on `[-5, 5]`.
    pub ode_residual: f64,
}

fn naive_form(k: usize, x: f64) -> f64 {
    let kx = k as f64 * x;
    let lead = (1.0 / x.cosh()).sqrt();
    if k % 2 == 1 {
        lead / kx.cosh()
    } else {
        lead * kx.tanh()
    }
}

pub fn sinh2_naive_form_report(count: usize) -> Result<Vec<NaiveFormCheck>> {
    let p = PotentialSpec::sinh_squared_box(&MassProfile::default());
    sinh2_eigenstates(count)?
        .into_iter()
        .map(|s| {
            let k = s.n;
            let norm = integrate_line(|x| naive_form(k, x).powi(2))?.sqrt();
            let naive = |x: f64| naive_form(k, x) / norm;
            let overlap = integrate_line(|x| naive(x) * s.psi_x(x))?;
            let align = if overlap < 0.0 { -1.0 } else { 1.0 };
            let max_deviation = (0..=2000)
                .map(|i| -10.0 + 0.01 * i as f64)
                .map(|x| (align * naive(x) - s.psi_x(x)).abs())
                .fold(0.0, f64::max);
            let ode_residual = ode_residual_x(&p, s.eps, naive, (-5.0, 5.0), 1001);
            Ok(NaiveFormCheck {
                k,
                eps: s.eps.value(),
                overlap: overlap.abs(),
                max_deviation,
                ode_residual,
            })
        })
        .collect()
}
