use super::free::FreeState;
use super::sinh2::BoxState;
use super::tanh::TanhState;
use crate::error::Result;
use crate::masstransform::{z_to_x, ScaledEnergy};
use crate::quad::integrate;

/// Integration range `[-HALF_WIDTH, HALF_WIDTH]` for overlaps; every state
/// here decays at least like `e^{-|x|}`.
pub const HALF_WIDTH: f64 = 25.0;

const QUAD_ABS: f64 = 1e-13;
const QUAD_REL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    None,
}

#[derive(Debug, Clone)]
pub(crate) enum Kind {
    Free(FreeState),
    Box(BoxState),
    Tanh(TanhState),
}

/// A normalised bound state. `norm_constant` is the factor applied to the
/// raw (unnormalised) closed form or series.
#[derive(Debug, Clone)]
pub struct Eigenstate {
    pub n: usize,
    pub parity: Parity,
    pub eps: ScaledEnergy,
    pub norm_constant: f64,
    pub(crate) kind: Kind,
}

impl Eigenstate {
    pub fn psi_x(&self, x: f64) -> f64 {
        self.psi_x_derivs(x).0
    }

    /// `(ψ, ψ', ψ'')` at `x`, from exact derivatives of the representation.
    pub fn psi_x_derivs(&self, x: f64) -> (f64, f64, f64) {
        let (v, d1, d2) = match &self.kind {
            Kind::Free(s) => s.derivs(x),
            Kind::Box(s) => s.derivs(x),
            Kind::Tanh(s) => s.raw_derivs(x).unwrap_or((f64::NAN, f64::NAN, f64::NAN)),
        };
        let c = self.norm_constant;
        (c * v, c * d1, c * d2)
    }

    /// `φ(z) = sec^{1/2}(z) ψ(x(z))`; zero at `|z| = π/2`.
    pub fn phi_z(&self, z: f64) -> f64 {
        if let Kind::Box(s) = &self.kind {
            return self.norm_constant * s.phi_z(z);
        }
        match z_to_x(z) {
            Ok(x) => self.psi_x(x) / z.cos().sqrt(),
            Err(_) => 0.0,
        }
    }
}

pub(crate) fn integrate_line<F: Fn(f64) -> f64>(f: F) -> Result<f64> {
    let left = integrate(&f, -HALF_WIDTH, 0.0, QUAD_ABS, QUAD_REL)?;
    let right = integrate(&f, 0.0, HALF_WIDTH, QUAD_ABS, QUAD_REL)?;
    Ok(left.value + right.value)
}

/// `∫ ψ₁ ψ₂ dx` over `[-25, 25]`. States of opposite definite parity give
/// exactly zero.
pub fn inner_product(s1: &Eigenstate, s2: &Eigenstate) -> Result<f64> {
    match (s1.parity, s2.parity) {
        (Parity::Even, Parity::Odd) | (Parity::Odd, Parity::Even) => return Ok(0.0),
        _ => {}
    }
    integrate_line(|x| s1.psi_x(x) * s2.psi_x(x))
}

/// `∫ ψ(x) ψ(-x) dx`: `±1` for states of definite parity.
pub fn asymmetry(s: &Eigenstate) -> Result<f64> {
    integrate_line(|x| s.psi_x(x) * s.psi_x(-x))
}

/// Sign changes of `f` on `points` evenly spaced samples of `[a, b]`;
/// exact zeros are skipped.
pub fn count_nodes<F: Fn(f64) -> f64>(f: F, x_range: (f64, f64), points: usize) -> usize {
    let (a, b) = x_range;
    let n = points.max(2);
    let mut last = 0.0_f64;
    let mut nodes = 0;
    for i in 0..n {
        let v = f(a + (b - a) * i as f64 / (n - 1) as f64);
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            nodes += 1;
        }
        last = v;
    }
    nodes
}
