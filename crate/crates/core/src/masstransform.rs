//! Mass profile, coordinate maps and the effective potential.
//!
//! With `m(x) = m0 sech²(a x)` and the length rescaled so that `a x → x`,
//! the wavefunction substitution `ψ(x) = cosh^ν(x) φ(x)` with `ν = -1/2`
//! followed by `cos z = sech x` turns the position-dependent-mass problem
//! into a constant-mass one,
//!
//! ```text
//! -φ''(z) + [1/2 + (3/4) tan² z + Ṽ(z)] φ(z) = ℰ φ(z),   |z| < π/2,
//! ```
//!
//! where `Ṽ = V / energy_scale` and `ℰ = E / energy_scale` with
//! `energy_scale = a² ħ² / (2 m0)`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{PdmError, Result};

/// Distance from `±π/2` below which `z` is clamped before evaluating
/// `tan z`.
pub const BOUNDARY_GUARD: f64 = 1e-12;

/// The physical triple `(m0, a, ħ)` of the mass density `m0 sech²(a x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassProfile {
    m0: f64,
    a: f64,
    hbar: f64,
}

impl MassProfile {
    pub fn new(m0: f64, a: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("m0", m0), ("a", a), ("hbar", hbar)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(PdmError::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self { m0, a, hbar })
    }

    pub fn m0(&self) -> f64 {
        self.m0
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `a² ħ² / (2 m0)`, the unit in which scaled energies are measured.
    pub fn energy_scale(&self) -> f64 {
        self.a * self.a * self.hbar * self.hbar / (2.0 * self.m0)
    }

    /// `m(x)` in physical (unscaled) position.
    pub fn mass(&self, x: f64) -> f64 {
        let s = sech(self.a * x);
        self.m0 * s * s
    }

    /// `m'(x) / m(x) = -2a tanh(a x)`.
    pub fn log_derivative(&self, x: f64) -> f64 {
        -2.0 * self.a * (self.a * x).tanh()
    }

    /// `m''(x) / m(x) = 2a² (2 tanh²(a x) - sech²(a x))`.
    pub fn second_log_ratio(&self, x: f64) -> f64 {
        let t = (self.a * x).tanh();
        let s = sech(self.a * x);
        2.0 * self.a * self.a * (2.0 * t * t - s * s)
    }

    pub fn mass_derivative(&self, x: f64) -> f64 {
        self.mass(x) * self.log_derivative(x)
    }

    pub fn mass_second_derivative(&self, x: f64) -> f64 {
        self.mass(x) * self.second_log_ratio(x)
    }
}

impl Default for MassProfile {
    fn default() -> Self {
        Self {
            m0: 1.0,
            a: 1.0,
            hbar: 1.0,
        }
    }
}

fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

/// The exponent `ν` of `ψ = cosh^ν φ`. Fixed at `-1/2`, which removes the
/// first-derivative term of the `z`-space equation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TransformConvention;

impl TransformConvention {
    pub const NU: f64 = -0.5;

    pub fn nu(&self) -> f64 {
        Self::NU
    }
}

/// Dimensionless energy `ℰ = E / energy_scale` (also `k²` when `V = 0`).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ScaledEnergy(pub f64);

impl ScaledEnergy {
    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn scale_energy(mp: &MassProfile, energy: f64) -> ScaledEnergy {
    ScaledEnergy(energy / mp.energy_scale())
}

pub fn unscale_energy(mp: &MassProfile, eps: ScaledEnergy) -> f64 {
    eps.0 * mp.energy_scale()
}

/// Scaled potential `Ṽ(z)` given as samples, linearly interpolated and held
/// constant outside the sampled range.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPotential {
    z: Vec<f64>,
    v: Vec<f64>,
}

impl TabulatedPotential {
    pub fn new(z: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if z.len() != v.len() || z.len() < 2 {
            return Err(PdmError::Domain(
                "tabulated potential needs at least two (z, V) pairs".into(),
            ));
        }
        if z.windows(2).any(|w| w[1].is_nan() || w[1] <= w[0]) {
            return Err(PdmError::Domain(
                "tabulated potential abscissae must be strictly increasing".into(),
            ));
        }
        if z.iter().any(|&zi| zi.is_nan() || zi.abs() >= FRAC_PI_2) || v.iter().any(|vi| !vi.is_finite()) {
            return Err(PdmError::Domain(
                "tabulated potential must be finite and sampled inside |z| < π/2".into(),
            ));
        }
        Ok(Self { z, v })
    }

    /// Samples `f` at `n` evenly spaced points of `[-π/2 + inset, π/2 - inset]`.
    pub fn from_fn<F: Fn(f64) -> f64>(f: F, n: usize, inset: f64) -> Result<Self> {
        let lo = -FRAC_PI_2 + inset;
        let step = 2.0 * (FRAC_PI_2 - inset) / (n.max(2) - 1) as f64;
        let z: Vec<f64> = (0..n.max(2)).map(|i| lo + step * i as f64).collect();
        let v = z.iter().map(|&zi| f(zi)).collect();
        Self::new(z, v)
    }

    pub fn eval(&self, z: f64) -> f64 {
        let n = self.z.len();
        if z <= self.z[0] {
            return self.v[0];
        }
        if z >= self.z[n - 1] {
            return self.v[n - 1];
        }
        let i = self.z.partition_point(|&zi| zi <= z) - 1;
        let w = (z - self.z[i]) / (self.z[i + 1] - self.z[i]);
        self.v[i] + w * (self.v[i + 1] - self.v[i])
    }
}

/// The external potential, stored together with its dimensionless form.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    Zero,
    /// `V(x) = V0 tanh x`, i.e. `Ṽ(z) = 𝒱₀ sin z`.
    Tanh { v0: f64, v0_scaled: f64 },
    /// `V(x) = -(3a²ħ²/8m0) sinh² x + constant`.
    SinhSquared { constant: f64, constant_scaled: f64 },
    /// Scaled `Ṽ(z)` supplied as samples.
    CustomZ(TabulatedPotential),
}

impl PotentialSpec {
    pub fn tanh(mp: &MassProfile, v0: f64) -> Self {
        PotentialSpec::Tanh {
            v0,
            v0_scaled: v0 / mp.energy_scale(),
        }
    }

    pub fn tanh_scaled(mp: &MassProfile, v0_scaled: f64) -> Self {
        PotentialSpec::Tanh {
            v0: v0_scaled * mp.energy_scale(),
            v0_scaled,
        }
    }

    pub fn sinh_squared(mp: &MassProfile, constant: f64) -> Self {
        PotentialSpec::SinhSquared {
            constant,
            constant_scaled: constant / mp.energy_scale(),
        }
    }

    /// The `sinh²` potential with `constant = -a²ħ²/(4m0)`, for which the
    /// effective potential vanishes identically.
    pub fn sinh_squared_box(mp: &MassProfile) -> Self {
        let constant = -mp.a * mp.a * mp.hbar * mp.hbar / (4.0 * mp.m0);
        Self::sinh_squared(mp, constant)
    }

    /// `Ṽ(z)`. Not defined at `|z| = π/2` for the `sinh²` case.
    pub fn scaled_in_z(&self, z: f64) -> f64 {
        match self {
            PotentialSpec::Zero => 0.0,
            PotentialSpec::Tanh { v0_scaled, .. } => v0_scaled * z.sin(),
            PotentialSpec::SinhSquared {
                constant_scaled, ..
            } => {
                let t = z.tan();
                -0.75 * t * t + constant_scaled
            }
            PotentialSpec::CustomZ(table) => table.eval(z),
        }
    }

    /// `Ṽ` as a function of the scaled position `x`.
    pub fn scaled_in_x(&self, x: f64) -> f64 {
        match self {
            PotentialSpec::Zero => 0.0,
            PotentialSpec::Tanh { v0_scaled, .. } => v0_scaled * x.tanh(),
            PotentialSpec::SinhSquared {
                constant_scaled, ..
            } => {
                let s = x.sinh();
                -0.75 * s * s + constant_scaled
            }
            PotentialSpec::CustomZ(table) => table.eval(x_to_z(x)),
        }
    }
}

/// `z = arcsin(tanh x)`, evaluated as the Gudermannian `atan(sinh x)`.
pub fn x_to_z(x: f64) -> f64 {
    x.sinh().atan()
}

/// `x = artanh(sin z)`, evaluated as `asinh(tan z)`.
pub fn z_to_x(z: f64) -> Result<f64> {
    check_z(z)?;
    Ok(z.tan().asinh())
}

fn check_z(z: f64) -> Result<f64> {
    if z.is_nan() || z.abs() >= FRAC_PI_2 {
        return Err(PdmError::Domain(format!("|z| must be below π/2, got {z}")));
    }
    Ok(z.clamp(-FRAC_PI_2 + BOUNDARY_GUARD, FRAC_PI_2 - BOUNDARY_GUARD))
}

/// `𝒱(z) = 1/2 + (3/4) tan² z + Ṽ(z)`.
///
/// `z` is clamped to `|z| <= π/2 - 1e-12`. For the `sinh²` potential the
/// `tan²` terms cancel analytically and the result is the constant
/// `1/2 + Ṽ_const`.
pub fn effective_potential(p: &PotentialSpec, z: f64) -> Result<f64> {
    let z = check_z(z)?;
    if let PotentialSpec::SinhSquared {
        constant_scaled, ..
    } = p
    {
        return Ok(0.5 + constant_scaled);
    }
    let t = z.tan();
    Ok(0.5 + 0.75 * t * t + p.scaled_in_z(z))
}

/// `ψ(x) = cosh^{-1/2}(x) φ(z(x))`.
pub fn map_wavefunction_z_to_x<F>(phi: F) -> impl Fn(f64) -> f64
where
    F: Fn(f64) -> f64,
{
    move |x: f64| phi(x_to_z(x)) / x.cosh().sqrt()
}

/// `φ(z) = sec^{1/2}(z) ψ(x(z))`, the inverse of [`map_wavefunction_z_to_x`].
pub fn map_wavefunction_x_to_z<F>(psi: F) -> impl Fn(f64) -> f64
where
    F: Fn(f64) -> f64,
{
    move |z: f64| match z_to_x(z) {
        Ok(x) => psi(x) / z.cos().sqrt(),
        Err(_) => 0.0,
    }
}
