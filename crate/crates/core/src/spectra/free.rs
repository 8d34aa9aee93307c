use super::state::{integrate_line, Eigenstate, Kind, Parity};
use crate::error::{PdmError, Result};
use crate::masstransform::ScaledEnergy;
use crate::specfun::{gauss_2f1, heun_local, F21Params, HeunParams, SeriesControl};

const EXISTENCE_TOL: f64 = 1e-9;

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(PdmError::Precondition(
            "quantum number n must be at least 1 (n = 0 would give zero energy)".into(),
        ));
    }
    Ok(())
}

/// Odd `n` gives an even state, even `n` an odd one.
fn parity_of(n: usize) -> Parity {
    if n % 2 == 1 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// `ℰ = n(n+1)`.
pub fn v0_eigenvalue(n: usize) -> Result<ScaledEnergy> {
    check_n(n)?;
    Ok(ScaledEnergy((n * (n + 1)) as f64))
}

fn hypergeometric_form(n: usize) -> F21Params {
    let nf = n as f64;
    let p = if n % 2 == 1 {
        F21Params::new(nf / 2.0, -(nf + 1.0) / 2.0, 0.5)
    } else {
        F21Params::new((nf + 1.0) / 2.0, -nf / 2.0, 1.5)
    };
    p.expect("c is 1/2 or 3/2")
}

/// Unnormalised state: `₂F₁(n/2, -(n+1)/2; 1/2; tanh²x)` for odd `n`,
/// `tanh x ₂F₁((n+1)/2, -n/2; 3/2; tanh²x)` for even `n`.
pub fn v0_wavefunction(n: usize, x: f64) -> Result<f64> {
    check_n(n)?;
    let u = x.tanh();
    let f = gauss_2f1(&hypergeometric_form(n), u * u)?;
    Ok(if n % 2 == 1 { f } else { u * f })
}

/// `φ(z) = sec^{1/2}(z) ψ(x(z))`, using `tanh x = sin z`.
pub fn v0_wavefunction_z(n: usize, z: f64) -> Result<f64> {
    check_n(n)?;
    if !(z.abs() < std::f64::consts::FRAC_PI_2) {
        return Ok(0.0);
    }
    let u = z.sin();
    let f = gauss_2f1(&hypergeometric_form(n), u * u)?;
    let psi = if n % 2 == 1 { f } else { u * f };
    Ok(psi / z.cos().sqrt())
}

/// Heun parameters of the `V = 0` equation in `t = 1 - sech x`, with
/// `d = 2`, `q = -k²` and `s = √(1 + 4k²)`.
pub fn v0_heun_params(k2: f64, parity: Parity) -> Result<HeunParams> {
    let s = (1.0 + 4.0 * k2).sqrt();
    match parity {
        Parity::Even => HeunParams::new(2.0, -k2, (-1.0 + s) / 2.0, (-1.0 - s) / 2.0, 0.5, -1.0, 0.5),
        Parity::Odd => HeunParams::new(2.0, -k2, (1.0 + s) / 2.0, (1.0 - s) / 2.0, 1.5, -1.0, 1.5),
        Parity::None => Err(PdmError::Precondition(
            "the V = 0 Heun form needs a definite parity".into(),
        )),
    }
}

/// The local Heun solution about `y = 1` for `k² = n(n+1)`, evaluated at
/// `t = 1 - y` with `y = sech x`.
///
/// This is the bare Heun factor: for even `n` the state is
/// `tanh x · v0_heun_form(n, y)`.
pub fn v0_heun_form(n: usize, y: f64) -> Result<f64> {
    check_n(n)?;
    if !(y > 0.0 && y <= 1.0) {
        return Err(PdmError::Domain(format!("y must lie in (0, 1], got {y}")));
    }
    let k2 = (n * (n + 1)) as f64;
    let p = v0_heun_params(k2, parity_of(n))?;
    heun_local(&p, 1.0 - y, &SeriesControl::default())
}

/// The integer `n` with `n(n+1) = k²` (to 1e-9) and the parity of its state.
pub fn v0_existence_check(k2: f64) -> Option<(usize, Parity)> {
    if !(k2 > 0.0) {
        return None;
    }
    let n = ((-1.0 + (1.0 + 4.0 * k2).sqrt()) / 2.0).round();
    if n < 1.0 || (n * (n + 1.0) - k2).abs() > EXISTENCE_TOL {
        return None;
    }
    let n = n as usize;
    Some((n, parity_of(n)))
}

/// `3/4 - s/4` for the even branch and `1/4 - s/4` for the odd one; a
/// nonpositive integer exactly when `k² = n(n+1)` with matching parity.
pub fn v0_pole_quantity(k2: f64, parity: Parity) -> Result<f64> {
    let s = (1.0 + 4.0 * k2).sqrt();
    match parity {
        Parity::Even => Ok(0.75 - s / 4.0),
        Parity::Odd => Ok(0.25 - s / 4.0),
        Parity::None => Err(PdmError::Precondition("branch needs a definite parity".into())),
    }
}

/// `₂F₁` parameters whose value at unit argument is the state at `x → ∞`.
pub fn v0_boundary_params(k2: f64, parity: Parity) -> Result<F21Params> {
    let s = (1.0 + 4.0 * k2).sqrt();
    match parity {
        Parity::Even => F21Params::new((-1.0 + s) / 4.0, (-1.0 - s) / 4.0, 0.5),
        Parity::Odd => F21Params::new((1.0 + s) / 4.0, (1.0 - s) / 4.0, 1.5),
        Parity::None => Err(PdmError::Precondition("branch needs a definite parity".into())),
    }
}

/// `ψ = sech²x · Q(tanh x)`, the Euler-transformed form of the terminating
/// series. It has no cancellation in the tails.
#[derive(Debug, Clone)]
pub(crate) struct FreeState {
    q: Vec<f64>,
    dq: Vec<f64>,
    d2q: Vec<f64>,
}

/// Coefficients of `T[P] = -2u P + (1 - u²) P'`, so that
/// `d/dx [sech²x P(tanh x)] = sech²x T[P](tanh x)`.
fn sech2_derivative(p: &[f64]) -> Vec<f64> {
    let at = |i: isize| {
        if i < 0 {
            0.0
        } else {
            p.get(i as usize).copied().unwrap_or(0.0)
        }
    };
    (0..=p.len())
        .map(|j| (j as f64 + 1.0) * (at(j as isize + 1) - at(j as isize - 1)))
        .collect()
}

fn horner(p: &[f64], u: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * u + c)
}

impl FreeState {
    fn new(n: usize) -> Self {
        let nf = n as f64;
        let (a, b, c, shift) = if n % 2 == 1 {
            ((1.0 - nf) / 2.0, (nf + 2.0) / 2.0, 0.5, 0)
        } else {
            (1.0 - nf / 2.0, (nf + 3.0) / 2.0, 1.5, 1)
        };
        let degree = (-a).round() as usize;
        let mut q = vec![0.0; 2 * degree + shift + 1];
        let mut term = 1.0;
        for j in 0..=degree {
            q[2 * j + shift] = term;
            let jf = j as f64;
            term *= (a + jf) * (b + jf) / ((c + jf) * (jf + 1.0));
        }
        let dq = sech2_derivative(&q);
        let d2q = sech2_derivative(&dq);
        Self { q, dq, d2q }
    }

    pub(crate) fn derivs(&self, x: f64) -> (f64, f64, f64) {
        let u = x.tanh();
        let s = 1.0 / x.cosh();
        let s2 = s * s;
        (
            s2 * horner(&self.q, u),
            s2 * horner(&self.dq, u),
            s2 * horner(&self.d2q, u),
        )
    }
}

/// The normalised `n`-th state of the `V = 0` problem.
pub fn v0_eigenstate(n: usize) -> Result<Eigenstate> {
    let eps = v0_eigenvalue(n)?;
    let raw = FreeState::new(n);
    let norm2 = integrate_line(|x| raw.derivs(x).0.powi(2))?;
    Ok(Eigenstate {
        n,
        parity: parity_of(n),
        eps,
        norm_constant: 1.0 / norm2.sqrt(),
        kind: Kind::Free(raw),
    })
}

/// States `n = 1..=count`.
pub fn v0_eigenstates(count: usize) -> Result<Vec<Eigenstate>> {
    (1..=count).map(v0_eigenstate).collect()
}
