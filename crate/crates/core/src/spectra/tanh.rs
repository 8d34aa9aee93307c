//! `V(x) = V0 tanh x`.
//!
//! With `y = (1 + tanh x)/2` the scaled equation becomes
//! `y(y-1) h'' + (2𝒱₀y - 𝒱₀ - ℰ) h = 0`. The physical solution is the
//! exponent-1 Frobenius series `F(y; 𝒱₀)` about `y = 0`. Under `y ↦ 1 - y` the
//! equation maps to itself with `𝒱₀ ↦ -𝒱₀`, so `u(y) = F(1 - y; -𝒱₀)` is the
//! solution that vanishes at `y = 1`, with `W(u, ·)` normalised so that
//! `F(1) = W(u, F)`. The Wronskian is constant, and evaluating it at `y = 1/2`
//! needs only geometrically convergent sums.

use super::state::{count_nodes, integrate_line, Eigenstate, Kind, Parity};
use crate::error::{PdmError, Result};
use crate::masstransform::ScaledEnergy;
use crate::specfun::{
    confluent_heun_eval, CompensatedSum, ConfluentHeunParams, FrobeniusCoefficients, SeriesControl,
};

pub const MAX_TANH_COUNT: usize = 12;
pub const MAX_TANH_V0: f64 = 50.0;

const BRANCH: f64 = 1.0;
const JUNCTION: f64 = 0.5;
/// Relative Wronskian mismatch below which `ℰ` is treated as an eigenvalue.
const EIGEN_TOL: f64 = 1e-6;
const ROOT_WIDTH: f64 = 1e-12;
const ROOT_GAP: f64 = 1e-3;
const SKELETON_START: f64 = 0.05;
const SWEEP_STEP: f64 = 0.05;
const NODE_RANGE: (f64, f64) = (-20.0, 20.0);
const NODE_POINTS: usize = 10_000;

/// `(y, 1 - y)` for `y = (1 + tanh x)/2`, each without cancellation.
fn split_y(x: f64) -> (f64, f64) {
    (1.0 / (1.0 + (-2.0 * x).exp()), 1.0 / (1.0 + (2.0 * x).exp()))
}

fn junction_values(v0: f64, eps: f64, ctl: &SeriesControl) -> Result<[f64; 4]> {
    let pf = ConfluentHeunParams::tanh_case(v0, eps)?;
    let pg = ConfluentHeunParams::tanh_case(-v0, eps)?;
    let (f, df, _) = confluent_heun_eval(&pf, BRANCH, JUNCTION, ctl)?;
    let (g, dg, _) = confluent_heun_eval(&pg, BRANCH, JUNCTION, ctl)?;
    Ok([f, df, g, dg])
}

/// `f(ℰ)`: the value at `y = 1` (`x → +∞`) of the solution that vanishes at
/// `y = 0`. Its zeros are the eigenvalues.
pub fn tanh_boundary_function(v0: f64, eps: ScaledEnergy, ctl: &SeriesControl) -> Result<f64> {
    let [f, df, g, dg] = junction_values(v0, eps.value(), ctl)?;
    Ok(f * dg + df * g)
}

/// Partial sums `S_N = Σ_{n<N} c_n` at `y = 1` for `N = n0·2^j`, and their
/// Richardson extrapolation in `1/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCrossCheck {
    pub partial_sums: Vec<(usize, f64)>,
    pub extrapolated: f64,
}

/// Direct summation of the series at `y = 1`, as an independent check of
/// [`tanh_boundary_function`]. The terms decay like `1/n²`.
pub fn tanh_boundary_partial_sums(
    v0: f64,
    eps: ScaledEnergy,
    n0: usize,
    levels: usize,
) -> Result<BoundaryCrossCheck> {
    if n0 == 0 || levels == 0 {
        return Err(PdmError::Precondition("n0 and levels must be positive".into()));
    }
    let p = ConfluentHeunParams::tanh_case(v0, eps.value())?;
    let mut sum = CompensatedSum::new();
    let mut partial_sums = Vec::with_capacity(levels);
    let mut next = n0;
    for (n, c) in FrobeniusCoefficients::new(p, BRANCH)?.enumerate() {
        sum.add(c);
        if n + 1 == next {
            partial_sums.push((next, sum.value()));
            if partial_sums.len() == levels {
                break;
            }
            next *= 2;
        }
    }
    let mut row: Vec<f64> = partial_sums.iter().map(|&(_, s)| s).collect();
    let mut factor = 2.0;
    while row.len() > 1 {
        row = row
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
        factor *= 2.0;
    }
    Ok(BoundaryCrossCheck {
        partial_sums,
        extrapolated: row[0],
    })
}

/// Solution data for one energy. At an eigenvalue the state is evaluated
/// from `F` for `y ≤ 1/2` and from the matched reflected series above.
#[derive(Debug, Clone)]
pub struct TanhState {
    v0: f64,
    eps: f64,
    ctl: SeriesControl,
    forward: ConfluentHeunParams,
    reflected: ConfluentHeunParams,
    amplitude: f64,
    mismatch: f64,
}

impl TanhState {
    pub fn new(v0: f64, eps: ScaledEnergy) -> Result<Self> {
        Self::with_control(v0, eps, SeriesControl::default())
    }

    pub fn with_control(v0: f64, eps: ScaledEnergy, ctl: SeriesControl) -> Result<Self> {
        let e = eps.value();
        let [f, df, g, dg] = junction_values(v0, e, &ctl)?;
        // u = G(1 - y): u(1/2) = g, u'(1/2) = -dg
        let amplitude = (f * g - df * dg) / (g * g + dg * dg);
        let scale = f.hypot(df) * g.hypot(dg);
        let mismatch = if scale > 0.0 {
            (f * dg + df * g).abs() / scale
        } else {
            f64::INFINITY
        };
        Ok(Self {
            v0,
            eps: e,
            ctl,
            forward: ConfluentHeunParams::tanh_case(v0, e)?,
            reflected: ConfluentHeunParams::tanh_case(-v0, e)?,
            amplitude,
            mismatch,
        })
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn eps(&self) -> ScaledEnergy {
        ScaledEnergy(self.eps)
    }

    /// `|W| / (|(F, F')| |(G, G')|)` at `y = 1/2`: the sine of the angle
    /// between the two solutions there.
    pub fn mismatch(&self) -> f64 {
        self.mismatch
    }

    pub fn is_eigenvalue(&self) -> bool {
        self.mismatch < EIGEN_TOL
    }

    /// Unnormalised `(ψ, ψ', ψ'')` in `x`. Off an eigenvalue only the direct
    /// series is used, which fails once `y` rounds to 1.
    pub fn raw_derivs(&self, x: f64) -> Result<(f64, f64, f64)> {
        let (y, s) = split_y(x);
        let dy = 2.0 * y * s;
        let d2y = 2.0 * dy * (s - y);
        if y <= JUNCTION || !self.is_eigenvalue() {
            let (h, h1, h2) = confluent_heun_eval(&self.forward, BRANCH, y, &self.ctl)?;
            Ok((h, h1 * dy, h2 * dy * dy + h1 * d2y))
        } else {
            let (g, g1, g2) = confluent_heun_eval(&self.reflected, BRANCH, s, &self.ctl)?;
            let a = self.amplitude;
            Ok((a * g, -a * g1 * dy, a * (g2 * dy * dy - g1 * d2y)))
        }
    }

    pub fn raw(&self, x: f64) -> f64 {
        self.raw_derivs(x).map(|d| d.0).unwrap_or(f64::NAN)
    }

    fn nodes(&self) -> usize {
        count_nodes(|x| self.raw(x), NODE_RANGE, NODE_POINTS)
    }

    fn norm_constant(&self) -> Result<f64> {
        let norm2 = integrate_line(|x| self.raw(x).powi(2))?;
        Ok(1.0 / norm2.sqrt())
    }

    fn into_eigenstate(self, n: usize) -> Result<Eigenstate> {
        let norm_constant = self.norm_constant()?;
        Ok(Eigenstate {
            n,
            parity: if self.v0 == 0.0 {
                if n % 2 == 1 {
                    Parity::Even
                } else {
                    Parity::Odd
                }
            } else {
                Parity::None
            },
            eps: ScaledEnergy(self.eps),
            norm_constant,
            kind: Kind::Tanh(self),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefunctionSample {
    pub value: f64,
    /// Set when `eps` is not an eigenvalue; `value` is then the unnormalised
    /// direct series.
    pub off_eigenvalue: bool,
}

/// `ψ(x)` for the given energy, normalised when `eps` is an eigenvalue.
pub fn tanh_wavefunction(v0: f64, eps: ScaledEnergy, x: f64) -> Result<WavefunctionSample> {
    let state = TanhState::new(v0, eps)?;
    if !state.is_eigenvalue() {
        return Ok(WavefunctionSample {
            value: state.raw_derivs(x)?.0,
            off_eigenvalue: true,
        });
    }
    let c = state.norm_constant()?;
    Ok(WavefunctionSample {
        value: c * state.raw_derivs(x)?.0,
        off_eigenvalue: false,
    })
}

struct Bracket {
    lo: f64,
    hi: f64,
    f_lo: f64,
}

fn first_sign_change<F>(f: &F, a: f64, b: f64, step: f64) -> Result<Option<Bracket>>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut lo = a;
    let mut f_lo = f(lo)?;
    while lo < b {
        let hi = (lo + step).min(b);
        let f_hi = f(hi)?;
        if f_lo == 0.0 {
            return Ok(Some(Bracket { lo, hi: lo, f_lo }));
        }
        if f_lo.signum() != f_hi.signum() || f_hi == 0.0 {
            return Ok(Some(Bracket { lo, hi, f_lo }));
        }
        lo = hi;
        f_lo = f_hi;
    }
    Ok(None)
}

fn bisect<F>(f: &F, b: Bracket) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let Bracket {
        mut lo,
        mut hi,
        mut f_lo,
    } = b;
    for _ in 0..200 {
        if hi - lo <= ROOT_WIDTH * lo.abs().max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn has_nodes(v0: f64, eps: f64, ctl: &SeriesControl, expected: usize) -> Result<bool> {
    let state = TanhState::with_control(v0, ScaledEnergy(eps), *ctl)?;
    Ok(state.is_eigenvalue() && state.nodes() == expected)
}

/// First `count` eigenvalues of the `tanh` case, sorted increasing.
pub fn tanh_eigenvalues(v0: f64, count: usize) -> Result<Vec<ScaledEnergy>> {
    tanh_eigenvalues_with(v0, count, &SeriesControl::default())
}

/// Search near the `𝒱₀ = 0` values `k(k+1)`, widening the window from 0.05
/// up to `(2k+1)/2`. A root is accepted once its state has `k - 1` nodes;
/// otherwise the range `k(k+1) ± |𝒱₀|` (which contains the `k`-th eigenvalue,
/// since `|Ṽ| ≤ |𝒱₀|`) is swept in steps of 0.05.
pub fn tanh_eigenvalues_with(
    v0: f64,
    count: usize,
    ctl: &SeriesControl,
) -> Result<Vec<ScaledEnergy>> {
    if count == 0 || count > MAX_TANH_COUNT {
        return Err(PdmError::Precondition(format!(
            "count must be in 1..={MAX_TANH_COUNT}, got {count}"
        )));
    }
    if !(v0.abs() <= MAX_TANH_V0) {
        return Err(PdmError::Precondition(format!(
            "|V0| must not exceed {MAX_TANH_V0} (scaled), got {v0}"
        )));
    }
    let f = |e: f64| tanh_boundary_function(v0, ScaledEnergy(e), ctl);
    let mut roots: Vec<f64> = Vec::with_capacity(count);
    for k in 1..=count {
        let skeleton = (k * (k + 1)) as f64;
        let floor = roots.last().map_or(f64::NEG_INFINITY, |r| r + ROOT_GAP);
        let mut found = None;

        let max_delta = 0.5 * (2 * k + 1) as f64;
        let mut delta = SKELETON_START;
        loop {
            let lo = (skeleton - delta).max(floor);
            let hi = skeleton + delta;
            if hi > lo {
                if let Some(b) = first_sign_change(&f, lo, hi, delta / 8.0)? {
                    let root = bisect(&f, b)?;
                    if has_nodes(v0, root, ctl, k - 1)? {
                        found = Some(root);
                    }
                    break;
                }
            }
            if delta >= max_delta {
                break;
            }
            delta = (2.0 * delta).min(max_delta);
        }

        if found.is_none() {
            let lo = (skeleton - v0.abs() - SWEEP_STEP).max(floor);
            let hi = skeleton + v0.abs() + SWEEP_STEP;
            match first_sign_change(&f, lo, hi, SWEEP_STEP)? {
                Some(b) => {
                    let root = bisect(&f, b)?;
                    if !has_nodes(v0, root, ctl, k - 1)? {
                        return Err(PdmError::BracketFailure {
                            index: k,
                            reason: format!("root {root} does not have {} nodes", k - 1),
                        });
                    }
                    found = Some(root);
                }
                None => {
                    return Err(PdmError::BracketFailure {
                        index: k,
                        reason: format!("no sign change in [{lo}, {hi}]"),
                    })
                }
            }
        }
        roots.extend(found);
    }
    Ok(roots.into_iter().map(ScaledEnergy).collect())
}

/// The normalised state at a known eigenvalue; its index is fixed by the
/// node count.
pub fn tanh_eigenstate_at(v0: f64, eps: ScaledEnergy) -> Result<Eigenstate> {
    let state = TanhState::new(v0, eps)?;
    if !state.is_eigenvalue() {
        return Err(PdmError::Precondition(format!(
            "{} is not an eigenvalue for V0 = {v0} (relative Wronskian {:.3e})",
            eps.value(),
            state.mismatch()
        )));
    }
    let n = state.nodes() + 1;
    state.into_eigenstate(n)
}

/// Normalised eigenstates `k = 1..=count`.
pub fn tanh_eigenstates(v0: f64, count: usize) -> Result<Vec<Eigenstate>> {
    tanh_eigenvalues(v0, count)?
        .into_iter()
        .enumerate()
        .map(|(i, e)| TanhState::new(v0, e)?.into_eigenstate(i + 1))
        .collect()
}
