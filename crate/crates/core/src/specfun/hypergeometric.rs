use super::gamma::gamma_fn;
use super::series::{
    is_nonpositive_integer, CompensatedSum, SeriesControl, StagnationTracker, POLE_TOLERANCE,
};
use crate::error::{PdmError, Result};

/// Parameters `(a, b; c)` of the Gauss hypergeometric function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F21Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl F21Params {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(PdmError::Domain(format!(
                "non-finite 2F1 parameters ({a}, {b}; {c})"
            )));
        }
        if is_nonpositive_integer(c, POLE_TOLERANCE) {
            return Err(PdmError::Domain(format!(
                "2F1 lower parameter c = {c} is a nonpositive integer"
            )));
        }
        Ok(Self { a, b, c })
    }

    /// Degree of the polynomial when the series terminates, i.e. when `a` or
    /// `b` is a nonpositive integer.
    pub fn terminating_degree(&self) -> Option<usize> {
        [self.a, self.b]
            .into_iter()
            .filter(|&v| is_nonpositive_integer(v, POLE_TOLERANCE))
            .map(|v| (-v.round()) as usize)
            .min()
    }

    fn shifted(&self) -> Self {
        Self {
            a: self.a + 1.0,
            b: self.b + 1.0,
            c: self.c + 1.0,
        }
    }
}

/// Evaluates the terminating series exactly up to `degree`, snapping the
/// integer parameter so that the last coefficient is the true last one.
fn polynomial(p: &F21Params, degree: usize, t: f64) -> f64 {
    let (a, b) = if is_nonpositive_integer(p.a, POLE_TOLERANCE)
        && (-p.a.round()) as usize == degree
    {
        (p.a.round(), p.b)
    } else {
        (p.a, p.b.round())
    };
    // Horner on the coefficient ratios: 1 + r0 t (1 + r1 t (1 + ...))
    let mut acc = 1.0;
    for k in (0..degree).rev() {
        let k = k as f64;
        let ratio = (a + k) * (b + k) / ((p.c + k) * (k + 1.0));
        acc = 1.0 + ratio * t * acc;
    }
    acc
}

/// ₂F₁(a, b; c; t) with the default [`SeriesControl`].
pub fn gauss_2f1(p: &F21Params, t: f64) -> Result<f64> {
    gauss_2f1_with(p, t, &SeriesControl::default())
}

/// ₂F₁(a, b; c; t) by direct summation.
///
/// Terminating series are evaluated as polynomials for any `t`; otherwise
/// `|t| < 1` is required.
pub fn gauss_2f1_with(p: &F21Params, t: f64, ctl: &SeriesControl) -> Result<f64> {
    if let Some(degree) = p.terminating_degree() {
        return Ok(polynomial(p, degree, t));
    }
    if !(t.abs() < 1.0) {
        return Err(PdmError::Domain(format!(
            "non-terminating 2F1 series requires |t| < 1, got t = {t}"
        )));
    }
    let mut sum = CompensatedSum::new();
    sum.add(1.0);
    let mut term = 1.0;
    let mut tracker = StagnationTracker::new(ctl);
    for k in 0..ctl.max_terms() {
        let kf = k as f64;
        term *= (p.a + kf) * (p.b + kf) / ((p.c + kf) * (kf + 1.0)) * t;
        sum.add(term);
        if tracker.push(term, sum.value()) {
            return Ok(sum.value());
        }
    }
    Err(PdmError::NonConvergence {
        terms: ctl.max_terms(),
        last_term: term.abs(),
    })
}

/// d/dt ₂F₁(a, b; c; t) = (ab/c) ₂F₁(a+1, b+1; c+1; t).
pub fn gauss_2f1_derivative(p: &F21Params, t: f64) -> Result<f64> {
    if p.a == 0.0 || p.b == 0.0 {
        return Ok(0.0);
    }
    let prefactor = p.a * p.b / p.c;
    Ok(prefactor * gauss_2f1(&p.shifted(), t)?)
}

/// ₂F₁(a, b; c; 1) by the Gauss summation theorem,
/// `Γ(c) Γ(c-a-b) / (Γ(c-a) Γ(c-b))`, valid for `c - a - b > 0`.
///
/// A pole of Γ(c−a) or Γ(c−b) is detected by an integer test and yields an
/// exact zero.
pub fn f21_value_at_one(p: &F21Params) -> Result<f64> {
    let excess = p.c - p.a - p.b;
    if !(excess > 0.0) {
        return Err(PdmError::Domain(format!(
            "2F1 at t = 1 needs c - a - b > 0, got {excess}"
        )));
    }
    if is_nonpositive_integer(p.c - p.a, POLE_TOLERANCE)
        || is_nonpositive_integer(p.c - p.b, POLE_TOLERANCE)
    {
        return Ok(0.0);
    }
    if let Some(degree) = p.terminating_degree() {
        return Ok(polynomial(p, degree, 1.0));
    }
    let num = gamma_fn(p.c)? * gamma_fn(excess)?;
    let den = gamma_fn(p.c - p.a)? * gamma_fn(p.c - p.b)?;
    Ok(num / den)
}
