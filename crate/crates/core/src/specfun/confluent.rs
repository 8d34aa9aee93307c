use super::series::{CompensatedSum, SeriesControl, StagnationTracker};
use crate::error::{PdmError, Result};

const BRANCH_TOL: f64 = 1e-12;

/// Parameters of the confluent Heun equation
///
/// ```text
/// Hc'' + (α + (β+1)/y + (γ+1)/(y-1)) Hc'
///      + [(δ + α(β+γ+2)/2) y + η + β/2 + (γ-α)(β+1)/2] / (y(y-1)) Hc = 0
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfluentHeunParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub eta: f64,
}

impl ConfluentHeunParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64, eta: f64) -> Result<Self> {
        if [alpha, beta, gamma, delta, eta].iter().any(|v| !v.is_finite()) {
            return Err(PdmError::Domain(
                "non-finite confluent Heun parameter".into(),
            ));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
            eta,
        })
    }

    /// The specialisation reached by the `tanh` external potential:
    /// `α = 0, β = γ = -1, δ = 2𝒱₀, η = 1/2 - 𝒱₀ - ℰ`, which turns the
    /// equation into `y(y-1) h'' + (2𝒱₀ y - 𝒱₀ - ℰ) h = 0`.
    pub fn tanh_case(v0_scaled: f64, eps: f64) -> Result<Self> {
        Self::new(0.0, -1.0, -1.0, 2.0 * v0_scaled, 0.5 - v0_scaled - eps)
    }

    /// Indicial exponents at `y = 0`.
    pub fn indicial_exponents(&self) -> [f64; 2] {
        [0.0, -self.beta]
    }

    /// Coefficient of `y` in the numerator of the potential term.
    fn linear_coeff(&self) -> f64 {
        self.delta + 0.5 * self.alpha * (self.beta + self.gamma + 2.0)
    }

    /// Constant part of the numerator of the potential term.
    fn constant_coeff(&self) -> f64 {
        self.eta + 0.5 * self.beta + 0.5 * (self.gamma - self.alpha) * (self.beta + 1.0)
    }
}

/// Frobenius coefficients `c_n` of `y^r Σ c_n y^n`, with `c_0 = 1`.
///
/// Substituting the ansatz into the equation gives the three-term recurrence
///
/// ```text
/// (m+r)(m+r+β) c_m = [(m+r-1)(m+r-2-α+β+γ+2) + B] c_{m-1} + [α(m+r-2) + A] c_{m-2}
/// ```
///
/// where `A`, `B` are the linear and constant parts of the potential
/// numerator. For the `tanh` case with `r = 1` this is
/// `(n+2)(n+1) c_{n+1} = [(n+1)n - 𝒱₀ - ℰ] c_n + 2𝒱₀ c_{n-1}`.
#[derive(Debug, Clone)]
pub struct FrobeniusCoefficients {
    params: ConfluentHeunParams,
    exponent: f64,
    m: usize,
    prev: f64,
    cur: f64,
}

impl FrobeniusCoefficients {
    pub fn new(params: ConfluentHeunParams, exponent: f64) -> Result<Self> {
        let [r0, r1] = params.indicial_exponents();
        if (exponent - r0).abs() > BRANCH_TOL && (exponent - r1).abs() > BRANCH_TOL {
            return Err(PdmError::InvalidBranch {
                exponent,
                reason: format!("indicial exponents are {r0} and {r1}"),
            });
        }
        let it = Self {
            params,
            exponent,
            m: 0,
            prev: 0.0,
            cur: 1.0,
        };
        // (m+r)(m+r+β) vanishes at m = -(r+β); a nonzero right-hand side there
        // means the solution on this branch carries a logarithm.
        let resonance = -(exponent + params.beta);
        if resonance > 0.5 && (resonance - resonance.round()).abs() < BRANCH_TOL {
            let target = resonance.round() as usize;
            let mut probe = it.clone();
            for _ in 1..target {
                probe.next();
            }
            let rhs = probe.rhs();
            if rhs.abs() > 1e-12 * (probe.cur.abs() + probe.prev.abs()).max(1.0) {
                return Err(PdmError::InvalidBranch {
                    exponent,
                    reason: format!(
                        "recurrence is resonant at n = {target}; the solution needs a logarithmic term"
                    ),
                });
            }
        }
        Ok(it)
    }

    /// Right-hand side of the recurrence for the next index.
    fn rhs(&self) -> f64 {
        let p = &self.params;
        let s = (self.m + 1) as f64 + self.exponent;
        let c1 = (s - 1.0) * (s - 2.0 - p.alpha + p.beta + p.gamma + 2.0) + p.constant_coeff();
        let c2 = p.alpha * (s - 2.0) + p.linear_coeff();
        c1 * self.cur + c2 * self.prev
    }
}

impl Iterator for FrobeniusCoefficients {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        let s = (self.m + 1) as f64 + self.exponent;
        let lead = s * (s + self.params.beta);
        let next = if lead.abs() < BRANCH_TOL {
            0.0
        } else {
            self.rhs() / lead
        };
        self.prev = self.cur;
        self.cur = next;
        self.m += 1;
        Some(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    Converged,
    HitMaxTerms,
}

/// Frobenius coefficients `{c_n}` of one local solution about `y = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    pub coefficients: Vec<f64>,
    pub indicial_exponent: f64,
    pub truncation: Truncation,
}

impl CoefficientSeries {
    /// `y^r Σ c_n y^n` over the stored coefficients.
    pub fn evaluate(&self, y: f64) -> f64 {
        let poly = self
            .coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * y + c);
        y.powf(self.indicial_exponent) * poly
    }

    /// Partial sums `S_N = Σ_{n<N} c_n` at `y = 1`, compensated.
    pub fn partial_sums(&self) -> Vec<f64> {
        let mut sum = CompensatedSum::new();
        self.coefficients
            .iter()
            .map(|&c| {
                sum.add(c);
                sum.value()
            })
            .collect()
    }

    pub fn sum_at_one(&self) -> f64 {
        self.partial_sums().last().copied().unwrap_or(0.0)
    }
}

/// Collects the Frobenius coefficients on the branch `y^branch_exponent`.
///
/// Collection stops once `stagnation_window` consecutive coefficients fall
/// below `abs_tol` times the largest coefficient seen; otherwise it stops at
/// `max_terms` and marks the result [`Truncation::HitMaxTerms`].
pub fn confluent_heun_series(
    p: &ConfluentHeunParams,
    branch_exponent: f64,
    ctl: &SeriesControl,
) -> Result<CoefficientSeries> {
    let iter = FrobeniusCoefficients::new(*p, branch_exponent)?;
    let mut coefficients = Vec::new();
    let mut tracker = StagnationTracker::new(ctl);
    let mut peak = 0.0_f64;
    let mut truncation = Truncation::HitMaxTerms;
    for c in iter.take(ctl.max_terms()) {
        coefficients.push(c);
        peak = peak.max(c.abs());
        if tracker.push(c, peak) {
            truncation = Truncation::Converged;
            break;
        }
    }
    Ok(CoefficientSeries {
        coefficients,
        indicial_exponent: branch_exponent,
        truncation,
    })
}

/// Evaluates `(h, h', h'')` of the branch `y^r Σ c_n y^n` at `y`, summing
/// until the [`SeriesControl`] stagnation criterion holds for all three.
pub fn confluent_heun_eval(
    p: &ConfluentHeunParams,
    branch_exponent: f64,
    y: f64,
    ctl: &SeriesControl,
) -> Result<(f64, f64, f64)> {
    if !(y.abs() < 1.0) {
        return Err(PdmError::Domain(format!(
            "confluent Heun series about y = 0 converges for |y| < 1, got {y}"
        )));
    }
    let iter = FrobeniusCoefficients::new(*p, branch_exponent)?;
    let mut sums = [CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new()];
    let mut trackers = [
        StagnationTracker::new(ctl),
        StagnationTracker::new(ctl),
        StagnationTracker::new(ctl),
    ];
    let mut last = 0.0;
    let mut converged = false;
    for (n, c) in iter.take(ctl.max_terms()).enumerate() {
        let nf = n as f64;
        let terms = [
            c * y.powi(n as i32),
            if n >= 1 { nf * c * y.powi(n as i32 - 1) } else { 0.0 },
            if n >= 2 {
                nf * (nf - 1.0) * c * y.powi(n as i32 - 2)
            } else {
                0.0
            },
        ];
        let mut done = n >= 2;
        for i in 0..3 {
            sums[i].add(terms[i]);
            done &= trackers[i].push(terms[i], sums[i].value());
        }
        last = terms[0].abs();
        if done {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(PdmError::NonConvergence {
            terms: ctl.max_terms(),
            last_term: last,
        });
    }
    let [s0, s1, s2] = sums.map(|s| s.value());
    let r = branch_exponent;
    let lead = |k: f64| if y == 0.0 && k == 0.0 { 1.0 } else { y.powf(k) };
    let h = lead(r) * s0;
    let dh = if r == 0.0 { 0.0 } else { r * lead(r - 1.0) * s0 } + lead(r) * s1;
    let mut d2h = lead(r) * s2;
    if r != 0.0 {
        d2h += 2.0 * r * lead(r - 1.0) * s1;
        if r != 1.0 {
            d2h += r * (r - 1.0) * lead(r - 2.0) * s0;
        }
    }
    Ok((h, dh, d2h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation_and_branch_check() {
        let p = ConfluentHeunParams::tanh_case(1.0, 3.3).unwrap();
        let s = confluent_heun_series(&p, 1.0, &SeriesControl::default()).unwrap();
        assert_eq!(s.coefficients[0], 1.0);
        assert!(matches!(
            confluent_heun_series(&p, 0.5, &SeriesControl::default()),
            Err(PdmError::InvalidBranch { .. })
        ));
    }

    #[test]
    fn exponent_zero_branch_is_logarithmic_in_the_tanh_case() {
        // β = -1 makes the exponents differ by one; only y^1 is a pure power series
        let p = ConfluentHeunParams::tanh_case(1.0, 2.0).unwrap();
        assert!(matches!(
            FrobeniusCoefficients::new(p, 0.0),
            Err(PdmError::InvalidBranch { .. })
        ));
    }

    #[test]
    fn zero_potential_series_is_trivial() {
        let p = ConfluentHeunParams::tanh_case(0.0, 0.0).unwrap();
        let s = confluent_heun_series(&p, 1.0, &SeriesControl::default()).unwrap();
        assert_eq!(s.truncation, Truncation::Converged);
        assert_eq!(s.coefficients[0], 1.0);
        assert!(s.coefficients[1..].iter().all(|&c| c == 0.0));
    }

    #[test]
    fn matches_hand_derived_tanh_recurrence() {
        let (v0, eps) = (1.7, 4.2);
        let p = ConfluentHeunParams::tanh_case(v0, eps).unwrap();
        let got: Vec<f64> = FrobeniusCoefficients::new(p, 1.0).unwrap().take(30).collect();
        let mut want = vec![1.0, 0.0];
        want[1] = (0.0 - v0 - eps) / 2.0;
        for n in 1..29 {
            let nf = n as f64;
            let c = (((nf + 1.0) * nf - v0 - eps) * want[n] + 2.0 * v0 * want[n - 1])
                / ((nf + 2.0) * (nf + 1.0));
            want.push(c);
        }
        for (n, (g, w)) in got.iter().zip(&want).enumerate() {
            assert!((g - w).abs() <= 1e-13 * w.abs(), "n={n}: {g} vs {w}");
        }
    }

    #[test]
    fn general_series_satisfies_the_confluent_equation() {
        let ctl = SeriesControl::default();
        let cases = [
            (ConfluentHeunParams::new(0.7, 0.4, -0.3, 1.2, -0.8).unwrap(), 0.0),
            (ConfluentHeunParams::new(0.7, 0.4, -0.3, 1.2, -0.8).unwrap(), -0.4),
            (ConfluentHeunParams::new(-1.1, -1.0, -1.0, 0.6, 2.3).unwrap(), 1.0),
            (ConfluentHeunParams::tanh_case(1.0, 6.0).unwrap(), 1.0),
        ];
        for (p, r) in cases {
            for y in [0.05, 0.3, 0.5, 0.7] {
                let (h, dh, d2h) = confluent_heun_eval(&p, r, y, &ctl).unwrap();
                let a = p.linear_coeff();
                let b = p.constant_coeff();
                let res = y * (y - 1.0) * d2h
                    + (p.alpha * y * (y - 1.0) + (p.beta + 1.0) * (y - 1.0) + (p.gamma + 1.0) * y)
                        * dh
                    + (a * y + b) * h;
                let scale = 1.0 + h.abs() + dh.abs() + d2h.abs();
                assert!(res.abs() / scale < 1e-10, "{p:?} r={r} y={y}: {res}");
            }
        }
    }

    #[test]
    fn coefficient_series_and_direct_evaluation_agree() {
        let p = ConfluentHeunParams::tanh_case(1.0, 3.0).unwrap();
        let ctl = SeriesControl::default();
        let s = confluent_heun_series(&p, 1.0, &ctl).unwrap();
        let (h, _, _) = confluent_heun_eval(&p, 1.0, 0.4, &ctl).unwrap();
        assert!((s.evaluate(0.4) - h).abs() < 1e-13);
    }
}
