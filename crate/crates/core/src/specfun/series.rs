use crate::error::{PdmError, Result};

/// Absolute tolerance used when deciding whether a real number sits on a
/// pole of Γ, i.e. is a nonpositive integer.
pub const POLE_TOLERANCE: f64 = 1e-10;

/// Returns true when `x` is within `tol` of one of `0, -1, -2, …`.
pub fn is_nonpositive_integer(x: f64, tol: f64) -> bool {
    x <= tol && (x - x.round()).abs() <= tol
}

/// Truncation policy for the power series in this module.
///
/// A sum is accepted once `stagnation_window` consecutive terms are each
/// below `abs_tol` times the running sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    max_terms: usize,
    abs_tol: f64,
    stagnation_window: usize,
}

impl SeriesControl {
    pub fn new(max_terms: usize, abs_tol: f64, stagnation_window: usize) -> Result<Self> {
        if !(abs_tol > 0.0) {
            return Err(PdmError::Precondition(format!(
                "abs_tol must be positive, got {abs_tol}"
            )));
        }
        if stagnation_window == 0 || max_terms < stagnation_window {
            return Err(PdmError::Precondition(format!(
                "need 0 < stagnation_window <= max_terms, got {stagnation_window} and {max_terms}"
            )));
        }
        Ok(Self {
            max_terms,
            abs_tol,
            stagnation_window,
        })
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn stagnation_window(&self) -> usize {
        self.stagnation_window
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 200_000,
            abs_tol: 1e-15,
            stagnation_window: 5,
        }
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Tracks the stagnation criterion of [`SeriesControl`] while a series is
/// being summed.
pub(crate) struct StagnationTracker {
    window: usize,
    tol: f64,
    quiet: usize,
}

impl StagnationTracker {
    pub(crate) fn new(ctl: &SeriesControl) -> Self {
        Self {
            window: ctl.stagnation_window,
            tol: ctl.abs_tol,
            quiet: 0,
        }
    }

    /// Feeds the magnitude of the latest term; returns true once the window
    /// of small terms is complete.
    pub(crate) fn push(&mut self, term: f64, scale: f64) -> bool {
        if term.abs() <= self.tol * scale.abs().max(f64::MIN_POSITIVE) {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        self.quiet >= self.window
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn control_rejects_bad_values() {
        assert!(SeriesControl::new(10, 0.0, 5).is_err());
        assert!(SeriesControl::new(10, -1.0, 5).is_err());
        assert!(SeriesControl::new(3, 1e-12, 5).is_err());
        assert!(SeriesControl::new(10, 1e-12, 0).is_err());
        assert!(SeriesControl::new(5, 1e-12, 5).is_ok());
    }

    #[test]
    fn nonpositive_integer_test() {
        assert!(is_nonpositive_integer(0.0, POLE_TOLERANCE));
        assert!(is_nonpositive_integer(-3.0 + 1e-12, POLE_TOLERANCE));
        assert!(!is_nonpositive_integer(-3.0 + 1e-8, POLE_TOLERANCE));
        assert!(!is_nonpositive_integer(2.0, POLE_TOLERANCE));
        assert!(!is_nonpositive_integer(-0.5, POLE_TOLERANCE));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-13).abs() < 1e-25);
    }
}
