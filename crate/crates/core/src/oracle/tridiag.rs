/// Symmetric tridiagonal matrix stored as its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

const PIVOT_GUARD: f64 = 1e-300;

impl SymTridiagonal {
    /// # Panics
    /// If `off.len() + 1 != diag.len()`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length mismatch");
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `lambda`, from the signs of the
    /// LDLᵀ pivots of `T - λI`.
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - lambda;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let safe = if q.abs() < PIVOT_GUARD {
                PIVOT_GUARD.copysign(q)
            } else {
                q
            };
            q = (self.diag[i] - lambda) - self.off[i - 1] * self.off[i - 1] / safe;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based) by Sturm bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (glo, ghi) = self.gershgorin();
        let mut lo = glo;
        // tighten the upper end: the spectrum of interest is usually far below
        // the Gershgorin bound when the potential diverges at the walls
        let mut hi = glo.abs().max(1.0) + glo;
        while self.sturm_count(hi) <= k && hi < ghi {
            hi = (hi + (hi - glo).max(1.0)).min(ghi);
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 2.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE) || mid == lo || mid == hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector for a (converged) eigenvalue by inverse iteration,
    /// normalised to unit Euclidean length.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.diag.len();
        let shift = lambda + 8.0 * f64::EPSILON * lambda.abs().max(1.0);
        let mut x = vec![1.0; n];
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        for _ in 0..4 {
            // Thomas algorithm on (T - shift I) y = x
            let mut pivot = self.diag[0] - shift;
            if pivot.abs() < PIVOT_GUARD {
                pivot = PIVOT_GUARD;
            }
            if n > 1 {
                c[0] = self.off[0] / pivot;
            }
            d[0] = x[0] / pivot;
            for i in 1..n {
                let mut p = (self.diag[i] - shift) - self.off[i - 1] * c[i - 1];
                if p.abs() < PIVOT_GUARD {
                    p = PIVOT_GUARD;
                }
                if i + 1 < n {
                    c[i] = self.off[i] / p;
                }
                d[i] = (x[i] - self.off[i - 1] * d[i - 1]) / p;
            }
            x[n - 1] = d[n - 1];
            for i in (0..n - 1).rev() {
                x[i] = d[i] - c[i] * x[i + 1];
            }
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= norm);
        }
        x
    }
}
