use std::f64::consts::FRAC_PI_2;

use super::tridiag::SymTridiagonal;
use crate::error::{PdmError, Result};
use crate::masstransform::{effective_potential, PotentialSpec, ScaledEnergy};

/// Uniform grid on `[z_min, z_max] ⊂ (-π/2, π/2)`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    z_min: f64,
    z_max: f64,
    n_points: usize,
}

impl Grid {
    pub const DEFAULT_INSET: f64 = 1e-6;
    pub const DEFAULT_POINTS: usize = 20_001;

    pub fn new(z_min: f64, z_max: f64, n_points: usize) -> Result<Self> {
        if !(-FRAC_PI_2 < z_min && z_min < z_max && z_max < FRAC_PI_2) {
            return Err(PdmError::Domain(format!(
                "grid [{z_min}, {z_max}] must lie strictly inside (-π/2, π/2)"
            )));
        }
        if n_points < 3 {
            return Err(PdmError::Domain(format!(
                "grid needs at least 3 points, got {n_points}"
            )));
        }
        Ok(Self {
            z_min,
            z_max,
            n_points,
        })
    }

    /// `[-π/2 + inset, π/2 - inset]`.
    pub fn symmetric(inset: f64, n_points: usize) -> Result<Self> {
        Self::new(-FRAC_PI_2 + inset, FRAC_PI_2 - inset, n_points)
    }

    pub fn z_min(&self) -> f64 {
        self.z_min
    }

    pub fn z_max(&self) -> f64 {
        self.z_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.z_max - self.z_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.z_max
        } else {
            self.z_min + self.spacing() * i as f64
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.point(i))
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self::symmetric(Self::DEFAULT_INSET, Self::DEFAULT_POINTS)
            .expect("default grid is valid")
    }
}

/// One finite-difference eigenpair; `phi_samples` has one entry per grid
/// point, zero at both ends, and `h Σ φ² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub eps: ScaledEnergy,
    pub phi_samples: Vec<f64>,
}

/// Lowest `count` eigenpairs of `-φ'' + 𝒱(z) φ = ℰ φ` on `grid`.
pub fn fd_eigensolve(p: &PotentialSpec, grid: &Grid, count: usize) -> Result<Vec<Eigenpair>> {
    if count == 0 || count >= grid.n_points() / 4 {
        return Err(PdmError::GridTooCoarse {
            requested: count,
            n_points: grid.n_points(),
        });
    }
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let interior = grid.n_points() - 2;
    let diag = (1..=interior)
        .map(|i| effective_potential(p, grid.point(i)).map(|v| 2.0 * inv_h2 + v))
        .collect::<Result<Vec<_>>>()?;
    let matrix = SymTridiagonal::new(diag, vec![-inv_h2; interior - 1]);

    (0..count)
        .map(|k| {
            let lambda = matrix.eigenvalue(k);
            let v = matrix.eigenvector(lambda);
            let mut phi = Vec::with_capacity(grid.n_points());
            phi.push(0.0);
            phi.extend_from_slice(&v);
            phi.push(0.0);
            let norm = (h * phi.iter().map(|x| x * x).sum::<f64>()).sqrt();
            let peak = phi.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
            // sign convention: positive where the state first becomes appreciable
            let lead = phi
                .iter()
                .find(|x| x.abs() > 1e-3 * peak)
                .copied()
                .unwrap_or(1.0);
            let scale = lead.signum() / norm;
            phi.iter_mut().for_each(|x| *x *= scale);
            Ok(Eigenpair {
                eps: ScaledEnergy(lambda),
                phi_samples: phi,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::masstransform::MassProfile;

    #[test]
    fn grid_validation() {
        assert!(Grid::new(-2.0, 0.0, 10).is_err());
        assert!(Grid::new(0.5, 0.1, 10).is_err());
        assert!(Grid::new(-1.0, 1.0, 2).is_err());
        let g = Grid::default();
        assert_eq!(g.n_points(), 20_001);
        assert!((g.z_min() + FRAC_PI_2 - 1e-6).abs() < 1e-15);
        assert_eq!(g.points().last(), Some(g.z_max()));
    }

    #[test]
    fn too_many_states_rejected() {
        let g = Grid::symmetric(1e-6, 41).unwrap();
        assert!(matches!(
            fd_eigensolve(&PotentialSpec::Zero, &g, 10),
            Err(PdmError::GridTooCoarse { .. })
        ));
        assert!(fd_eigensolve(&PotentialSpec::Zero, &g, 0).is_err());
    }

    #[test]
    fn box_spectrum() {
        let mp = MassProfile::default();
        let g = Grid::symmetric(1e-12, 20_001).unwrap();
        let pairs = fd_eigensolve(&PotentialSpec::sinh_squared_box(&mp), &g, 3).unwrap();
        for (k, pair) in pairs.iter().enumerate() {
            let want = ((k + 1) * (k + 1)) as f64;
            assert!((pair.eps.value() - want).abs() < 1e-6);
            assert_eq!(pair.phi_samples[0], 0.0);
            assert_eq!(*pair.phi_samples.last().unwrap(), 0.0);
            let norm: f64 = pair.phi_samples.iter().map(|x| x * x).sum::<f64>() * g.spacing();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn box_error_falls_fourfold_when_h_halves() {
        let mp = MassProfile::default();
        let p = PotentialSpec::sinh_squared_box(&mp);
        let coarse = Grid::symmetric(1e-12, 1001).unwrap();
        let fine = Grid::symmetric(1e-12, 2001).unwrap();
        let a = fd_eigensolve(&p, &coarse, 3).unwrap();
        let b = fd_eigensolve(&p, &fine, 3).unwrap();
        for k in 0..3 {
            let exact = ((k + 1) * (k + 1)) as f64;
            let ratio = (a[k].eps.value() - exact) / (b[k].eps.value() - exact);
            assert!((3.5..=4.5).contains(&ratio), "k={k}: ratio {ratio}");
        }
    }

    #[test]
    fn free_pdm_spectrum() {
        let pairs = fd_eigensolve(&PotentialSpec::Zero, &Grid::default(), 3).unwrap();
        for (k, pair) in pairs.iter().enumerate() {
            let n = (k + 1) as f64;
            assert!((pair.eps.value() - n * (n + 1.0)).abs() < 1e-5);
        }
    }
}
