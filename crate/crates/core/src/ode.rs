//! Finite-difference eigen-solver for the reduced radial equation, used as an
//! oracle that knows nothing about the polynomial construction.
//!
//! With `u = S_κ G` the radial equation becomes `-u'' + W u = E u`, where
//! `W = l(l+1)/S_κ² - 2Z C_κ/S_κ - κ`. The operator is discretized by the
//! three-point Laplacian with Dirichlet ends.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::atom::AtomParams;
use crate::curvature::{c_kappa, s_kappa, Geometry};
use crate::tridiag::SymTridiag;
use crate::{Error, Result};

/// Uniform grid on `[r_lo, r_hi]`; `points` counts the interior nodes of the
/// coarsest of the three nested grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_lo: f64,
    pub r_hi: f64,
    pub points: usize,
    pub epsilon_boundary: f64,
    /// Largest accepted change between successive extrapolated eigenvalues.
    pub tolerance: f64,
}

impl GridSpec {
    pub fn new(r_lo: f64, r_hi: f64, points: usize) -> Result<Self> {
        let grid = GridSpec {
            r_lo,
            r_hi,
            points,
            epsilon_boundary: r_lo,
            tolerance: 1e-6,
        };
        grid.validate()?;
        Ok(grid)
    }

    fn validate(&self) -> Result<()> {
        if self.points < 200 {
            return Err(Error::Grid("at least 200 points are required"));
        }
        if !(self.r_lo > 0.0 && self.r_lo < self.r_hi && self.r_hi.is_finite()) {
            return Err(Error::Grid("need 0 < r_lo < r_hi < ∞"));
        }
        Ok(())
    }

    /// A grid wide enough for the levels `n ≤ n_max`: the sphere up to its
    /// antipode, otherwise until the slowest bound state has decayed by
    /// `e^{-2 rate R} < 1e-14`.
    pub fn auto(params: &AtomParams, n_max: u32, points: usize) -> Result<Self> {
        let eps = 1e-10;
        let curv = params.curvature();
        let r_hi = match curv.geometry() {
            Geometry::Sphere => curv.r_max() - eps,
            _ => {
                let n = f64::from(n_max.max(1));
                let rate = params.charge() / n - n * params.sqrt_abs_kappa() * f64::from(u8::from(params.kappa() < 0.0));
                if !(rate > 0.0) {
                    return Err(Error::NoBoundState { n: n_max });
                }
                16.2 / rate
            }
        };
        let mut grid = GridSpec::new(eps, r_hi, points)?;
        grid.epsilon_boundary = eps;
        Ok(grid)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    fn refined(&self, level: u32) -> (usize, f64) {
        let intervals = (self.points + 1) << level;
        (intervals - 1, (self.r_hi - self.r_lo) / intervals as f64)
    }
}

/// Effective potential `W(r)` of the reduced equation.
pub fn reduced_equation_coefficients(params: &AtomParams, l: u32, r: f64) -> Result<f64> {
    let curv = params.curvature();
    if !curv.in_domain(r) {
        return Err(Error::Domain { r });
    }
    let s = s_kappa(curv, r);
    let ll = f64::from(l) * (f64::from(l) + 1.0);
    Ok(ll / (s * s) - 2.0 * params.charge() * c_kappa(curv, r) / s - params.kappa())
}

/// Bottom of the continuous spectrum: `0` for flat space, `-κ - 2Z√-κ` in
/// hyperbolic space, none on the sphere.
pub fn continuum_edge(params: &AtomParams) -> Option<f64> {
    match params.curvature().geometry() {
        Geometry::Sphere => None,
        Geometry::Flat => Some(0.0),
        Geometry::Hyperbolic => Some(-params.kappa() - 2.0 * params.charge() * params.sqrt_abs_kappa()),
    }
}

fn assemble(params: &AtomParams, l: u32, grid: &GridSpec, level: u32) -> Result<(SymTridiag, f64)> {
    let (points, h) = grid.refined(level);
    let inv_h2 = 1.0 / (h * h);
    let diag = (1..=points)
        .map(|i| reduced_equation_coefficients(params, l, grid.r_lo + i as f64 * h).map(|w| 2.0 * inv_h2 + w))
        .collect::<Result<Vec<f64>>>()?;
    Ok((SymTridiag::new(diag, alloc::vec![-inv_h2; points - 1]), h))
}

/// One eigenpair of the reduced equation.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    /// Richardson-extrapolated eigenvalue.
    pub energy: f64,
    /// Raw eigenvalues on the three nested grids, coarse to fine.
    pub raw: [f64; 3],
    /// Interior nodes of the finest grid.
    pub r: Vec<f64>,
    /// `u` on those nodes, `∫u² dr = 1` by the trapezoid rule, positive near the origin.
    pub u: Vec<f64>,
}

impl EigenPair {
    /// `(E_h - E_{h/2})/(E_{h/2} - E_{h/4})`; about 4 for a second-order scheme.
    pub fn refinement_ratio(&self) -> f64 {
        (self.raw[0] - self.raw[1]) / (self.raw[1] - self.raw[2])
    }
}

/// Lowest `count` eigenpairs for orbital number `l`.
pub fn eigen_solve(params: &AtomParams, l: u32, grid: &GridSpec, count: usize) -> Result<Vec<EigenPair>> {
    grid.validate()?;
    if count == 0 {
        return Err(Error::Grid("count must be at least 1"));
    }
    let levels: Vec<(SymTridiag, f64)> = (0..3).map(|k| assemble(params, l, grid, k)).collect::<Result<_>>()?;
    let mut pairs = Vec::with_capacity(count);
    for k in 0..count {
        let mut raw = [0.0; 3];
        for (slot, (matrix, _)) in raw.iter_mut().zip(&levels) {
            *slot = matrix.eigenvalue(k).ok_or(Error::Grid("fewer grid points than requested levels"))?;
        }
        let coarse = (4.0 * raw[1] - raw[0]) / 3.0;
        let fine = (4.0 * raw[2] - raw[1]) / 3.0;
        let change = (fine - coarse).abs();
        if change > grid.tolerance {
            return Err(Error::Convergence { change });
        }
        let (matrix, h) = &levels[2];
        let mut u = matrix.eigenvector(raw[2]);
        let norm = (u.iter().map(|x| x * x).sum::<f64>() * h).sqrt();
        let peak = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let sign = u
            .iter()
            .find(|x| x.abs() > 1e-6 * peak)
            .map_or(1.0, |x| x.signum());
        u.iter_mut().for_each(|x| *x *= sign / norm);
        let r = (1..=u.len()).map(|i| grid.r_lo + i as f64 * h).collect();
        pairs.push(EigenPair { energy: fine, raw, r, u });
    }
    Ok(pairs)
}

/// Number of eigenvalues below `threshold` on the finest grid.
pub fn count_levels_below(params: &AtomParams, l: u32, grid: &GridSpec, threshold: f64) -> Result<usize> {
    grid.validate()?;
    Ok(assemble(params, l, grid, 2)?.0.count_below(threshold))
}

/// Levels strictly inside the discrete part of the spectrum.
pub fn count_discrete_levels(params: &AtomParams, l: u32, grid: &GridSpec) -> Result<usize> {
    match continuum_edge(params) {
        Some(edge) => count_levels_below(params, l, grid, edge),
        None => Err(Error::Grid("the sphere has no continuum")),
    }
}
