//! Position-space wavefunctions and densities on rectangular grids.
//!
//! Mode 1 (x) eigenfunctions use frequency `qω`, mode 2 (y) use `pω`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::classical::LissajousEnsemble;
use crate::error::{Error, Result};
use crate::oscillator::OscillatorConfig;
use crate::su2::StateVector;

/// Uniform lattice; samples sit at cell centers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub y_min: f64,
    pub y_max: f64,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, nx: usize, y_min: f64, y_max: f64, ny: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::domain(format!("grid needs x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if !(y_min.is_finite() && y_max.is_finite() && y_min < y_max) {
            return Err(Error::domain(format!("grid needs y_min < y_max, got [{y_min}, {y_max}]")));
        }
        if nx == 0 || ny == 0 {
            return Err(Error::domain("grid needs nx >= 1 and ny >= 1"));
        }
        Ok(Self { x_min, x_max, nx, y_min, y_max, ny })
    }

    /// Square grid `[−h, h]²` with `n × n` cells.
    pub fn square(half_width: f64, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n, -half_width, half_width, n)
    }

    /// Half-width `1.25·max(η1, η2) + 4/√(min(p, q)·ω)` over the ensemble,
    /// 512 × 512 cells.
    pub fn auto(ensemble: &LissajousEnsemble, cfg: &OscillatorConfig) -> Self {
        let (e1, e2) = ensemble.extent();
        let slow = cfg.p().min(cfg.q()) as f64 * cfg.omega();
        let h = 1.25 * e1.max(e2) + 4.0 / slow.sqrt();
        Self::square(h, 512).expect("auto grid half-width is positive")
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / self.ny as f64
    }

    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }

    pub fn xs(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.nx).map(|i| self.x_min + (i as f64 + 0.5) * dx).collect()
    }

    pub fn ys(&self) -> Vec<f64> {
        let dy = self.dy();
        (0..self.ny).map(|i| self.y_min + (i as f64 + 0.5) * dy).collect()
    }

    pub fn contains_box(&self, half_x: f64, half_y: f64) -> bool {
        self.x_min <= -half_x && self.x_max >= half_x && self.y_min <= -half_y && self.y_max >= half_y
    }
}

/// Density samples, row-major with y slowest: `values[iy * nx + ix]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityField {
    pub grid: GridSpec,
    pub values: Vec<f64>,
}

impl DensityField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self { grid, values: vec![0.0; grid.nx * grid.ny] }
    }

    pub fn at(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.grid.nx + ix]
    }
}

// Rescale threshold for the recurrence; the running scale lives in a log.
const RESCALE: f64 = 1e150;

fn scaled(v: f64, log_scale: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else if log_scale > -700.0 {
        v * log_scale.exp()
    } else {
        v.signum() * (v.abs().ln() + log_scale).exp()
    }
}

/// Normalized Hermite functions `ψ_0..=ψ_{n_max}` of the scaled coordinate
/// `ξ`, with `ψ_0 = π^{−1/4} e^{−ξ²/2}`, by the three-term recurrence
/// `ψ_{n+1} = ξ√(2/(n+1)) ψ_n − √(n/(n+1)) ψ_{n−1}`.
///
/// The Gaussian factor is carried as a separate log-scale so that neither
/// the polynomial growth nor the Gaussian decay can overflow or underflow
/// before the final product.
pub fn hermite_functions(n_max: usize, xi: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut log_scale = -0.5 * xi * xi;
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    out.push(scaled(cur, log_scale));
    for n in 0..n_max {
        let nf = n as f64;
        let next = xi * (2.0 / (nf + 1.0)).sqrt() * cur - (nf / (nf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            prev /= RESCALE;
            cur /= RESCALE;
            log_scale += RESCALE.ln();
        }
        out.push(scaled(cur, log_scale));
    }
    out
}

/// `φ_n(x) = (ω/π)^{1/4} (2ⁿ n!)^{−1/2} H_n(√ω x) e^{−ωx²/2}`.
pub fn ho_eigenfunction(n: usize, omega_eff: f64, x: f64) -> f64 {
    let xi = omega_eff.sqrt() * x;
    hermite_functions(n, xi)[n] * omega_eff.powf(0.25)
}

/// `table[n][i] = φ_n(xs[i])` for `n ≤ n_max`.
pub fn eigenfunction_table(n_max: usize, omega_eff: f64, xs: &[f64]) -> Vec<Vec<f64>> {
    let scale = omega_eff.powf(0.25);
    let sq = omega_eff.sqrt();
    let cols: Vec<Vec<f64>> = xs
        .par_iter()
        .map(|&x| hermite_functions(n_max, sq * x))
        .collect();
    (0..=n_max)
        .map(|n| cols.iter().map(|c| c[n] * scale).collect())
        .collect()
}

/// `|Σ c_{n1',n2'} φ_{n1'}^{(qω)}(x) φ_{n2'}^{(pω)}(y)|²` at every cell center.
///
/// The 1-D tables are built once per axis; each point then sums the state's
/// terms in basis order, so the result does not depend on how rows are
/// scheduled.
pub fn evaluate_density(state: &StateVector, cfg: &OscillatorConfig, grid: &GridSpec) -> DensityField {
    let terms: Vec<((u64, u64), Complex64)> = state.terms().filter(|(_, a)| a.norm() != 0.0).collect();
    if terms.is_empty() {
        return DensityField::zeros(*grid);
    }
    let n1_max = terms.iter().map(|((a, _), _)| *a).max().unwrap_or(0) as usize;
    let n2_max = terms.iter().map(|((_, b), _)| *b).max().unwrap_or(0) as usize;
    let xs = grid.xs();
    let ys = grid.ys();
    let tx = eigenfunction_table(n1_max, cfg.omega_x(), &xs);
    let ty = eigenfunction_table(n2_max, cfg.omega_y(), &ys);

    let mut values = vec![0.0; grid.nx * grid.ny];
    values
        .par_chunks_mut(grid.nx)
        .enumerate()
        .for_each(|(iy, row)| {
            // Fold the y factor into the coefficients once per row.
            let coeffs: Vec<(usize, Complex64)> = terms
                .iter()
                .map(|&((a, b), c)| (a as usize, c * ty[b as usize][iy]))
                .collect();
            for (ix, v) in row.iter_mut().enumerate() {
                let mut psi = Complex64::new(0.0, 0.0);
                for &(a, c) in &coeffs {
                    psi += c * tx[a][ix];
                }
                *v = psi.norm_sqr();
            }
        });
    DensityField { grid: *grid, values }
}

/// Midpoint Riemann sum `Σ values · cell area`.
pub fn integrate(field: &DensityField) -> f64 {
    field.values.iter().sum::<f64>() * field.grid.cell_area()
}
