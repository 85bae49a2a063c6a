//! Localization metrics: how much of a quantum position density lies within
//! a tube of radius ε around the classical orbit ensemble.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::classical::{orbits_from_coherent, LissajousEnsemble, LissajousOrbit};
use crate::error::{Error, Result};
use crate::oscillator::OscillatorConfig;
use crate::su2::{coherent_state, evolve_expectations, CoherentSpec};
use crate::wavefield::{evaluate_density, integrate, DensityField, GridSpec};

/// Orbit discretization used when none is given.
pub const DEFAULT_SAMPLES: usize = 4096;
/// Fewest polyline vertices accepted by [`tube_mass`].
pub const MIN_SAMPLES: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct TubeReport {
    pub epsilon: f64,
    /// Riemann mass of the whole grid.
    pub total_mass: f64,
    /// Mass within ε of each orbit, in ensemble order.
    pub per_orbit_mass: Vec<f64>,
    /// Mass within ε of any orbit.
    pub union_mass: f64,
    pub n_samples: usize,
    /// Set when the grid does not cover the ensemble's bounding box plus ε.
    pub coverage_warning: Option<String>,
}

/// How the tube radius is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsilonRule {
    /// `ε = c·σ̄` with σ̄ from [`mean_ground_width`].
    SigmaMultiple(f64),
    Absolute(f64),
}

impl Default for EpsilonRule {
    fn default() -> Self {
        EpsilonRule::SigmaMultiple(3.0)
    }
}

impl EpsilonRule {
    pub fn epsilon(&self, cfg: &OscillatorConfig) -> f64 {
        match *self {
            EpsilonRule::SigmaMultiple(c) => c * mean_ground_width(cfg),
            EpsilonRule::Absolute(e) => e,
        }
    }
}

/// `σ̄ = (1/√(2qω) + 1/√(2pω))/2`, the mean ground-state width of the two modes.
pub fn mean_ground_width(cfg: &OscillatorConfig) -> f64 {
    0.5 * ((2.0 * cfg.omega_x()).sqrt().recip() + (2.0 * cfg.omega_y()).sqrt().recip())
}

/// Closed x-interval of points on the line `y = c` within `eps` of segment `ab`.
fn capsule_row_interval(a: (f64, f64), b: (f64, f64), c: f64, eps: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut disk = |(px, py): (f64, f64)| {
        let dy = c - py;
        let r2 = eps * eps - dy * dy;
        if r2 >= 0.0 {
            let r = r2.sqrt();
            lo = lo.min(px - r);
            hi = hi.max(px + r);
        }
    };
    disk(a);
    disk(b);

    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len = dx.hypot(dy);
    if len > 0.0 {
        let (ux, uy) = (dx / len, dy / len);
        let (nx, ny) = (-uy, ux);
        // Along-segment coordinate s(x) = (x − ax)ux + (c − ay)uy ∈ [0, len],
        // normal offset h(x) = (x − ax)nx + (c − ay)ny ∈ [−eps, eps].
        let mut band_lo = f64::NEG_INFINITY;
        let mut band_hi = f64::INFINITY;
        let mut constrain = |coef: f64, offset: f64, min: f64, max: f64| {
            // min ≤ coef·(x − ax) + offset ≤ max
            if coef.abs() < 1e-300 {
                if offset < min || offset > max {
                    band_lo = f64::INFINITY;
                    band_hi = f64::NEG_INFINITY;
                }
            } else {
                let (mut l, mut h) = ((min - offset) / coef, (max - offset) / coef);
                if coef < 0.0 {
                    std::mem::swap(&mut l, &mut h);
                }
                band_lo = band_lo.max(a.0 + l);
                band_hi = band_hi.min(a.0 + h);
            }
        };
        constrain(ux, (c - a.1) * uy, 0.0, len);
        constrain(nx, (c - a.1) * ny, -eps, eps);
        if band_lo <= band_hi {
            lo = lo.min(band_lo);
            hi = hi.max(band_hi);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Cell-index range `[first, last]` of centers inside `[lo, hi]`.
fn index_range(lo: f64, hi: f64, grid: &GridSpec) -> Option<(usize, usize)> {
    let dx = grid.dx();
    let first = ((lo - grid.x_min) / dx - 0.5).ceil().max(0.0);
    let last = ((hi - grid.x_min) / dx - 0.5).floor().min(grid.nx as f64 - 1.0);
    (first <= last).then_some((first as usize, last as usize))
}

/// Mass of `row` over the union of index ranges.
fn covered_mass(row: &[f64], ranges: &mut [(usize, usize)]) -> f64 {
    ranges.sort_unstable();
    let mut total = 0.0;
    let mut cursor = 0usize; // first index not yet counted
    for &(lo, hi) in ranges.iter() {
        let start = lo.max(cursor);
        if start <= hi {
            total += row[start..=hi].iter().sum::<f64>();
            cursor = hi + 1;
        }
    }
    total
}

fn polyline(orbit: &LissajousOrbit, n: usize) -> Vec<(f64, f64)> {
    let mut pts = orbit.sample(n);
    pts.push(pts[0]);
    pts
}

/// Mass of `field` within `epsilon` of each orbit's closed polyline through
/// `n_samples` equally spaced times over one period, and of their union.
pub fn tube_mass(
    field: &DensityField,
    ensemble: &LissajousEnsemble,
    epsilon: f64,
    n_samples: usize,
) -> Result<TubeReport> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::domain(format!("epsilon must be positive, got {epsilon}")));
    }
    if n_samples < MIN_SAMPLES {
        return Err(Error::domain(format!(
            "n_samples must be at least {MIN_SAMPLES}, got {n_samples}"
        )));
    }
    let grid = field.grid;
    let (ex, ey) = ensemble.extent();
    let coverage_warning = (!grid.contains_box(ex + epsilon, ey + epsilon)).then(|| {
        format!(
            "grid [{}, {}] x [{}, {}] does not cover the ensemble box +/-{} x +/-{} plus epsilon {}",
            grid.x_min, grid.x_max, grid.y_min, grid.y_max, ex, ey, epsilon
        )
    });

    let lines: Vec<Vec<(f64, f64)>> = ensemble.orbits.iter().map(|o| polyline(o, n_samples)).collect();
    let ys = grid.ys();
    let m = lines.len();

    // Per row: masses for each orbit followed by the union.
    let rows: Vec<Vec<f64>> = ys
        .par_iter()
        .enumerate()
        .map(|(iy, &y)| {
            let row = &field.values[iy * grid.nx..(iy + 1) * grid.nx];
            let mut all = Vec::new();
            let mut out = Vec::with_capacity(m + 1);
            for pts in &lines {
                let mut ranges: Vec<(usize, usize)> = pts
                    .windows(2)
                    .filter_map(|w| capsule_row_interval(w[0], w[1], y, epsilon))
                    .filter_map(|(lo, hi)| index_range(lo, hi, &grid))
                    .collect();
                all.extend_from_slice(&ranges);
                out.push(covered_mass(row, &mut ranges));
            }
            out.push(covered_mass(row, &mut all));
            out
        })
        .collect();

    let area = grid.cell_area();
    let mut per_orbit_mass = vec![0.0; m];
    let mut union_mass = 0.0;
    for r in &rows {
        for k in 0..m {
            per_orbit_mass[k] += r[k];
        }
        union_mass += r[m];
    }
    per_orbit_mass.iter_mut().for_each(|v| *v *= area);
    Ok(TubeReport {
        epsilon,
        total_mass: integrate(field),
        per_orbit_mass,
        union_mass: union_mass * area,
        n_samples,
        coverage_warning,
    })
}

/// Everything computed for one coherent state: ensemble, grid, density, report.
#[derive(Debug, Clone)]
pub struct LocalizationRun {
    pub spec: CoherentSpec,
    pub ensemble: LissajousEnsemble,
    pub density: DensityField,
    pub report: TubeReport,
}

/// Builds the coherent state, its density on `grid` (or the automatic grid),
/// the orbit ensemble and the tube report.
pub fn localize(
    spec: &CoherentSpec,
    cfg: &OscillatorConfig,
    rule: EpsilonRule,
    n_samples: usize,
    grid: Option<GridSpec>,
) -> Result<LocalizationRun> {
    let state = coherent_state(spec, cfg)?;
    let ensemble = orbits_from_coherent(spec, cfg);
    let grid = grid.unwrap_or_else(|| GridSpec::auto(&ensemble, cfg));
    let density = evaluate_density(&state, cfg, &grid);
    let report = tube_mass(&density, &ensemble, rule.epsilon(cfg), n_samples)?;
    Ok(LocalizationRun {
        spec: *spec,
        ensemble,
        density,
        report,
    })
}

/// Tube reports for the template spec at each `N` in `n_list`, in order.
pub fn localization_scan(
    template: &CoherentSpec,
    cfg: &OscillatorConfig,
    n_list: &[u32],
    rule: EpsilonRule,
    n_samples: usize,
) -> Result<Vec<(u32, TubeReport)>> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("N list must be strictly ascending"));
    }
    n_list
        .iter()
        .map(|&n| {
            let spec = CoherentSpec { n, ..*template };
            localize(&spec, cfg, rule, n_samples, None).map(|run| (n, run.report))
        })
        .collect()
}

/// Largest `|⟨a_i(t)⟩ − z_i(t)|` over `t_samples`, with the classical orbit
/// read off from `(α1, α2)` and the quantum side evolved in closed form.
pub fn glauber_trajectory_check(
    alpha1: Complex64,
    alpha2: Complex64,
    cfg: &OscillatorConfig,
    t_samples: &[f64],
) -> f64 {
    let orbit = LissajousOrbit::from_glauber(alpha1, alpha2, *cfg);
    t_samples
        .iter()
        .map(|&t| {
            let (a1, a2) = evolve_expectations(alpha1, alpha2, cfg, t);
            let (z1, z2) = orbit.z(t);
            (a1 - z1).norm().max((a2 - z2).norm())
        })
        .fold(0.0, f64::max)
}
