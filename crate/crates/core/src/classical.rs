//! Classical side: Lissajous orbits, the phase-space variables `z` and their
//! untwisted images `z̃`, stereographic projection, and the orbit ensemble
//! selected by an SU(2) coherent state.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oscillator::{gcd_bezout, OscillatorConfig};
use crate::su2::CoherentSpec;

/// `x(t) = η1 cos(qωt − φ1)`, `y(t) = η2 cos(pωt − φ2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LissajousOrbit {
    pub eta1: f64,
    pub eta2: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub cfg: OscillatorConfig,
}

/// Phase-space point: `(z1, z2)` and the untwisted `(z̃1, z̃2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub z1: Complex64,
    pub z2: Complex64,
    pub ztilde1: Complex64,
    pub ztilde2: Complex64,
}

impl LissajousOrbit {
    pub fn new(eta1: f64, eta2: f64, phi1: f64, phi2: f64, cfg: OscillatorConfig) -> Result<Self> {
        if !(eta1.is_finite() && eta1 >= 0.0 && eta2.is_finite() && eta2 >= 0.0) {
            return Err(Error::domain("orbit amplitudes must be finite and nonnegative"));
        }
        if !(phi1.is_finite() && phi2.is_finite()) {
            return Err(Error::domain("orbit phases must be finite"));
        }
        Ok(Self {
            eta1,
            eta2,
            phi1,
            phi2,
            cfg,
        })
    }

    /// The classical trajectory whose `(z1, z2)` at `t = 0` equal `(α1, α2)`.
    pub fn from_glauber(alpha1: Complex64, alpha2: Complex64, cfg: OscillatorConfig) -> Self {
        let arg = |a: Complex64| if a.norm() == 0.0 { 0.0 } else { a.arg() };
        Self {
            eta1: alpha1.norm() * (2.0 / cfg.omega_x()).sqrt(),
            eta2: alpha2.norm() * (2.0 / cfg.omega_y()).sqrt(),
            phi1: arg(alpha1),
            phi2: arg(alpha2),
            cfg,
        }
    }

    pub fn period(&self) -> f64 {
        self.cfg.period()
    }

    pub fn position(&self, t: f64) -> (f64, f64) {
        (
            self.eta1 * (self.cfg.omega_x() * t - self.phi1).cos(),
            self.eta2 * (self.cfg.omega_y() * t - self.phi2).cos(),
        )
    }

    /// `(z1(t), z2(t))`, defined for every orbit including degenerate ones.
    pub fn z(&self, t: f64) -> (Complex64, Complex64) {
        let (wx, wy) = (self.cfg.omega_x(), self.cfg.omega_y());
        (
            Complex64::from_polar((wx / 2.0).sqrt() * self.eta1, -(wx * t - self.phi1)),
            Complex64::from_polar((wy / 2.0).sqrt() * self.eta2, -(wy * t - self.phi2)),
        )
    }

    /// `n` samples `t_i = i·T/n` over one period.
    pub fn sample(&self, n: usize) -> Vec<(f64, f64)> {
        let dt = self.period() / n as f64;
        (0..n).map(|i| self.position(i as f64 * dt)).collect()
    }

    /// Largest |x| and |y| reached.
    pub fn extent(&self) -> (f64, f64) {
        (self.eta1, self.eta2)
    }
}

/// Untwisting map `z̃ = k^{−1/2} (z/|z|)^k |z|` for one mode with multiplier `k`.
fn untwist(z: Complex64, k: u32, mode: u8) -> Result<Complex64> {
    let r = z.norm();
    if r == 0.0 {
        return Err(Error::DegenerateOrbit { mode });
    }
    Ok(Complex64::from_polar(r / (k as f64).sqrt(), k as f64 * z.arg()))
}

pub fn phase_trajectory(orbit: &LissajousOrbit, t: f64) -> Result<PhasePoint> {
    let (z1, z2) = orbit.z(t);
    Ok(PhasePoint {
        z1,
        z2,
        ztilde1: untwist(z1, orbit.cfg.p(), 1)?,
        ztilde2: untwist(z2, orbit.cfg.q(), 2)?,
    })
}

/// `ω²(q²η1² + p²η2²)/2`.
pub fn classical_energy(orbit: &LissajousOrbit) -> f64 {
    let (wx, wy) = (orbit.cfg.omega_x(), orbit.cfg.omega_y());
    0.5 * (wx * wx * orbit.eta1 * orbit.eta1 + wy * wy * orbit.eta2 * orbit.eta2)
}

/// `ω'(|z̃1|² + |z̃2|²)`, the energy in the untwisted frame.
pub fn untwisted_energy(point: &PhasePoint, cfg: &OscillatorConfig) -> f64 {
    cfg.omega_prime() * (point.ztilde1.norm_sqr() + point.ztilde2.norm_sqr())
}

const SPHERE_TOL: f64 = 1e-9;

/// Projection of a point on the radius-`j` sphere through its north pole,
/// `Z = 2j(jx + i·jy)/(j − jz)`.
pub fn stereographic(jx: f64, jy: f64, jz: f64, j: f64) -> Result<Complex64> {
    if j.is_nan() || j <= 0.0 {
        return Err(Error::domain("sphere radius j must be positive"));
    }
    let r = (jx * jx + jy * jy + jz * jz).sqrt();
    if (r - j).abs() > SPHERE_TOL * j {
        return Err(Error::domain(format!(
            "point ({jx}, {jy}, {jz}) is not on the sphere of radius {j}"
        )));
    }
    let denom = j - jz;
    if denom <= SPHERE_TOL * j {
        return Err(Error::PointAtInfinity);
    }
    Ok(Complex64::new(jx, jy) * (2.0 * j / denom))
}

/// `Z = 2j·z̃2/z̃1` for a point of the untwisted motion.
pub fn ratio_coordinate(point: &PhasePoint, j: f64) -> Result<Complex64> {
    if point.ztilde1.norm() == 0.0 {
        return Err(Error::PointAtInfinity);
    }
    Ok(point.ztilde2 / point.ztilde1 * (2.0 * j))
}

/// The sphere point `(j sinθ cosφ, −j sinθ sinφ, −j cosθ)` that the
/// expectation values of a coherent state are mapped to.
pub fn classical_limit_map(spec: &CoherentSpec) -> (f64, f64, f64) {
    let j = spec.j();
    let (st, ct) = spec.theta.sin_cos();
    let (sp, cp) = spec.phi.sin_cos();
    (j * st * cp, -j * st * sp, -j * ct)
}

/// The `M = gcd(p, q)` orbits corresponding to one SU(2) coherent state.
#[derive(Debug, Clone, PartialEq)]
pub struct LissajousEnsemble {
    pub orbits: Vec<LissajousOrbit>,
    pub k_labels: Vec<u32>,
}

impl LissajousEnsemble {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Bounding half-widths `(max η1, max η2)` over the ensemble.
    pub fn extent(&self) -> (f64, f64) {
        self.orbits.iter().fold((0.0, 0.0), |(a, b), o| {
            (f64::max(a, o.eta1), f64::max(b, o.eta2))
        })
    }
}

/// `η1 = √(2p(N+1)/(qω))·sin(θ/2)`, `η2 = √(2q(N+1)/(pω))·cos(θ/2)`.
pub fn orbit_amplitudes(spec: &CoherentSpec, cfg: &OscillatorConfig) -> (f64, f64) {
    let (p, q, w) = (cfg.p() as f64, cfg.q() as f64, cfg.omega());
    let n1 = spec.n as f64 + 1.0;
    (
        (2.0 * p * n1 / (q * w)).sqrt() * spec.sin_half(),
        (2.0 * q * n1 / (p * w)).sqrt() * spec.cos_half(),
    )
}

/// The sphere azimuth used for the orbit phases; zero at the poles where it
/// carries no information.
fn effective_phi(spec: &CoherentSpec) -> f64 {
    if spec.theta == 0.0 || spec.theta >= PI {
        0.0
    } else {
        spec.phi
    }
}

/// Orbit ensemble in the `φ2 = 0` gauge: `φ1 = (φ + 2πk)/p`, `k = 0..M`.
pub fn orbits_from_coherent(spec: &CoherentSpec, cfg: &OscillatorConfig) -> LissajousEnsemble {
    let (eta1, eta2) = orbit_amplitudes(spec, cfg);
    let phi = effective_phi(spec);
    let p = cfg.p() as f64;
    let k_labels: Vec<u32> = (0..cfg.m()).collect();
    let orbits = k_labels
        .iter()
        .map(|&k| LissajousOrbit {
            eta1,
            eta2,
            phi1: (phi + 2.0 * PI * k as f64) / p,
            phi2: 0.0,
            cfg: *cfg,
        })
        .collect();
    LissajousEnsemble { orbits, k_labels }
}

/// Same ensemble in the Bezout gauge: with `p·ν1 + q·ν2 = M` and
/// `χ_k = (φ + 2πk)/M`, `φ1 = ν1 χ_k + ε/p` and `φ2 = −ν2 χ_k + ε/q`.
/// Every `ε` gives the same curves as [`orbits_from_coherent`], traversed
/// from a different starting point.
pub fn orbits_from_coherent_bezout(
    spec: &CoherentSpec,
    cfg: &OscillatorConfig,
    epsilon: f64,
) -> LissajousEnsemble {
    let (eta1, eta2) = orbit_amplitudes(spec, cfg);
    let phi = effective_phi(spec);
    let b = gcd_bezout(cfg.p(), cfg.q()).expect("config has p, q >= 1");
    let (p, q, m) = (cfg.p() as f64, cfg.q() as f64, b.m as f64);
    let k_labels: Vec<u32> = (0..b.m).collect();
    let orbits = k_labels
        .iter()
        .map(|&k| {
            let chi = (phi + 2.0 * PI * k as f64) / m;
            LissajousOrbit {
                eta1,
                eta2,
                phi1: b.nu1 as f64 * chi + epsilon / p,
                phi2: -(b.nu2 as f64) * chi + epsilon / q,
                cfg: *cfg,
            }
        })
        .collect();
    LissajousEnsemble { orbits, k_labels }
}

/// Distance from a point to the curve of `orbit`, found by solving the
/// orbit equation for the coordinate farther from its turning point and
/// checking the other coordinate at every preimage. Exact up to round-off,
/// independent of how either curve is parametrized.
fn distance_to_curve(orbit: &LissajousOrbit, x: f64, y: f64) -> f64 {
    let (wx, wy) = (orbit.cfg.omega_x(), orbit.cfg.omega_y());
    let rx = if orbit.eta1 > 0.0 { (x / orbit.eta1).abs() } else { f64::INFINITY };
    let ry = if orbit.eta2 > 0.0 { (y / orbit.eta2).abs() } else { f64::INFINITY };
    let mut best = f64::INFINITY;
    let mut consider = |t: f64| {
        let (ox, oy) = orbit.position(t);
        best = best.min((ox - x).hypot(oy - y));
    };
    // Solve cos(w t − φ) = c for t in one period; there are 2·(w/ω) roots.
    let mut solve = |c: f64, w: f64, phase: f64, mult: u32| {
        let a = c.clamp(-1.0, 1.0).acos();
        for n in 0..mult {
            let base = phase + 2.0 * PI * n as f64;
            consider((base + a) / w);
            consider((base - a) / w);
        }
    };
    if rx.is_infinite() && ry.is_infinite() {
        return x.hypot(y);
    }
    if ry <= rx {
        solve(y / orbit.eta2, wy, orbit.phi2, orbit.cfg.p());
    } else {
        solve(x / orbit.eta1, wx, orbit.phi1, orbit.cfg.q());
    }
    best
}

/// Symmetric Hausdorff-type distance between two orbits' curves, measured on
/// `n` samples of each against the exact other curve.
pub fn curve_distance(a: &LissajousOrbit, b: &LissajousOrbit, n: usize) -> f64 {
    let one_way = |from: &LissajousOrbit, to: &LissajousOrbit| {
        from.sample(n)
            .into_iter()
            .map(|(x, y)| distance_to_curve(to, x, y))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Whether two orbits trace the same curve, to `1e-9·max(η1, η2)`.
pub fn same_curve(a: &LissajousOrbit, b: &LissajousOrbit) -> bool {
    let scale = a.eta1.max(a.eta2).max(b.eta1).max(b.eta2);
    curve_distance(a, b, 4096) < 1e-9 * scale
}

/// Number of distinct curves among `orbits` under [`same_curve`].
pub fn distinct_curves(orbits: &[LissajousOrbit]) -> usize {
    let mut reps: Vec<&LissajousOrbit> = Vec::new();
    for o in orbits {
        if !reps.iter().any(|r| same_curve(r, o)) {
            reps.push(o);
        }
    }
    reps.len()
}
