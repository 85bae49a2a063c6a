//! Schwinger SU(2) structure on a degenerate eigenspace, SU(2) coherent
//! states built over it, and truncated two-mode Glauber states.
//!
//! Within a subspace the transformed ladder operators act on the reduced
//! labels `(n1, n2)` only:
//!
//! ```text
//! ã1† |n1 p + λ1, n2 q + λ2⟩ = √(n1+1) |(n1+1) p + λ1, n2 q + λ2⟩
//! ã2  |n1 p + λ1, n2 q + λ2⟩ = √n2     |n1 p + λ1, (n2−1) q + λ2⟩
//! ```
//!
//! so `J+ = ã1†ã2`, `J− = ã1ã2†`, `Jz = (ñ1 − ñ2)/2` have the standard
//! spin-j matrix elements whatever `(p, q, λ1, λ2)` are.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;
use statrs::function::factorial::ln_binomial;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::oscillator::{enumerate_subspace, OscillatorConfig, SubspaceBasis};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense generator matrices in the ascending-m basis of one subspace.
/// Entry `[r, c]` is `⟨r|J|c⟩`.
#[derive(Debug, Clone)]
pub struct Su2Generators {
    pub twice_j: u32,
    pub jp: Array2<Complex64>,
    pub jm: Array2<Complex64>,
    pub jz: Array2<Complex64>,
    pub jx: Array2<Complex64>,
    pub jy: Array2<Complex64>,
}

impl Su2Generators {
    pub fn j(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    /// Eigenvalue of the Casimir `J0 = (ñ1 + ñ2)/2`, which acts as `j·1`.
    pub fn j0_eigenvalue(&self) -> f64 {
        self.j()
    }

    pub fn dim(&self) -> usize {
        self.twice_j as usize + 1
    }
}

// Transformed ladder operators acting on one basis vector given by its
// reduced labels. Each returns the coefficient and the image labels.

fn raise1(n1: u64, n2: u64) -> (f64, (u64, u64)) {
    (((n1 + 1) as f64).sqrt(), (n1 + 1, n2))
}

fn lower1(n1: u64, n2: u64) -> Option<(f64, (u64, u64))> {
    (n1 > 0).then(|| ((n1 as f64).sqrt(), (n1 - 1, n2)))
}

fn raise2(n1: u64, n2: u64) -> (f64, (u64, u64)) {
    (((n2 + 1) as f64).sqrt(), (n1, n2 + 1))
}

fn lower2(n1: u64, n2: u64) -> Option<(f64, (u64, u64))> {
    (n2 > 0).then(|| ((n2 as f64).sqrt(), (n1, n2 - 1)))
}

pub fn build_generators(basis: &SubspaceBasis) -> Su2Generators {
    let dim = basis.dim();
    let mut jp = Array2::<Complex64>::zeros((dim, dim));
    let mut jm = Array2::<Complex64>::zeros((dim, dim));
    let mut jz = Array2::<Complex64>::zeros((dim, dim));

    for (col, &(n1p, n2p)) in basis.states().iter().enumerate() {
        let (n1, n2) = basis
            .reduced(n1p, n2p)
            .expect("basis states lie in their own residue class");

        // J+ = ã1† ã2
        if let Some((c2, (a, b))) = lower2(n1, n2) {
            let (c1, (a, b)) = raise1(a, b);
            let (x, y) = basis.occupation(a, b);
            let row = basis.index_of(x, y).expect("J+ preserves n1 + n2");
            jp[[row, col]] += c1 * c2;
        }
        // J− = ã1 ã2†
        if let Some((c1, (a, b))) = lower1(n1, n2) {
            let (c2, (a, b)) = raise2(a, b);
            let (x, y) = basis.occupation(a, b);
            let row = basis.index_of(x, y).expect("J- preserves n1 + n2");
            jm[[row, col]] += c1 * c2;
        }
        jz[[col, col]] = Complex64::from((n1 as f64 - n2 as f64) / 2.0);
    }

    let jx = (&jp + &jm).mapv(|z| z * 0.5);
    let jy = (&jp - &jm).mapv(|z| -I * z * 0.5);
    Su2Generators {
        twice_j: basis.twice_j(),
        jp,
        jm,
        jz,
        jx,
        jy,
    }
}

/// Parameters of an SU(2) coherent state on the subspace `(λ1, λ2, N)`.
///
/// The sphere angles are the primary parametrization; `τ = tan(θ/2)·e^{iφ}`
/// is derived and is infinite at `θ = π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentSpec {
    pub n: u32,
    pub theta: f64,
    pub phi: f64,
    pub lambda1: u32,
    pub lambda2: u32,
}

impl CoherentSpec {
    pub fn new(n: u32, theta: f64, phi: f64, lambda1: u32, lambda2: u32) -> Result<Self> {
        if !(theta.is_finite() && (0.0..=PI).contains(&theta)) {
            return Err(Error::domain(format!(
                "theta must lie in [0, pi], got {theta}"
            )));
        }
        if !(phi.is_finite() && (0.0..2.0 * PI).contains(&phi)) {
            return Err(Error::domain(format!(
                "phi must lie in [0, 2pi), got {phi}"
            )));
        }
        Ok(Self {
            n,
            theta,
            phi,
            lambda1,
            lambda2,
        })
    }

    /// Spec on the `(0, 0)` subspace.
    pub fn ground_class(n: u32, theta: f64, phi: f64) -> Result<Self> {
        Self::new(n, theta, phi, 0, 0)
    }

    /// Spec from a finite `τ`.
    pub fn from_tau(n: u32, tau: Complex64, lambda1: u32, lambda2: u32) -> Result<Self> {
        if !tau.is_finite() {
            return Err(Error::TauPole);
        }
        let theta = 2.0 * tau.norm().atan();
        let phi = if tau.norm() == 0.0 {
            0.0
        } else {
            let a = tau.arg().rem_euclid(2.0 * PI);
            if a >= 2.0 * PI {
                0.0
            } else {
                a
            }
        };
        Self::new(n, theta, phi, lambda1, lambda2)
    }

    pub fn j(&self) -> f64 {
        self.n as f64 / 2.0
    }

    /// `τ`, or `None` at the pole `θ = π`.
    pub fn tau(&self) -> Option<Complex64> {
        if self.theta >= PI {
            None
        } else {
            Some(Complex64::from_polar((self.theta / 2.0).tan(), self.phi))
        }
    }

    /// `sin(θ/2) = |τ|/√(1+|τ|²)`, exact zero at θ = 0.
    pub(crate) fn sin_half(&self) -> f64 {
        (self.theta / 2.0).sin()
    }

    /// `cos(θ/2) = 1/√(1+|τ|²)`, exact zero at θ = π.
    pub(crate) fn cos_half(&self) -> f64 {
        if self.theta >= PI {
            0.0
        } else {
            (self.theta / 2.0).cos()
        }
    }
}

/// Which basis the amplitudes of a [`StateVector`] refer to.
#[derive(Debug, Clone, PartialEq)]
pub enum StateBasis {
    /// One degenerate eigenspace, ascending m.
    Subspace(SubspaceBasis),
    /// Product Fock space `0..=cutoff1 × 0..=cutoff2`, row-major in `n1'`.
    TruncatedFock { cutoff1: u64, cutoff2: u64 },
}

impl StateBasis {
    pub fn dim(&self) -> usize {
        match self {
            StateBasis::Subspace(b) => b.dim(),
            StateBasis::TruncatedFock { cutoff1, cutoff2 } => {
                ((cutoff1 + 1) * (cutoff2 + 1)) as usize
            }
        }
    }

    /// Occupation pair `(n1', n2')` of basis vector `idx`.
    pub fn occupation(&self, idx: usize) -> (u64, u64) {
        match self {
            StateBasis::Subspace(b) => b.states()[idx],
            StateBasis::TruncatedFock { cutoff2, .. } => {
                let w = (cutoff2 + 1) as usize;
                ((idx / w) as u64, (idx % w) as u64)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub basis: StateBasis,
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(basis: StateBasis, amplitudes: Vec<Complex64>) -> Result<Self> {
        if basis.dim() != amplitudes.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: amplitudes.len(),
            });
        }
        Ok(Self { basis, amplitudes })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            basis: self.basis.clone(),
            amplitudes: self.amplitudes.iter().map(|a| a / n).collect(),
        }
    }

    /// Occupation pairs paired with amplitudes.
    pub fn terms(&self) -> impl Iterator<Item = ((u64, u64), Complex64)> + '_ {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(i, &a)| (self.basis.occupation(i), a))
    }

    /// `⟨self|other⟩` for states over the same basis.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.basis != other.basis {
            return Err(Error::DimensionMismatch {
                expected: self.basis.dim(),
                found: other.basis.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Amplitudes `√C(N,k) sin^k(θ/2) cos^{N−k}(θ/2) e^{ikφ}` for `k = j + m`,
/// which is `C(2j, j+m)^{1/2} τ^{j+m} / (1+|τ|²)^j` evaluated in log domain.
pub fn coherent_amplitudes(n: u32, theta_sin_half: f64, theta_cos_half: f64, phi: f64) -> Vec<Complex64> {
    let ln_s = theta_sin_half.ln();
    let ln_c = theta_cos_half.ln();
    (0..=n as u64)
        .map(|k| {
            let up = k;
            let down = n as u64 - k;
            if (up > 0 && theta_sin_half == 0.0) || (down > 0 && theta_cos_half == 0.0) {
                return Complex64::new(0.0, 0.0);
            }
            let mut log_mag = 0.5 * ln_binomial(n as u64, k);
            if up > 0 {
                log_mag += up as f64 * ln_s;
            }
            if down > 0 {
                log_mag += down as f64 * ln_c;
            }
            Complex64::from_polar(log_mag.exp(), k as f64 * phi)
        })
        .collect()
}

pub fn build_su2_coherent(spec: &CoherentSpec, basis: &SubspaceBasis) -> Result<StateVector> {
    if basis.twice_j() != spec.n {
        return Err(Error::domain(format!(
            "basis has 2j = {} but spec has N = {}",
            basis.twice_j(),
            spec.n
        )));
    }
    if basis.lambda1() != spec.lambda1 || basis.lambda2() != spec.lambda2 {
        return Err(Error::domain(format!(
            "basis labels (lambda1, lambda2) = ({}, {}) do not match spec ({}, {})",
            basis.lambda1(),
            basis.lambda2(),
            spec.lambda1,
            spec.lambda2
        )));
    }
    let amps = coherent_amplitudes(spec.n, spec.sin_half(), spec.cos_half(), spec.phi);
    StateVector::new(StateBasis::Subspace(basis.clone()), amps)
}

/// Convenience: enumerate the spec's subspace and build the state on it.
pub fn coherent_state(spec: &CoherentSpec, cfg: &OscillatorConfig) -> Result<StateVector> {
    let basis = enumerate_subspace(cfg, spec.lambda1, spec.lambda2, spec.n)?;
    build_su2_coherent(spec, &basis)
}

/// `⟨ψ|A|ψ⟩` with the sum taken in ascending row, then column order.
fn expectation(amps: &[Complex64], op: &Array2<Complex64>) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (r, ar) in amps.iter().enumerate() {
        let mut row = Complex64::new(0.0, 0.0);
        for (c, ac) in amps.iter().enumerate() {
            row += op[[r, c]] * ac;
        }
        acc += ar.conj() * row;
    }
    acc
}

/// `(⟨Jx⟩, ⟨Jy⟩, ⟨Jz⟩)`.
pub fn j_expectations(state: &StateVector, gens: &Su2Generators) -> Result<(f64, f64, f64)> {
    if !matches!(state.basis, StateBasis::Subspace(_)) || state.amplitudes.len() != gens.dim() {
        return Err(Error::DimensionMismatch {
            expected: gens.dim(),
            found: state.amplitudes.len(),
        });
    }
    let a = &state.amplitudes;
    Ok((
        expectation(a, &gens.jx).re,
        expectation(a, &gens.jy).re,
        expectation(a, &gens.jz).re,
    ))
}

/// Amplitude `e^{−|α|²/2} αⁿ/√(n!)` of a single-mode coherent state.
pub fn glauber_mode_amplitude(alpha: Complex64, n: u64) -> Complex64 {
    let r = alpha.norm();
    if r == 0.0 {
        return if n == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let log_mag = -0.5 * r * r + n as f64 * r.ln() - 0.5 * ln_gamma(n as f64 + 1.0);
    Complex64::from_polar(log_mag.exp(), n as f64 * alpha.arg())
}

/// Smallest `n` with `P(X > n) < tol` for `X ~ Poisson(mean)`, by summing the
/// tail directly from its far end.
pub fn poisson_cutoff(mean: f64, tol: f64) -> u64 {
    if mean == 0.0 {
        return 0;
    }
    let ln_mean = mean.ln();
    let ln_pmf = |n: u64| -mean + n as f64 * ln_mean - ln_gamma(n as f64 + 1.0);
    // Past the mode the pmf decays faster than geometrically; stop once the
    // remaining mass is far below any representable tolerance.
    let mut pmf = Vec::new();
    let mut n = 0u64;
    loop {
        let v = ln_pmf(n).exp();
        pmf.push(v);
        if n as f64 > mean + 1.0 && v < tol * 1e-20 {
            break;
        }
        n += 1;
    }
    let mut tail = 0.0;
    let mut cutoff = pmf.len() as u64 - 1;
    for k in (0..pmf.len()).rev() {
        // `tail` is P(X > k) here.
        if tail < tol {
            cutoff = k as u64;
        } else {
            break;
        }
        tail += pmf[k];
    }
    cutoff
}

/// Two-mode Glauber state `|α1, α2⟩` truncated per mode at the Poisson cutoff
/// for `tail_tolerance`.
pub fn build_glauber(alpha1: Complex64, alpha2: Complex64, tail_tolerance: f64) -> Result<StateVector> {
    if !(tail_tolerance > 0.0 && tail_tolerance < 1.0) {
        return Err(Error::domain(format!(
            "tail_tolerance must lie in (0, 1), got {tail_tolerance}"
        )));
    }
    let cutoff1 = poisson_cutoff(alpha1.norm_sqr(), tail_tolerance);
    let cutoff2 = poisson_cutoff(alpha2.norm_sqr(), tail_tolerance);
    let mode1: Vec<_> = (0..=cutoff1).map(|n| glauber_mode_amplitude(alpha1, n)).collect();
    let mode2: Vec<_> = (0..=cutoff2).map(|n| glauber_mode_amplitude(alpha2, n)).collect();
    let mut amps = Vec::with_capacity(mode1.len() * mode2.len());
    for a in &mode1 {
        for b in &mode2 {
            amps.push(a * b);
        }
    }
    StateVector::new(StateBasis::TruncatedFock { cutoff1, cutoff2 }, amps)
}

/// Projection of an isotropic (`p = q = 1`) Glauber state onto one shell.
#[derive(Debug, Clone)]
pub struct GlauberComponent {
    pub twice_j: u32,
    /// `⟨j, τ|P_j|α1, α2⟩`.
    pub weight: Complex64,
    /// `P_j|α1, α2⟩`, not normalized.
    pub projected: StateVector,
}

impl GlauberComponent {
    pub fn j(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }
}

/// Projects `|α1, α2⟩` of the isotropic oscillator onto every shell
/// `2j = 0..=twice_j_max` and reads off its overlap with `|j, α1/α2⟩`.
pub fn decompose_glauber_su2(
    alpha1: Complex64,
    alpha2: Complex64,
    twice_j_max: u32,
) -> Result<Vec<GlauberComponent>> {
    if alpha2.norm() == 0.0 {
        return Err(Error::TauPole);
    }
    let cfg = OscillatorConfig::new(1, 1, 1.0)?;
    let tau = alpha1 / alpha2;
    let mut out = Vec::with_capacity(twice_j_max as usize + 1);
    for n in 0..=twice_j_max {
        let basis = enumerate_subspace(&cfg, 0, 0, n)?;
        let amps = basis
            .states()
            .iter()
            .map(|&(n1, n2)| glauber_mode_amplitude(alpha1, n1) * glauber_mode_amplitude(alpha2, n2))
            .collect();
        let projected = StateVector::new(StateBasis::Subspace(basis.clone()), amps)?;
        let spec = CoherentSpec::from_tau(n, tau, 0, 0)?;
        let reference = build_su2_coherent(&spec, &basis)?;
        let weight = reference.inner(&projected)?;
        out.push(GlauberComponent {
            twice_j: n,
            weight,
            projected,
        });
    }
    Ok(out)
}

/// Heisenberg-picture `(⟨a1(t)⟩, ⟨a2(t)⟩) = (α1 e^{−iqωt}, α2 e^{−ipωt})`.
pub fn evolve_expectations(
    alpha1: Complex64,
    alpha2: Complex64,
    cfg: &OscillatorConfig,
    t: f64,
) -> (Complex64, Complex64) {
    (
        alpha1 * Complex64::from_polar(1.0, -cfg.omega_x() * t),
        alpha2 * Complex64::from_polar(1.0, -cfg.omega_y() * t),
    )
}
