//! The commensurate oscillator itself: configuration, degenerate eigenspaces,
//! energies and the Bezout identity used by the phase analysis.
//!
//! Everything here is integer arithmetic except the energies.

use crate::error::{Error, Result};

/// A two-dimensional oscillator with frequencies `q·ω` (x, mode 1) and
/// `p·ω` (y, mode 2).
///
/// `p` and `q` are kept as given; a common factor `M = gcd(p, q)` is
/// physically meaningful and is not divided out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorConfig {
    p: u32,
    q: u32,
    omega: f64,
    m: u32,
}

impl OscillatorConfig {
    pub fn new(p: u32, q: u32, omega: f64) -> Result<Self> {
        if p == 0 {
            return Err(Error::domain("p must be a positive integer"));
        }
        if q == 0 {
            return Err(Error::domain("q must be a positive integer"));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::domain(format!(
                "omega must be a positive finite real, got {omega}"
            )));
        }
        Ok(Self {
            p,
            q,
            omega,
            m: gcd(p as u64, q as u64) as u32,
        })
    }

    /// Mode-2 (y) frequency multiplier.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Mode-1 (x) frequency multiplier.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// `M = gcd(p, q)`, the number of orbits in an ensemble.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// `ω' = ω·p·q`, the level spacing between neighbouring degenerate shells.
    pub fn omega_prime(&self) -> f64 {
        self.omega * self.p as f64 * self.q as f64
    }

    /// Angular frequency of the x motion, `q·ω`.
    pub fn omega_x(&self) -> f64 {
        self.q as f64 * self.omega
    }

    /// Angular frequency of the y motion, `p·ω`.
    pub fn omega_y(&self) -> f64 {
        self.p as f64 * self.omega
    }

    /// Common period `2π/ω` of every classical orbit.
    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }

    pub fn check_lambdas(&self, lambda1: u32, lambda2: u32) -> Result<()> {
        if lambda1 >= self.p {
            return Err(Error::domain(format!(
                "lambda1 must lie in [0, p) = [0, {}), got {lambda1}",
                self.p
            )));
        }
        if lambda2 >= self.q {
            return Err(Error::domain(format!(
                "lambda2 must lie in [0, q) = [0, {}), got {lambda2}",
                self.q
            )));
        }
        Ok(())
    }
}

/// `p·ν1 + q·ν2 = M` with `0 ≤ ν1 < q/M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutSolution {
    pub m: u32,
    pub nu1: i64,
    pub nu2: i64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid, normalized so that `ν1` is the unique representative in
/// `[0, q/M)`.
pub fn gcd_bezout(p: u32, q: u32) -> Result<BezoutSolution> {
    if p == 0 || q == 0 {
        return Err(Error::domain("gcd_bezout requires p >= 1 and q >= 1"));
    }
    let (p, q) = (p as i64, q as i64);
    // Invariant: old_r = p·old_s + q·old_t.
    let (mut old_r, mut r) = (p, q);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    let m = old_r;
    let period = q / m;
    let nu1 = old_s.rem_euclid(period);
    let nu2 = (m - p * nu1) / q;
    debug_assert_eq!(p * nu1 + q * nu2, m);
    Ok(BezoutSolution {
        m: m as u32,
        nu1,
        nu2,
    })
}

/// One degenerate eigenspace: all states `|n1·p + λ1, n2·q + λ2⟩` with
/// `n1 + n2 = N = 2j`.
///
/// `states[k]` has `n1 = k`, so index `k` corresponds to `m = k − j` and the
/// list runs from `m = −j` to `m = +j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    p: u32,
    q: u32,
    lambda1: u32,
    lambda2: u32,
    n: u32,
    states: Vec<(u64, u64)>,
}

impl SubspaceBasis {
    pub fn lambda1(&self) -> u32 {
        self.lambda1
    }

    pub fn lambda2(&self) -> u32 {
        self.lambda2
    }

    /// `N = 2j`.
    pub fn twice_j(&self) -> u32 {
        self.n
    }

    pub fn j(&self) -> f64 {
        self.n as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Occupation pairs `(n1', n2')` in ascending-m order.
    pub fn states(&self) -> &[(u64, u64)] {
        &self.states
    }

    /// Reduced labels `(n1, n2)` of an occupation pair, or `None` if the
    /// pair is not in this subspace's residue class.
    pub fn reduced(&self, n1_prime: u64, n2_prime: u64) -> Option<(u64, u64)> {
        let (p, q) = (self.p as u64, self.q as u64);
        let (l1, l2) = (self.lambda1 as u64, self.lambda2 as u64);
        if n1_prime < l1 || n2_prime < l2 {
            return None;
        }
        if !(n1_prime - l1).is_multiple_of(p) || !(n2_prime - l2).is_multiple_of(q) {
            return None;
        }
        Some(((n1_prime - l1) / p, (n2_prime - l2) / q))
    }

    /// Index in `states` of an occupation pair, if it belongs to this subspace.
    pub fn index_of(&self, n1_prime: u64, n2_prime: u64) -> Option<usize> {
        let (n1, n2) = self.reduced(n1_prime, n2_prime)?;
        (n1 + n2 == self.n as u64).then_some(n1 as usize)
    }

    /// The occupation pair with reduced labels `(n1, n2)`.
    pub fn occupation(&self, n1: u64, n2: u64) -> (u64, u64) {
        (
            n1 * self.p as u64 + self.lambda1 as u64,
            n2 * self.q as u64 + self.lambda2 as u64,
        )
    }
}

pub fn enumerate_subspace(
    cfg: &OscillatorConfig,
    lambda1: u32,
    lambda2: u32,
    n: u32,
) -> Result<SubspaceBasis> {
    cfg.check_lambdas(lambda1, lambda2)?;
    let mut basis = SubspaceBasis {
        p: cfg.p,
        q: cfg.q,
        lambda1,
        lambda2,
        n,
        states: Vec::with_capacity(n as usize + 1),
    };
    for n1 in 0..=n as u64 {
        let pair = basis.occupation(n1, n as u64 - n1);
        basis.states.push(pair);
    }
    Ok(basis)
}

/// `ω'[(n1' + ½)/p + (n2' + ½)/q]`, the eigenvalue of `|n1', n2'⟩`.
pub fn energy_of_state(cfg: &OscillatorConfig, n1_prime: u64, n2_prime: u64) -> f64 {
    cfg.omega_prime()
        * ((n1_prime as f64 + 0.5) / cfg.p as f64 + (n2_prime as f64 + 0.5) / cfg.q as f64)
}

/// Common energy of the members of a degenerate eigenspace,
/// `ω'[N + (λ1 + ½)/p + (λ2 + ½)/q]`.
pub fn subspace_energy(cfg: &OscillatorConfig, basis: &SubspaceBasis) -> f64 {
    cfg.omega_prime()
        * (basis.n as f64
            + (basis.lambda1 as f64 + 0.5) / cfg.p as f64
            + (basis.lambda2 as f64 + 0.5) / cfg.q as f64)
}

/// Eigenvalue `ω'(2j + 1)` of the transformed isotropic Hamiltonian on the
/// subspace. It differs from [`subspace_energy`] by a λ-dependent constant
/// (zero only when `p = q = 1`) and is the energy matched by the classical
/// orbit amplitudes.
pub fn isotropic_frame_energy(cfg: &OscillatorConfig, basis: &SubspaceBasis) -> f64 {
    cfg.omega_prime() * (basis.n as f64 + 1.0)
}
