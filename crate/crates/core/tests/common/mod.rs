//! Independent oracles shared by the integration tests. Nothing here calls
//! into the paths it is used to check.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

/// `φ_n(x)` at `x = a/4` with `ω = 1`, from the explicit Hermite polynomial
/// evaluated exactly in integer arithmetic:
/// `H_n(x) = Σ_m (−1)^m n!/(m!(n−2m)!) (2x)^{n−2m}`.
pub fn hermite_function_exact(n: u32, a: i64) -> f64 {
    // With 2x = a/2: H_n = 2^{−n} Σ_m (−1)^m n!/(m!(n−2m)!) a^{n−2m} 4^m.
    let fact = |k: u32| (1..=k).fold(BigInt::from(1), |acc, i| acc * i);
    let mut s = BigInt::from(0);
    for m in 0..=n / 2 {
        let coef = fact(n) / (fact(m) * fact(n - 2 * m));
        let term = coef * BigInt::from(a).pow(n - 2 * m) * BigInt::from(4).pow(m);
        if m % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    let h = s.to_f64().unwrap() / 2f64.powi(n as i32);
    let x = a as f64 / 4.0;
    let norm: f64 = (1..=n).map(|k| 2.0 * k as f64).product::<f64>().sqrt();
    h * (-0.5 * x * x).exp() / norm / PI.powf(0.25)
}

/// Two-mode Fock amplitudes `c[n1][n2]` of `|α1, α2⟩` for `n1, n2 ≤ cutoff`,
/// built by the recursion `c[n+1] = c[n]·α/√(n+1)` from `e^{−R/2}`.
pub fn fock_expansion(alpha1: Complex64, alpha2: Complex64, cutoff: usize) -> Vec<Vec<Complex64>> {
    let mode = |alpha: Complex64| {
        let mut v = vec![Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0)];
        for n in 0..cutoff {
            let next = v[n] * alpha / ((n + 1) as f64).sqrt();
            v.push(next);
        }
        v
    };
    let (m1, m2) = (mode(alpha1), mode(alpha2));
    m1.iter().map(|a| m2.iter().map(|b| a * b).collect()).collect()
}

/// `e^{−R} R^N / N!` by an explicit running product.
pub fn poisson_pmf(r: f64, n: u32) -> f64 {
    (1..=n).fold((-r).exp(), |acc, k| acc * r / k as f64)
}

/// `C(n, k)` as f64 by the multiplicative formula.
pub fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Smallest angular distance between `a` and `b` modulo 2π.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}
