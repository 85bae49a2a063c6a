mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use su2_lissajous::classical::{
    classical_energy, classical_limit_map, distinct_curves, orbits_from_coherent, phase_trajectory, same_curve,
    untwisted_energy, LissajousOrbit,
};
use su2_lissajous::localization::{localize, tube_mass, EpsilonRule};
use su2_lissajous::oscillator::{energy_of_state, enumerate_subspace, gcd_bezout, subspace_energy};
use su2_lissajous::su2::{build_generators, build_glauber, build_su2_coherent, coherent_state, j_expectations};
use su2_lissajous::wavefield::{evaluate_density, integrate, GridSpec};
use su2_lissajous::{CoherentSpec, LissajousEnsemble, OscillatorConfig};

use common::{angle_diff, binomial};

fn cfg(p: u32, q: u32) -> OscillatorConfig {
    OscillatorConfig::new(p, q, 1.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bezout_identity(p in 1u32..5000, q in 1u32..5000) {
        let b = gcd_bezout(p, q).unwrap();
        prop_assert_eq!(p as i64 * b.nu1 + q as i64 * b.nu2, b.m as i64);
        prop_assert!(p % b.m == 0 && q % b.m == 0);
        prop_assert!(b.nu1 >= 0 && b.nu1 < (q / b.m) as i64);
    }

    #[test]
    fn subspace_members_share_energy(p in 1u32..9, q in 1u32..9, l in 0u32..64, n in 0u32..40, w in 0.1f64..10.0) {
        let c = OscillatorConfig::new(p, q, w).unwrap();
        let b = enumerate_subspace(&c, l % p, (l / p) % q, n).unwrap();
        let e = subspace_energy(&c, &b);
        for &(a, bb) in b.states() {
            prop_assert!((energy_of_state(&c, a, bb) - e).abs() <= 1e-12 * e);
        }
    }

    #[test]
    fn coherent_norm_and_sphere(n in 0u32..=200, theta in 0.0f64..=PI, phi in 0.0f64..(2.0 * PI)) {
        let c = cfg(3, 2);
        let spec = CoherentSpec::new(n, theta, phi, 2, 1).unwrap();
        let basis = enumerate_subspace(&c, 2, 1, n).unwrap();
        let st = build_su2_coherent(&spec, &basis).unwrap();
        prop_assert!((st.norm() - 1.0).abs() <= 1e-12);
        let (x, y, z) = j_expectations(&st, &build_generators(&basis)).unwrap();
        let j = n as f64 / 2.0;
        prop_assert!((x * x + y * y + z * z - j * j).abs() <= 1e-9 * (1.0 + j * j));
    }

    #[test]
    fn coherent_amplitudes_match_direct_formula(n in 0u32..=40, theta in 0.0f64..3.0, phi in 0.0f64..(2.0 * PI)) {
        // Direct evaluation of C(N,k)^{1/2} τ^k / (1+|τ|²)^{N/2}; fine while nothing overflows.
        let spec = CoherentSpec::ground_class(n, theta, phi).unwrap();
        let tau = spec.tau().unwrap();
        let st = coherent_state(&spec, &cfg(1, 1)).unwrap();
        let pref = (1.0 + tau.norm_sqr()).powf(-(n as f64) / 2.0);
        for (k, a) in st.amplitudes.iter().enumerate() {
            let want = tau.powu(k as u32) * binomial(n, k as u32).sqrt() * pref;
            prop_assert!((a - want).norm() <= 1e-12 * (1.0 + want.norm()));
        }
    }

    #[test]
    fn generators_independent_of_labels(n in 0u32..=40, p in 1u32..7, q in 1u32..7, l in 0u32..49) {
        let iso = build_generators(&enumerate_subspace(&cfg(1, 1), 0, 0, n).unwrap());
        let g = build_generators(&enumerate_subspace(&cfg(p, q), l % p, (l / p) % q, n).unwrap());
        for (a, b) in [(&g.jp, &iso.jp), (&g.jm, &iso.jm), (&g.jz, &iso.jz), (&g.jx, &iso.jx), (&g.jy, &iso.jy)] {
            let d = (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!(d <= 1e-14);
        }
        let hermitian = |m: &ndarray::Array2<Complex64>| {
            (m - &m.t().mapv(|z| z.conj())).iter().map(|z| z.norm()).fold(0.0, f64::max)
        };
        prop_assert!(hermitian(&g.jx) == 0.0 && hermitian(&g.jy) == 0.0 && hermitian(&g.jz) == 0.0);
        prop_assert_eq!(g.jp.t().mapv(|z| z.conj()), g.jm.clone());
        prop_assert_eq!(g.j0_eigenvalue(), n as f64 / 2.0);
    }

    #[test]
    fn untwisted_motion_is_stationary(
        p in 1u32..9, q in 1u32..9, w in 0.3f64..3.0,
        eta1 in 0.05f64..10.0, eta2 in 0.05f64..10.0,
        phi1 in 0.0f64..(2.0 * PI), phi2 in 0.0f64..(2.0 * PI),
    ) {
        let o = LissajousOrbit::new(eta1, eta2, phi1, phi2, OscillatorConfig::new(p, q, w).unwrap()).unwrap();
        let e = classical_energy(&o);
        let first = phase_trajectory(&o, 0.0).unwrap();
        let arg0 = (first.ztilde2 / first.ztilde1).arg();
        for i in 0..1000 {
            let pt = phase_trajectory(&o, o.period() * i as f64 / 1000.0).unwrap();
            prop_assert!((untwisted_energy(&pt, &o.cfg) - e).abs() <= 1e-10 * (1.0 + e));
            prop_assert!(angle_diff((pt.ztilde2 / pt.ztilde1).arg(), arg0) <= 1e-10);
            prop_assert!(angle_diff(arg0, -(p as f64 * phi1 - q as f64 * phi2)) <= 1e-10);
        }
    }

    #[test]
    fn ensemble_round_trip(
        p in 1u32..13, q in 1u32..13, n in 0u32..300,
        theta in 0.01f64..(PI - 0.01), phi in 0.0f64..(2.0 * PI), w in 0.2f64..5.0,
    ) {
        let c = OscillatorConfig::new(p, q, w).unwrap();
        let spec = CoherentSpec::ground_class(n, theta, phi).unwrap();
        let tau = spec.tau().unwrap().norm();
        let e = orbits_from_coherent(&spec, &c);
        prop_assert_eq!(e.len(), c.m() as usize);
        let want_e = w * (p * q) as f64 * (n as f64 + 1.0);
        for o in &e.orbits {
            prop_assert!((q as f64 * o.eta1 / (p as f64 * o.eta2) - tau).abs() <= 1e-12 * (1.0 + tau));
            prop_assert!(angle_diff(p as f64 * o.phi1 - q as f64 * o.phi2, phi) <= 1e-12);
            prop_assert!((classical_energy(o) - want_e).abs() <= 1e-10 * want_e);
        }
    }

    #[test]
    fn glauber_norm_within_tail_bound(re1 in -3.0f64..3.0, im1 in -3.0f64..3.0, re2 in -3.0f64..3.0, tol in 1e-12f64..1e-2) {
        let g = build_glauber(Complex64::new(re1, im1), Complex64::new(re2, 0.0), tol).unwrap();
        prop_assert!(g.norm_sqr() >= 1.0 - 2.0 * tol);
        prop_assert!(g.norm_sqr() <= 1.0 + 1e-12);
    }
}

#[test]
fn limit_map_lies_on_sphere_and_matches_expectations() {
    let c = cfg(2, 5);
    for n in [1u32, 6, 31] {
        let basis = enumerate_subspace(&c, 1, 3, n).unwrap();
        let g = build_generators(&basis);
        for i in 0..12 {
            for k in 0..12 {
                let spec = CoherentSpec::new(n, PI * i as f64 / 11.0, 2.0 * PI * k as f64 / 12.0, 1, 3).unwrap();
                let st = build_su2_coherent(&spec, &basis).unwrap();
                let (x, y, z) = j_expectations(&st, &g).unwrap();
                let (a, b, cc) = classical_limit_map(&spec);
                assert!((x - a).abs() < 1e-10 && (y - b).abs() < 1e-10 && (z - cc).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn ensemble_has_exactly_m_distinct_curves() {
    // A generic azimuth avoids the accidental time-reversal coincidences at
    // symmetric values such as φ = 0.
    let phi = 0.7;
    for p in 1..=12u32 {
        for q in 1..=12u32 {
            let c = cfg(p, q);
            let spec = CoherentSpec::ground_class(10, 1.0, phi).unwrap();
            let e = orbits_from_coherent(&spec, &c);
            let m = c.m() as usize;
            assert_eq!(distinct_curves(&e.orbits), m, "p={p} q={q}");
            // Labels k ≥ M reproduce earlier curves.
            let o0 = e.orbits[0];
            let wrapped = LissajousOrbit { phi1: o0.phi1 + 2.0 * PI * m as f64 / p as f64, ..o0 };
            assert!(same_curve(&o0, &wrapped), "p={p} q={q}");
        }
    }
}

#[test]
fn isotropic_untwisting_has_one_frequency() {
    // For p = q both untwisted components rotate at ωpq.
    for p in 1..=4u32 {
        let c = OscillatorConfig::new(p, p, 0.8).unwrap();
        let o = LissajousOrbit::new(1.3, 0.6, 0.4, 1.1, c).unwrap();
        let w = c.omega_prime();
        let base = phase_trajectory(&o, 0.0).unwrap();
        for i in 0..200 {
            let t = o.period() * i as f64 / 200.0;
            let pt = phase_trajectory(&o, t).unwrap();
            let rot = Complex64::from_polar(1.0, w * t);
            assert!((pt.ztilde1 * rot - base.ztilde1).norm() < 1e-12);
            assert!((pt.ztilde2 * rot - base.ztilde2).norm() < 1e-12);
        }
    }
}

fn small_run(p: u32, q: u32, n: u32) -> (su2_lissajous::DensityField, LissajousEnsemble) {
    let c = cfg(p, q);
    let spec = CoherentSpec::ground_class(n, 1.0, 0.9).unwrap();
    let e = orbits_from_coherent(&spec, &c);
    let st = coherent_state(&spec, &c).unwrap();
    let (ex, ey) = e.extent();
    let grid = GridSpec::square(1.25 * ex.max(ey) + 4.0, 128).unwrap();
    (evaluate_density(&st, &c, &grid), e)
}

#[test]
fn tube_mass_is_monotone_in_epsilon() {
    let (field, e) = small_run(2, 2, 12);
    let mut last = 0.0;
    for i in 1..30 {
        let r = tube_mass(&field, &e, 0.1 * i as f64, 2048).unwrap();
        assert!(r.union_mass >= last);
        last = r.union_mass;
        let max = r.per_orbit_mass.iter().cloned().fold(0.0, f64::max);
        let sum: f64 = r.per_orbit_mass.iter().sum();
        assert!(max <= r.union_mass + 1e-15);
        assert!(r.union_mass <= sum + 1e-15);
        assert!(r.union_mass <= r.total_mass + 1e-15);
    }
}

#[test]
fn tube_mass_is_invariant_under_relabeling() {
    let (field, e) = small_run(3, 6, 9);
    let m = e.len();
    assert_eq!(m, 3);
    let shifted = LissajousEnsemble {
        orbits: (0..m).map(|k| e.orbits[(k + m - 1) % m]).collect(),
        k_labels: (0..m).map(|k| e.k_labels[(k + m - 1) % m]).collect(),
    };
    let a = tube_mass(&field, &e, 0.8, 2048).unwrap();
    let b = tube_mass(&field, &shifted, 0.8, 2048).unwrap();
    assert_eq!(a.union_mass, b.union_mass);
    for k in 0..m {
        assert_eq!(a.per_orbit_mass[(k + m - 1) % m], b.per_orbit_mass[k]);
    }
}

#[test]
fn tube_mass_converges_in_sampling() {
    let c = cfg(1, 2);
    let spec = CoherentSpec::ground_class(40, PI / 2.0, 0.0).unwrap();
    let run = localize(&spec, &c, EpsilonRule::default(), 4096, None).unwrap();
    let doubled = tube_mass(&run.density, &run.ensemble, run.report.epsilon, 8192).unwrap();
    assert!((doubled.union_mass - run.report.union_mass).abs() < 1e-3);
}

#[test]
fn coherent_density_is_normalized_on_wide_grid() {
    let c = cfg(1, 2);
    let spec = CoherentSpec::ground_class(40, PI / 2.0, 0.0).unwrap();
    let st = coherent_state(&spec, &c).unwrap();
    let (ex, ey) = orbits_from_coherent(&spec, &c).extent();
    let h = 1.2 * ex.max(ey);
    let mass = integrate(&evaluate_density(&st, &c, &GridSpec::square(h, 384).unwrap()));
    assert!((0.999..=1.001).contains(&mass), "{mass}");
    let auto = localize(&spec, &c, EpsilonRule::default(), 4096, None).unwrap();
    assert!(auto.report.total_mass <= 1.0 + 1e-6);
}

#[test]
fn isotropic_circle_and_line_localize_alike() {
    let c = cfg(1, 1);
    let mass = |phi: f64| {
        let spec = CoherentSpec::ground_class(60, PI / 2.0, phi).unwrap();
        localize(&spec, &c, EpsilonRule::default(), 4096, None).unwrap().report.union_mass
    };
    let (line, circle) = (mass(0.0), mass(PI / 2.0));
    assert!((line - circle).abs() < 0.02, "line {line} circle {circle}");
}
