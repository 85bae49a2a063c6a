//! Prints the tube-mass values used as regression fixtures by the
//! acceptance suite.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use su2_lissajous::localization::{localization_scan, localize, EpsilonRule, DEFAULT_SAMPLES};
use su2_lissajous::{CoherentSpec, OscillatorConfig};

fn main() -> su2_lissajous::Result<()> {
    let rule = EpsilonRule::default();

    let start = Instant::now();
    let cfg = OscillatorConfig::new(1, 2, 1.0)?;
    let template = CoherentSpec::ground_class(0, FRAC_PI_2, 0.0)?;
    println!("coprime p=1 q=2 tau=1, eps = {:.6}", rule.epsilon(&cfg));
    for (n, r) in localization_scan(&template, &cfg, &[10, 20, 40, 80], rule, DEFAULT_SAMPLES)? {
        println!("  N={n:3} union={:.6} total={:.6}", r.union_mass, r.total_mass);
    }
    println!("  ({:.1?})", start.elapsed());

    let cfg = OscillatorConfig::new(2, 2, 1.0)?;
    let spec = CoherentSpec::ground_class(60, FRAC_PI_2, 0.0)?;
    let r = localize(&spec, &cfg, rule, DEFAULT_SAMPLES, None)?.report;
    println!(
        "common factor p=q=2 N=60: per-orbit {:?} union {:.6} total {:.6}",
        r.per_orbit_mass, r.union_mass, r.total_mass
    );

    let cfg = OscillatorConfig::new(2, 3, 1.0)?;
    for l1 in 0..2 {
        for l2 in 0..3 {
            let spec = CoherentSpec::new(8, FRAC_PI_2, 0.0, l1, l2)?;
            let r = localize(&spec, &cfg, rule, DEFAULT_SAMPLES, None)?.report;
            println!("p=2 q=3 N=8 lambda=({l1},{l2}): union {:.6} total {:.6}", r.union_mass, r.total_mass);
        }
    }

    let cfg = OscillatorConfig::new(1, 1, 1.0)?;
    for phi in [0.0, PI / 2.0] {
        let spec = CoherentSpec::ground_class(60, FRAC_PI_2, phi)?;
        let r = localize(&spec, &cfg, rule, DEFAULT_SAMPLES, None)?.report;
        println!("isotropic N=60 phi={phi:.4}: union {:.6}", r.union_mass);
    }
    Ok(())
}
