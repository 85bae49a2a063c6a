//! Fixtures shared by the benchmarks.

use su2_lissajous::su2::coherent_state;
use su2_lissajous::{CoherentSpec, OscillatorConfig, StateVector};

/// The coprime `p = 1, q = 2`, `τ = 1` state at `n` quanta.
pub fn coprime_state(n: u32) -> (OscillatorConfig, CoherentSpec, StateVector) {
    let cfg = OscillatorConfig::new(1, 2, 1.0).expect("valid config");
    let spec = CoherentSpec::ground_class(n, std::f64::consts::FRAC_PI_2, 0.0).expect("valid spec");
    let state = coherent_state(&spec, &cfg).expect("matching basis");
    (cfg, spec, state)
}
