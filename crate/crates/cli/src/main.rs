mod args;

use std::fmt::Display;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use num_complex::Complex64;

use su2_lissajous::export::{fmt_f64, write_density_csv, write_orbits_csv, write_report_csv};
use su2_lissajous::localization::{glauber_trajectory_check, localization_scan, localize};
use su2_lissajous::oscillator::{enumerate_subspace, gcd_bezout, isotropic_frame_energy, subspace_energy};
use su2_lissajous::su2::{build_generators, build_su2_coherent, decompose_glauber_su2, j_expectations};
use su2_lissajous::wavefield::{evaluate_density, integrate};
use su2_lissajous::classical::orbits_from_coherent;
use su2_lissajous::su2::coherent_state;
use su2_lissajous::{CoherentSpec, EpsilonRule, GridSpec, OscillatorConfig};

use args::*;

enum Failure {
    Usage(String),
    Domain(String),
    Io { path: PathBuf, cause: String },
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Io { .. } => 4,
        }
    }
}

impl Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Domain(m) => write!(f, "domain error: {m}"),
            Failure::Io { path, cause } => write!(f, "I/O error: {}: {cause}", path.display()),
        }
    }
}

impl From<su2_lissajous::Error> for Failure {
    fn from(e: su2_lissajous::Error) -> Self {
        match e {
            su2_lissajous::Error::Io(io) => Failure::Io { path: PathBuf::from("<output>"), cause: io.to_string() },
            other => Failure::Domain(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Bezout(a) => bezout(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Coherent(a) => coherent(a),
        Command::Density(a) => density(a),
        Command::Orbits(a) => orbits(a),
        Command::Localize(a) => localize_cmd(a),
        Command::Evolve(a) => evolve(a),
        Command::Decompose(a) => decompose(a),
    }
}

fn oscillator(o: &Oscillator) -> Result<OscillatorConfig, Failure> {
    Ok(OscillatorConfig::new(o.p, o.q, o.omega)?)
}

/// Label ranges are checked before the missing-flag checks so that a bad
/// label is reported even when the state is otherwise incomplete.
fn state_spec(cfg: &OscillatorConfig, s: &StateArgs) -> Result<CoherentSpec, Failure> {
    cfg.check_lambdas(s.labels.lambda1, s.labels.lambda2)?;
    let missing = |flag: &str| Failure::Usage(format!("missing required flag --{flag}"));
    let n = s.n.ok_or_else(|| missing("N"))?;
    let theta = s.theta.ok_or_else(|| missing("theta"))?;
    let phi = s.phi.ok_or_else(|| missing("phi"))?;
    Ok(CoherentSpec::new(n, theta, phi, s.labels.lambda1, s.labels.lambda2)?)
}

fn grid_spec(g: GridArg) -> Result<Option<GridSpec>, Failure> {
    Ok(match g {
        GridArg::Auto => None,
        GridArg::Square { half_width, n } => Some(GridSpec::square(half_width, n)?),
        GridArg::Full { x, y } => Some(GridSpec::new(x.0, x.1, x.2, y.0, y.1, y.2)?),
    })
}

fn epsilon_rule(e: EpsilonArg) -> Result<EpsilonRule, Failure> {
    let (v, rule) = match e {
        EpsilonArg::Sigma(c) => (c, EpsilonRule::SigmaMultiple(c)),
        EpsilonArg::Absolute(v) => (v, EpsilonRule::Absolute(v)),
    };
    if !(v.is_finite() && v > 0.0) {
        return Err(Failure::Domain(format!("epsilon must be positive and finite, got {v}")));
    }
    Ok(rule)
}

/// Writes through a temporary file in the target directory, then renames it
/// into place.
fn write_atomic<F>(path: &Path, body: F) -> Result<(), Failure>
where
    F: FnOnce(&mut BufWriter<&mut tempfile::NamedTempFile>) -> su2_lissajous::Result<()>,
{
    let io = |cause: String| Failure::Io { path: path.to_path_buf(), cause };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io(e.to_string()))?;
    {
        let mut w = BufWriter::new(&mut tmp);
        body(&mut w).map_err(|e| match e {
            su2_lissajous::Error::Io(e) => io(e.to_string()),
            other => Failure::Domain(other.to_string()),
        })?;
        w.flush().map_err(|e| io(e.to_string()))?;
    }
    tmp.persist(path).map_err(|e| io(e.error.to_string()))?;
    Ok(())
}

fn bezout(a: BezoutArgs) -> Outcome {
    let b = gcd_bezout(a.p, a.q)?;
    Ok(format!("M={} nu1={} nu2={}", b.m, b.nu1, b.nu2))
}

fn spectrum(a: SpectrumArgs) -> Outcome {
    let cfg = oscillator(&a.osc)?;
    let basis = enumerate_subspace(&cfg, a.labels.lambda1, a.labels.lambda2, a.n)?;
    Ok(format!(
        "E={} isotropic_frame_E={} j={} dim={}",
        subspace_energy(&cfg, &basis),
        isotropic_frame_energy(&cfg, &basis),
        basis.j(),
        basis.dim()
    ))
}

fn coherent(a: StateCmd) -> Outcome {
    let cfg = oscillator(&a.osc)?;
    let spec = state_spec(&cfg, &a.state)?;
    let basis = enumerate_subspace(&cfg, spec.lambda1, spec.lambda2, spec.n)?;
    let state = build_su2_coherent(&spec, &basis)?;
    let (jx, jy, jz) = j_expectations(&state, &build_generators(&basis))?;
    Ok(format!(
        "norm={} Jx={} Jy={} Jz={} E={}",
        fmt_f64(state.norm()),
        fmt_f64(jx),
        fmt_f64(jy),
        fmt_f64(jz),
        subspace_energy(&cfg, &basis)
    ))
}

fn density(a: DensityArgs) -> Outcome {
    let cfg = oscillator(&a.osc)?;
    let spec = state_spec(&cfg, &a.state)?;
    let state = coherent_state(&spec, &cfg)?;
    let grid = match grid_spec(a.grid)? {
        Some(g) => g,
        None => GridSpec::auto(&orbits_from_coherent(&spec, &cfg), &cfg),
    };
    let field = evaluate_density(&state, &cfg, &grid);
    write_atomic(&a.out, |w| write_density_csv(w, &field))?;
    Ok(format!(
        "wrote {}: {}x{} grid, mass={}",
        a.out.display(),
        grid.nx,
        grid.ny,
        fmt_f64(integrate(&field))
    ))
}

fn orbits(a: OrbitsArgs) -> Outcome {
    let cfg = oscillator(&a.osc)?;
    let spec = state_spec(&cfg, &a.state)?;
    if a.samples == 0 {
        return Err(Failure::Domain("samples must be at least 1".into()));
    }
    let ensemble = orbits_from_coherent(&spec, &cfg);
    write_atomic(&a.out, |w| write_orbits_csv(w, &ensemble, a.samples))?;
    Ok(format!("wrote {}: {} orbits x {} samples", a.out.display(), ensemble.len(), a.samples))
}

fn localize_cmd(a: LocalizeArgs) -> Outcome {
    let cfg = oscillator(&a.osc)?;
    let rule = epsilon_rule(a.epsilon)?;
    let rows = match &a.n_list {
        Some(list) => {
            if a.state.n.is_some() {
                return Err(Failure::Usage("--N and --N-list are mutually exclusive".into()));
            }
            let template = state_spec(&cfg, &StateArgs { n: Some(0), ..a.state })?;
            localization_scan(&template, &cfg, list, rule, a.samples)?
        }
        None => {
            let spec = state_spec(&cfg, &a.state)?;
            let run = localize(&spec, &cfg, rule, a.samples, grid_spec(a.grid)?)?;
            vec![(spec.n, run.report)]
        }
    };
    for (n, r) in &rows {
        if let Some(w) = &r.coverage_warning {
            eprintln!("warning: N={n}: {w}");
        }
    }
    if let Some(out) = &a.out {
        write_atomic(out, |w| write_report_csv(w, &rows))?;
    }
    let body: Vec<String> = rows
        .iter()
        .map(|(n, r)| {
            let per: Vec<String> = r.per_orbit_mass.iter().map(|&m| format!("{m:.6}")).collect();
            format!("N={n} epsilon={:.6} union_mass={:.6} per_orbit={}", r.epsilon, r.union_mass, per.join(";"))
        })
        .collect();
    let mut summary = body.join("\n");
    if let Some(out) = &a.out {
        summary.push_str(&format!("\nwrote {}", out.display()));
    }
    Ok(summary)
}

fn evolve(a: EvolveArgs) -> Outcome {
    let cfg = oscillator(&a.osc)?;
    if a.samples == 0 {
        return Err(Failure::Domain("samples must be at least 1".into()));
    }
    let period = cfg.period();
    let ts: Vec<f64> = (0..a.samples).map(|i| period * i as f64 / a.samples as f64).collect();
    let dev = glauber_trajectory_check(a.glauber.alpha1, a.glauber.alpha2, &cfg, &ts);
    Ok(format!("max deviation={dev:e} over {} samples", a.samples))
}

fn decompose(a: DecomposeArgs) -> Outcome {
    let parts = decompose_glauber_su2(a.glauber.alpha1, a.glauber.alpha2, a.twice_j_max)?;
    let captured: f64 = parts.iter().map(|c| c.weight.norm_sqr()).sum();
    if let Some(out) = &a.out {
        write_atomic(out, |w| {
            w.write_all(b"twice_j,weight_re,weight_im,shell_mass\n")?;
            for c in &parts {
                let Complex64 { re, im } = c.weight;
                writeln!(w, "{},{},{},{}", c.twice_j, fmt_f64(re), fmt_f64(im), fmt_f64(c.projected.norm_sqr()))?;
            }
            Ok(())
        })?;
    }
    let mut s = format!("shells=0..={} captured_mass={}", a.twice_j_max, fmt_f64(captured));
    if let Some(out) = &a.out {
        s.push_str(&format!(" wrote {}", out.display()));
    }
    Ok(s)
}
