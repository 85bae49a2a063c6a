use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

/// Natural units throughout: ħ = m = 1, lengths in units of 1/√ω, angles in
/// radians, times in the same units as 1/ω.
#[derive(Debug, Parser)]
#[command(name = "su2liss", version, about = "SU(2) coherent states of the commensurate 2-D oscillator and their Lissajous orbits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print M = gcd(p, q) and Bezout coefficients with p·nu1 + q·nu2 = M.
    Bezout(BezoutArgs),
    /// Print the energy of the degenerate shell (lambda1, lambda2, N).
    Spectrum(SpectrumArgs),
    /// Build an SU(2) coherent state and print its norm, <J> and energy.
    Coherent(StateCmd),
    /// Write the probability density of a coherent state as CSV `x,y,density`.
    Density(DensityArgs),
    /// Write the classical orbit ensemble as CSV `k,t,x,y`.
    Orbits(OrbitsArgs),
    /// Measure the density mass inside the ε-tube around the orbit ensemble.
    Localize(LocalizeArgs),
    /// Compare Heisenberg-picture <a_i(t)> of a Glauber state with its classical orbit.
    Evolve(EvolveArgs),
    /// Project an isotropic (p = q = 1) Glauber state onto SU(2) shells.
    Decompose(DecomposeArgs),
}

#[derive(Debug, Args)]
pub struct Oscillator {
    /// y frequency multiplier (ω_y = p·ω), positive integer.
    #[arg(long)]
    pub p: u32,
    /// x frequency multiplier (ω_x = q·ω), positive integer.
    #[arg(long)]
    pub q: u32,
    /// Base angular frequency ω in rad per unit time, > 0.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub omega: f64,
}

#[derive(Debug, Args)]
pub struct Labels {
    /// Residue class of the x quanta, in [0, p).
    #[arg(long, default_value_t = 0)]
    pub lambda1: u32,
    /// Residue class of the y quanta, in [0, q).
    #[arg(long, default_value_t = 0)]
    pub lambda2: u32,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub labels: Labels,
    /// Shell index N = 2j, non-negative integer. Required unless --N-list is given.
    #[arg(long = "N", value_name = "N")]
    pub n: Option<u32>,
    /// Polar angle θ in radians, in [0, π]. Required.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Azimuth φ in radians, in [0, 2π). Required.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BezoutArgs {
    /// First positive integer.
    #[arg(long)]
    pub p: u32,
    /// Second positive integer.
    #[arg(long)]
    pub q: u32,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub osc: Oscillator,
    #[command(flatten)]
    pub labels: Labels,
    /// Shell index N = 2j, non-negative integer.
    #[arg(long = "N", value_name = "N")]
    pub n: u32,
}

#[derive(Debug, Args)]
pub struct StateCmd {
    #[command(flatten)]
    pub osc: Oscillator,
    #[command(flatten)]
    pub state: StateArgs,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub osc: Oscillator,
    #[command(flatten)]
    pub state: StateArgs,
    /// `auto`, `H:N` for [-H, H]² with N×N cells, or `XMIN:XMAX:NX:YMIN:YMAX:NY`.
    /// Lengths in units of 1/√ω.
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub grid: GridArg,
    /// Output CSV path.
    #[arg(long)]
    pub out: std::path::PathBuf,
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    #[command(flatten)]
    pub osc: Oscillator,
    #[command(flatten)]
    pub state: StateArgs,
    /// Samples per orbit over one period 2π/ω.
    #[arg(long, default_value_t = 4096)]
    pub samples: usize,
    /// Output CSV path.
    #[arg(long)]
    pub out: std::path::PathBuf,
}

#[derive(Debug, Args)]
pub struct LocalizeArgs {
    #[command(flatten)]
    pub osc: Oscillator,
    #[command(flatten)]
    pub state: StateArgs,
    /// Comma-separated, strictly ascending shell indices to scan instead of a single --N.
    #[arg(long = "N-list", value_name = "N,N,...", value_delimiter = ',')]
    pub n_list: Option<Vec<u32>>,
    /// Density grid, same forms as for `density`. Ignored with --N-list, which
    /// always uses the automatic grid.
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub grid: GridArg,
    /// Tube radius: a length in units of 1/√ω, or `Cs` for C times the mean
    /// ground-state width.
    #[arg(long, default_value = "3s", allow_hyphen_values = true)]
    pub epsilon: EpsilonArg,
    /// Polyline vertices per orbit, at least 1024.
    #[arg(long, default_value_t = 4096)]
    pub samples: usize,
    /// Optional CSV report `N,epsilon,union_mass,per_orbit_masses`.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct Glauber {
    /// Mode-1 (x) amplitude α1, written `a+bi` without spaces.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub alpha1: Complex64,
    /// Mode-2 (y) amplitude α2, written `a+bi` without spaces.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub alpha2: Complex64,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub osc: Oscillator,
    #[command(flatten)]
    pub glauber: Glauber,
    /// Time samples over one period 2π/ω.
    #[arg(long, default_value_t = 4096)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub glauber: Glauber,
    /// Largest shell 2j to project onto.
    #[arg(long = "j-max", value_name = "2J", default_value_t = 40)]
    pub twice_j_max: u32,
    /// Optional CSV `twice_j,weight_re,weight_im,shell_mass`.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridArg {
    Auto,
    Square { half_width: f64, n: usize },
    Full { x: (f64, f64, usize), y: (f64, f64, usize) },
}

impl std::str::FromStr for GridArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(GridArg::Auto);
        }
        let parts: Vec<&str> = s.split(':').collect();
        let f = |i: usize| parts[i].parse::<f64>().map_err(|e| format!("bad number `{}`: {e}", parts[i]));
        let u = |i: usize| parts[i].parse::<usize>().map_err(|e| format!("bad cell count `{}`: {e}", parts[i]));
        match parts.len() {
            2 => Ok(GridArg::Square { half_width: f(0)?, n: u(1)? }),
            6 => Ok(GridArg::Full { x: (f(0)?, f(1)?, u(2)?), y: (f(3)?, f(4)?, u(5)?) }),
            _ => Err("expected `auto`, `H:N` or `XMIN:XMAX:NX:YMIN:YMAX:NY`".into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsilonArg {
    Sigma(f64),
    Absolute(f64),
}

impl std::str::FromStr for EpsilonArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.strip_suffix('s') {
            Some(c) => c.parse().map(EpsilonArg::Sigma).map_err(|e| format!("bad multiple `{c}`: {e}")),
            None => s.parse().map(EpsilonArg::Absolute).map_err(|e| format!("bad length `{s}`: {e}")),
        }
    }
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    if s.contains(char::is_whitespace) {
        return Err("complex values take the form a+bi with no spaces".into());
    }
    let z: Complex64 = s.parse().map_err(|_| format!("`{s}` is not of the form a+bi"))?;
    if !z.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(z)
}
