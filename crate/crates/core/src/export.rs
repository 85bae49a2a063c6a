//! CSV writers. Floats are written with 17 significant digits, lines end
//! in `\n`.

use std::io::Write;

use crate::classical::LissajousEnsemble;
use crate::error::Result;
use crate::localization::TubeReport;
use crate::wavefield::DensityField;

/// `{:.16e}`: one leading digit plus sixteen decimals.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// `k,t,x,y`: `samples` rows per orbit at `t_i = i·T/samples`.
pub fn write_orbits_csv<W: Write>(mut w: W, ensemble: &LissajousEnsemble, samples: usize) -> Result<()> {
    w.write_all(b"k,t,x,y\n")?;
    for (orbit, k) in ensemble.orbits.iter().zip(&ensemble.k_labels) {
        let dt = orbit.period() / samples as f64;
        for i in 0..samples {
            let t = i as f64 * dt;
            let (x, y) = orbit.position(t);
            writeln!(w, "{k},{},{},{}", fmt_f64(t), fmt_f64(x), fmt_f64(y))?;
        }
    }
    Ok(())
}

/// `x,y,density`, row-major with y slowest.
pub fn write_density_csv<W: Write>(mut w: W, field: &DensityField) -> Result<()> {
    w.write_all(b"x,y,density\n")?;
    let xs = field.grid.xs();
    for (iy, y) in field.grid.ys().iter().enumerate() {
        let ys = fmt_f64(*y);
        for (ix, x) in xs.iter().enumerate() {
            writeln!(w, "{},{ys},{}", fmt_f64(*x), fmt_f64(field.at(ix, iy)))?;
        }
    }
    Ok(())
}

/// `N,epsilon,union_mass,per_orbit_masses` with the per-orbit list `;`-joined.
pub fn write_report_csv<W: Write>(mut w: W, rows: &[(u32, TubeReport)]) -> Result<()> {
    w.write_all(b"N,epsilon,union_mass,per_orbit_masses\n")?;
    for (n, r) in rows {
        let per: Vec<String> = r.per_orbit_mass.iter().map(|&m| fmt_f64(m)).collect();
        writeln!(w, "{n},{},{},{}", fmt_f64(r.epsilon), fmt_f64(r.union_mass), per.join(";"))?;
    }
    Ok(())
}
