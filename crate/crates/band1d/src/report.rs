use std::io::Write;

use crate::band::BandPoint;

/// Emit band rows as CSV: header `a,sigma,level,mu`, 17 significant digits,
/// '.' decimal separator, newline-terminated.
pub fn write_band_csv<W: Write>(points: &[BandPoint], mut out: W) -> std::io::Result<()> {
    writeln!(out, "a,sigma,level,mu")?;
    for p in points {
        writeln!(out, "{:.16e},{:.16e},{},{:.16e}", p.a, p.sigma, p.level, p.mu)?;
    }
    Ok(())
}
