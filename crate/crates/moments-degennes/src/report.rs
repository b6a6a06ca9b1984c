use crate::moments::MomentSet;
use band1d::BandMinimum;
use std::io::Write;
use std::path::Path;

/// Write moment rows as CSV with the pinned header
/// `a,M0,M1,M2,M3,M4,quad_err` and 17-significant-digit floats.
pub fn write_moments_csv(path: &Path, rows: &[MomentSet]) -> std::io::Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "a,M0,M1,M2,M3,M4,quad_err")?;
    for row in rows {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            row.a,
            row.m(0),
            row.m(1),
            row.m(2),
            row.m(3),
            row.m(4),
            row.quadrature_error
        )?;
    }
    out.flush()
}

/// Write band-minimum rows as CSV with the pinned header
/// `a,sigma_a,beta_a,mu_pp`.
pub fn write_minimum_csv(path: &Path, rows: &[BandMinimum]) -> std::io::Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "a,sigma_a,beta_a,mu_pp")?;
    for row in rows {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            row.a, row.sigma_a, row.beta_a, row.mu_pp
        )?;
    }
    out.flush()
}
