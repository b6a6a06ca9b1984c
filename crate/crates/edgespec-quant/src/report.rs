//! CSV output for spectra and counting functions. Floats are printed with
//! `{:.16e}` so reruns are byte-identical and round-trip exactly.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::QuantError;
use crate::spectrum::SpectrumResult;
use crate::weyl::WeylCount;

/// Write one row per eigenvalue: `hbar,theta,n,lambda` with `n` 1-based
/// within each spectrum block.
pub fn write_spectrum_csv(
    path: impl AsRef<Path>,
    spectra: &[SpectrumResult],
) -> Result<(), QuantError> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "hbar,theta,n,lambda")?;
    for s in spectra {
        for (i, lambda) in s.eigenvalues.iter().enumerate() {
            writeln!(
                out,
                "{:.16e},{:.16e},{},{:.16e}",
                s.hbar,
                s.theta,
                i + 1,
                lambda
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Write one row per counting-function sample: `h,E,count,prediction,ratio`.
pub fn write_weyl_csv(path: impl AsRef<Path>, rows: &[WeylCount]) -> Result<(), QuantError> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "h,E,count,prediction,ratio")?;
    for r in rows {
        writeln!(
            out,
            "{:.16e},{:.16e},{},{:.16e},{:.16e}",
            r.h,
            r.e,
            r.count,
            r.prediction,
            r.ratio()
        )?;
    }
    out.flush()?;
    Ok(())
}
