use std::io::Write;
use std::path::Path;

use crate::error::GeometryError;
use crate::sampling::CurveGeometry;

/// Write the sampled curvature profile as CSV (`s,k`, full precision,
/// no timestamps — reruns are byte-identical).
pub fn write_geometry_csv(path: &Path, geom: &CurveGeometry) -> Result<(), GeometryError> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "s,k")?;
    for (s, k) in geom.s_samples.iter().zip(&geom.k_samples) {
        writeln!(out, "{s:.16e},{k:.16e}")?;
    }
    out.flush()?;
    Ok(())
}
