use std::io::Write;
use std::path::Path;

use crate::error::EffSymbolError;
use crate::reduced::ReducedSymbol;

/// Write the sampled reduced symbol as CSV (`s,k,lin,c1,quad`, full
/// precision, no timestamps).
pub fn write_effsym_csv(path: &Path, sym: &ReducedSymbol) -> Result<(), EffSymbolError> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "s,k,lin,c1,quad")?;
    for i in 0..sym.s_samples.len() {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            sym.s_samples[i],
            sym.k_samples[i],
            sym.lin_samples[i],
            sym.c1_samples[i],
            sym.quad_samples[i]
        )?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduced::{ReducedSymbol, SymbolCoefficients};

    #[test]
    fn csv_layout_and_round_trip() {
        let sym = ReducedSymbol {
            a: -0.5,
            sigma_a: 0.66,
            mu_pp: 1.0,
            coefficients: SymbolCoefficients {
                a: -0.5,
                sigma: 0.66,
                g1: 0.25,
                g1_prime_sigma: 0.5,
                g2: -0.125,
            },
            s_samples: vec![-1.0, 0.0, 1.0],
            k_samples: vec![0.5, 2.0, 0.5],
            lin_samples: vec![0.125, 0.5, 0.125],
            c1_samples: vec![0.25, 1.0, 0.25],
            quad_samples: vec![0.0, -0.25, 0.0],
        };
        let path = std::env::temp_dir().join(format!(
            "effsym_csv_{}_{:?}.csv",
            std::process::id(),
            std::thread::current().id()
        ));
        write_effsym_csv(&path, &sym).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::remove_file(&path).ok();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("s,k,lin,c1,quad"));
        let row: Vec<f64> = lines
            .next()
            .unwrap()
            .split(',')
            .map(|v| v.parse().unwrap())
            .collect();
        assert_eq!(row, vec![-1.0, 0.5, 0.125, 0.25, 0.0]);
        assert_eq!(lines.count(), 2);
    }
}
