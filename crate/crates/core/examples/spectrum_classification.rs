//! Sign structure of the `∂F⁺/∂U` spectrum along a Mach sweep.

use fvs_spectra::spectral::{classify_spectrum, Eigenvalues};
use fvs_spectra::{Result, SchemeId};

fn main() -> Result<()> {
    let gamma = 1.4;
    for scheme in SchemeId::ALL {
        println!("{scheme}");
        for k in -4..=4 {
            let m = 0.24 * k as f64;
            let r = classify_spectrum(scheme, gamma, m, 1.0)?;
            let eig = match r.eigenvalues {
                Eigenvalues::Real(v) => format!("{:>10.4e} {:>10.4e} {:>10.4e}", v[0], v[1], v[2]),
                Eigenvalues::ComplexPair { real, re, im } => format!("{real:.4e}, {re:.4e} ± {im:.4e}i"),
            };
            println!(
                "  M={m:>5.2}  T={:>8.4} S={:>9.5} D={:>10.3e}  mu: {eig}  {}",
                r.coeffs.t, r.coeffs.s, r.coeffs.d, r.classification
            );
        }
    }
    Ok(())
}
