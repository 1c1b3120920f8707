//! `F⁺`, `F⁻` and their sum for each scheme across the sonic range.

use fvs_spectra::splitting::{full_flux, split_flux_minus, split_flux_plus};
use fvs_spectra::{GasParams, PrimitiveState, Result, SchemeId};

fn main() -> Result<()> {
    let gas = GasParams::air();
    println!("{:>9} {:>6} {:>40} {:>12}", "scheme", "M", "F+ (mass, mom, en)", "|F+ + F- - F|");
    for scheme in SchemeId::ALL {
        for m in [-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5] {
            let w = PrimitiveState::new(1.0, 1.0, m)?;
            let fp = split_flux_plus(&w, gas, scheme);
            let fm = split_flux_minus(&w, gas, scheme);
            let defect = (fp + fm - full_flux(&w, gas)).max_abs();
            println!(
                "{:>9} {:>6.2} {:>12.6} {:>12.6} {:>12.6} {:>12.2e}",
                scheme.name(),
                m,
                fp.mass,
                fp.mom,
                fp.en,
                defect
            );
        }
    }
    Ok(())
}
