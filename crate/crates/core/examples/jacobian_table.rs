//! `∂F⁺/∂U` for each scheme: chain-rule product, closed-form entry table and
//! central differences side by side.

use fvs_spectra::jacobian::{fd_jacobian, jac_plus_conservative, printed, relative_residual, FD_STEP};
use fvs_spectra::splitting::split_flux_plus;
use fvs_spectra::state::{conservative_to_primitive, primitive_to_conservative};
use fvs_spectra::{GasParams, PrimitiveState, Result, SchemeId};

fn main() -> Result<()> {
    let (gamma, mach, a) = (1.4, 0.35, 1.3);
    let gas = GasParams::new(gamma)?;
    for scheme in SchemeId::ALL {
        let w = PrimitiveState::new(0.8, a, mach)?;
        let j = jac_plus_conservative(&w, gas, scheme)?;
        let table = printed::table(scheme, gamma, mach, a);
        let u = primitive_to_conservative(&w, gas);
        let fd = fd_jacobian(|u| Ok(split_flux_plus(&conservative_to_primitive(u, gas)?, gas, scheme)), &u, FD_STEP)?;
        println!("{scheme} at gamma={gamma} M={mach} a={a}\n{j}");
        println!("  vs entry table: {:.2e}", relative_residual(&j, &table));
        println!("  vs finite differences: {:.2e}", relative_residual(&j, &fd));
        println!("  det = {:.3e}\n", j.det());
    }
    Ok(())
}
