//! Primitive/conservative round trip and the two transform Jacobians.

use fvs_spectra::state::{conservative_to_primitive, jac_u_of_w, jac_u_of_w_det, jac_w_of_u, primitive_to_conservative};
use fvs_spectra::{GasParams, PrimitiveState, Result};

fn main() -> Result<()> {
    let gas = GasParams::air();
    let w = PrimitiveState::new(1.2, 0.9, 0.4)?;
    let u = primitive_to_conservative(&w, gas);
    let back = conservative_to_primitive(&u, gas)?;
    println!("W          = {:?}", w.as_array());
    println!("U          = {:?}", u.as_array());
    println!("W(U(W))    = {:?}", back.as_array());
    println!("p = {}, E = {}, h = {}", w.pressure(gas), w.total_energy(gas), w.specific_enthalpy(gas));

    let j = jac_u_of_w(&w, gas);
    let t = jac_w_of_u(&w, gas);
    println!("dU/dW =\n{j}");
    println!("dW/dU =\n{t}");
    println!("dU/dW * dW/dU =\n{}", j * t);
    println!("det dU/dW = {} (closed form {})", j.det(), jac_u_of_w_det(&w, gas));
    Ok(())
}
