//! Where the AUSM linear-pressure invariants `S` and `D` change sign.

use fvs_spectra::spectral::{ausm_linear_det_bracket, ausm_linear_s_root, classify_spectrum, closed_form_coeffs};
use fvs_spectra::{Result, SchemeId};

fn main() -> Result<()> {
    for gamma in [1.2, 1.4, 5.0 / 3.0, 2.5] {
        let m0 = ausm_linear_s_root(gamma)?;
        let s_left = closed_form_coeffs(SchemeId::AusmLinear, gamma, m0 - 1e-4, 1.0)?.s;
        let s_right = closed_form_coeffs(SchemeId::AusmLinear, gamma, m0 + 1e-4, 1.0)?.s;
        let d_lo = closed_form_coeffs(SchemeId::AusmLinear, gamma, -0.9, 1.0)?.d;
        let d_hi = closed_form_coeffs(SchemeId::AusmLinear, gamma, 0.9, 1.0)?.d;
        println!("gamma={gamma:.4}: M0={m0:.6}  S(M0-)={s_left:+.3e} S(M0+)={s_right:+.3e}");
        println!(
            "    Q(-1)={} Q(1)={}  D(-0.9)={d_lo:+.3e} D(0.9)={d_hi:+.3e}",
            ausm_linear_det_bracket(gamma, -1.0),
            ausm_linear_det_bracket(gamma, 1.0)
        );
        for m in [-0.95, -0.5, 0.5] {
            println!("    M={m:>5}: {}", classify_spectrum(SchemeId::AusmLinear, gamma, m, 1.0)?.classification);
        }
    }
    Ok(())
}
