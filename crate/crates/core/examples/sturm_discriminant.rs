//! Exact Sturm root counts of `H(γ, ·)` on `(−1, 1)` for rational `γ`.

use fvs_spectra::exactpoly::{count_roots_in_interval, h_poly_exact, parse_rational, Rational};
use fvs_spectra::Result;

fn main() -> Result<()> {
    let lo = parse_rational("-1")?;
    let hi = parse_rational("1")?;
    for g in ["11/10", "13/10", "7/5", "3/2", "5/3", "2", "12/5", "27/10", "29/10", "3"] {
        let gamma: Rational = parse_rational(g)?;
        let h = h_poly_exact(&gamma);
        let rc = count_roots_in_interval(&h, &lo, &hi)?;
        println!(
            "gamma={g:>5}: degrees {:?}  V(-1)={} V(1)={}  roots={}  H(-1)={} H(1)={}",
            rc.degrees,
            rc.v_lo,
            rc.v_hi,
            rc.count,
            h.eval(&lo),
            h.eval(&hi)
        );
    }
    Ok(())
}
