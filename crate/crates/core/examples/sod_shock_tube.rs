//! Sod shock tube with each splitting. Pass a directory to write the final
//! `x,rho,u,p` profiles.

use std::path::PathBuf;

use fvs_spectra::fvs1d::{run, RunConfig};
use fvs_spectra::{Result, SchemeId};

fn main() -> Result<()> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from);
    for scheme in SchemeId::ALL {
        let cfg = RunConfig::sod(scheme);
        let r = run(&cfg)?;
        let a = &r.audit;
        println!(
            "{scheme:>9}: {} steps to t={}  defect={:.2e}  min rho={:.4} min p={:.4}",
            a.steps, a.final_time, a.total_conservation_defect, a.min_rho, a.min_p
        );
        let last = r.snapshots.last().expect("final snapshot");
        for x in [0.2, 0.5, 0.7, 0.8, 0.9] {
            let i = ((x / 1.0) * cfg.n_cells as f64) as usize;
            println!("    x={:.3} rho={:.4} u={:.4} p={:.4}", last.x[i], last.rho[i], last.u[i], last.p[i]);
        }
        if let Some(dir) = &out_dir {
            last.save(&dir.join(format!("sod_{scheme}.csv")))?;
        }
    }
    Ok(())
}
