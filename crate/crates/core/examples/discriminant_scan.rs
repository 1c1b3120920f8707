//! Grid and random scans of both discriminant targets, then Nelder–Mead
//! refinement. Pass a directory to also write the CSV files.

use std::path::PathBuf;

use fvs_spectra::scanlab::{emit_grid_csv, emit_summary_csv, grid_scan, random_scan, refine_min, ScanConfig, Target};
use fvs_spectra::Result;

fn main() -> Result<()> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from);
    for (target, start) in [(Target::VanLeerH, (1.5, 0.5)), (Target::Ausm2Discriminant, (2.0, -0.9))] {
        let cfg = ScanConfig::for_target(target);
        let g = grid_scan(&cfg)?;
        let r = random_scan(&cfg)?;
        let nm = refine_min(target, start)?;
        println!("{target}");
        println!("  grid   min={:.6e} at {:?}  negatives={}/{}", g.min_value, g.argmin, g.negative_count, g.total);
        println!("  random min={:.6e} at {:?}  negatives={}/{}", r.min_value, r.argmin, r.negative_count, r.total);
        println!("  refine from {start:?}: {:.6e} at {:?} ({} evaluations)", nm.value, nm.argmin, nm.evaluations);
        if let Some(dir) = &out_dir {
            let small = ScanConfig { grid: (128, 128), ..cfg.clone() };
            emit_grid_csv(&small, &dir.join(format!("{target}.csv")))?;
            emit_summary_csv(&[g, r], &dir.join(format!("{target}.summary.csv")))?;
        }
    }
    Ok(())
}
