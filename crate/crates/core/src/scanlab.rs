//! Grid and random scans of the two discriminant targets over the `(γ, M)`
//! box, bounded Nelder–Mead refinement, and CSV output.
//!
//! Both targets are evaluated at `a = 1`; the sound speed only contributes a
//! positive factor.
//!
//! Random samples come from SplitMix64 (Steele, Lea and Flood 2014) used as a
//! counter-based generator: sample `i` of seed `s` takes its two uniforms from
//! `mix(s + (2i+1)·φ)` and `mix(s + (2i+2)·φ)`, `φ = 0x9E3779B97F4A7C15`. Every
//! sample therefore depends only on `(seed, i)`, and the min reduction breaks
//! ties on `(value, γ, M)`, so reports are bit-identical for any worker count.

use std::cell::Cell;
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{ausm2_discriminant, h_vanleer};
use crate::text::sig17;

/// Environment variable capping the number of scan workers.
pub const THREADS_ENV: &str = "FVS_SPECTRA_THREADS";

pub const GRID_HEADER: &str = "gamma,mach,value";
pub const SUMMARY_HEADER: &str = "target,min_value,argmin_gamma,argmin_mach,negative_count,total,seed";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Target {
    /// `H(γ, M)`.
    VanLeerH,
    /// Cubic discriminant of the second-order AUSM invariants.
    Ausm2Discriminant,
}

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::VanLeerH => "vanleer-h",
            Target::Ausm2Discriminant => "ausm2-disc",
        }
    }

    pub fn eval(&self, gamma: f64, mach: f64) -> f64 {
        let v = match self {
            Target::VanLeerH => h_vanleer(gamma, mach),
            Target::Ausm2Discriminant => ausm2_discriminant(gamma, mach),
        };
        v + 0.0
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vanleer-h" => Ok(Target::VanLeerH),
            "ausm2-disc" => Ok(Target::Ausm2Discriminant),
            other => Err(Error::Parse(format!(
                "unknown scan target '{other}' (expected vanleer-h or ausm2-disc)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanConfig {
    pub target: Target,
    pub gamma_range: (f64, f64),
    pub mach_range: (f64, f64),
    /// Nodes along `γ` and `M`, endpoints included.
    pub grid: (usize, usize),
    pub samples: u64,
    pub seed: u64,
    /// Values below `−tolerance` count as negative.
    pub tolerance: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            target: Target::VanLeerH,
            gamma_range: (1.0, 3.0),
            mach_range: (-1.0, 1.0),
            grid: (1024, 1024),
            samples: 1_000_000,
            seed: 42,
            tolerance: 1e-12,
        }
    }
}

impl ScanConfig {
    pub fn for_target(target: Target) -> Self {
        ScanConfig {
            target,
            ..ScanConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (glo, ghi) = self.gamma_range;
        let (mlo, mhi) = self.mach_range;
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(1.0 <= glo && glo < ghi && ghi <= 3.0) {
            return bad(format!("gamma range must satisfy 1 <= lo < hi <= 3, got [{glo}, {ghi}]"));
        }
        if !(-1.0 <= mlo && mlo < mhi && mhi <= 1.0) {
            return bad(format!("Mach range must satisfy -1 <= lo < hi <= 1, got [{mlo}, {mhi}]"));
        }
        if self.grid.0 < 2 || self.grid.1 < 2 {
            return bad(format!("grid needs at least 2x2 nodes, got {}x{}", self.grid.0, self.grid.1));
        }
        if !(self.tolerance.is_finite() && self.tolerance >= 0.0) {
            return bad(format!("tolerance must be finite and non-negative, got {}", self.tolerance));
        }
        Ok(())
    }

    fn on_boundary(&self, g: f64, m: f64) -> bool {
        const EDGE: f64 = 1e-9;
        (g - self.gamma_range.0).abs() <= EDGE
            || (g - self.gamma_range.1).abs() <= EDGE
            || (m - self.mach_range.0).abs() <= EDGE
            || (m - self.mach_range.1).abs() <= EDGE
    }

    /// `γ` node `i` of the grid; the last node is exactly the upper bound.
    pub fn gamma_node(&self, i: usize) -> f64 {
        node(self.gamma_range, self.grid.0, i)
    }

    pub fn mach_node(&self, j: usize) -> f64 {
        node(self.mach_range, self.grid.1, j)
    }
}

fn node((lo, hi): (f64, f64), n: usize, i: usize) -> f64 {
    if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * (i as f64 / (n - 1) as f64)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub target: Target,
    /// `+∞` when nothing was sampled.
    pub min_value: f64,
    /// `None` when nothing was sampled.
    pub argmin: Option<(f64, f64)>,
    pub negative_count: u64,
    pub total: u64,
    /// Argmin within `1e-9` of an edge of the scanned box.
    pub boundary_min: bool,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug)]
struct Best {
    value: f64,
    gamma: f64,
    mach: f64,
}

impl Best {
    const EMPTY: Best = Best {
        value: f64::INFINITY,
        gamma: f64::NAN,
        mach: f64::NAN,
    };

    fn key(&self) -> (f64, f64, f64) {
        (self.value, self.gamma, self.mach)
    }

    fn min(self, other: Best) -> Best {
        let (a, b) = (self.key(), other.key());
        let ord = a
            .0
            .total_cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.total_cmp(&b.2));
        if ord.is_le() {
            self
        } else {
            other
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Acc {
    best: Best,
    negatives: u64,
    total: u64,
}

impl Acc {
    const EMPTY: Acc = Acc {
        best: Best::EMPTY,
        negatives: 0,
        total: 0,
    };

    fn push(mut self, gamma: f64, mach: f64, value: f64, tol: f64) -> Acc {
        self.best = self.best.min(Best { value, gamma, mach });
        self.negatives += u64::from(value < -tol);
        self.total += 1;
        self
    }

    fn merge(self, o: Acc) -> Acc {
        Acc {
            best: self.best.min(o.best),
            negatives: self.negatives + o.negatives,
            total: self.total + o.total,
        }
    }
}

fn finish(cfg: &ScanConfig, acc: Acc) -> ScanReport {
    let argmin = (acc.total > 0).then_some((acc.best.gamma, acc.best.mach));
    ScanReport {
        target: cfg.target,
        min_value: acc.best.value,
        argmin,
        negative_count: acc.negatives,
        total: acc.total,
        boundary_min: argmin.is_some_and(|(g, m)| cfg.on_boundary(g, m)),
        seed: cfg.seed,
    }
}

/// Worker cap from [`THREADS_ENV`]; `None` when unset or empty.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) if s.trim().is_empty() => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::InvalidParameter(format!(
                "{THREADS_ENV} must be a positive integer, got '{s}'"
            ))),
        },
    }
}

fn in_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start scan workers: {e}")))?;
    Ok(pool.install(f))
}

/// Tensor-grid scan, endpoints included, using the environment's worker cap.
pub fn grid_scan(cfg: &ScanConfig) -> Result<ScanReport> {
    grid_scan_with_threads(cfg, thread_cap()?)
}

pub fn grid_scan_with_threads(cfg: &ScanConfig, threads: Option<usize>) -> Result<ScanReport> {
    cfg.validate()?;
    let (ng, nm) = cfg.grid;
    let acc = in_pool(threads, || {
        (0..ng)
            .into_par_iter()
            .map(|i| {
                let g = cfg.gamma_node(i);
                (0..nm).fold(Acc::EMPTY, |acc, j| {
                    let m = cfg.mach_node(j);
                    acc.push(g, m, cfg.target.eval(g, m), cfg.tolerance)
                })
            })
            .reduce(|| Acc::EMPTY, Acc::merge)
    })?;
    Ok(finish(cfg, acc))
}

fn splitmix(state: u64) -> u64 {
    let mut z = state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Uniform `[0, 1)` draw `k` of the stream `seed`.
pub fn uniform(seed: u64, k: u64) -> f64 {
    let bits = splitmix(seed.wrapping_add(k.wrapping_add(1).wrapping_mul(GOLDEN)));
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Point `i` of the random scan.
pub fn sample_point(cfg: &ScanConfig, i: u64) -> (f64, f64) {
    let (glo, ghi) = cfg.gamma_range;
    let (mlo, mhi) = cfg.mach_range;
    let g = glo + (ghi - glo) * uniform(cfg.seed, 2 * i);
    let m = mlo + (mhi - mlo) * uniform(cfg.seed, 2 * i + 1);
    (g, m)
}

/// Uniform random scan of the box using the environment's worker cap.
pub fn random_scan(cfg: &ScanConfig) -> Result<ScanReport> {
    random_scan_with_threads(cfg, thread_cap()?)
}

pub fn random_scan_with_threads(cfg: &ScanConfig, threads: Option<usize>) -> Result<ScanReport> {
    cfg.validate()?;
    const CHUNK: u64 = 4096;
    let chunks = cfg.samples.div_ceil(CHUNK);
    let acc = in_pool(threads, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let end = ((c + 1) * CHUNK).min(cfg.samples);
                (c * CHUNK..end).fold(Acc::EMPTY, |acc, i| {
                    let (g, m) = sample_point(cfg, i);
                    acc.push(g, m, cfg.target.eval(g, m), cfg.tolerance)
                })
            })
            .reduce(|| Acc::EMPTY, Acc::merge)
    })?;
    Ok(finish(cfg, acc))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Refinement {
    pub value: f64,
    pub argmin: (f64, f64),
    pub evaluations: usize,
    /// False when the evaluation budget ran out first.
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NelderMeadOptions {
    /// Stop when the simplex values agree to within this.
    pub value_tol: f64,
    pub max_evaluations: usize,
    /// Initial edge length as a fraction of each box side.
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            value_tol: 1e-10,
            max_evaluations: 10_000,
            initial_step: 0.1,
        }
    }
}

/// Minimises `target` over the full box `[1, 3] × [−1, 1]` from `start`.
pub fn refine_min(target: Target, start: (f64, f64)) -> Result<Refinement> {
    nelder_mead_box(
        |g, m| target.eval(g, m),
        start,
        [(1.0, 3.0), (-1.0, 1.0)],
        NelderMeadOptions::default(),
    )
}

/// Two-dimensional Nelder–Mead with every trial point clamped into `bounds`.
///
/// After the simplex values agree to `value_tol` the search restarts once from
/// the best point with a fresh simplex, and stops when that restart does not
/// improve on it by more than `value_tol`.
pub fn nelder_mead_box<F>(f: F, start: (f64, f64), bounds: [(f64, f64); 2], opts: NelderMeadOptions) -> Result<Refinement>
where
    F: Fn(f64, f64) -> f64,
{
    for (k, &(lo, hi)) in bounds.iter().enumerate() {
        let x = if k == 0 { start.0 } else { start.1 };
        if !(lo < hi && (lo..=hi).contains(&x)) {
            return Err(Error::InvalidParameter(format!(
                "start coordinate {x} outside [{lo}, {hi}]"
            )));
        }
    }
    let clamp = |p: [f64; 2]| [p[0].clamp(bounds[0].0, bounds[0].1), p[1].clamp(bounds[1].0, bounds[1].1)];
    let evals = Cell::new(0usize);
    let eval = |p: [f64; 2]| {
        evals.set(evals.get() + 1);
        f(p[0], p[1])
    };

    let mut best = [start.0, start.1];
    let mut best_val = eval(best);
    let mut converged = false;
    let mut restarted = false;
    while evals.get() < opts.max_evaluations {
        let before = best_val;
        let mut simplex = vec![(best, best_val)];
        for k in 0..2 {
            let width = bounds[k].1 - bounds[k].0;
            let mut p = best;
            p[k] += opts.initial_step * width;
            if p[k] > bounds[k].1 {
                p[k] = best[k] - opts.initial_step * width;
            }
            let p = clamp(p);
            simplex.push((p, eval(p)));
        }
        let inner_converged = loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            if (simplex[2].1 - simplex[0].1).abs() <= opts.value_tol {
                break true;
            }
            if evals.get() >= opts.max_evaluations {
                break false;
            }
            let centroid = [
                0.5 * (simplex[0].0[0] + simplex[1].0[0]),
                0.5 * (simplex[0].0[1] + simplex[1].0[1]),
            ];
            let along = |t: f64| {
                clamp([
                    centroid[0] + t * (simplex[2].0[0] - centroid[0]),
                    centroid[1] + t * (simplex[2].0[1] - centroid[1]),
                ])
            };
            let xr = along(-1.0);
            let fr = eval(xr);
            if fr < simplex[0].1 {
                let xe = along(-2.0);
                let fe = eval(xe);
                simplex[2] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else if fr < simplex[1].1 {
                simplex[2] = (xr, fr);
            } else {
                let (xc, fc) = if fr < simplex[2].1 {
                    let x = along(-0.5);
                    (x, eval(x))
                } else {
                    let x = along(0.5);
                    (x, eval(x))
                };
                if fc < simplex[2].1.min(fr) {
                    simplex[2] = (xc, fc);
                } else {
                    let x0 = simplex[0].0;
                    for v in simplex.iter_mut().skip(1) {
                        let p = [0.5 * (x0[0] + v.0[0]), 0.5 * (x0[1] + v.0[1])];
                        *v = (p, eval(p));
                    }
                }
            }
        };
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[0].1 < best_val {
            best = simplex[0].0;
            best_val = simplex[0].1;
        }
        if !inner_converged {
            break;
        }
        if restarted && before - best_val <= opts.value_tol {
            converged = true;
            break;
        }
        restarted = true;
    }
    Ok(Refinement {
        value: best_val,
        argmin: (best[0], best[1]),
        evaluations: evals.get(),
        converged,
    })
}

/// Every grid node with its target value, row-major in `(γ, M)`.
pub fn grid_values(cfg: &ScanConfig) -> Result<Vec<(f64, f64, f64)>> {
    cfg.validate()?;
    let (ng, nm) = cfg.grid;
    Ok((0..ng)
        .flat_map(|i| {
            let g = cfg.gamma_node(i);
            (0..nm).map(move |j| {
                let m = cfg.mach_node(j);
                (g, m, cfg.target.eval(g, m))
            })
        })
        .collect())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

/// Writes `gamma,mach,value` rows for every grid node.
pub fn emit_grid_csv(cfg: &ScanConfig, path: &Path) -> Result<()> {
    let rows = grid_values(cfg)?;
    let mut out = create(path)?;
    write_grid_rows(&mut out, &rows).map_err(|e| Error::io(path, e))
}

pub fn write_grid_rows(out: &mut impl Write, rows: &[(f64, f64, f64)]) -> std::io::Result<()> {
    writeln!(out, "{GRID_HEADER}")?;
    for &(g, m, v) in rows {
        writeln!(out, "{},{},{}", sig17(g), sig17(m), sig17(v))?;
    }
    out.flush()
}

/// One summary row per report. An empty report prints `inf` and empty argmin
/// fields.
pub fn write_summary(out: &mut impl Write, reports: &[ScanReport]) -> std::io::Result<()> {
    writeln!(out, "{SUMMARY_HEADER}")?;
    for r in reports {
        let (g, m) = match r.argmin {
            Some((g, m)) => (sig17(g), sig17(m)),
            None => (String::new(), String::new()),
        };
        let min = if r.min_value.is_finite() { sig17(r.min_value) } else { "inf".into() };
        writeln!(out, "{},{},{},{},{},{},{}", r.target, min, g, m, r.negative_count, r.total, r.seed)?;
    }
    out.flush()
}

pub fn emit_summary_csv(reports: &[ScanReport], path: &Path) -> Result<()> {
    let mut out = create(path)?;
    write_summary(&mut out, reports).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_grid() {
        let cfg = ScanConfig {
            grid: (2, 2),
            ..ScanConfig::default()
        };
        let r = grid_scan_with_threads(&cfg, Some(1)).unwrap();
        assert_eq!(r.min_value, 64.0);
        assert_eq!(r.argmin, Some((1.0, 1.0)));
        assert_eq!(r.total, 4);
        assert!(r.boundary_min);
    }

    #[test]
    fn grid_endpoints_exact() {
        let cfg = ScanConfig {
            grid: (7, 13),
            gamma_range: (1.1, 2.9),
            mach_range: (-0.7, 0.3),
            ..ScanConfig::default()
        };
        assert_eq!(cfg.gamma_node(0), 1.1);
        assert_eq!(cfg.gamma_node(6), 2.9);
        assert_eq!(cfg.mach_node(12), 0.3);
    }

    #[test]
    fn empty_random_scan() {
        let cfg = ScanConfig {
            samples: 0,
            ..ScanConfig::default()
        };
        let r = random_scan_with_threads(&cfg, Some(2)).unwrap();
        assert_eq!(r.total, 0);
        assert_eq!(r.min_value, f64::INFINITY);
        assert_eq!(r.argmin, None);
    }

    #[test]
    fn random_scan_independent_of_workers() {
        let cfg = ScanConfig {
            samples: 50_000,
            seed: 7,
            target: Target::Ausm2Discriminant,
            ..ScanConfig::default()
        };
        let a = random_scan_with_threads(&cfg, Some(1)).unwrap();
        let b = random_scan_with_threads(&cfg, Some(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.min_value.to_bits(), b.min_value.to_bits());
    }

    #[test]
    fn uniform_in_unit_interval() {
        for k in 0..10_000 {
            let u = uniform(123, k);
            assert!((0.0..1.0).contains(&u));
        }
        assert_ne!(uniform(1, 0), uniform(2, 0));
    }

    #[test]
    fn constant_target_stays_at_start() {
        let r = nelder_mead_box(|_, _| 5.0, (1.7, 0.2), [(1.0, 3.0), (-1.0, 1.0)], NelderMeadOptions::default()).unwrap();
        assert_eq!(r.value, 5.0);
        assert_eq!(r.argmin, (1.7, 0.2));
        assert!(r.converged);
    }

    #[test]
    fn quadratic_bowl() {
        let r = nelder_mead_box(
            |x, y| (x - 2.2).powi(2) + 3.0 * (y + 0.4).powi(2),
            (1.5, 0.5),
            [(1.0, 3.0), (-1.0, 1.0)],
            NelderMeadOptions::default(),
        )
        .unwrap();
        assert!((r.argmin.0 - 2.2).abs() < 1e-4 && (r.argmin.1 + 0.4).abs() < 1e-4);
        assert!(r.value < 1e-9);
    }

    #[test]
    fn start_outside_box_rejected() {
        assert!(refine_min(Target::VanLeerH, (0.5, 0.0)).is_err());
    }

    #[test]
    fn validation() {
        let d = ScanConfig::default;
        assert!(ScanConfig { grid: (1, 5), ..d() }.validate().is_err());
        assert!(ScanConfig { gamma_range: (0.5, 2.0), ..d() }.validate().is_err());
        assert!(ScanConfig { mach_range: (0.5, 0.5), ..d() }.validate().is_err());
    }

    #[test]
    fn summary_format() {
        let cfg = ScanConfig {
            grid: (2, 2),
            ..ScanConfig::default()
        };
        let r = grid_scan_with_threads(&cfg, Some(1)).unwrap();
        let mut buf = Vec::new();
        write_summary(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(SUMMARY_HEADER));
        assert_eq!(
            lines.next(),
            Some("vanleer-h,6.4000000000000000e1,1.0000000000000000e0,1.0000000000000000e0,0,4,42")
        );
        assert!(!text.contains('\r'));
    }
}
