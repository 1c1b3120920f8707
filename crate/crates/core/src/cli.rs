//! Command-line front end. Exit codes: 0 success, 2 invalid input, 1 runtime
//! failure. Data goes to stdout (or files), diagnostics to stderr, and every
//! command echoes its effective configuration.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactpoly::{count_roots_in_interval, h_poly_exact, parse_rational, SturmChain};
use crate::fvs1d::{self, RunConfig};
use crate::jacobian::{fd_jacobian, jacobian_pair, relative_residual, FD_STEP};
use crate::mat3::Mat3;
use crate::scanlab::{self, ScanConfig, ScanReport, Target};
use crate::spectral::{classify_spectrum, Eigenvalues};
use crate::splitting::{split_flux_plus, SchemeId};
use crate::state::{conservative_to_primitive, primitive_to_conservative, GasParams, PrimitiveState};
use crate::text::sig17;

#[derive(Debug, Parser)]
#[command(name = "fvs-spectra", version, about = "Flux-vector splitting Jacobians, spectra and scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// ∂F⁺/∂U and ∂F⁺/∂W at one state, with a finite-difference residual.
    #[command(allow_negative_numbers = true)]
    Jacobian(JacobianArgs),
    /// Characteristic invariants, eigenvalues and their sign class.
    #[command(allow_negative_numbers = true)]
    Spectrum(SpectrumArgs),
    /// Exact Sturm root count of H(γ, ·) on an interval.
    #[command(allow_negative_numbers = true)]
    Sturm(SturmArgs),
    /// Grid and random scans of a discriminant target.
    #[command(allow_negative_numbers = true)]
    Scan(ScanArgs),
    /// Run the finite-volume solver.
    #[command(allow_negative_numbers = true)]
    Solve(SolveArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

fn parse_scheme(s: &str) -> std::result::Result<SchemeId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_target(s: &str) -> std::result::Result<Target, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
struct StateArgs {
    #[arg(long, value_parser = parse_scheme)]
    scheme: SchemeId,
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    mach: f64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
}

#[derive(Debug, Args)]
struct JacobianArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, default_value_t = FD_STEP)]
    fd_step: f64,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
}

#[derive(Debug, Args)]
struct SturmArgs {
    /// Exact value such as 7/5, 2 or 1.4.
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    lo: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    hi: String,
    /// Also print every chain member.
    #[arg(long)]
    show_chain: bool,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, value_parser = parse_target)]
    target: Target,
    /// Nodes as NxM (γ × M).
    #[arg(long, default_value = "1024x1024")]
    grid: String,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma_lo: f64,
    #[arg(long, default_value_t = 3.0)]
    gamma_hi: f64,
    #[arg(long, default_value_t = -1.0)]
    mach_lo: f64,
    #[arg(long, default_value_t = 1.0)]
    mach_hi: f64,
    /// Grid dump (`gamma,mach,value`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary file; defaults to the grid dump path with its extension
    /// replaced by `.summary.csv`.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Also run Nelder–Mead from this `γ,M` start.
    #[arg(long)]
    refine_from: Option<String>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Flat key=value file; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_scheme)]
    scheme: Option<SchemeId>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    cells: Option<usize>,
    #[arg(long)]
    snapshots: Option<usize>,
    /// Any config entry as key=value; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Directory for `snapshot_NNNN.csv` files.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `argv` (program name first) and runs the command against the
/// process's stdout and stderr.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`dispatch`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let reason = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            let _ = writeln!(err, "{reason}");
            return 2;
        }
    };
    let result = match cli.command {
        Command::Jacobian(a) => cmd_jacobian(&a, out),
        Command::Spectrum(a) => cmd_spectrum(&a, out),
        Command::Sturm(a) => cmd_sturm(&a, out),
        Command::Scan(a) => cmd_scan(&a, out, err),
        Command::Solve(a) => cmd_solve(&a, out, err),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_validation() {
                2
            } else {
                1
            }
        }
    }
}

fn io_out(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn state_of(s: &StateArgs, rho: f64) -> Result<(PrimitiveState, GasParams)> {
    let gas = GasParams::new(s.gamma)?;
    Ok((PrimitiveState::new(rho, s.a, s.mach)?, gas))
}

fn mat_json(m: &Mat3) -> serde_json::Value {
    json!(m.0)
}

fn cmd_jacobian(a: &JacobianArgs, out: &mut dyn Write) -> Result<()> {
    let s = &a.state;
    let (w, gas) = state_of(s, a.rho)?;
    let pair = jacobian_pair(&w, gas, s.scheme)?;
    let u = primitive_to_conservative(&w, gas);
    let fd = fd_jacobian(
        |u| Ok(split_flux_plus(&conservative_to_primitive(u, gas)?, gas, s.scheme)),
        &u,
        a.fd_step,
    )?;
    let residual = relative_residual(&pair.in_u, &fd);
    match a.format {
        Format::Json => {
            let doc = json!({
                "config": {
                    "scheme": s.scheme.name(), "gamma": s.gamma, "mach": s.mach,
                    "a": s.a, "rho": a.rho, "fd_step": a.fd_step,
                },
                "d_fplus_d_u": mat_json(&pair.in_u),
                "d_fplus_d_w": mat_json(&pair.in_w),
                "fd_residual": residual,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("plain JSON")).map_err(io_out)
        }
        Format::Csv => {
            let mut text = format!(
                "# scheme={} gamma={} mach={} a={} rho={} fd_step={}\nmatrix,row,col,value\n",
                s.scheme, s.gamma, s.mach, s.a, a.rho, a.fd_step
            );
            for (name, m) in [("d_fplus_d_u", &pair.in_u), ("d_fplus_d_w", &pair.in_w)] {
                for i in 0..3 {
                    for j in 0..3 {
                        text.push_str(&format!("{name},{i},{j},{}\n", sig17(m[(i, j)])));
                    }
                }
            }
            text.push_str(&format!("fd_residual,,,{}\n", sig17(residual)));
            out.write_all(text.as_bytes()).map_err(io_out)
        }
    }
}

fn cmd_spectrum(a: &SpectrumArgs, out: &mut dyn Write) -> Result<()> {
    let s = &a.state;
    let r = classify_spectrum(s.scheme, s.gamma, s.mach, s.a)?;
    match a.format {
        TextFormat::Json => {
            let doc = json!({
                "config": {"scheme": s.scheme.name(), "gamma": s.gamma, "mach": s.mach, "a": s.a},
                "report": r,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("plain JSON")).map_err(io_out)
        }
        TextFormat::Text => {
            let eig = match r.eigenvalues {
                Eigenvalues::Real(v) => format!("{} {} {}", sig17(v[0]), sig17(v[1]), sig17(v[2])),
                Eigenvalues::ComplexPair { real, re, im } => {
                    format!("{} {}+{}i {}-{}i", sig17(real), sig17(re), sig17(im), sig17(re), sig17(im))
                }
            };
            let text = format!(
                "scheme={}\ngamma={}\nmach={}\na={}\nT={}\nS={}\nD={}\neigenvalues={eig}\ndiscriminant={}\nclassification={}\n",
                s.scheme,
                s.gamma,
                s.mach,
                s.a,
                sig17(r.coeffs.t),
                sig17(r.coeffs.s),
                sig17(r.coeffs.d),
                sig17(r.discriminant),
                r.classification
            );
            out.write_all(text.as_bytes()).map_err(io_out)
        }
    }
}

fn cmd_sturm(a: &SturmArgs, out: &mut dyn Write) -> Result<()> {
    let gamma = parse_rational(&a.gamma)?;
    let lo = parse_rational(&a.lo)?;
    let hi = parse_rational(&a.hi)?;
    let h = h_poly_exact(&gamma);
    let rc = count_roots_in_interval(&h, &lo, &hi)?;
    let degrees: Vec<String> = rc.degrees.iter().map(usize::to_string).collect();
    let mut text = format!("gamma={gamma}\nlo={lo}\nhi={hi}\nH={h}\nchain degrees: {}\n", degrees.join(" "));
    if a.show_chain {
        let chain = SturmChain::new(&h)?;
        for (k, p) in chain.polys().iter().enumerate() {
            text.push_str(&format!("p{k} = {p}\n"));
        }
    }
    if rc.lo_perturbed {
        text.push_str(&format!("note: H vanishes at lo; evaluated at {}\n", rc.lo));
    }
    if rc.hi_perturbed {
        text.push_str(&format!("note: H vanishes at hi; evaluated at {}\n", rc.hi));
    }
    text.push_str(&format!(
        "roots in ({lo},{hi}): {}; V({lo})={} V({hi})={}\n",
        rc.count, rc.v_lo, rc.v_hi
    ));
    out.write_all(text.as_bytes()).map_err(io_out)
}

fn parse_pair<T: std::str::FromStr>(s: &str, sep: char, what: &str) -> Result<(T, T)> {
    let bad = || Error::Parse(format!("{what}: expected two values separated by '{sep}', got '{s}'"));
    let (x, y) = s.split_once(sep).ok_or_else(bad)?;
    Ok((x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?))
}

fn report_line(kind: &str, r: &ScanReport) -> String {
    let argmin = match r.argmin {
        Some((g, m)) => format!("({},{})", sig17(g), sig17(m)),
        None => "empty".into(),
    };
    let min = if r.min_value.is_finite() { sig17(r.min_value) } else { "inf".into() };
    format!(
        "{kind}: target={} min_value={min} argmin={argmin} negative_count={} total={} boundary_min={}\n",
        r.target, r.negative_count, r.total, r.boundary_min
    )
}

fn cmd_scan(a: &ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let grid: (usize, usize) = parse_pair(&a.grid, 'x', "grid")?;
    let cfg = ScanConfig {
        target: a.target,
        gamma_range: (a.gamma_lo, a.gamma_hi),
        mach_range: (a.mach_lo, a.mach_hi),
        grid,
        samples: a.samples,
        seed: a.seed,
        tolerance: a.tolerance,
    };
    cfg.validate()?;
    let threads = scanlab::thread_cap()?;
    let mut text = format!(
        "# target={} grid={}x{} samples={} seed={} tolerance={} gamma_range=[{},{}] mach_range=[{},{}] threads={}\n",
        cfg.target,
        grid.0,
        grid.1,
        cfg.samples,
        cfg.seed,
        cfg.tolerance,
        cfg.gamma_range.0,
        cfg.gamma_range.1,
        cfg.mach_range.0,
        cfg.mach_range.1,
        threads.map_or("auto".to_string(), |n| n.to_string())
    );
    let g = scanlab::grid_scan_with_threads(&cfg, threads)?;
    let r = scanlab::random_scan_with_threads(&cfg, threads)?;
    text.push_str(&report_line("grid", &g));
    text.push_str(&report_line("random", &r));
    if let Some(start) = &a.refine_from {
        let start: (f64, f64) = parse_pair(start, ',', "refine-from")?;
        let nm = scanlab::refine_min(cfg.target, start)?;
        text.push_str(&format!(
            "refine: start=({},{}) value={} argmin=({},{}) evaluations={} converged={}\n",
            start.0,
            start.1,
            sig17(nm.value),
            sig17(nm.argmin.0),
            sig17(nm.argmin.1),
            nm.evaluations,
            nm.converged
        ));
    }
    out.write_all(text.as_bytes()).map_err(io_out)?;
    if let Some(path) = &a.out {
        scanlab::emit_grid_csv(&cfg, path)?;
        let _ = writeln!(err, "wrote {}", path.display());
    }
    let summary = a.summary.clone().or_else(|| a.out.as_ref().map(|p| p.with_extension("summary.csv")));
    if let Some(path) = summary {
        scanlab::emit_summary_csv(&[g, r], &path)?;
        let _ = writeln!(err, "wrote {} (rows: grid, random)", path.display());
    }
    Ok(())
}

fn solve_config(a: &SolveArgs) -> Result<RunConfig> {
    let mut cfg = match &a.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = a.scheme {
        cfg.scheme = s;
    }
    if let Some(g) = a.gamma {
        cfg.gamma = g;
    }
    if let Some(c) = a.cfl {
        cfg.cfl = c;
    }
    if let Some(t) = a.t_end {
        cfg.t_end = t;
    }
    if let Some(n) = a.cells {
        cfg.n_cells = n;
    }
    if let Some(n) = a.snapshots {
        cfg.snapshots = n;
    }
    for kv in &a.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("--set expects KEY=VALUE, got '{kv}'")))?;
        cfg.apply(k, v)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn snapshot_path(dir: &Path, k: usize) -> PathBuf {
    dir.join(format!("snapshot_{k:04}.csv"))
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let cfg = solve_config(a)?;
    let result = fvs1d::run(&cfg)?;
    let au = &result.audit;
    let mut text = cfg.to_kv();
    text.push_str(&format!(
        "steps={}\nfinal_time={}\nmax_conservation_defect={}\ntotal_conservation_defect={}\nmin_rho={}\nmin_p={}\n",
        au.steps,
        sig17(au.final_time),
        sig17(au.max_conservation_defect),
        sig17(au.total_conservation_defect),
        sig17(au.min_rho),
        sig17(au.min_p)
    ));
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (k, snap) in result.snapshots.iter().enumerate() {
            let path = snapshot_path(dir, k);
            snap.save(&path)?;
            text.push_str(&format!("snapshot={} t={}\n", path.display(), sig17(snap.time)));
        }
    } else {
        let _ = writeln!(err, "no --out directory given; snapshots not written");
    }
    out.write_all(text.as_bytes()).map_err(io_out)
}
