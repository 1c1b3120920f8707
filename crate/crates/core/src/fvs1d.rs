//! First-order finite-volume solver for the 1D Euler equations.
//!
//! Interface flux `F⁺(U_L) + F⁻(U_R)`, forward Euler in time with
//! `dt = cfl·dx / max(|u| + a)`, transmissive boundaries.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::splitting::{split_flux_minus, split_flux_plus, Flux3, SchemeId};
use crate::state::{conservative_to_primitive, primitive_to_conservative, ConservativeState, GasParams, PrimitiveState};
use crate::text::sig17;

pub const SNAPSHOT_HEADER: &str = "x,rho,u,p";

/// `(ρ, u, p)`.
pub type Rup = (f64, f64, f64);

pub const SOD_LEFT: Rup = (1.0, 0.0, 1.0);
pub const SOD_RIGHT: Rup = (0.125, 0.0, 0.1);

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialCondition {
    /// Sod shock tube on `[0, 1]`, diaphragm at `0.5`.
    Sod,
    Uniform(Rup),
    /// Two constant states separated at `split`.
    Riemann { left: Rup, right: Rup, split: f64 },
}

impl InitialCondition {
    fn at(&self, x: f64) -> Rup {
        match *self {
            InitialCondition::Sod => {
                if x < 0.5 {
                    SOD_LEFT
                } else {
                    SOD_RIGHT
                }
            }
            InitialCondition::Uniform(s) => s,
            InitialCondition::Riemann { left, right, split } => {
                if x < split {
                    left
                } else {
                    right
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub scheme: SchemeId,
    pub gamma: f64,
    /// Courant number in `(0, 1]`.
    pub cfl: f64,
    pub t_end: f64,
    pub n_cells: usize,
    pub initial: InitialCondition,
    /// Domain `[0, length]`.
    pub length: f64,
    /// Evenly spaced output times in `(0, t_end]`; the initial state is always
    /// recorded.
    pub snapshots: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::sod(SchemeId::VanLeer)
    }
}

impl RunConfig {
    /// 400 cells, `cfl = 0.5`, `t_end = 0.2`, `γ = 1.4`.
    pub fn sod(scheme: SchemeId) -> Self {
        RunConfig {
            scheme,
            gamma: 1.4,
            cfl: 0.5,
            t_end: 0.2,
            n_cells: 400,
            initial: InitialCondition::Sod,
            length: 1.0,
            snapshots: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        GasParams::new(self.gamma)?;
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return bad(format!("cfl must lie in (0, 1], got {}", self.cfl));
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return bad(format!("t_end must be finite and non-negative, got {}", self.t_end));
        }
        if self.n_cells < 3 {
            return bad(format!("need at least 3 cells, got {}", self.n_cells));
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return bad(format!("length must be positive, got {}", self.length));
        }
        Ok(())
    }

    /// Sets one `key=value` entry. Keys: `scheme gamma cfl t_end n_cells
    /// length snapshots initial left_rho left_u left_p right_rho right_u
    /// right_p split`; `initial` is `sod`, `uniform` (uses the left state) or
    /// `riemann`.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        let num = |v: &str| -> Result<f64> {
            v.parse::<f64>()
                .map_err(|_| Error::Parse(format!("{key}: expected a number, got '{v}'")))
        };
        let (mut left, mut right, mut split) = match self.initial {
            InitialCondition::Sod => (SOD_LEFT, SOD_RIGHT, 0.5),
            InitialCondition::Uniform(s) => (s, s, 0.5),
            InitialCondition::Riemann { left, right, split } => (left, right, split),
        };
        let mut kind = match self.initial {
            InitialCondition::Sod => "sod",
            InitialCondition::Uniform(_) => "uniform",
            InitialCondition::Riemann { .. } => "riemann",
        };
        match key.trim() {
            "scheme" => self.scheme = SchemeId::from_str(v)?,
            "gamma" => self.gamma = num(v)?,
            "cfl" => self.cfl = num(v)?,
            "t_end" => self.t_end = num(v)?,
            "length" => self.length = num(v)?,
            "n_cells" => {
                self.n_cells = v
                    .parse()
                    .map_err(|_| Error::Parse(format!("n_cells: expected a count, got '{v}'")))?
            }
            "snapshots" => {
                self.snapshots = v
                    .parse()
                    .map_err(|_| Error::Parse(format!("snapshots: expected a count, got '{v}'")))?
            }
            "initial" => {
                kind = match v {
                    "sod" => "sod",
                    "uniform" => "uniform",
                    "riemann" => "riemann",
                    other => return Err(Error::Parse(format!("unknown initial condition '{other}'"))),
                }
            }
            "left_rho" => left.0 = num(v)?,
            "left_u" => left.1 = num(v)?,
            "left_p" => left.2 = num(v)?,
            "right_rho" => right.0 = num(v)?,
            "right_u" => right.1 = num(v)?,
            "right_p" => right.2 = num(v)?,
            "split" => split = num(v)?,
            other => return Err(Error::Parse(format!("unknown config key '{other}'"))),
        }
        let touched_state = key.trim().starts_with("left_") || key.trim().starts_with("right_") || key.trim() == "split";
        if touched_state && kind == "sod" {
            kind = "riemann";
        }
        self.initial = match kind {
            "sod" => InitialCondition::Sod,
            "uniform" => InitialCondition::Uniform(left),
            _ => InitialCondition::Riemann { left, right, split },
        };
        Ok(())
    }

    /// Parses a flat `key=value` file; `#` starts a comment.
    pub fn parse_kv(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key=value, got '{line}'", n + 1)))?;
            self.apply(k, v)?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = RunConfig::default();
        cfg.parse_kv(&text)?;
        Ok(cfg)
    }

    /// Effective configuration in the `key=value` format accepted by
    /// [`RunConfig::parse_kv`].
    pub fn to_kv(&self) -> String {
        let mut m = BTreeMap::new();
        m.insert("scheme", self.scheme.to_string());
        m.insert("gamma", self.gamma.to_string());
        m.insert("cfl", self.cfl.to_string());
        m.insert("t_end", self.t_end.to_string());
        m.insert("n_cells", self.n_cells.to_string());
        m.insert("length", self.length.to_string());
        m.insert("snapshots", self.snapshots.to_string());
        let mut put_state = |side: &str, s: Rup| {
            m.insert(if side == "left" { "left_rho" } else { "right_rho" }, s.0.to_string());
            m.insert(if side == "left" { "left_u" } else { "right_u" }, s.1.to_string());
            m.insert(if side == "left" { "left_p" } else { "right_p" }, s.2.to_string());
        };
        let kind = match self.initial {
            InitialCondition::Sod => "sod",
            InitialCondition::Uniform(s) => {
                put_state("left", s);
                "uniform"
            }
            InitialCondition::Riemann { left, right, split } => {
                put_state("left", left);
                put_state("right", right);
                m.insert("split", split.to_string());
                "riemann"
            }
        };
        m.insert("initial", kind.to_string());
        let mut out = String::new();
        for (k, v) in m {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }
}

/// Cell averages on a uniform grid with transmissive ends.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid1D {
    pub dx: f64,
    pub cells: Vec<ConservativeState>,
    pub time: f64,
}

impl Grid1D {
    pub fn new(dx: f64, cells: Vec<ConservativeState>) -> Result<Self> {
        if cells.len() < 3 {
            return Err(Error::InvalidParameter(format!("need at least 3 cells, got {}", cells.len())));
        }
        if !(dx.is_finite() && dx > 0.0) {
            return Err(Error::InvalidParameter(format!("cell width must be positive, got {dx}")));
        }
        Ok(Grid1D { dx, cells, time: 0.0 })
    }

    pub fn from_config(cfg: &RunConfig) -> Result<Self> {
        cfg.validate()?;
        let gas = GasParams::new(cfg.gamma)?;
        let dx = cfg.length / cfg.n_cells as f64;
        let cells = (0..cfg.n_cells)
            .map(|i| {
                let (rho, u, p) = cfg.initial.at(((i as f64 + 0.5) * dx) / cfg.length);
                PrimitiveState::from_rho_u_p(rho, u, p, gas).map(|w| primitive_to_conservative(&w, gas))
            })
            .collect::<Result<Vec<_>>>()?;
        Grid1D::new(dx, cells)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn center(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.dx
    }

    /// `Σ U_i dx` per component.
    pub fn totals(&self) -> [f64; 3] {
        let mut t = [0.0; 3];
        for c in &self.cells {
            for (k, v) in c.as_array().iter().enumerate() {
                t[k] += v * self.dx;
            }
        }
        t
    }

    pub fn primitives(&self, gas: GasParams) -> Result<Vec<PrimitiveState>> {
        self.cells.iter().map(|c| conservative_to_primitive(c, gas)).collect()
    }

    /// `max(|u| + a)` over the cells.
    pub fn max_wave_speed(&self, gas: GasParams) -> Result<f64> {
        Ok(self
            .primitives(gas)?
            .iter()
            .map(|w| w.velocity().abs() + w.a())
            .fold(0.0, f64::max))
    }
}

/// `F⁺(U_L) + F⁻(U_R)`.
pub fn interface_flux(ul: &ConservativeState, ur: &ConservativeState, gas: GasParams, scheme: SchemeId) -> Result<Flux3> {
    let wl = conservative_to_primitive(ul, gas)?;
    let wr = conservative_to_primitive(ur, gas)?;
    Ok(split_flux_plus(&wl, gas, scheme) + split_flux_minus(&wr, gas, scheme))
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepOutcome {
    pub grid: Grid1D,
    pub dt: f64,
    /// Fluxes through the left and right domain ends.
    pub boundary_flux: (Flux3, Flux3),
    /// `max_k |ΔΣU_k dx + dt (F_right − F_left)_k|`.
    pub conservation_defect: f64,
}

/// One step with `dt = cfl·dx / max(|u| + a)`.
pub fn step(grid: &Grid1D, gas: GasParams, scheme: SchemeId, cfl: f64) -> Result<StepOutcome> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(Error::InvalidParameter(format!("cfl must lie in (0, 1], got {cfl}")));
    }
    let dt = cfl * grid.dx / grid.max_wave_speed(gas)?;
    step_with_dt(grid, gas, scheme, dt)
}

/// One explicit step of the given size.
pub fn step_with_dt(grid: &Grid1D, gas: GasParams, scheme: SchemeId, dt: f64) -> Result<StepOutcome> {
    let n = grid.len();
    let w = grid.primitives(gas)?;
    let fp: Vec<Flux3> = w.iter().map(|s| split_flux_plus(s, gas, scheme)).collect();
    let fm: Vec<Flux3> = w.iter().map(|s| split_flux_minus(s, gas, scheme)).collect();
    // Interface k sits between cells k−1 and k; the ghost cells copy the ends.
    let faces: Vec<Flux3> = (0..=n)
        .map(|k| fp[k.saturating_sub(1)] + fm[k.min(n - 1)])
        .collect();
    let ratio = dt / grid.dx;
    let time = grid.time + dt;
    let mut cells = Vec::with_capacity(n);
    for (i, c) in grid.cells.iter().enumerate() {
        let d = faces[i + 1] - faces[i];
        let next = ConservativeState::new(c.rho - ratio * d.mass, c.mom - ratio * d.mom, c.energy - ratio * d.en);
        let p = next.pressure(gas);
        if !(next.rho > 0.0 && p > 0.0) {
            return Err(Error::Positivity {
                cell: i,
                time,
                rho: next.rho,
                p,
            });
        }
        cells.push(next);
    }
    let next = Grid1D {
        dx: grid.dx,
        cells,
        time,
    };
    let (left, right) = (faces[0], faces[n]);
    let before = grid.totals();
    let after = next.totals();
    let through = (right - left).as_array();
    let defect = (0..3)
        .map(|k| (after[k] - before[k] + dt * through[k]).abs())
        .fold(0.0, f64::max);
    Ok(StepOutcome {
        grid: next,
        dt,
        boundary_flux: (left, right),
        conservation_defect: defect,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Snapshot {
    pub time: f64,
    pub x: Vec<f64>,
    pub rho: Vec<f64>,
    pub u: Vec<f64>,
    pub p: Vec<f64>,
}

impl Snapshot {
    pub fn capture(grid: &Grid1D, gas: GasParams) -> Result<Self> {
        let w = grid.primitives(gas)?;
        Ok(Snapshot {
            time: grid.time,
            x: (0..grid.len()).map(|i| grid.center(i)).collect(),
            rho: w.iter().map(|s| s.rho()).collect(),
            u: w.iter().map(|s| s.velocity()).collect(),
            p: w.iter().map(|s| s.pressure(gas)).collect(),
        })
    }

    pub fn write_csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "{SNAPSHOT_HEADER}")?;
        for i in 0..self.x.len() {
            writeln!(
                out,
                "{},{},{},{}",
                sig17(self.x[i]),
                sig17(self.rho[i]),
                sig17(self.u[i]),
                sig17(self.p[i])
            )?;
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = std::io::BufWriter::new(fs::File::create(path).map_err(|e| Error::io(path, e))?);
        self.write_csv(&mut out)
            .and_then(|_| out.flush())
            .map_err(|e| Error::io(path, e))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Audit {
    pub steps: usize,
    pub final_time: f64,
    /// Largest single-step defect.
    pub max_conservation_defect: f64,
    /// `max_k |ΣU_k(t_end) − ΣU_k(0) + ∫(F_right − F_left)_k dt|`.
    pub total_conservation_defect: f64,
    pub min_rho: f64,
    pub min_p: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub snapshots: Vec<Snapshot>,
    pub audit: Audit,
    pub final_grid: Grid1D,
}

/// Advances the configured problem to `t_end`. The last step is shortened to
/// land on `t_end` and on every snapshot time.
pub fn run(cfg: &RunConfig) -> Result<RunResult> {
    let gas = GasParams::new(cfg.gamma)?;
    let mut grid = Grid1D::from_config(cfg)?;
    let start = grid.totals();
    let mut boundary_integral = [0.0; 3];
    let mut snapshots = vec![Snapshot::capture(&grid, gas)?];
    let (mut min_rho, mut min_p) = extremes(&grid, gas)?;
    let mut max_defect: f64 = 0.0;
    let mut steps = 0;
    let outputs: Vec<f64> = if cfg.t_end > 0.0 && cfg.snapshots > 0 {
        (1..=cfg.snapshots).map(|k| cfg.t_end * k as f64 / cfg.snapshots as f64).collect()
    } else {
        Vec::new()
    };
    let mut next_out = 0;
    while grid.time < cfg.t_end {
        let target = outputs.get(next_out).copied().unwrap_or(cfg.t_end);
        let dt_cfl = cfg.cfl * grid.dx / grid.max_wave_speed(gas)?;
        let dt = dt_cfl.min(target - grid.time);
        let mut out = step_with_dt(&grid, gas, cfg.scheme, dt)?;
        if dt == target - grid.time {
            out.grid.time = target;
        }
        steps += 1;
        max_defect = max_defect.max(out.conservation_defect);
        let through = (out.boundary_flux.1 - out.boundary_flux.0).as_array();
        for k in 0..3 {
            boundary_integral[k] += out.dt * through[k];
        }
        grid = out.grid;
        let (r, p) = extremes(&grid, gas)?;
        min_rho = min_rho.min(r);
        min_p = min_p.min(p);
        if next_out < outputs.len() && grid.time >= outputs[next_out] {
            snapshots.push(Snapshot::capture(&grid, gas)?);
            next_out += 1;
        }
    }
    let end = grid.totals();
    let total_defect = (0..3)
        .map(|k| (end[k] - start[k] + boundary_integral[k]).abs())
        .fold(0.0, f64::max);
    Ok(RunResult {
        snapshots,
        audit: Audit {
            steps,
            final_time: grid.time,
            max_conservation_defect: max_defect,
            total_conservation_defect: total_defect,
            min_rho,
            min_p,
        },
        final_grid: grid,
    })
}

fn extremes(grid: &Grid1D, gas: GasParams) -> Result<(f64, f64)> {
    let mut min_rho = f64::INFINITY;
    let mut min_p = f64::INFINITY;
    for c in &grid.cells {
        min_rho = min_rho.min(c.rho);
        min_p = min_p.min(c.pressure(gas));
    }
    Ok((min_rho, min_p))
}
