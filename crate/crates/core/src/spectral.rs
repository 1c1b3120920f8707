//! Characteristic invariants and eigenvalue sign structure of `∂F⁺/∂U`.
//!
//! For a 3×3 matrix the characteristic equation is `μ³ − Tμ² + Sμ − D = 0` with
//! `T` the trace, `S` the sum of principal 2×2 minors and `D` the determinant.
//! By Viète, all eigenvalues are non-negative only if `T, S, D ≥ 0`; reality
//! is decided by the discriminant.
//!
//! Closed forms (all at fixed `γ`, with `a` entering only as `a`, `a²`, `a³`):
//!
//! * Van Leer: `D = 0`, so the spectrum is `{0} ∪ roots(μ² − Tμ + S)` and the
//!   quadratic discriminant factors as `a²(M+1)²H(γ,M) / (64γ²(γ+1)²)`.
//! * AUSM linear pressure: `S = −a²(M+1)²P_S(M)/(32γ)` with the quadratic
//!   [`ausm_linear_s_bracket`], and `D = −a³(M+1)⁴Q(M)/64`. Since `P_S > 0`
//!   left of its root `M₀ ∈ (−1, 0)` and `P_S < 0` right of it, `S` goes from
//!   negative to positive across `M₀`.
//! * AUSM second-order pressure: `D = −a³(γ−1)(M−1)(M+1)⁶/64`.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobian::require_subsonic;
use crate::mat3::Mat3;
use crate::splitting::SchemeId;

/// Relative threshold under which an eigenvalue counts as zero.
pub const ZERO_EIGEN_TOL: f64 = 1e-9;
/// Relative threshold (against `(T² + |S|)³`) under which a negative cubic
/// discriminant is treated as rounding noise.
pub const DISCRIMINANT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CharCoeffs {
    /// Trace.
    pub t: f64,
    /// Sum of principal 2×2 minors.
    pub s: f64,
    /// Determinant.
    pub d: f64,
}

impl CharCoeffs {
    pub fn new(t: f64, s: f64, d: f64) -> Self {
        CharCoeffs { t, s, d }
    }

    /// `μ³ − Tμ² + Sμ − D`.
    pub fn eval(&self, mu: f64) -> f64 {
        ((mu - self.t) * mu + self.s) * mu - self.d
    }

    fn eval_derivative(&self, mu: f64) -> f64 {
        (3.0 * mu - 2.0 * self.t) * mu + self.s
    }

    /// `(T² + |S|)³`, the natural magnitude of the discriminant.
    pub fn discriminant_scale(&self) -> f64 {
        (self.t * self.t + self.s.abs()).powi(3)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    AllPositive,
    ZeroPlusTwoPositive,
    MixedSign,
    ComplexPair,
    /// Real spectra not covered above (all non-positive, repeated zeros).
    Other,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::AllPositive => "all_positive",
            Classification::ZeroPlusTwoPositive => "zero_plus_two_positive",
            Classification::MixedSign => "mixed_sign",
            Classification::ComplexPair => "complex_pair",
            Classification::Other => "other",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Eigenvalues {
    /// Ascending.
    Real([f64; 3]),
    ComplexPair { real: f64, re: f64, im: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub coeffs: CharCoeffs,
    pub eigenvalues: Eigenvalues,
    pub classification: Classification,
    pub discriminant: f64,
}

/// `(T, S, D)` of a matrix.
pub fn matrix_invariants(a: &Mat3) -> CharCoeffs {
    CharCoeffs::new(a.trace(), a.principal_minor_sum(), a.det())
}

fn check_domain(gamma: f64, mach: f64, a: f64) -> Result<()> {
    if !(gamma.is_finite() && gamma > 1.0) {
        return Err(Error::InvalidGamma(gamma));
    }
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::NonPhysical(format!("sound speed must be positive, got {a}")));
    }
    require_subsonic(mach)
}

/// Closed-form `(T, S, D)` of `∂F⁺/∂U` for `γ > 1`, `|M| < 1`, `a > 0`.
pub fn closed_form_coeffs(scheme: SchemeId, gamma: f64, mach: f64, a: f64) -> Result<CharCoeffs> {
    check_domain(gamma, mach, a)?;
    Ok(invariant_polys(scheme, gamma, mach, a))
}

/// The closed-form invariants evaluated as plain polynomials, without domain
/// checks. Used by the scans, which include the `M = ±1`, `γ = 1` edges.
pub fn invariant_polys(scheme: SchemeId, g: f64, m: f64, a: f64) -> CharCoeffs {
    let m2 = m * m;
    let m4 = m2 * m2;
    let mp1 = m + 1.0;
    match scheme {
        SchemeId::VanLeer => {
            let t = a / (8.0 * g * (g + 1.0))
                * (9.0 * g * (g + 1.0) - (g - 1.0) * g * m4 + 2.0 * (2.0 * g * g + g - 3.0) * m2
                    + 12.0 * g * (g + 1.0) * m
                    + 6.0);
            let s = -a * a * mp1 * mp1 * mp1 / (32.0 * g * (g + 1.0))
                * (-3.0 * g * g - 14.0 * g + 4.0 * (g - 1.0) * g * m2 + (-9.0 * g * g + 10.0 * g + 3.0) * m - 3.0);
            CharCoeffs::new(t, s, 0.0)
        }
        SchemeId::AusmLinear => {
            let t = a / (8.0 * g) * (-g * g * (m2 - 3.0) + g * (7.0 * m2 + 12.0 * m + 3.0) + 4.0);
            let d = -a * a * a * mp1.powi(4) / 64.0 * ausm_linear_det_bracket(g, m);
            let s = -a * a * mp1 * mp1 / (32.0 * g) * ausm_linear_s_bracket(g, m);
            CharCoeffs::new(t, s, d)
        }
        SchemeId::AusmSecond => {
            let t = a / (8.0 * g)
                * (3.0 * (g * g + g + 2.0) - (g - 1.0) * g * m4 - 2.0 * (g * g - 4.0 * g + 3.0) * m2 + 12.0 * g * m);
            let d = -a * a * a * (g - 1.0) * (m - 1.0) * mp1.powi(6) / 64.0;
            let gg = (g - 1.0) * g;
            let bracket = ((gg * m + gg) * m + (3.0 * g * g - 4.0 * g + 3.0)) * m - 5.0 * g * g - 2.0 * g - 3.0;
            let s = -a * a * mp1 * mp1 * mp1 / (32.0 * g) * bracket;
            CharCoeffs::new(t, s, d)
        }
    }
}

/// `Q(M) = (γ−2)M² − (γ+1)M + (2−γ)`, with `D_lin = −a³(M+1)⁴Q(M)/64`.
pub fn ausm_linear_det_bracket(g: f64, m: f64) -> f64 {
    (g - 2.0) * m * m - (g + 1.0) * m + (2.0 - g)
}

/// `P_S(M) = (3γ²−9γ)M² + (−2γ²−10γ)M + (−5γ²+γ−2)`, the quadratic factor of
/// the AUSM-linear `S`. Note the negative prefactor: `S = −a²(M+1)²P_S/(32γ)`.
pub fn ausm_linear_s_bracket(g: f64, m: f64) -> f64 {
    (3.0 * g * g - 9.0 * g) * m * m + (-2.0 * g * g - 10.0 * g) * m + (-5.0 * g * g + g - 2.0)
}

/// The root `M₀ ∈ (−1, 0)` of [`ausm_linear_s_bracket`], for `1 < γ < 3`.
pub fn ausm_linear_s_root(gamma: f64) -> Result<f64> {
    if !(gamma.is_finite() && gamma > 1.0 && gamma < 3.0) {
        return Err(Error::InvalidParameter(format!("expected 1 < gamma < 3, got {gamma}")));
    }
    let g = gamma;
    let qa = 3.0 * g * g - 9.0 * g;
    let qb = -2.0 * g * g - 10.0 * g;
    let qc = -5.0 * g * g + g - 2.0;
    let roots: Vec<f64> = if qa == 0.0 {
        vec![-qc / qb]
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            return Err(Error::NoRootInInterval(gamma));
        }
        let q = -0.5 * (qb + qb.signum() * disc.sqrt());
        vec![q / qa, qc / q]
    };
    roots
        .into_iter()
        .find(|r| *r > -1.0 && *r < 0.0)
        .ok_or(Error::NoRootInInterval(gamma))
}

/// `H(γ, M)`, the degree-6 factor of the Van Leer quadratic discriminant.
pub fn h_vanleer(g: f64, m: f64) -> f64 {
    let g2 = g * g;
    let g3 = g2 * g;
    let g4 = g2 * g2;
    let c = [
        57.0 * g4 + 26.0 * g3 + 53.0 * g2 + 84.0 * g + 36.0,
        -42.0 * g4 - 20.0 * g3 - 50.0 * g2 - 72.0 * g - 72.0,
        -13.0 * g4 + 26.0 * g3 + 39.0 * g2 - 24.0 * g + 36.0,
        20.0 * g4 - 44.0 * g2 + 24.0 * g,
        -5.0 * g4 - 2.0 * g3 + 19.0 * g2 - 12.0 * g,
        -2.0 * g4 + 4.0 * g3 - 2.0 * g2,
        (g - 1.0) * (g - 1.0) * g2,
    ];
    c.iter().rev().fold(0.0, |acc, ci| acc * m + ci)
}

/// `T² − 4S` for Van Leer via its factored form `a²(M+1)²H/(64γ²(γ+1)²)`.
pub fn van_leer_discriminant(g: f64, m: f64, a: f64) -> f64 {
    a * a * (m + 1.0) * (m + 1.0) / (64.0 * g * g * (g + 1.0) * (g + 1.0)) * h_vanleer(g, m)
}

/// Cubic discriminant at `a = 1` for the second-order AUSM splitting.
pub fn ausm2_discriminant(g: f64, m: f64) -> f64 {
    cubic_discriminant(&invariant_polys(SchemeId::AusmSecond, g, m, 1.0))
}

/// `18TSD − 4T³D + T²S² − 4S³ − 27D²`, summed with Neumaier compensation.
pub fn cubic_discriminant(c: &CharCoeffs) -> f64 {
    let (t, s, d) = (c.t, c.s, c.d);
    let terms = [
        18.0 * t * s * d,
        -4.0 * t * t * t * d,
        t * t * s * s,
        -4.0 * s * s * s,
        -27.0 * d * d,
    ];
    neumaier_sum(&terms)
}

fn neumaier_sum(xs: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Roots of `μ³ − Tμ² + Sμ − D` and their sign classification.
///
/// Trigonometric solution when the discriminant is non-negative (up to
/// [`DISCRIMINANT_TOL`]), Cardano otherwise; each real root gets one Newton
/// step. An eigenvalue is zero when `|μ| ≤ ZERO_EIGEN_TOL · max|μᵢ|`.
pub fn solve_cubic(c: &CharCoeffs) -> SpectrumReport {
    let (t, s, d) = (c.t, c.s, c.d);
    let disc = cubic_discriminant(c);
    let shift = t / 3.0;
    let p = s - t * t / 3.0;
    let q = -2.0 * t * t * t / 27.0 + t * s / 3.0 - d;

    let eigenvalues = if disc >= -DISCRIMINANT_TOL * c.discriminant_scale() {
        let mut roots = if p < 0.0 {
            let r = 2.0 * (-p / 3.0).sqrt();
            let arg = ((3.0 * q) / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
            let phi = arg.acos() / 3.0;
            [0, 1, 2].map(|k| r * (phi - 2.0 * PI * k as f64 / 3.0).cos() + shift)
        } else {
            [(-q).cbrt() + shift; 3]
        };
        for mu in roots.iter_mut() {
            *mu = newton_polish(c, *mu);
        }
        roots.sort_by(f64::total_cmp);
        Eigenvalues::Real(roots)
    } else {
        let sq = (q * q / 4.0 + p * p * p / 27.0).max(0.0).sqrt();
        let u = (-q / 2.0 + sq).cbrt();
        let v = (-q / 2.0 - sq).cbrt();
        Eigenvalues::ComplexPair {
            real: newton_polish(c, u + v + shift),
            re: -(u + v) / 2.0 + shift,
            im: 3f64.sqrt() / 2.0 * (u - v).abs(),
        }
    };

    SpectrumReport {
        coeffs: *c,
        eigenvalues,
        classification: classify_roots(&eigenvalues),
        discriminant: disc,
    }
}

fn newton_polish(c: &CharCoeffs, mu: f64) -> f64 {
    let f = c.eval(mu);
    let df = c.eval_derivative(mu);
    if f == 0.0 || df == 0.0 {
        return mu;
    }
    let next = mu - f / df;
    if next.is_finite() && c.eval(next).abs() <= f.abs() {
        next
    } else {
        mu
    }
}

fn classify_roots(ev: &Eigenvalues) -> Classification {
    let roots = match ev {
        Eigenvalues::ComplexPair { .. } => return Classification::ComplexPair,
        Eigenvalues::Real(r) => r,
    };
    let scale = roots.iter().fold(0.0f64, |acc, r| acc.max(r.abs()));
    let tol = ZERO_EIGEN_TOL * scale;
    let (mut neg, mut zero, mut pos) = (0, 0, 0);
    for &r in roots {
        if r.abs() <= tol {
            zero += 1;
        } else if r > 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    match (neg, zero, pos) {
        (0, 0, 3) => Classification::AllPositive,
        (0, 1, 2) => Classification::ZeroPlusTwoPositive,
        (n, _, p) if n > 0 && p > 0 => Classification::MixedSign,
        _ => Classification::Other,
    }
}

/// Spectrum of `∂F⁺/∂U` from the closed-form invariants, for
/// `γ ∈ (1, 3]`, `|M| < 1`, `a > 0`.
pub fn classify_spectrum(scheme: SchemeId, gamma: f64, mach: f64, a: f64) -> Result<SpectrumReport> {
    if gamma > 3.0 {
        return Err(Error::InvalidParameter(format!("expected gamma in (1, 3], got {gamma}")));
    }
    Ok(solve_cubic(&closed_form_coeffs(scheme, gamma, mach, a)?))
}
