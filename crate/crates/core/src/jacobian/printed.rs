//! Closed-form entries of `∂F⁺/∂U` as functions of `(γ, a, M)` only.
//!
//! Transcribed entry by entry, one table per scheme with no shared rows, so
//! they can be compared against the `∂F⁺/∂W · 𝔗` product and against each
//! other.

use crate::mat3::Mat3;
use crate::splitting::SchemeId;

pub fn table(scheme: SchemeId, gamma: f64, mach: f64, a: f64) -> Mat3 {
    match scheme {
        SchemeId::VanLeer => van_leer(gamma, mach, a),
        SchemeId::AusmLinear => ausm_linear(gamma, mach, a),
        SchemeId::AusmSecond => ausm_second(gamma, mach, a),
    }
}

fn pow(m: f64) -> [f64; 6] {
    let m2 = m * m;
    [1.0, m, m2, m2 * m, m2 * m2, m2 * m2 * m]
}

/// A table.
pub fn van_leer(g: f64, m: f64, a: f64) -> Mat3 {
    let [_, _, m2, m3, m4, m5] = pow(m);
    let g1 = g - 1.0;
    let g1c = g1 * g1 * g1;
    Mat3([
        [
            -a * (m2 - 1.0) * (g1 * g * m2 + 2.0) / 16.0,
            (g1 * g * m3 + (-g * g + g + 4.0) * m + 4.0) / 8.0,
            -g1 * g * (m - 1.0) * (m + 1.0) / (8.0 * a),
        ],
        [
            -a * a * m * (m + 1.0)
                * (2.0 * (g + 3.0) + g1 * g1 * g * m3 - g1 * g1 * g * m2 - 2.0 * (2.0 * g * g - 5.0 * g + 3.0) * m)
                / (16.0 * g),
            a * (2.0 * (g + 3.0) + g1 * g1 * g * m4 - (g * g * g + 2.0 * g * g - 9.0 * g + 6.0) * m2
                - 4.0 * (g - 3.0) * g * m)
                / (8.0 * g),
            -g1 * (m + 1.0) * (g1 * m2 - g * m + m - 4.0) / 8.0,
        ],
        [
            -a * a * a * (m + 1.0)
                * (g1c * g * m5 - g1c * g * m4 + (-8.0 * g * g * g + 22.0 * g * g - 24.0 * g + 10.0) * m3
                    + (-6.0 * g * g + 32.0 * g - 26.0) * m2
                    + 8.0 * (2.0 * g + 1.0) * m
                    + 8.0)
                / (32.0 * (g * g - 1.0)),
            a * a * (m + 1.0)
                * (8.0 * (g + 1.0) + g1c * g * m4 - g1c * g * m3
                    - 4.0 * (2.0 * g * g * g - 5.0 * g * g + 5.0 * g - 2.0) * m2
                    - 4.0 * (2.0 * g * g - 7.0 * g + 5.0) * m)
                / (16.0 * (g * g - 1.0)),
            -a * g * (m + 1.0) * (g1 * g1 * m3 - g1 * g1 * m2 + (4.0 - 8.0 * g) * m - 12.0) / (16.0 * (g + 1.0)),
        ],
    ])
}

/// B table.
pub fn ausm_linear(g: f64, m: f64, a: f64) -> Mat3 {
    let [_, _, m2, m3, m4, m5] = pow(m);
    let g1 = g - 1.0;
    let b2 = -g * g * m * (m3 + m + 4.0) + g * g * g * m2 * (m2 - 1.0) + 2.0 * g * (4.0 * m2 + 6.0 * m + 1.0) + 4.0;
    Mat3([
        [
            -a * (m2 - 1.0) * (g1 * g * m2 + 2.0) / 16.0,
            (g1 * g * m3 + (-g * g + g + 4.0) * m + 4.0) / 8.0,
            -g1 * g * (m - 1.0) * (m + 1.0) / (8.0 * a),
        ],
        [
            -a * a * m * b2 / (16.0 * g),
            a * b2 / (8.0 * g),
            -g1 * (g * m3 - (g + 2.0) * m - 4.0) / 8.0,
        ],
        [
            -a * a * a * (m + 1.0)
                * (g1 * g1 * g * m5 - g1 * g1 * g * m4 - 2.0 * (g * g - 6.0 * g + 5.0) * m3 - 6.0 * g1 * g1 * m2
                    + 12.0 * m
                    + 4.0)
                / (32.0 * g1),
            a * a * (m + 1.0) * (8.0 / g1 + g1 * g * m4 - g1 * g * m3 - 2.0 * (g - 4.0) * m2 + (4.0 - 6.0 * g) * m)
                / 16.0,
            a * g * (-(g1 * m4) + (g + 1.0) * m2 + 8.0 * m + 6.0) / 16.0,
        ],
    ])
}

/// C table.
pub fn ausm_second(g: f64, m: f64, a: f64) -> Mat3 {
    let [_, _, m2, m3, m4, m5] = pow(m);
    let g1 = g - 1.0;
    Mat3([
        [
            -a * (m2 - 1.0) * (g1 * g * m2 + 2.0) / 16.0,
            (g1 * g * m3 + (-g * g + g + 4.0) * m + 4.0) / 8.0,
            -g1 * g * (m - 1.0) * (m + 1.0) / (8.0 * a),
        ],
        [
            -a * a * m * (m + 1.0)
                * (2.0 * (g + 3.0) + g1 * g1 * g * m3 - g1 * g1 * g * m2 - 2.0 * (2.0 * g * g - 5.0 * g + 3.0) * m)
                / (16.0 * g),
            a * (2.0 * (g + 3.0) + g1 * g1 * g * m4 - (g * g * g + 2.0 * g * g - 9.0 * g + 6.0) * m2
                - 4.0 * (g - 3.0) * g * m)
                / (8.0 * g),
            -g1 * (m + 1.0) * (g1 * m2 - g * m + m - 4.0) / 8.0,
        ],
        [
            -a * a * a * (m + 1.0)
                * (g1 * g1 * g * m5 - g1 * g1 * g * m4 - 2.0 * (g * g - 6.0 * g + 5.0) * m3 - 6.0 * g1 * g1 * m2
                    + 12.0 * m
                    + 4.0)
                / (32.0 * g1),
            a * a * (m + 1.0) * (8.0 / g1 + g1 * g * m4 - g1 * g * m3 - 2.0 * (g - 4.0) * m2 + (4.0 - 6.0 * g) * m)
                / 16.0,
            a * g * (-(g1 * m4) + (g + 1.0) * m2 + 8.0 * m + 6.0) / 16.0,
        ],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn van_leer_first_row_values() {
        let j = van_leer(1.4, 0.5, 1.0);
        // −(1/16)(M²−1)((γ−1)γM²+2)·a
        assert!((j[(0, 0)] - 0.100_312_5).abs() < 1e-15);
        // −(γ−1)γ(M−1)(M+1)/(8a)
        assert!((j[(0, 2)] - 0.0525).abs() < 1e-15);
    }
}
