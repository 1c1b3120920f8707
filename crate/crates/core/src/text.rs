//! Number formatting shared by the CSV and console writers.

/// `x` with 17 significant digits in exponent form; parses back to the same
/// `f64`. Negative zero is printed as zero.
pub fn sig17(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}
