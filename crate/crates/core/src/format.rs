//! Number formatting and parsing shared by the text formats and the CLI.

use crate::error::{Error, Result};

/// Formats `x` with `digits` significant digits, switching to exponent
/// notation outside `[1e-4, 1e6)` (like C's `%g`).
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let exp = x.abs().log10().floor() as i32;
    // Rounding can carry into the next decade (9.999995 -> 10.0000).
    let rounded: f64 = format!("{:.*e}", digits - 1, x).parse().unwrap_or(x);
    let exp = if rounded.abs() >= 10f64.powi(exp + 1) {
        exp + 1
    } else {
        exp
    };
    if !(-4..6).contains(&exp) {
        let s = format!("{:.*e}", digits - 1, x);
        // Rust writes `1.5e7`; keep it.
        return s;
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    format!("{rounded:.decimals$}")
}

/// Rounds `x` to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.max(1) - 1, x).parse().unwrap_or(x)
}

/// Parses a vertex count written as an integer or in float syntax (`1e4`).
pub fn parse_count(s: &str) -> Result<u64> {
    let s = s.trim();
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s
        .parse()
        .map_err(|_| Error::parse(0, format!("not a number: `{s}`")))?;
    if !v.is_finite() || v < 0.0 || v.fract() != 0.0 || v > u64::MAX as f64 {
        return Err(Error::parse(
            0,
            format!("not a non-negative integer: `{s}`"),
        ));
    }
    Ok(v as u64)
}

pub(crate) fn parse_real(s: &str, line: usize) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("not a number: `{}`", s.trim())))?;
    if !v.is_finite() {
        return Err(Error::parse(
            line,
            format!("non-finite number: `{}`", s.trim()),
        ));
    }
    Ok(v)
}
