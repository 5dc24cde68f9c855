/// Significant digits in CSV values.
pub const SIGNIFICANT_DIGITS: i32 = 12;

/// Magnitudes below this are rounding noise and print as zero.
pub const ZERO_FLOOR: f64 = 1e-14;

/// Fixed-point rendering with [`SIGNIFICANT_DIGITS`] significant digits.
///
/// Zero (of either sign) and anything below [`ZERO_FLOOR`] prints as
/// `0.00000000000`.
pub fn fixed_sig(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v.abs() < ZERO_FLOOR {
        return format!("{:.*}", (SIGNIFICANT_DIGITS - 1) as usize, 0.0);
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = (SIGNIFICANT_DIGITS - 1 - exponent).max(0) as usize;
    let s = format!("{v:.decimals$}");
    // rounding can carry into a new leading digit (9.99… → 10.0…)
    let digits = s.chars().filter(char::is_ascii_digit).skip_while(|&c| c == '0').count();
    if digits > SIGNIFICANT_DIGITS as usize && decimals > 0 {
        format!("{v:.prec$}", prec = decimals - 1)
    } else {
        s
    }
}
