//! Decimal rendering with 17 significant digits.

/// 17 significant digits, plain notation for exponents in [−5, 16] and
/// scientific otherwise. Parsing the result gives back the same f64.
pub fn format_sig17(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0.0".into()
        } else {
            "0.0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let exponent: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if (-5..=16).contains(&exponent) {
        let decimals = (16 - exponent).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if decimals == 0 {
            format!("{s}.0")
        } else {
            s
        }
    } else {
        sci
    }
}

pub fn format_optional(x: Option<f64>) -> String {
    x.map(format_sig17).unwrap_or_default()
}
