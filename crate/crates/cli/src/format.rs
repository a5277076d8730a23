//! Number formatting shared by every export.

/// Rounds to 9 significant digits.
pub fn round9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.8e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Plain decimal with 9 significant digits and trailing zeros trimmed.
pub fn sig9(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    let (_, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let r = round9(x);
    if r == 0.0 {
        return "0".into();
    }
    let decimals = (8 - exp).max(0) as usize;
    let mut s = format!("{r:.decimals$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    s
}

/// Joins formatted values with commas.
pub fn csv_row(values: &[f64]) -> String {
    values.iter().map(|&v| sig9(v)).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9_examples() {
        assert_eq!(sig9(0.0), "0");
        assert_eq!(sig9(-0.0), "0");
        assert_eq!(sig9(90.00000000000001), "90");
        assert_eq!(sig9(2.0000000000000284), "2");
        assert_eq!(sig9(-1.5), "-1.5");
        assert_eq!(sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(sig9(123456.789012), "123456.789");
        assert_eq!(sig9(0.000123456789012), "0.000123456789");
        assert_eq!(sig9(99999999.96), "100000000");
        assert_eq!(sig9(1.23456789012e12), "1234567890000");
    }

    #[test]
    fn round9_keeps_nine_digits() {
        assert_eq!(round9(0.1234567891234), 0.123456789);
        assert_eq!(round9(-5.0), -5.0);
    }
}
