//! Canonical number formatting for reports and CSV output.

/// Formats with 12 significant digits, trimming trailing zeros, switching to
/// scientific notation outside the comfortable fixed-point range.
pub fn sig12(x: f64) -> String {
    sig(x, 12)
}

pub fn sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let neg = x < 0.0;
    let sci = format!("{:.*e}", digits - 1, x.abs());
    let (mant, exp) = sci.split_once('e').expect("float e-format contains an exponent");
    let exp: i32 = exp.parse().expect("float exponent parses");
    let mantissa: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if exp < -4 || exp >= digits as i32 {
        let (head, tail) = mantissa.split_at(1);
        let tail = tail.trim_end_matches('0');
        out.push_str(head);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        out.push('e');
        if exp >= 0 {
            out.push_str(&format!("+{exp:02}"));
        } else {
            out.push_str(&format!("-{:02}", -exp));
        }
    } else if exp >= 0 {
        let cut = exp as usize + 1;
        let frac = mantissa[cut..].trim_end_matches('0');
        out.push_str(&mantissa[..cut]);
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else {
        out.push_str("0.");
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(mantissa.trim_end_matches('0'));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_values() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(-2.5), "-2.5");
        assert_eq!(sig12(0.6079864055003608), "0.6079864055");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
    }

    #[test]
    fn scientific_range() {
        assert_eq!(sig12(1.5e-7), "1.5e-07");
        assert_eq!(sig12(2.0e15), "2e+15");
        assert_eq!(sig12(-3.25e-9), "-3.25e-09");
    }

    #[test]
    fn rounding_carries() {
        assert_eq!(sig(0.999999999999951, 12), "1");
        assert_eq!(sig(9.99999, 3), "10");
    }

    #[test]
    fn small_fixed() {
        assert_eq!(sig(0.000125, 3), "0.000125");
        assert_eq!(sig(1234.5, 5), "1234.5");
    }
}
