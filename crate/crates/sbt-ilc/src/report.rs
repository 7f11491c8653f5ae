//! Output formatting shared by reports and CSV writers.

/// Format with 12 significant digits, '.' decimal, locale-free.
pub fn sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let s = format!("{:.11e}", v);
    // normalize "1.23000000000e0" style output: strip trailing zeros in the
    // mantissa so small integers stay readable
    if let Some((mantissa, exp)) = s.split_once('e') {
        let trimmed = mantissa.trim_end_matches('0').trim_end_matches('.');
        let exp_val: i32 = exp.parse().unwrap_or(0);
        if (-4..=11).contains(&exp_val) {
            // re-render in plain decimal when the exponent is modest
            let digits = 11 - exp_val.min(11);
            let plain = format!("{:.*}", digits.max(0) as usize, v);
            let plain = if plain.contains('.') {
                plain
                    .trim_end_matches('0')
                    .trim_end_matches('.')
                    .to_string()
            } else {
                plain
            };
            return plain;
        }
        return format!("{trimmed}e{exp_val}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::sig12;

    #[test]
    fn formats_are_locale_free_and_compact() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(0.9955), "0.9955");
        assert_eq!(sig12(4.41), "4.41");
        assert_eq!(sig12(-1.1), "-1.1");
        assert_eq!(sig12(0.000123456789012), "0.000123456789012");
    }

    #[test]
    fn round_trips_through_parse() {
        for &v in &[0.9955, -0.9845, 4.41, 1.0 / 3.0, 1e-13, 2.5e14] {
            let s = sig12(v);
            let back: f64 = s.parse().unwrap();
            assert!((back - v).abs() <= 1e-11 * v.abs().max(1.0), "{v} -> {s}");
        }
    }
}
