//! CSV export of grid values.

use std::fmt::Write as _;

use qnc_core::cpoly::ComplexValue;
use qnc_core::forge::WideReal;

/// C's `%.17g`: 17 significant digits, exponent form outside `[1e-4, 1e17)`,
/// trailing zeros removed.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        trim_fraction(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mantissa), sign, exp.abs())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// The value `e^ln`: `%.17g` when it is a finite nonzero double, otherwise
/// the exact wide decimal. With `log` the natural log itself.
pub fn format_value(ln: f64, log: bool) -> String {
    if log {
        return format_g17(ln);
    }
    let v = ln.exp();
    if v.is_finite() && v > 0.0 || ln == f64::NEG_INFINITY {
        format_g17(v)
    } else {
        WideReal::<f64>::from_ln(ln).to_decimal()
    }
}

/// `re,im,value` rows under a header, LF line endings.
pub fn render(rows: &[(ComplexValue<f64>, f64)], log: bool) -> String {
    let mut out = String::from("re,im,value\n");
    for (z, ln) in rows {
        writeln!(out, "{},{},{}", format_g17(z.re), format_g17(z.im), format_value(*ln, log)).expect("string write");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g17() {
        let cases = [
            (1.0, "1"),
            (0.1, "0.10000000000000001"),
            (-2.5, "-2.5"),
            (1e17, "1e+17"),
            (12345678901234567.0, "12345678901234568"),
            (1e-5, "1.0000000000000001e-05"),
            (0.0001, "0.0001"),
            (4.0 * (2f64).sqrt(), "5.6568542494923806"),
            (1.5e-300, "1.5000000000000001e-300"),
            (0.0, "0"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g17(x), want, "{x:e}");
        }
    }

    #[test]
    fn values_outside_double_range_stay_exact() {
        assert_eq!(format_value(0.0, false), "1");
        assert_eq!(format_value(f64::NEG_INFINITY, false), "0");
        let huge = format_value(5000.0, false);
        assert!(huge.contains("e2171"), "{huge}");
        assert_eq!(format_value(5000.0, true), "5000");
    }

    #[test]
    fn header_and_rows() {
        let rows = [(ComplexValue::new(2.0, 0.0), 0.0)];
        assert_eq!(render(&rows, false), "re,im,value\n2,0,1\n");
    }
}
