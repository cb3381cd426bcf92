//! Fixed-precision number formatting shared by JSON certificates and CSV output.

/// Formats `x` like C's `%.12g`: 12 significant digits, trailing zeros
/// stripped, scientific notation outside `[1e-4, 1e12)`.
pub fn sig12(x: f64) -> String {
    sig(x, 12)
}

pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let prec = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.prec$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Serde helper: serialize an `f64` as a 12-significant-digit string.
pub mod sig12_str {
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::sig12(*x))
    }
}

/// Serde helper for `Option<f64>`.
pub mod sig12_opt {
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_str(&super::sig12(*v)),
            None => s.serialize_none(),
        }
    }
}
