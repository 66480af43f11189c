//! Number and octonion encodings shared by every command.

use octoslice::{Octonion, Rational};
use serde_json::{Number, Value};

/// C's `%.17g`.
pub fn g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x < 0.0 { "-inf".into() } else { "inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let digits = (16 - exp) as usize;
        trim_zeros(&format!("{x:.digits$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A JSON number printed with `%.17g`; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(g17(x).parse::<Number>().expect("%.17g is valid JSON"))
}

pub fn octonion(x: &Octonion<f64>) -> Value {
    Value::Array(x.coeffs().iter().map(|c| num(*c)).collect())
}

pub fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|c| num(*c)).collect())
}

/// `"num/den"`, always with a denominator.
pub fn rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn exact_octonion(x: &Octonion<Rational>) -> Value {
    Value::Array(x.coeffs().iter().map(|c| Value::String(rational(c))).collect())
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
