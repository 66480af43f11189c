//! Flag values: scalars, directions, points and multi-indices.

use octoslice::slicegeom::in_sphere;
use octoslice::{Octonion, Rational, Scalar, SliceSignature};

use crate::UsageError;

pub fn signature(p: usize) -> Result<SliceSignature, UsageError> {
    SliceSignature::new(p).map_err(|_| UsageError::new(format!("invalid slice parameter p = {p}: expected 0..=6")))
}

pub fn float(s: &str) -> Result<f64, UsageError> {
    let v: f64 = s.trim().parse().map_err(|_| UsageError::new(format!("not a number: {s:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(UsageError::new(format!("not a finite number: {s:?}")))
    }
}

/// Exact value of a decimal (`-0.25`, `3`) or fraction (`7/3`).
pub fn rational(s: &str) -> Result<Rational, UsageError> {
    let s = s.trim();
    let bad = || UsageError::new(format!("not an exact rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::from_ratio(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if int.len() + frac.len() > 18 {
        return Err(bad());
    }
    let num: i64 = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let den = 10i64.pow(frac.len() as u32);
    let q = Rational::from_ratio(num, den);
    Ok(if neg { -q } else { q })
}

pub fn list<T>(s: &str, item: impl Fn(&str) -> Result<T, UsageError>) -> Result<Vec<T>, UsageError> {
    s.split(',').map(item).collect()
}

/// `e3`, or a comma vector of the `q` components along `e_{p+1}..e_7`,
/// normalized.
pub fn direction(s: &str, sig: SliceSignature, flag: &str) -> Result<Octonion<f64>, UsageError> {
    let o = match basis_name(s, flag)? {
        Some(i) => Octonion::basis(i),
        None => {
            let o = components(s, sig, flag, float)?;
            let n = o.norm();
            if n == 0.0 {
                return Err(UsageError::new(format!("--{flag}: zero vector")));
            }
            o.div_scalar(&n)
        }
    };
    check_sphere(o, sig, s, flag)
}

/// Exact-mode direction: a basis name or an exactly-unit rational vector.
pub fn direction_exact(s: &str, sig: SliceSignature, flag: &str) -> Result<Octonion<Rational>, UsageError> {
    let o = match basis_name(s, flag)? {
        Some(i) => Octonion::basis(i),
        None => {
            let o = components(s, sig, flag, rational)?;
            if o.norm_sq() != Rational::from_i64(1) {
                return Err(UsageError::new(format!(
                    "--{flag}: {s:?} is not an exact unit vector; exact mode needs a rational point of the sphere"
                )));
            }
            o
        }
    };
    check_sphere(o, sig, s, flag)
}

fn basis_name(s: &str, flag: &str) -> Result<Option<usize>, UsageError> {
    let Some(i) = s.trim().strip_prefix('e') else { return Ok(None) };
    match i.parse::<usize>() {
        Ok(i) if i <= 7 => Ok(Some(i)),
        _ => Err(UsageError::new(format!("--{flag}: unknown basis element {s:?}"))),
    }
}

fn components<S: Scalar>(
    s: &str,
    sig: SliceSignature,
    flag: &str,
    item: impl Fn(&str) -> Result<S, UsageError>,
) -> Result<Octonion<S>, UsageError> {
    let p = sig.p();
    let v = list(s, item)?;
    if v.len() != sig.q() {
        return Err(UsageError::new(format!(
            "--{flag}: expected {} components along e{}..e7, got {}",
            sig.q(),
            p + 1,
            v.len()
        )));
    }
    Ok(Octonion::from_fn(|i| if i > p { v[i - p - 1].clone() } else { S::zero() }))
}

fn check_sphere<S: Scalar>(o: Octonion<S>, sig: SliceSignature, s: &str, flag: &str) -> Result<Octonion<S>, UsageError> {
    if in_sphere(&o, sig) {
        Ok(o)
    } else {
        Err(UsageError::new(format!("--{flag}: {s:?} is not a unit vector in span(e{}..e7)", sig.p() + 1)))
    }
}

/// Octonion from 8 comma-separated floats.
pub fn octonion(s: &str) -> Result<Octonion<f64>, UsageError> {
    let v = list(s, float)?;
    if v.len() != 8 {
        return Err(UsageError::new(format!("an octonion needs 8 components, got {}", v.len())));
    }
    Ok(Octonion::from_fn(|i| v[i]))
}
