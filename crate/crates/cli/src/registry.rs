//! Built-in functions addressable by name.
//!
//! | name | function |
//! |---|---|
//! | `z:<l>`, `zR:<l>` | Fueter variable `x_l + r ω e_l`, or `x_l + r e_l ω` |
//! | `xq_power:<n>`, `poly:x^<n>` | `(x_0 + x_q)^n` |
//! | `indicator` | 1 on the slice pair `H_{±ω}` off the real space |
//! | `kernel`, `kernel:<t>` | `E(x - t)` with a real pole, default `t = 1.5` |
//! | `const`, `const:<c0,..,c7>` | a constant, default 1 |
//! | `stem:V<digits>`, `stem:V(k0,..,kp)` | the Fueter polynomial `V_k` |
//! | `stem:<json>` | a polynomial stem, see [`parse_stem`] |

use std::sync::Arc;

use octoslice::fueter::{parse_multi_index, v_poly, Side};
use octoslice::handle::{Constant, FueterVariable, Indicator, Kernel, StemHandle, XqPower};
use octoslice::{Handle, MultiIndex, OctPolynomial, Octonion, Rational, SliceSignature, StemFunction};
use serde_json::Value;

use crate::parse;
use crate::UsageError;

pub struct Target {
    pub name: String,
    pub handle: Handle,
    /// The exact stem, for polynomial targets.
    pub stem: Option<StemFunction<Rational>>,
}

impl Target {
    fn plain(name: &str, handle: Handle) -> Self {
        Target { name: name.to_string(), handle, stem: None }
    }
}

fn unknown(spec: &str) -> UsageError {
    UsageError::new(format!(
        "unknown target {spec:?}: expected z:<l>, zR:<l>, xq_power:<n>, poly:x^<n>, indicator, kernel, const, stem:V<k> or stem:<json>"
    ))
}

fn natural(spec: &str, s: &str) -> Result<u32, UsageError> {
    s.parse().map_err(|_| unknown(spec))
}

/// Resolves a target name; `omega` is the slice used by `indicator`.
pub fn resolve(spec: &str, sig: SliceSignature, omega: &Octonion<f64>) -> Result<Target, UsageError> {
    let p = sig.p();
    let (head, arg) = match spec.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (spec, None),
    };
    match (head, arg) {
        ("z" | "zR", Some(l)) => {
            let l = natural(spec, l)? as usize;
            if l > p {
                return Err(UsageError::new(format!("target {spec:?}: Fueter variable index {l} exceeds p = {p}")));
            }
            let side = if head == "z" { Side::Left } else { Side::Right };
            let mut k = vec![0; p + 1];
            k[l] = 1;
            let stem = v_poly::<Rational>(&MultiIndex::new(k), sig).expect("unit index");
            let stem = if side == Side::Left { Some(stem) } else { None };
            Ok(Target { name: spec.into(), handle: Arc::new(FueterVariable { sig, l, side }), stem })
        }
        ("xq_power", Some(n)) => Ok(Target::plain(spec, Arc::new(XqPower { sig, n: natural(spec, n)? }))),
        ("poly", Some(body)) => {
            let n = body.strip_prefix("x^").ok_or_else(|| unknown(spec))?;
            Ok(Target::plain(spec, Arc::new(XqPower { sig, n: natural(spec, n)? })))
        }
        ("indicator", None) => Ok(Target::plain(spec, Arc::new(Indicator { sig, omega: omega.clone() }))),
        ("kernel", t) => {
            let t = match t {
                Some(t) => parse::float(t)?,
                None => 1.5,
            };
            Ok(Target::plain(spec, Arc::new(Kernel { sig, pole: Octonion::real(t), a: Octonion::one() })))
        }
        ("const", c) => {
            let c = match c {
                Some(c) => parse::octonion(c)?,
                None => Octonion::one(),
            };
            Ok(Target::plain(spec, Arc::new(Constant { sig, c })))
        }
        ("stem", Some(body)) => {
            let stem = if let Some(k) = body.strip_prefix('V') {
                let k = fueter_index(k, p).map_err(|e| UsageError::new(format!("target {spec:?}: {e}")))?;
                v_poly::<Rational>(&k, sig).expect("nonnegative index")
            } else {
                parse_stem(body, sig).map_err(|e| UsageError::new(format!("target stem: {e}")))?
            };
            let handle = Arc::new(StemHandle::new(stem.to_f64(), spec));
            Ok(Target { name: spec.into(), handle, stem: Some(stem) })
        }
        _ => Err(unknown(spec)),
    }
}

/// `21` (one digit per entry) or `(2,1)`.
fn fueter_index(s: &str, p: usize) -> Result<MultiIndex, String> {
    let k = if s.starts_with('(') {
        parse_multi_index(&format!("V{s}")).map_err(|e| e.to_string())?
    } else {
        let digits: Option<Vec<i64>> = s.chars().map(|c| c.to_digit(10).map(i64::from)).collect();
        MultiIndex::new(digits.filter(|d| !d.is_empty()).ok_or("expected digits after V")?)
    };
    if k.len() != p + 1 {
        return Err(format!("multi-index {k} needs p + 1 = {} entries", p + 1));
    }
    if k.has_negative() {
        return Err(format!("multi-index {k} has a negative entry"));
    }
    Ok(k)
}

/// Parses `{"f1": [term..], "f2": [term..]}` where a term is
/// `{"x": [a_0, .., a_p], "r": a_r, "c": [c_0, .., c_7]}` and coefficients
/// are numbers or `"num/den"` strings. Both lists are optional.
pub fn parse_stem(json: &str, sig: SliceSignature) -> Result<StemFunction<Rational>, String> {
    let v: Value = serde_json::from_str(json).map_err(|e| format!("invalid JSON: {e}"))?;
    let obj = v.as_object().ok_or("expected an object with keys f1, f2")?;
    if let Some(k) = obj.keys().find(|k| *k != "f1" && *k != "f2") {
        return Err(format!("unexpected key {k:?}"));
    }
    let part = |key: &str| -> Result<OctPolynomial<Rational>, String> {
        let Some(terms) = obj.get(key) else { return Ok(OctPolynomial::zero(sig)) };
        let terms = terms.as_array().ok_or_else(|| format!("{key} must be a list of terms"))?;
        let mut out = Vec::new();
        for t in terms {
            out.push(term(t, sig).map_err(|e| format!("{key}: {e}"))?);
        }
        Ok(OctPolynomial::from_terms(sig, out))
    };
    StemFunction::new(part("f1")?, part("f2")?).map_err(|e| e.to_string())
}

fn term(t: &Value, sig: SliceSignature) -> Result<(Vec<u32>, Octonion<Rational>), String> {
    let exp = |v: &Value| v.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or("exponents must be naturals");
    let x = t.get("x").and_then(Value::as_array).ok_or("term needs an \"x\" exponent list")?;
    if x.len() != sig.p() + 1 {
        return Err(format!("\"x\" needs p + 1 = {} exponents", sig.p() + 1));
    }
    let mut exps = x.iter().map(exp).collect::<Result<Vec<u32>, _>>()?;
    exps.push(match t.get("r") {
        Some(r) => exp(r)?,
        None => 0,
    });
    let c = t.get("c").and_then(Value::as_array).ok_or("term needs a \"c\" list of 8 coefficients")?;
    if c.len() != 8 {
        return Err("\"c\" needs 8 coefficients".into());
    }
    let c = c.iter().map(coefficient).collect::<Result<Vec<Rational>, _>>()?;
    Ok((exps, Octonion::from_fn(|i| c[i].clone())))
}

fn coefficient(v: &Value) -> Result<Rational, String> {
    match v {
        Value::String(s) => parse::rational(s).map_err(|e| e.to_string()),
        Value::Number(n) => {
            let s = n.to_string();
            parse::rational(&s).or_else(|_| {
                n.as_f64().and_then(Rational::from_float).ok_or_else(|| format!("bad coefficient {s}"))
            })
        }
        _ => Err("coefficients must be numbers or \"num/den\" strings".into()),
    }
}
