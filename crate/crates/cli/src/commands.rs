//! Subcommand implementations; each returns the rendered output.

use octoslice::algebra::TABLE;
use octoslice::cauchy::{cauchy_reconstruct, cauchy_reconstruct_global, BallSlice};
use octoslice::quadrature::QuadratureRule;
use octoslice::taylor::taylor_expand;
use octoslice::{Octonion, Rational, SliceSignature, SplitPoint};
use serde_json::{json, Value};

use crate::format::{exact_octonion, floats, num, octonion, rational, to_json};
use crate::parse;
use crate::registry::{resolve, Target};
use crate::report::SuiteReport;
use crate::suites::{self, VerifyOptions};
use crate::{CauchyArgs, Cli, MaxmodArgs, Mode, Outcome, SliceArgs, TaylorArgs, UsageError, VerifyArgs};

type O = Octonion<f64>;

pub fn verify(cli: &Cli, a: &VerifyArgs) -> Result<Outcome, UsageError> {
    if let Some(p) = a.p {
        parse::signature(p)?;
    }
    if a.samples == Some(0) {
        return Err(UsageError::new("--samples must be at least 1"));
    }
    if a.max_degree == Some(0) {
        return Err(UsageError::new("--max-degree must be at least 1"));
    }
    let opts = VerifyOptions {
        mode: cli.mode.unwrap_or(Mode::Exact),
        seed: cli.seed,
        samples: a.samples,
        p: a.p,
        max_degree: a.max_degree,
    };
    let report: SuiteReport = suites::run(a.suite, &opts);
    let output = if cli.json { to_json(&report.to_json()) } else { report.to_text() };
    Ok(Outcome { output, code: if report.passed() { 0 } else { 1 } })
}

/// Exact copies of the parsed inputs, present in exact mode.
struct ExactInputs {
    eta: Octonion<Rational>,
    omega: Octonion<Rational>,
    point: SplitPoint<Rational>,
}

struct Setup {
    sig: SliceSignature,
    eta: O,
    omega: O,
    point: SplitPoint<f64>,
    coords: Vec<f64>,
    ball: BallSlice,
    rule: QuadratureRule,
    target: Target,
    exact: Option<ExactInputs>,
}

impl Setup {
    fn new(mode: Mode, a: &SliceArgs, omega: Option<&str>) -> Result<Self, UsageError> {
        let sig = parse::signature(a.p)?;
        let p = a.p;
        if !(a.radius.is_finite() && a.radius > 0.0) {
            return Err(UsageError::new(format!("radius must be positive and finite, got {}", a.radius)));
        }
        let default_point: Vec<String> = (0..p + 2)
            .map(|i| {
                let c = match i {
                    0 => 0.3,
                    _ if i == p + 1 => 0.2,
                    _ => 0.1,
                };
                crate::format::g17(c * a.radius)
            })
            .collect();
        let point_strs: Vec<String> = match &a.point {
            Some(s) => s.split(',').map(str::to_string).collect(),
            None => default_point,
        };
        if point_strs.len() != p + 2 {
            return Err(UsageError::new(format!(
                "--point needs p + 2 = {} coordinates (x_0,..,x_p,r), got {}",
                p + 2,
                point_strs.len()
            )));
        }
        let canonical = format!("e{}", p + 1);
        let eta_str = a.eta.as_deref().unwrap_or(&canonical);
        let omega_str = omega.unwrap_or(eta_str);

        let (eta, omega, coords, exact) = match mode {
            Mode::Float => {
                let coords = point_strs.iter().map(|s| parse::float(s)).collect::<Result<Vec<_>, _>>()?;
                (parse::direction(eta_str, sig, "eta")?, parse::direction(omega_str, sig, "omega")?, coords, None)
            }
            Mode::Exact => {
                let eta = parse::direction_exact(eta_str, sig, "eta")?;
                let omega = parse::direction_exact(omega_str, sig, "omega")?;
                let c = point_strs.iter().map(|s| parse::rational(s)).collect::<Result<Vec<_>, _>>()?;
                let point = SplitPoint::new(sig, c[..=p].to_vec(), c[p + 1].clone(), omega.clone())
                    .map_err(|e| UsageError::new(format!("--point: {e}")))?;
                let coords = c.iter().map(octoslice::Scalar::to_f64).collect();
                (eta.to_f64(), omega.to_f64(), coords, Some(ExactInputs { eta, omega, point }))
            }
        };
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm >= a.radius {
            return Err(UsageError::new(format!(
                "point lies outside the ball: |x'| = {} >= radius {}",
                crate::format::g17(norm),
                crate::format::g17(a.radius)
            )));
        }
        let point = SplitPoint::new(sig, coords[..=p].to_vec(), coords[p + 1], omega.clone())
            .map_err(|e| UsageError::new(format!("--point: {e}")))?;
        let ball = BallSlice::new(sig, eta.clone(), a.radius).map_err(|e| UsageError::new(format!("--eta: {e}")))?;
        let rule = match a.level {
            Some(level) => QuadratureRule::sphere(p + 2, level)
                .map_err(|_| UsageError::new(format!("invalid quadrature level {level}: expected a level >= 2")))?,
            None => ball.default_rule(),
        };
        let target = resolve(&a.target, sig, &omega)?;
        if exact.is_some() && target.stem.is_none() {
            return Err(UsageError::new(format!(
                "exact mode needs a polynomial target (stem:..., z:<l>); {:?} has no exact reference",
                a.target
            )));
        }
        Ok(Setup { sig, eta, omega, point, coords, ball, rule, target, exact })
    }

    fn reference(&self) -> (O, Option<Value>) {
        match (&self.exact, &self.target.stem) {
            (Some(ex), Some(stem)) => {
                let r = stem.eval_split(&ex.point).expect("signature checked");
                (r.to_f64(), Some(exact_octonion(&r)))
            }
            _ => (self.target.handle.eval(&self.point.embed()), None),
        }
    }

    fn direction_json(&self, float: &O, exact: Option<&Octonion<Rational>>) -> Value {
        match exact {
            Some(e) => exact_octonion(e),
            None => octonion(float),
        }
    }

    fn point_json(&self) -> Value {
        match &self.exact {
            Some(ex) => {
                let mut c: Vec<Value> = ex.point.xp().iter().map(|q| Value::String(rational(q))).collect();
                c.push(Value::String(rational(ex.point.r())));
                Value::Array(c)
            }
            None => floats(&self.coords),
        }
    }
}

fn core_error(cmd: &str, e: octoslice::Error) -> UsageError {
    UsageError::new(format!("{cmd}: {e}"))
}

fn float_mode(cli: &Cli) -> Mode {
    cli.mode.unwrap_or(Mode::Float)
}

pub fn cauchy(cli: &Cli, a: &CauchyArgs) -> Result<Outcome, UsageError> {
    let s = Setup::new(float_mode(cli), &a.slice, a.omega.as_deref())?;
    let on_slice = s.omega.sub(&s.eta).norm() < 1e-15;
    let value = if on_slice {
        cauchy_reconstruct(s.target.handle.as_ref(), &s.ball, &s.point, &s.rule)
    } else {
        cauchy_reconstruct_global(s.target.handle.as_ref(), &s.ball, &s.point, &s.rule)
    }
    .map_err(|e| core_error("cauchy", e))?;
    let (reference, exact_ref) = s.reference();
    let abs = value.sub(&reference).norm();
    let rel = if reference.norm() > 0.0 { abs / reference.norm() } else { abs };
    let ex = s.exact.as_ref();
    let out = json!({
        "p": s.sig.p(),
        "eta": s.direction_json(&s.eta, ex.map(|e| &e.eta)),
        "omega": s.direction_json(&s.omega, ex.map(|e| &e.omega)),
        "radius": num(s.ball.radius()),
        "level": s.rule.level(),
        "point": s.point_json(),
        "value": octonion(&value),
        "reference": exact_ref.unwrap_or_else(|| octonion(&reference)),
        "abs_error": num(abs),
        "rel_error": num(rel),
    });
    Ok(Outcome { output: to_json(&out), code: 0 })
}

pub fn taylor(cli: &Cli, a: &TaylorArgs) -> Result<Outcome, UsageError> {
    let s = Setup::new(float_mode(cli), &a.slice, None)?;
    let e = taylor_expand(s.target.handle.as_ref(), &s.point, a.k_max, &s.ball, &s.rule)
        .map_err(|e| core_error("taylor", e))?;
    let (reference, exact_ref) = s.reference();
    let coeffs: Vec<Value> =
        e.coeffs.iter().map(|t| json!({ "k": t.k.to_string(), "value": octonion(&t.coeff) })).collect();
    let tails: Vec<Value> = e.tails.iter().map(|t| json!({ "degree": t.degree, "value": octonion(&t.value) })).collect();
    let out = json!({
        "p": s.sig.p(),
        "K": a.k_max,
        "point": s.point_json(),
        "coeffs": coeffs,
        "tails": tails,
        "reconstruction": octonion(&e.reconstruction),
        "reference": exact_ref.unwrap_or_else(|| octonion(&reference)),
        "error": num(e.reconstruction.sub(&reference).norm()),
    });
    Ok(Outcome { output: to_json(&out), code: 0 })
}

fn cell(i: usize, j: usize) -> String {
    let (sign, k) = TABLE[i][j];
    format!("{}{}", if sign < 0 { '-' } else { '+' }, k)
}

/// Rows and columns `e0..e7`; each cell is the signed index of `e_i e_j`.
pub fn table(as_json: bool) -> String {
    let names: Vec<String> = (0..8).map(|i| format!("e{i}")).collect();
    if as_json {
        let rows: Vec<Vec<String>> = (0..8).map(|i| (0..8).map(|j| cell(i, j)).collect()).collect();
        return to_json(&json!({ "basis": names, "products": rows }));
    }
    let mut out = format!(",{}\n", names.join(","));
    for i in 0..8 {
        let row: Vec<String> = (0..8).map(|j| cell(i, j)).collect();
        out.push_str(&format!("e{i},{}\n", row.join(",")));
    }
    out
}

pub fn maxmod(cli: &Cli, a: &MaxmodArgs) -> Result<Outcome, UsageError> {
    let sig = parse::signature(a.p)?;
    if a.levels == 0 {
        return Err(UsageError::new("--levels must be at least 1"));
    }
    let canonical = format!("e{}", a.p + 1);
    let eta = parse::direction(a.eta.as_deref().unwrap_or(&canonical), sig, "eta")?;
    let target = resolve(&a.target, sig, &eta)?;
    let rule = QuadratureRule::sphere(a.p + 2, 16).expect("fixed level");
    let nodes = rule.nodes();
    let mut spheres = Vec::new();
    let mut maxima = Vec::new();
    for m in 1..=a.levels {
        let rho = m as f64 / a.levels as f64;
        let mut best = (f64::NEG_INFINITY, Vec::new());
        for (u, _) in &nodes {
            let c: Vec<f64> = u.iter().map(|v| v * rho).collect();
            let sp = octoslice::SlicePoint::from_coords(&c);
            let v = target.handle.eval_slice(&sp, &eta).norm();
            if v > best.0 {
                best = (v, c);
            }
        }
        maxima.push(best.0);
        spheres.push(json!({ "radius": num(rho), "max_modulus": num(best.0), "argmax": floats(&best.1) }));
    }
    let outer = *maxima.last().expect("at least one level");
    let dominates = maxima.iter().all(|m| *m <= outer * (1.0 + 1e-12));
    let out = json!({
        "target": target.name,
        "p": a.p,
        "eta": octonion(&eta),
        "seed": cli.seed,
        "spheres": spheres,
        "outer_sphere_dominates": dominates,
    });
    Ok(Outcome { output: to_json(&out), code: 0 })
}
