//! The Cauchy kernel `E`, its exact derivatives `Q_k`, and the
//! operator-valued kernel `𝓔_y(x)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::algebra::{LeftMulOperator, Octonion};
use crate::error::{Error, Result};
use crate::fueter::MultiIndex;
use crate::poly::{OctPolynomial, Var};
use crate::scalar::{Rational, Scalar};
use crate::slicegeom::{SlicePoint, SliceSignature, SplitPoint};

/// `Γ(n / 2)` for a positive integer `n`.
pub fn gamma_half(n: u32) -> f64 {
    assert!(n > 0, "Γ(0) is undefined");
    let mut g = if n % 2 == 0 { 1.0 } else { libm::sqrt(PI) };
    let mut a = if n % 2 == 0 { 1.0 } else { 0.5 };
    while a < n as f64 / 2.0 {
        g *= a;
        a += 1.0;
    }
    g
}

/// Area `2 π^{n/2} / Γ(n/2)` of the unit sphere in `R^n`.
pub fn sphere_area(n: u32) -> f64 {
    2.0 * libm::pow(PI, n as f64 / 2.0) / gamma_half(n)
}

/// `σ_{p+1}`, the area of the unit sphere of `R^{p+2}`.
pub fn sigma(p: usize) -> f64 {
    sphere_area(p as u32 + 2)
}

/// `E(x) = conj(x) / (σ_{p+1} |x|^{p+2})`.
pub fn kernel_e(x: &Octonion<f64>, p: usize) -> Result<Octonion<f64>> {
    let n2 = x.norm_sq();
    if n2 == 0.0 {
        return Err(Error::Singularity(format!("kernel evaluated at 0 (p = {p})")));
    }
    let scale = sigma(p) * libm::pow(n2, (p as f64 + 2.0) / 2.0);
    Ok(x.conj().div_scalar(&scale))
}

/// `E(y - x)`.
pub fn kernel_e_at(y: &Octonion<f64>, x: &Octonion<f64>, p: usize) -> Result<Octonion<f64>> {
    kernel_e(&y.sub(x), p)
}

/// `∂ E` in stem form: on the slice `H_η` its value is
/// `(A(y') + η B(y')) / (σ_{p+1} |y'|^m)` where `A` has coefficients in
/// `R^{p+1}` and `B` is real.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelDerivative {
    sig: SliceSignature,
    num_a: OctPolynomial<Rational>,
    num_b: OctPolynomial<Rational>,
    m: u32,
    a64: OctPolynomial<f64>,
    b64: OctPolynomial<f64>,
}

impl KernelDerivative {
    /// `E` itself: `A = conj(y_p)`, `B = -r`, `m = p + 2`.
    pub fn kernel(sig: SliceSignature) -> Self {
        let mut a = OctPolynomial::zero(sig);
        for i in 0..=sig.p() {
            let v = OctPolynomial::var(sig, Var::X(i)).expect("index in range");
            let unit = if i == 0 { Octonion::one() } else { Octonion::basis(i).neg() };
            a = a.add(&v.right_mul(&unit));
        }
        let b = OctPolynomial::var(sig, Var::R).expect("r is always a variable").neg();
        Self::from_parts(sig, a, b, sig.p() as u32 + 2)
    }

    fn from_parts(sig: SliceSignature, a: OctPolynomial<Rational>, b: OctPolynomial<Rational>, m: u32) -> Self {
        let a64 = a.to_f64();
        let b64 = b.to_f64();
        KernelDerivative { sig, num_a: a, num_b: b, m, a64, b64 }
    }

    pub fn sig(&self) -> SliceSignature {
        self.sig
    }

    pub fn num_a(&self) -> &OctPolynomial<Rational> {
        &self.num_a
    }

    pub fn num_b(&self) -> &OctPolynomial<Rational> {
        &self.num_b
    }

    pub fn denom_exp(&self) -> u32 {
        self.m
    }

    /// `∂_v (N / ρ^m) = (∂_v N · ρ^2 - m v N) / ρ^{m+2}` for both numerators.
    pub fn derivative(&self, v: Var) -> Result<Self> {
        let sig = self.sig;
        let rho2 = (0..=sig.p() + 1).fold(OctPolynomial::zero(sig), |acc, i| {
            let var = if i <= sig.p() { Var::X(i) } else { Var::R };
            let t = OctPolynomial::var(sig, var).expect("index in range");
            acc.add(&t.mul(&t))
        });
        let coord = OctPolynomial::var(sig, v)?;
        let m = Rational::from_i64(self.m as i64);
        let step = |n: &OctPolynomial<Rational>| -> Result<OctPolynomial<Rational>> {
            Ok(n.derivative(v)?.mul(&rho2).sub(&coord.mul(n).scale(&m)))
        };
        Ok(Self::from_parts(sig, step(&self.num_a)?, step(&self.num_b)?, self.m + 2))
    }

    /// `Q_k = (-1)^{|k|} ∂_k E`.
    pub fn q_kernel(k: &MultiIndex, sig: SliceSignature) -> Result<Self> {
        let exps = k.naturals()?;
        let mut out = Self::kernel(sig);
        for (i, &ki) in exps.iter().enumerate() {
            for _ in 0..ki {
                out = out.derivative(Var::X(i))?;
            }
        }
        if k.order() % 2 == 1 {
            out = out.negate();
        }
        Ok(out)
    }

    /// All `Q_k` with `|k| <= max_degree`, sharing intermediate derivatives.
    pub fn table(sig: SliceSignature, max_degree: u32) -> Result<BTreeMap<MultiIndex, KernelDerivative>> {
        let mut derivs: BTreeMap<MultiIndex, KernelDerivative> = BTreeMap::new();
        derivs.insert(MultiIndex::zero(sig), Self::kernel(sig));
        for k in MultiIndex::up_to_degree(sig, max_degree) {
            if k.order() == 0 {
                continue;
            }
            let i = k.entries().iter().position(|&v| v > 0).expect("nonzero index");
            let parent = derivs[&k.minus_unit(i)].derivative(Var::X(i))?;
            derivs.insert(k, parent);
        }
        Ok(derivs
            .into_iter()
            .map(|(k, d)| {
                let d = if k.order() % 2 == 1 { d.negate() } else { d };
                (k, d)
            })
            .collect())
    }

    fn negate(&self) -> Self {
        Self::from_parts(self.sig, self.num_a.neg(), self.num_b.neg(), self.m)
    }

    /// Value at `y_p + s η` for signed `s`.
    pub fn eval(&self, y: &SlicePoint<f64>, eta: &Octonion<f64>) -> Result<Octonion<f64>> {
        let rho2 = y.norm_sq();
        if rho2 == 0.0 {
            return Err(Error::Singularity(String::from("kernel derivative at 0")));
        }
        let a = self.a64.eval_point(y);
        let b = self.b64.eval_point(y);
        let denom = sigma(self.sig.p()) * libm::pow(rho2, self.m as f64 / 2.0);
        Ok(a.add(&eta.mul(&b)).div_scalar(&denom))
    }

    /// Value at an octonion `y`, using its own slice.
    pub fn eval_octonion(&self, y: &Octonion<f64>) -> Result<Octonion<f64>> {
        let s = crate::slicegeom::split(y, self.sig)?;
        self.eval(&s.slice_point(), s.omega())
    }
}

/// A list of kernel derivatives evaluated together, sharing one table of
/// coordinate powers per point.
#[derive(Clone, Debug)]
pub struct KernelBatch {
    sig: SliceSignature,
    max_exp: Vec<u32>,
    entries: Vec<(Vec<(Vec<u32>, Octonion<f64>, f64)>, u32)>,
}

impl KernelBatch {
    pub fn new<'a>(sig: SliceSignature, list: impl IntoIterator<Item = &'a KernelDerivative>) -> Self {
        let n = sig.slice_dim();
        let mut max_exp = vec![0u32; n];
        let entries = list
            .into_iter()
            .map(|q| {
                let mut merged: BTreeMap<Vec<u32>, (Octonion<f64>, f64)> = BTreeMap::new();
                for (e, c) in q.a64.terms() {
                    merged.entry(e.clone()).or_insert((Octonion::zero(), 0.0)).0 = c.clone();
                }
                for (e, c) in q.b64.terms() {
                    merged.entry(e.clone()).or_insert((Octonion::zero(), 0.0)).1 = *c.re();
                }
                for e in merged.keys() {
                    for (m, &a) in max_exp.iter_mut().zip(e) {
                        *m = (*m).max(a);
                    }
                }
                (merged.into_iter().map(|(e, (a, b))| (e, a, b)).collect(), q.m)
            })
            .collect();
        KernelBatch { sig, max_exp, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Values of every entry at `y_p + s η`, in insertion order.
    pub fn eval(&self, y: &SlicePoint<f64>, eta: &Octonion<f64>, out: &mut Vec<Octonion<f64>>) -> Result<()> {
        let rho2 = y.norm_sq();
        if rho2 == 0.0 {
            return Err(Error::Singularity(String::from("kernel derivative at 0")));
        }
        let coords = y.coords();
        let powers: Vec<Vec<f64>> = coords
            .iter()
            .zip(&self.max_exp)
            .map(|(c, &m)| {
                let mut v = vec![1.0; m as usize + 1];
                for j in 1..v.len() {
                    v[j] = v[j - 1] * c;
                }
                v
            })
            .collect();
        let sig_p = sigma(self.sig.p());
        let rho = libm::sqrt(rho2);
        out.clear();
        for (terms, m) in &self.entries {
            let mut a = [0.0f64; 8];
            let mut b = 0.0;
            for (e, ca, cb) in terms {
                let mono = e.iter().enumerate().fold(1.0, |acc, (i, &k)| acc * powers[i][k as usize]);
                for (ai, ci) in a.iter_mut().zip(ca.coeffs()) {
                    *ai += ci * mono;
                }
                b += cb * mono;
            }
            let denom = sig_p * libm::pow(rho, *m as f64);
            out.push(Octonion::new(a).add(&eta.scale(&b)).div_scalar(&denom));
        }
        Ok(())
    }
}

/// `𝓔_y(x) = ½ L_{E(y-π)+E(y-π◇)} + ½ L_ω L_η L_{E(y-π◇)-E(y-π)}` with
/// `π = x_p + r η`, `π◇ = x_p - r η`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorKernel {
    op: LeftMulOperator<f64>,
}

impl OperatorKernel {
    pub fn new(y: &Octonion<f64>, eta: &Octonion<f64>, x: &SplitPoint<f64>) -> Result<Self> {
        let (plus, minus) = Self::halves(eta, x);
        let p = x.sig().p();
        let ep = kernel_e_at(y, &plus, p)?;
        let em = kernel_e_at(y, &minus, p)?;
        let half = 0.5;
        let sym = LeftMulOperator::left_mul(&ep.add(&em)).scale(&half);
        let skew = LeftMulOperator::left_mul(x.omega())
            .compose(&LeftMulOperator::left_mul(eta))
            .compose(&LeftMulOperator::left_mul(&em.sub(&ep)))
            .scale(&half);
        Ok(OperatorKernel { op: sym.add(&skew) })
    }

    /// `(π_y(x), π_y(x)◇)`.
    pub fn halves(eta: &Octonion<f64>, x: &SplitPoint<f64>) -> (Octonion<f64>, Octonion<f64>) {
        let sp = x.slice_point();
        (sp.on_slice(eta), sp.reflect().on_slice(eta))
    }

    pub fn operator(&self) -> &LeftMulOperator<f64> {
        &self.op
    }

    pub fn apply(&self, a: &Octonion<f64>) -> Octonion<f64> {
        self.op.apply(a)
    }
}

/// Applies `𝓔_y(x)` to `a` without forming the matrix:
/// `½ (E₊ + E₋) a + ½ ω (η ((E₋ - E₊) a))`.
pub fn apply_operator_kernel(
    e_plus: &Octonion<f64>,
    e_minus: &Octonion<f64>,
    omega: &Octonion<f64>,
    eta: &Octonion<f64>,
    a: &Octonion<f64>,
) -> Octonion<f64> {
    let sym = e_plus.add(e_minus).mul(a);
    let skew = omega.mul(&eta.mul(&e_minus.sub(e_plus).mul(a)));
    sym.add(&skew).scale(&0.5)
}

/// `Q_k` for `p = 0` in closed form: `k! / (2π) · y^{-(k+1)}`.
pub fn q_kernel_p0(k: u32, y: &Octonion<f64>) -> Result<Octonion<f64>> {
    let inv = y.inverse()?;
    let mut pow = Octonion::one();
    for _ in 0..=k {
        pow = pow.mul(&inv);
    }
    let fact: f64 = (1..=k).map(|v| v as f64).product();
    Ok(pow.scale(&(fact / (2.0 * PI))))
}
