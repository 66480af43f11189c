//! The slice operator `D_ω`: exact on stems, by finite differences on
//! black-box handles, plus the global operator `ϑ̄` and the slice Laplacian.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::Octonion;
use crate::error::{Error, Result};
use crate::fueter::MultiIndex;
use crate::handle::{Handle, SliceFunction, Translated};
use crate::poly::Var;
use crate::scalar::Scalar;
use crate::slicegeom::{SlicePoint, SliceSignature, SplitPoint};
use crate::stem::StemFunction;

/// Finite-difference parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FDScheme {
    pub h: f64,
    pub order: u8,
    pub richardson: bool,
}

impl Default for FDScheme {
    fn default() -> Self {
        FDScheme { h: 1e-4, order: 4, richardson: false }
    }
}

impl FDScheme {
    pub fn with_step(h: f64) -> Self {
        FDScheme { h, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::InvalidScheme(format!("step h = {} must be positive", self.h)));
        }
        if self.order != 2 && self.order != 4 {
            return Err(Error::InvalidScheme(format!("order {} is not 2 or 4", self.order)));
        }
        Ok(())
    }

    /// Distance from the centre to the outermost stencil node.
    pub fn half_width(&self) -> f64 {
        if self.order == 4 {
            2.0 * self.h
        } else {
            self.h
        }
    }
}

/// A finite-difference result; `one_sided` records that the `r` stencil
/// was shifted to avoid crossing `r = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FdEstimate {
    pub value: Octonion<f64>,
    pub one_sided: bool,
}

fn combine(samples: &[(f64, Octonion<f64>)], scale: f64) -> Octonion<f64> {
    samples
        .iter()
        .fold(Octonion::zero(), |acc, (w, v)| acc.add(&v.scale(w)))
        .div_scalar(&scale)
}

/// First derivative of `g` at 0, central or forward.
fn first_derivative(g: &dyn Fn(f64) -> Octonion<f64>, h: f64, order: u8, forward: bool) -> Octonion<f64> {
    match (order, forward) {
        (2, false) => combine(&[(1.0, g(h)), (-1.0, g(-h))], 2.0 * h),
        (2, true) => combine(&[(-3.0, g(0.0)), (4.0, g(h)), (-1.0, g(2.0 * h))], 2.0 * h),
        (_, false) => combine(&[(-1.0, g(2.0 * h)), (8.0, g(h)), (-8.0, g(-h)), (1.0, g(-2.0 * h))], 12.0 * h),
        (_, true) => combine(
            &[(-25.0, g(0.0)), (48.0, g(h)), (-36.0, g(2.0 * h)), (16.0, g(3.0 * h)), (-3.0, g(4.0 * h))],
            12.0 * h,
        ),
    }
}

fn second_derivative(g: &dyn Fn(f64) -> Octonion<f64>, h: f64, order: u8) -> Octonion<f64> {
    if order == 2 {
        combine(&[(1.0, g(h)), (-2.0, g(0.0)), (1.0, g(-h))], h * h)
    } else {
        combine(
            &[(-1.0, g(2.0 * h)), (16.0, g(h)), (-30.0, g(0.0)), (16.0, g(-h)), (-1.0, g(-2.0 * h))],
            12.0 * h * h,
        )
    }
}

fn derivative_with(
    g: &dyn Fn(f64) -> Octonion<f64>,
    scheme: &FDScheme,
    forward: bool,
) -> Octonion<f64> {
    let d1 = first_derivative(g, scheme.h, scheme.order, forward);
    if !scheme.richardson {
        return d1;
    }
    let d2 = first_derivative(g, scheme.h / 2.0, scheme.order, forward);
    let k = libm::pow(2.0, scheme.order as f64);
    d2.scale(&k).sub(&d1).div_scalar(&(k - 1.0))
}

fn shifted(x: &SlicePoint<f64>, j: usize, t: f64) -> SlicePoint<f64> {
    let mut y = x.clone();
    if j < y.xp.len() {
        y.xp[j] += t;
    } else {
        y.r += t;
    }
    y
}

/// `∂_j f` along the slice of `ω` (coordinate `j = p + 1` is `r`).
pub fn slice_partial(
    f: &dyn SliceFunction,
    x: &SlicePoint<f64>,
    omega: &Octonion<f64>,
    j: usize,
    scheme: &FDScheme,
) -> FdEstimate {
    let g = |t: f64| f.eval_slice(&shifted(x, j, t), omega);
    let forward = j == x.xp.len() && x.r < scheme.half_width() && x.r >= 0.0;
    FdEstimate { value: derivative_with(&g, scheme, forward), one_sided: forward }
}

fn slice_gradient(
    f: &dyn SliceFunction,
    s: &SplitPoint<f64>,
    scheme: &FDScheme,
) -> Result<(Vec<Octonion<f64>>, bool)> {
    scheme.validate()?;
    f.sig().check(s.sig())?;
    let x = s.slice_point();
    let mut one_sided = false;
    let grads = (0..=s.sig().p() + 1)
        .map(|j| {
            let d = slice_partial(f, &x, s.omega(), j, scheme);
            one_sided |= d.one_sided;
            d.value
        })
        .collect();
    Ok((grads, one_sided))
}

/// `D_ω f = Σ e_i ∂_i f + ω ∂_r f` along the slice of `s`, with `ω` frozen.
pub fn d_omega_numeric(f: &dyn SliceFunction, s: &SplitPoint<f64>, scheme: &FDScheme) -> Result<FdEstimate> {
    let (g, one_sided) = slice_gradient(f, s, scheme)?;
    let p = s.sig().p();
    let mut acc = s.omega().mul(&g[p + 1]);
    for (i, gi) in g.iter().take(p + 1).enumerate() {
        acc = acc.add(&Octonion::basis(i).mul(gi));
    }
    Ok(FdEstimate { value: acc, one_sided })
}

/// `f D_ω = Σ (∂_i f) e_i + (∂_r f) ω`.
pub fn d_omega_right_numeric(f: &dyn SliceFunction, s: &SplitPoint<f64>, scheme: &FDScheme) -> Result<FdEstimate> {
    let (g, one_sided) = slice_gradient(f, s, scheme)?;
    let p = s.sig().p();
    let mut acc = g[p + 1].mul(s.omega());
    for (i, gi) in g.iter().take(p + 1).enumerate() {
        acc = acc.add(&gi.mul(&Octonion::basis(i)));
    }
    Ok(FdEstimate { value: acc, one_sided })
}

/// `D_ω f` at a signed-`r` point of the slice plane `H_ω`, central
/// differences in every coordinate.
pub fn d_omega_on_slice(
    f: &dyn SliceFunction,
    x: &SlicePoint<f64>,
    omega: &Octonion<f64>,
    scheme: &FDScheme,
) -> Result<Octonion<f64>> {
    scheme.validate()?;
    let n = x.xp.len();
    let mut acc = Octonion::zero();
    for j in 0..=n {
        let g = |t: f64| f.eval_slice(&shifted(x, j, t), omega);
        let d = derivative_with(&g, scheme, false);
        let unit = if j < n { Octonion::basis(j) } else { omega.clone() };
        acc = acc.add(&unit.mul(&d));
    }
    Ok(acc)
}

/// `Δ_{x'} f` over the `p + 2` slice coordinates.
pub fn slice_laplacian_numeric(f: &dyn SliceFunction, s: &SplitPoint<f64>, scheme: &FDScheme) -> Result<Octonion<f64>> {
    scheme.validate()?;
    f.sig().check(s.sig())?;
    let x = s.slice_point();
    let mut acc = Octonion::zero();
    for j in 0..=s.sig().p() + 1 {
        let g = |t: f64| f.eval_slice(&shifted(&x, j, t), s.omega());
        acc = acc.add(&second_derivative(&g, scheme.h, scheme.order));
    }
    Ok(acc)
}

/// `ϑ̄ f = D_{x_p} f + (x_q / |x_q|^2) Σ_{i>p} x_i ∂_i f`, by full
/// 8-variable stencils.
pub fn global_theta(f: &dyn SliceFunction, x: &Octonion<f64>, scheme: &FDScheme) -> Result<Octonion<f64>> {
    scheme.validate()?;
    let p = f.sig().p();
    let xq = Octonion::from_fn(|i| if i > p { *x.coeff(i) } else { 0.0 });
    let r2 = xq.norm_sq();
    if r2 == 0.0 {
        return Err(Error::Singularity(String::from("x_q = 0: the global operator is undefined on R^{p+1}")));
    }
    let partial = |i: usize| {
        let g = |t: f64| {
            let mut c = *x.coeffs();
            c[i] += t;
            f.eval(&Octonion::new(c))
        };
        derivative_with(&g, scheme, false)
    };
    let mut dxp = Octonion::zero();
    for i in 0..=p {
        dxp = dxp.add(&Octonion::basis(i).mul(&partial(i)));
    }
    let mut euler = Octonion::zero();
    for i in p + 1..8 {
        euler = euler.add(&partial(i).scale(x.coeff(i)));
    }
    Ok(dxp.add(&xq.div_scalar(&r2).mul(&euler)))
}

/// `D_ω (F1 + ω F2)(x') = (D F1 - ∂_r F2)(x') + ω ((conj(D) F2 + ∂_r F1)(x'))`.
pub fn d_omega_exact<S: Scalar>(f: &StemFunction<S>, x: &SlicePoint<S>, omega: &Octonion<S>) -> Octonion<S> {
    let (a, b) = f.cr_residual();
    a.eval_point(x).add(&omega.mul(&b.eval_point(x)))
}

/// `f(· - y)`.
pub fn translate(f: Handle, y: Vec<f64>) -> Handle {
    Arc::new(Translated { inner: f, y })
}

/// `∂_k f` for a black-box handle, by nested central differences
/// (`|k| <= 2`).
pub fn partial_k(f: Handle, k: &MultiIndex, scheme: FDScheme) -> Result<Handle> {
    let exps = k.naturals()?;
    let order: u32 = exps.iter().sum();
    if order > 2 {
        return Err(Error::DerivativeOrderTooHigh(order as usize));
    }
    scheme.validate()?;
    if exps.len() != f.sig().p() + 1 {
        return Err(Error::SignatureMismatch { expected: f.sig().p(), found: exps.len().saturating_sub(1) });
    }
    if order == 0 {
        return Ok(f);
    }
    let dirs: Vec<usize> = exps.iter().enumerate().flat_map(|(i, &c)| core::iter::repeat_n(i, c as usize)).collect();
    Ok(Arc::new(NumericPartial { inner: f, dirs, scheme }))
}

/// `∂_k` of a stem, exact.
pub fn partial_k_stem<S: Scalar>(f: &StemFunction<S>, k: &MultiIndex) -> Result<StemFunction<S>> {
    Ok(f.partial(&k.naturals()?))
}

struct NumericPartial {
    inner: Handle,
    dirs: Vec<usize>,
    scheme: FDScheme,
}

impl NumericPartial {
    fn at(&self, x: &Octonion<f64>) -> Octonion<f64> {
        let h = self.scheme.h;
        let bump = |y: &Octonion<f64>, i: usize, t: f64| {
            let mut c = *y.coeffs();
            c[i] += t;
            Octonion::new(c)
        };
        match self.dirs.as_slice() {
            [i] => {
                let g = |t: f64| self.inner.eval(&bump(x, *i, t));
                derivative_with(&g, &self.scheme, false)
            }
            [i, j] if i == j => {
                let g = |t: f64| self.inner.eval(&bump(x, *i, t));
                second_derivative(&g, h, self.scheme.order)
            }
            [i, j] => {
                let g = |t: f64| {
                    let inner = |u: f64| self.inner.eval(&bump(&bump(x, *i, t), *j, u));
                    derivative_with(&inner, &self.scheme, false)
                };
                derivative_with(&g, &self.scheme, false)
            }
            _ => self.inner.eval(x),
        }
    }
}

impl SliceFunction for NumericPartial {
    fn sig(&self) -> SliceSignature {
        self.inner.sig()
    }

    fn eval(&self, x: &Octonion<f64>) -> Octonion<f64> {
        self.at(x)
    }

    fn name(&self) -> String {
        format!("partial{:?}({})", self.dirs, self.inner.name())
    }
}

/// `∂_r` of a stem's components, exposed for Euler-operator checks.
pub fn stem_r_derivative<S: Scalar>(f: &StemFunction<S>) -> (crate::poly::OctPolynomial<S>, crate::poly::OctPolynomial<S>) {
    (f.f1().derivative(Var::R).expect("r is a variable"), f.f2().derivative(Var::R).expect("r is a variable"))
}
