//! Black-box functions `𝕆 -> 𝕆` in float mode, with the built-in registry
//! entries.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::Octonion;
use crate::fueter::{fueter_var, Side};
use crate::kernel::kernel_e;
use crate::slicegeom::{split, SlicePoint, SliceSignature, SplitPoint};
use crate::stem::StemFunction;

/// A float-mode function on (a subset of) 𝕆. Implementations must be
/// reentrant so that quadrature may evaluate them concurrently.
pub trait SliceFunction: Send + Sync {
    fn sig(&self) -> SliceSignature;

    fn eval(&self, x: &Octonion<f64>) -> Octonion<f64>;

    /// Value at `x_p + r ω` for a signed `r`; overriding this avoids
    /// re-splitting the point.
    fn eval_slice(&self, x: &SlicePoint<f64>, omega: &Octonion<f64>) -> Octonion<f64> {
        self.eval(&x.on_slice(omega))
    }

    fn name(&self) -> String;
}

pub type Handle = Arc<dyn SliceFunction>;

fn split_f64(x: &Octonion<f64>, sig: SliceSignature) -> SplitPoint<f64> {
    split(x, sig).expect("float split is total")
}

/// `z_ℓ` or `z_ℓ^R`.
#[derive(Clone, Debug)]
pub struct FueterVariable {
    pub sig: SliceSignature,
    pub l: usize,
    pub side: Side,
}

impl SliceFunction for FueterVariable {
    fn sig(&self) -> SliceSignature {
        self.sig
    }

    fn eval(&self, x: &Octonion<f64>) -> Octonion<f64> {
        fueter_var(self.l, &split_f64(x, self.sig), self.side).expect("index checked at construction")
    }

    fn eval_slice(&self, x: &SlicePoint<f64>, omega: &Octonion<f64>) -> Octonion<f64> {
        let e = Octonion::basis(self.l);
        let prod = match self.side {
            Side::Left => omega.mul(&e),
            Side::Right => e.mul(omega),
        };
        Octonion::real(x.xp[self.l]).add(&prod.scale(&x.r))
    }

    fn name(&self) -> String {
        match self.side {
            Side::Left => format!("z:{}", self.l),
            Side::Right => format!("zR:{}", self.l),
        }
    }
}

/// `(x_0 + x_q)^n`; for `p = 0` this is `x^n`.
#[derive(Clone, Debug)]
pub struct XqPower {
    pub sig: SliceSignature,
    pub n: u32,
}

impl SliceFunction for XqPower {
    fn sig(&self) -> SliceSignature {
        self.sig
    }

    fn eval(&self, x: &Octonion<f64>) -> Octonion<f64> {
        let p = self.sig.p();
        let base = Octonion::from_fn(|i| if i == 0 || i > p { *x.coeff(i) } else { 0.0 });
        (0..self.n).fold(Octonion::one(), |acc, _| acc.mul(&base))
    }

    fn name(&self) -> String {
        format!("xq_power:{}", self.n)
    }
}

/// 1 on `(H_ω ∪ H_{-ω}) \ R^{p+1}`, 0 elsewhere.
#[derive(Clone, Debug)]
pub struct Indicator {
    pub sig: SliceSignature,
    pub omega: Octonion<f64>,
}

impl SliceFunction for Indicator {
    fn sig(&self) -> SliceSignature {
        self.sig
    }

    fn eval(&self, x: &Octonion<f64>) -> Octonion<f64> {
        let p = self.sig.p();
        let xq = Octonion::from_fn(|i| if i > p { *x.coeff(i) } else { 0.0 });
        let r = xq.norm();
        if r == 0.0 {
            return Octonion::zero();
        }
        let w = xq.div_scalar(&r);
        let tol = 1e-9;
        if w.sub(&self.omega).norm() < tol || w.add(&self.omega).norm() < tol {
            Octonion::one()
        } else {
            Octonion::zero()
        }
    }

    fn name(&self) -> String {
        String::from("indicator")
    }
}

/// `x -> E(x - pole) a`.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub sig: SliceSignature,
    pub pole: Octonion<f64>,
    pub a: Octonion<f64>,
}

impl SliceFunction for Kernel {
    fn sig(&self) -> SliceSignature {
        self.sig
    }

    fn eval(&self, x: &Octonion<f64>) -> Octonion<f64> {
        match kernel_e(&x.sub(&self.pole), self.sig.p()) {
            Ok(e) => e.mul(&self.a),
            Err(_) => Octonion::from_fn(|_| f64::NAN),
        }
    }

    fn name(&self) -> String {
        String::from("kernel")
    }
}

/// The function induced by a stem, evaluated in float mode.
#[derive(Clone, Debug)]
pub struct StemHandle {
    pub stem: StemFunction<f64>,
    pub label: String,
}

impl StemHandle {
    pub fn new(stem: StemFunction<f64>, label: impl Into<String>) -> Self {
        StemHandle { stem, label: label.into() }
    }
}

impl SliceFunction for StemHandle {
    fn sig(&self) -> SliceSignature {
        self.stem.sig()
    }

    fn eval(&self, x: &Octonion<f64>) -> Octonion<f64> {
        self.stem.eval_split(&split_f64(x, self.stem.sig())).expect("signature matches")
    }

    fn eval_slice(&self, x: &SlicePoint<f64>, omega: &Octonion<f64>) -> Octonion<f64> {
        self.stem.eval_at(x, omega)
    }

    fn name(&self) -> String {
        self.label.clone()
    }
}

#[derive(Clone, Debug)]
pub struct Constant {
    pub sig: SliceSignature,
    pub c: Octonion<f64>,
}

impl SliceFunction for Constant {
    fn sig(&self) -> SliceSignature {
        self.sig
    }

    fn eval(&self, _x: &Octonion<f64>) -> Octonion<f64> {
        self.c.clone()
    }

    fn name(&self) -> String {
        String::from("const")
    }
}

type Evaluator = Box<dyn Fn(&Octonion<f64>) -> Octonion<f64> + Send + Sync>;

/// A named closure.
pub struct FnHandle {
    sig: SliceSignature,
    label: String,
    f: Evaluator,
}

impl FnHandle {
    pub fn new(
        sig: SliceSignature,
        label: impl Into<String>,
        f: impl Fn(&Octonion<f64>) -> Octonion<f64> + Send + Sync + 'static,
    ) -> Self {
        FnHandle { sig, label: label.into(), f: Box::new(f) }
    }
}

impl SliceFunction for FnHandle {
    fn sig(&self) -> SliceSignature {
        self.sig
    }

    fn eval(&self, x: &Octonion<f64>) -> Octonion<f64> {
        (self.f)(x)
    }

    fn name(&self) -> String {
        self.label.clone()
    }
}

/// `x -> f(x - y)` for `y ∈ R^{p+1}`.
pub struct Translated {
    pub inner: Handle,
    pub y: Vec<f64>,
}

impl SliceFunction for Translated {
    fn sig(&self) -> SliceSignature {
        self.inner.sig()
    }

    fn eval(&self, x: &Octonion<f64>) -> Octonion<f64> {
        let shift = Octonion::from_fn(|i| self.y.get(i).copied().unwrap_or(0.0));
        self.inner.eval(&x.sub(&shift))
    }

    fn eval_slice(&self, x: &SlicePoint<f64>, omega: &Octonion<f64>) -> Octonion<f64> {
        let xp = x.xp.iter().zip(&self.y).map(|(a, b)| a - b).collect();
        self.inner.eval_slice(&SlicePoint::new(xp, x.r), omega)
    }

    fn name(&self) -> String {
        format!("translate({})", self.inner.name())
    }
}
