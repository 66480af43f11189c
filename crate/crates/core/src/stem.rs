//! Stem functions `F = (F1, F2)`, the induced functions `F1 + ω F2`, the
//! generalized Cauchy–Riemann residual and the representation formulas.

use alloc::format;

use crate::algebra::Octonion;
use crate::error::{Error, Result};
use crate::poly::{OctPolynomial, Var};
use crate::scalar::Scalar;
use crate::slicegeom::{split, SlicePoint, SliceSignature, SplitPoint};

/// A polynomial stem function: `F1` even and `F2` odd in `r`.
#[derive(Clone, PartialEq, Debug)]
pub struct StemFunction<S> {
    f1: OctPolynomial<S>,
    f2: OctPolynomial<S>,
}

impl<S: Scalar> StemFunction<S> {
    pub fn new(f1: OctPolynomial<S>, f2: OctPolynomial<S>) -> Result<Self> {
        f1.sig().check(f2.sig())?;
        if !f1.r_parity_is(false) {
            return Err(Error::NotStem(format!("F1 has a term odd in r: {f1:?}")));
        }
        if !f2.r_parity_is(true) {
            return Err(Error::NotStem(format!("F2 has a term even in r: {f2:?}")));
        }
        Ok(StemFunction { f1, f2 })
    }

    pub fn constant(sig: SliceSignature, c: Octonion<S>) -> Self {
        StemFunction { f1: OctPolynomial::constant(sig, c), f2: OctPolynomial::zero(sig) }
    }

    pub fn sig(&self) -> SliceSignature {
        self.f1.sig()
    }

    pub fn f1(&self) -> &OctPolynomial<S> {
        &self.f1
    }

    pub fn f2(&self) -> &OctPolynomial<S> {
        &self.f2
    }

    pub fn degree(&self) -> Option<u32> {
        match (self.f1.degree(), self.f2.degree()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    /// `F1(x') + ω F2(x')` with signed `r`.
    pub fn eval_at(&self, x: &SlicePoint<S>, omega: &Octonion<S>) -> Octonion<S> {
        self.f1.eval_point(x).add(&omega.mul(&self.f2.eval_point(x)))
    }

    pub fn eval_split(&self, x: &SplitPoint<S>) -> Result<Octonion<S>> {
        self.sig().check(x.sig())?;
        Ok(self.eval_at(&x.slice_point(), x.omega()))
    }

    /// `f(x)` for the induced function, splitting `x` with this stem's `p`.
    pub fn eval(&self, x: &Octonion<S>) -> Result<Octonion<S>> {
        self.eval_split(&split(x, self.sig())?)
    }

    /// `(D_{x_p} F1 - ∂_r F2, conj(D)_{x_p} F2 + ∂_r F1)`.
    pub fn cr_residual(&self) -> (OctPolynomial<S>, OctPolynomial<S>) {
        let d_r = |p: &OctPolynomial<S>| p.derivative(Var::R).expect("r is always a variable");
        let a = self.f1.apply_dxp().sub(&d_r(&self.f2));
        let b = self.f2.apply_dxp_bar().add(&d_r(&self.f1));
        (a, b)
    }

    pub fn is_gsr(&self) -> bool {
        let (a, b) = self.cr_residual();
        a.is_zero() && b.is_zero()
    }

    /// `∂_k` in the `x_p` variables, applied to both components.
    pub fn partial(&self, k: &[u32]) -> Self {
        StemFunction { f1: self.f1.partial(k), f2: self.f2.partial(k) }
    }

    /// `f(· - y)` for `y ∈ R^{p+1}`.
    pub fn translate(&self, y: &[S]) -> Self {
        let shift = |p: &OctPolynomial<S>| {
            let sig = p.sig();
            let mut out = OctPolynomial::zero(sig);
            for (e, c) in p.terms() {
                let mut term = OctPolynomial::constant(sig, c.clone());
                for (i, &a) in e.iter().enumerate() {
                    let base = if i <= sig.p() {
                        OctPolynomial::var(sig, Var::X(i))
                            .expect("index in range")
                            .sub(&OctPolynomial::constant(sig, Octonion::real(y[i].clone())))
                    } else {
                        OctPolynomial::var(sig, Var::R).expect("r is always a variable")
                    };
                    for _ in 0..a {
                        term = term.mul(&base);
                    }
                }
                out = out.add(&term);
            }
            out
        };
        StemFunction { f1: shift(&self.f1), f2: shift(&self.f2) }
    }

    pub fn add(&self, other: &Self) -> Self {
        StemFunction { f1: self.f1.add(&other.f1), f2: self.f2.add(&other.f2) }
    }

    pub fn scale(&self, s: &S) -> Self {
        StemFunction { f1: self.f1.scale(s), f2: self.f2.scale(s) }
    }

    /// `F · a` coefficientwise; induces `x -> f(x) a` only when the
    /// associator `[ω, F2, a]` vanishes.
    pub fn right_mul(&self, a: &Octonion<S>) -> Self {
        StemFunction { f1: self.f1.right_mul(a), f2: self.f2.right_mul(a) }
    }

    pub fn to_f64(&self) -> StemFunction<f64> {
        StemFunction { f1: self.f1.to_f64(), f2: self.f2.to_f64() }
    }
}

/// `½(f⁺ + f⁻) + ½ ω(η(f⁻ - f⁺))`, reconstructing `f(x_p + r ω)` from
/// `f⁺ = f(x_p + r η)` and `f⁻ = f(x_p - r η)`.
pub fn representation_formula<S: Scalar>(
    fplus: &Octonion<S>,
    fminus: &Octonion<S>,
    eta: &Octonion<S>,
    omega: &Octonion<S>,
) -> Octonion<S> {
    let half = S::from_ratio(1, 2);
    let even = fplus.add(fminus).scale(&half);
    let odd = omega.mul(&eta.mul(&fminus.sub(fplus))).scale(&half);
    even.add(&odd)
}

/// Reconstruction of `f(x_p + r ω)` from its values on two slices `ω1 ≠ ω2`:
/// `(ω - ω2)((ω1 - ω2)^{-1} f1) - (ω - ω1)((ω1 - ω2)^{-1} f2)`.
pub fn rep_formula_two_point<S: Scalar>(
    f1: &Octonion<S>,
    f2: &Octonion<S>,
    omega1: &Octonion<S>,
    omega2: &Octonion<S>,
    omega: &Octonion<S>,
) -> Result<Octonion<S>> {
    let d = omega1.sub(omega2);
    if d.is_zero() {
        return Err(Error::DegeneratePair);
    }
    let inv = d.inverse()?;
    let a = omega.sub(omega2).mul(&inv.mul(f1));
    let b = omega.sub(omega1).mul(&inv.mul(f2));
    Ok(a.sub(&b))
}

/// Pointwise stem values `F1 = ½(f⁺ + f⁻)`, `F2 = ½ η(f⁻ - f⁺)`.
pub fn stem_from_slices<S: Scalar>(
    fplus: &Octonion<S>,
    fminus: &Octonion<S>,
    eta: &Octonion<S>,
) -> (Octonion<S>, Octonion<S>) {
    let half = S::from_ratio(1, 2);
    let f1 = fplus.add(fminus).scale(&half);
    let f2 = eta.mul(&fminus.sub(fplus)).scale(&half);
    (f1, f2)
}

/// Extends a function known on the slice `H_η` to the point `x` by way of
/// its stem values.
pub fn extend_from_slice<S: Scalar>(
    f: impl Fn(&Octonion<S>) -> Octonion<S>,
    eta: &Octonion<S>,
    x: &SplitPoint<S>,
) -> Octonion<S> {
    let sp = x.slice_point();
    let fplus = f(&sp.on_slice(eta));
    let fminus = f(&sp.reflect().on_slice(eta));
    let (f1, f2) = stem_from_slices(&fplus, &fminus, eta);
    f1.add(&x.omega().mul(&f2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use alloc::vec;

    type P = OctPolynomial<Rational>;
    type Q = Octonion<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn sig(p: usize) -> SliceSignature {
        SliceSignature::new(p).unwrap()
    }

    fn z0_stem(s: SliceSignature) -> StemFunction<Rational> {
        StemFunction::new(P::var(s, Var::X(0)).unwrap(), P::var(s, Var::R).unwrap()).unwrap()
    }

    #[test]
    fn z0_stem_is_gsr_and_evaluates() {
        let s = sig(2);
        let f = z0_stem(s);
        assert!(f.is_gsr());
        let x = Q::from_i64s([1, 2, 0, 3, 0, 0, 0, 0]);
        assert_eq!(f.eval(&x).unwrap(), Q::from_i64s([1, 0, 0, 3, 0, 0, 0, 0]));
    }

    #[test]
    fn square_stem_matches_multiplication() {
        let s = sig(0);
        let x0 = P::var(s, Var::X(0)).unwrap();
        let r = P::var(s, Var::R).unwrap();
        let f = StemFunction::new(x0.mul(&x0).sub(&r.mul(&r)), x0.mul(&r).scale(&q(2))).unwrap();
        let x = Q::from_i64s([2, 0, 0, 0, 3, 0, 0, 0]);
        assert_eq!(f.eval(&x).unwrap(), x.mul(&x));
    }

    #[test]
    fn parity_violation_is_not_a_stem() {
        let s = sig(1);
        let one = P::constant(s, Q::one());
        assert!(matches!(StemFunction::new(P::zero(s), one), Err(Error::NotStem(_))));
    }

    #[test]
    fn r_squared_is_not_gsr() {
        let s = sig(1);
        let r = P::var(s, Var::R).unwrap();
        let f = StemFunction::new(r.mul(&r), P::zero(s)).unwrap();
        let (a, b) = f.cr_residual();
        assert!(a.is_zero());
        assert_eq!(b, r.scale(&q(2)));
        assert!(StemFunction::constant(s, Q::basis(4)).is_gsr());
    }

    #[test]
    fn representation_formula_examples() {
        let eta = Q::basis(3);
        let omega = Q::basis(5);
        let (x0, r) = (q(2), q(3));
        let fplus = Q::real(x0.clone()).add(&eta.scale(&r));
        let fminus = Q::real(x0.clone()).sub(&eta.scale(&r));
        let v = representation_formula(&fplus, &fminus, &eta, &omega);
        assert_eq!(v, Q::real(x0).add(&omega.scale(&r)));
        assert_eq!(representation_formula(&fplus, &fminus, &eta, &eta), fplus);
        let (f1, f2) = stem_from_slices(&fplus, &fminus, &eta);
        assert_eq!((f1, f2), (Q::real(q(2)), Q::real(q(3))));
    }

    #[test]
    fn two_point_formula_endpoints_and_degeneracy() {
        let (w1, w2, f1, f2) = (Q::basis(2), Q::basis(5), Q::basis(1), Q::basis(6));
        assert_eq!(rep_formula_two_point(&f1, &f2, &w1, &w2, &w1).unwrap(), f1);
        assert_eq!(rep_formula_two_point(&f1, &f2, &w1, &w2, &w2).unwrap(), f2);
        assert_eq!(rep_formula_two_point(&f1, &f2, &w1, &w1, &w2), Err(Error::DegeneratePair));
    }

    #[test]
    fn translation_and_partials() {
        let s = sig(0);
        let f = z0_stem(s);
        let g = f.translate(&[q(1)]);
        let x = SlicePoint::new(vec![q(4)], q(2));
        let w = Q::basis(3);
        assert_eq!(g.eval_at(&x, &w), f.eval_at(&SlicePoint::new(vec![q(3)], q(2)), &w));
        assert_eq!(f.partial(&[0]), f);
    }
}
