//! Polynomials in `(x_0, ..., x_p, r)` with octonion coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Octonion;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::slicegeom::{SlicePoint, SliceSignature};

/// A coordinate of `R^{p+2}`: `x_i` for `i <= p`, or `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X(usize),
    R,
}

/// Exponent vector `(a_0, ..., a_p, a_r)`.
pub type Exponents = Vec<u32>;

/// `Σ c_a x_p^a r^{a_r}`; coefficients multiply from the right of the
/// monomial, which is real, so their side is immaterial. No zero
/// coefficient is stored.
#[derive(Clone, PartialEq, Debug)]
pub struct OctPolynomial<S> {
    sig: SliceSignature,
    terms: BTreeMap<Exponents, Octonion<S>>,
}

impl<S: Scalar> OctPolynomial<S> {
    pub fn zero(sig: SliceSignature) -> Self {
        OctPolynomial { sig, terms: BTreeMap::new() }
    }

    pub fn constant(sig: SliceSignature, c: Octonion<S>) -> Self {
        Self::monomial(sig, vec![0; sig.p() + 2], c)
    }

    pub fn monomial(sig: SliceSignature, exps: Exponents, c: Octonion<S>) -> Self {
        assert_eq!(exps.len(), sig.p() + 2, "exponent vector length");
        let mut out = Self::zero(sig);
        out.add_term(exps, c);
        out
    }

    /// `x_p^k` with `k` of length `p + 1` and coefficient 1.
    pub fn x_power(sig: SliceSignature, k: &[u32]) -> Self {
        assert_eq!(k.len(), sig.p() + 1, "multi-index length");
        let mut exps = k.to_vec();
        exps.push(0);
        Self::monomial(sig, exps, Octonion::one())
    }

    pub fn var(sig: SliceSignature, v: Var) -> Result<Self> {
        let idx = Self::index(sig, v)?;
        let mut exps = vec![0; sig.p() + 2];
        exps[idx] = 1;
        Ok(Self::monomial(sig, exps, Octonion::one()))
    }

    fn index(sig: SliceSignature, v: Var) -> Result<usize> {
        match v {
            Var::X(i) if i <= sig.p() => Ok(i),
            Var::X(i) => Err(Error::UnknownVariable(format!("x{i}"))),
            Var::R => Ok(sig.p() + 1),
        }
    }

    pub fn from_terms(sig: SliceSignature, terms: impl IntoIterator<Item = (Exponents, Octonion<S>)>) -> Self {
        let mut out = Self::zero(sig);
        for (e, c) in terms {
            assert_eq!(e.len(), sig.p() + 2, "exponent vector length");
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exps: Exponents, c: Octonion<S>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let sum = old.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn sig(&self) -> SliceSignature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Octonion<S>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Octonion<S> {
        self.terms.get(exps).cloned().unwrap_or_else(Octonion::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn depends_on_r(&self) -> bool {
        self.terms.keys().any(|e| e[self.sig.p() + 1] > 0)
    }

    /// Whether every stored term has an `r`-exponent of the given parity.
    pub fn r_parity_is(&self, odd: bool) -> bool {
        self.terms.keys().all(|e| (e[self.sig.p() + 1] % 2 == 1) == odd)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    /// `a · P`, coefficientwise.
    pub fn left_mul(&self, a: &Octonion<S>) -> Self {
        self.map_coeffs(|c| a.mul(c))
    }

    /// `P · a`, coefficientwise.
    pub fn right_mul(&self, a: &Octonion<S>) -> Self {
        self.map_coeffs(|c| c.mul(a))
    }

    fn map_coeffs(&self, f: impl Fn(&Octonion<S>) -> Octonion<S>) -> Self {
        Self::from_terms(self.sig, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Product with coefficients multiplied in the order `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.sig);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_var(&self, v: Var) -> Result<Self> {
        let idx = Self::index(self.sig, v)?;
        Ok(Self::from_terms(
            self.sig,
            self.terms.iter().map(|(e, c)| {
                let mut e = e.clone();
                e[idx] += 1;
                (e, c.clone())
            }),
        ))
    }

    pub fn derivative(&self, v: Var) -> Result<Self> {
        let idx = Self::index(self.sig, v)?;
        Ok(self.derivative_idx(idx))
    }

    fn derivative_idx(&self, idx: usize) -> Self {
        Self::from_terms(
            self.sig,
            self.terms.iter().filter(|(e, _)| e[idx] > 0).map(|(e, c)| {
                let mut e2 = e.clone();
                let n = e2[idx];
                e2[idx] -= 1;
                (e2, c.scale(&S::from_i64(n as i64)))
            }),
        )
    }

    /// `∂_k = ∂_{x_0}^{k_0} ... ∂_{x_p}^{k_p}`.
    pub fn partial(&self, k: &[u32]) -> Self {
        let mut out = self.clone();
        for (i, &ki) in k.iter().enumerate() {
            for _ in 0..ki {
                out = out.derivative_idx(i);
            }
        }
        out
    }

    /// `Δ_{x_p} = Σ_{i<=p} ∂_i^2`.
    pub fn laplacian_xp(&self) -> Self {
        (0..=self.sig.p()).fold(Self::zero(self.sig), |acc, i| {
            acc.add(&self.derivative_idx(i).derivative_idx(i))
        })
    }

    /// `D_{x_p} P = Σ_{i<=p} e_i (∂_i P)`.
    pub fn apply_dxp(&self) -> Self {
        (0..=self.sig.p()).fold(Self::zero(self.sig), |acc, i| {
            acc.add(&self.derivative_idx(i).left_mul(&Octonion::basis(i)))
        })
    }

    /// `conj(D)_{x_p} P = ∂_0 P - Σ_{1<=i<=p} e_i (∂_i P)`.
    pub fn apply_dxp_bar(&self) -> Self {
        (1..=self.sig.p()).fold(self.derivative_idx(0), |acc, i| {
            acc.sub(&self.derivative_idx(i).left_mul(&Octonion::basis(i)))
        })
    }

    /// Value at `(x_p, r)`.
    pub fn eval(&self, xp: &[S], r: &S) -> Octonion<S> {
        let n = self.sig.p() + 2;
        assert_eq!(xp.len() + 1, n, "point dimension");
        let mut maxe = vec![0u32; n];
        for e in self.terms.keys() {
            for (m, &a) in maxe.iter_mut().zip(e) {
                *m = (*m).max(a);
            }
        }
        let powers: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let base = if i + 1 == n { r } else { &xp[i] };
                let mut v = Vec::with_capacity(maxe[i] as usize + 1);
                v.push(S::one());
                for j in 0..maxe[i] as usize {
                    let next = v[j].mul_ref(base);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Octonion::zero();
        for (e, c) in &self.terms {
            let m = e.iter().enumerate().fold(S::one(), |m, (i, &a)| m.mul_ref(&powers[i][a as usize]));
            acc = acc.add(&c.scale(&m));
        }
        acc
    }

    pub fn eval_point(&self, x: &SlicePoint<S>) -> Octonion<S> {
        self.eval(&x.xp, &x.r)
    }

    pub fn to_f64(&self) -> OctPolynomial<f64> {
        OctPolynomial::from_terms(self.sig, self.terms.iter().map(|(e, c)| (e.clone(), c.to_f64())))
    }
}
