//! Scalar fields the octonions are built over.
//!
//! Two realizations are provided: [`Rational`] (arbitrary precision, exact)
//! and `f64` (IEEE-754 binary64). Every algebraic type in the crate is generic
//! over [`Scalar`], so mixing the two modes inside one expression is a type
//! error rather than a silent coercion.

use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::Neg;

use num_bigint::{BigInt, Sign};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Arbitrary-precision rational number used in exact mode.
pub type Rational = num_rational::BigRational;

/// Numeric coefficient type of an [`Octonion`](crate::Octonion).
pub trait Scalar:
    Clone + PartialEq + Debug + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// `true` for exact arithmetic (decidable equality).
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Square root when it exists in the field. Rationals return `None`
    /// unless both numerator and denominator are perfect squares.
    fn sqrt_exact(&self) -> Option<Self>;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Self;

    /// A random coefficient of modest size, used by samplers and property
    /// batteries. Rationals draw small numerators and denominators.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// A random point of the unit sphere `S^{dim-1}` whose squared norm is
    /// exactly one in exact mode.
    fn sample_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Self>;

    fn is_negative_value(&self) -> bool;

    /// Structural equality in exact mode; relative `1e-12` in float mode.
    fn near(&self, other: &Self) -> bool;

    /// Coefficient vector of the octonion product `a b`.
    fn oct_product(a: &[Self; 8], b: &[Self; 8]) -> [Self; 8] {
        crate::algebra::generic_product(a, b)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(libm::sqrt(*self))
        } else {
            None
        }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.random_range(-2.0..2.0)
    }

    fn sample_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Self> {
        if dim == 1 {
            return alloc::vec![if rng.random::<bool>() { 1.0 } else { -1.0 }];
        }
        loop {
            let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
            let n = libm::sqrt(v.iter().map(|c| c * c).sum::<f64>());
            if n > 1e-8 {
                return v.into_iter().map(|c| c / n).collect();
            }
        }
    }

    fn is_negative_value(&self) -> bool {
        *self < 0.0
    }

    fn near(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-12 * 1f64.max(self.abs()).max(other.abs())
    }
}

fn isqrt_exact(v: &BigInt) -> Option<BigInt> {
    if v.sign() == Sign::Minus {
        return None;
    }
    let s = v.sqrt();
    if &s * &s == *v {
        Some(s)
    } else {
        None
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles huge numerators and denominators.
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt_exact(&self) -> Option<Self> {
        let n = isqrt_exact(self.numer())?;
        let d = isqrt_exact(self.denom())?;
        Some(Rational::new(n, d))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let num = rng.random_range(-9i64..=9);
        let den = rng.random_range(1i64..=7);
        Rational::from_ratio(num, den)
    }

    /// Inverse stereographic projection of a random rational point of
    /// `Q^{dim-1}`: `(2t, |t|^2 - 1) / (|t|^2 + 1)` lies on the sphere exactly.
    fn sample_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Self> {
        if dim == 1 {
            let s = if rng.random::<bool>() { 1 } else { -1 };
            return alloc::vec![Rational::from_i64(s)];
        }
        let t: Vec<Rational> = (0..dim - 1)
            .map(|_| Rational::from_ratio(rng.random_range(-6i64..=6), rng.random_range(1i64..=5)))
            .collect();
        let t2 = t.iter().fold(Rational::zero(), |acc, c| acc + c * c);
        let denom = &t2 + Rational::one();
        let two = Rational::from_i64(2);
        let mut out: Vec<Rational> = t.iter().map(|c| &two * c / &denom).collect();
        out.push((&t2 - Rational::one()) / &denom);
        out
    }

    fn is_negative_value(&self) -> bool {
        self.is_negative()
    }

    fn near(&self, other: &Self) -> bool {
        self == other
    }

    /// Clears denominators so the 64 partial products are integer
    /// multiplications, then reduces each of the 8 sums once.
    fn oct_product(a: &[Self; 8], b: &[Self; 8]) -> [Self; 8] {
        let (na, da) = common_denominator(a);
        let (nb, db) = common_denominator(b);
        let mut acc: [BigInt; 8] = core::array::from_fn(|_| BigInt::zero());
        for (i, ai) in na.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in nb.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let (s, k) = crate::algebra::TABLE[i][j];
                let prod = ai * bj;
                if s > 0 {
                    acc[k as usize] += prod;
                } else {
                    acc[k as usize] -= prod;
                }
            }
        }
        let den = da * db;
        acc.map(|n| Rational::new(n, den.clone()))
    }
}

fn common_denominator(v: &[Rational; 8]) -> ([BigInt; 8], BigInt) {
    let mut den = BigInt::one();
    for x in v {
        if !x.denom().is_one() {
            den = num_integer::Integer::lcm(&den, x.denom());
        }
    }
    let nums = core::array::from_fn(|i| {
        if v[i].denom() == &den {
            v[i].numer().clone()
        } else {
            v[i].numer() * (&den / v[i].denom())
        }
    });
    (nums, den)
}
