//! Octonion arithmetic over a generic [`Scalar`].

use alloc::format;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Oriented triples that generate the multiplication table: for each
/// `(i, j, k)` the cyclic products `e_i e_j = e_k` hold.
pub const XI: [(usize, usize, usize); 7] =
    [(1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 4, 7), (5, 3, 6), (6, 1, 7), (7, 2, 5)];

/// `TABLE[i][j] = (s, k)` means `e_i e_j = s e_k`.
pub const TABLE: [[(i8, u8); 8]; 8] = build_table();

const fn build_table() -> [[(i8, u8); 8]; 8] {
    let mut t = [[(0i8, 0u8); 8]; 8];
    let mut i = 0;
    while i < 8 {
        t[0][i] = (1, i as u8);
        t[i][0] = (1, i as u8);
        if i > 0 {
            t[i][i] = (-1, 0);
        }
        i += 1;
    }
    let mut n = 0;
    while n < XI.len() {
        let (a, b, c) = XI[n];
        let cyc = [(a, b, c), (b, c, a), (c, a, b)];
        let mut m = 0;
        while m < 3 {
            let (x, y, z) = cyc[m];
            t[x][y] = (1, z as u8);
            t[y][x] = (-1, z as u8);
            m += 1;
        }
        n += 1;
    }
    t
}

/// Coefficient-level product used by [`Octonion::mul`]. Scalars may
/// override it with a faster formulation.
pub(crate) fn generic_product<S: Scalar>(a: &[S; 8], b: &[S; 8]) -> [S; 8] {
    let mut out: [S; 8] = core::array::from_fn(|_| S::zero());
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let (s, k) = TABLE[i][j];
            let prod = ai.mul_ref(bj);
            let k = k as usize;
            out[k] = if s > 0 { out[k].add_ref(&prod) } else { out[k].sub_ref(&prod) };
        }
    }
    out
}

/// An element `c0 + c1 e1 + ... + c7 e7`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Octonion<S> {
    c: [S; 8],
}

impl<S: Scalar> Octonion<S> {
    pub fn new(c: [S; 8]) -> Self {
        Octonion { c }
    }

    pub fn from_fn(f: impl FnMut(usize) -> S) -> Self {
        Octonion { c: core::array::from_fn(f) }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_| S::zero())
    }

    pub fn one() -> Self {
        Self::real(S::one())
    }

    pub fn real(s: S) -> Self {
        let mut o = Self::zero();
        o.c[0] = s;
        o
    }

    /// The basis element `e_i`, `0 <= i <= 7`.
    pub fn basis(i: usize) -> Self {
        assert!(i < 8, "basis index {i} out of range");
        let mut o = Self::zero();
        o.c[i] = S::one();
        o
    }

    pub fn from_i64s(c: [i64; 8]) -> Self {
        Self::from_fn(|i| S::from_i64(c[i]))
    }

    pub fn coeffs(&self) -> &[S; 8] {
        &self.c
    }

    pub fn into_coeffs(self) -> [S; 8] {
        self.c
    }

    pub fn coeff(&self, i: usize) -> &S {
        &self.c[i]
    }

    pub fn re(&self) -> &S {
        &self.c[0]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Octonion { c: S::oct_product(&self.c, &rhs.c) }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_fn(|i| self.c[i].add_ref(&rhs.c[i]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(|i| self.c[i].sub_ref(&rhs.c[i]))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(|i| -self.c[i].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(|i| self.c[i].mul_ref(s))
    }

    pub fn div_scalar(&self, s: &S) -> Self {
        Self::from_fn(|i| self.c[i].div_ref(s))
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i| if i == 0 { self.c[0].clone() } else { -self.c[i].clone() })
    }

    /// Imaginary part `c1 e1 + ... + c7 e7`.
    pub fn im(&self) -> Self {
        Self::from_fn(|i| if i == 0 { S::zero() } else { self.c[i].clone() })
    }

    pub fn norm_sq(&self) -> S {
        self.c.iter().fold(S::zero(), |acc, x| acc.add_ref(&x.mul_ref(x)))
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().div_scalar(&n))
    }

    /// `[a, b, c] = (ab)c - a(bc)`.
    pub fn associator(a: &Self, b: &Self, c: &Self) -> Self {
        a.mul(b).mul(c).sub(&a.mul(&b.mul(c)))
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.mul(b).sub(&b.mul(a))
    }

    pub fn to_f64(&self) -> Octonion<f64> {
        Octonion::from_fn(|i| self.c[i].to_f64())
    }

    pub fn dot(&self, rhs: &Self) -> S {
        (0..8).fold(S::zero(), |acc, i| acc.add_ref(&self.c[i].mul_ref(&rhs.c[i])))
    }
}

impl Octonion<f64> {
    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sq())
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Distance `|a - b|` relative to `max(1, |a|, |b|)`.
    pub fn rel_dist(&self, other: &Self) -> f64 {
        let scale = 1f64.max(self.norm()).max(other.norm());
        self.sub(other).norm() / scale
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rel_dist(other) <= tol
    }
}

impl<S: Scalar> Default for Octonion<S> {
    fn default() -> Self {
        Self::zero()
    }
}

const NAMES: [&str; 8] = ["", "e1", "e2", "e3", "e4", "e5", "e6", "e7"];

impl<S: Scalar + fmt::Display> fmt::Display for Octonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = format!("{c}");
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m),
                None => (false, s.as_str()),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if i == 0 {
                f.write_str(mag)?;
            } else if mag == "1" {
                f.write_str(NAMES[i])?;
            } else {
                write!(f, "{mag}{}", NAMES[i])?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<S: fmt::Debug> fmt::Debug for Octonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.c.iter()).finish()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr<&Octonion<S>> for &Octonion<S> {
            type Output = Octonion<S>;
            fn $m(self, rhs: &Octonion<S>) -> Octonion<S> {
                Octonion::$m(self, rhs)
            }
        }
        impl<S: Scalar> $tr for Octonion<S> {
            type Output = Octonion<S>;
            fn $m(self, rhs: Octonion<S>) -> Octonion<S> {
                Octonion::$m(&self, &rhs)
            }
        }
        impl<S: Scalar> $tr<&Octonion<S>> for Octonion<S> {
            type Output = Octonion<S>;
            fn $m(self, rhs: &Octonion<S>) -> Octonion<S> {
                Octonion::$m(&self, rhs)
            }
        }
        impl<S: Scalar> $tr<Octonion<S>> for &Octonion<S> {
            type Output = Octonion<S>;
            fn $m(self, rhs: Octonion<S>) -> Octonion<S> {
                Octonion::$m(self, &rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl<S: Scalar> Neg for Octonion<S> {
    type Output = Octonion<S>;
    fn neg(self) -> Octonion<S> {
        Octonion::neg(&self)
    }
}

impl<S: Scalar> Neg for &Octonion<S> {
    type Output = Octonion<S>;
    fn neg(self) -> Octonion<S> {
        Octonion::neg(self)
    }
}

/// Real-linear map `c -> a c` stored as an 8x8 matrix on basis coordinates.
/// Composition is the matrix product; `L_a L_b` and `L_{ab}` differ in
/// general.
#[derive(Clone, PartialEq, Debug)]
pub struct LeftMulOperator<S> {
    m: [[S; 8]; 8],
}

impl<S: Scalar> LeftMulOperator<S> {
    pub fn identity() -> Self {
        Self::left_mul(&Octonion::one())
    }

    pub fn zero() -> Self {
        LeftMulOperator { m: core::array::from_fn(|_| core::array::from_fn(|_| S::zero())) }
    }

    /// `L_a`: column `j` is `a e_j`.
    pub fn left_mul(a: &Octonion<S>) -> Self {
        let mut m = Self::zero().m;
        for j in 0..8 {
            let col = a.mul(&Octonion::basis(j));
            for (i, v) in col.into_coeffs().into_iter().enumerate() {
                m[i][j] = v;
            }
        }
        LeftMulOperator { m }
    }

    pub fn matrix(&self) -> &[[S; 8]; 8] {
        &self.m
    }

    pub fn apply(&self, c: &Octonion<S>) -> Octonion<S> {
        Octonion::from_fn(|i| {
            (0..8).fold(S::zero(), |acc, j| acc.add_ref(&self.m[i][j].mul_ref(c.coeff(j))))
        })
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        LeftMulOperator {
            m: core::array::from_fn(|i| {
                core::array::from_fn(|j| {
                    (0..8).fold(S::zero(), |acc, k| acc.add_ref(&self.m[i][k].mul_ref(&other.m[k][j])))
                })
            }),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        LeftMulOperator {
            m: core::array::from_fn(|i| core::array::from_fn(|j| self.m[i][j].add_ref(&other.m[i][j]))),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LeftMulOperator {
            m: core::array::from_fn(|i| core::array::from_fn(|j| self.m[i][j].sub_ref(&other.m[i][j]))),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        LeftMulOperator { m: core::array::from_fn(|i| core::array::from_fn(|j| self.m[i][j].mul_ref(s))) }
    }

    pub fn to_f64(&self) -> LeftMulOperator<f64> {
        LeftMulOperator { m: core::array::from_fn(|i| core::array::from_fn(|j| self.m[i][j].to_f64())) }
    }
}

impl LeftMulOperator<f64> {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                d = d.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Octonion<Rational>;

    fn e(i: usize) -> Q {
        Q::basis(i)
    }

    #[test]
    fn table_respects_generating_triples() {
        for &(a, b, c) in XI.iter() {
            assert_eq!(TABLE[a][b], (1, c as u8));
            assert_eq!(TABLE[b][c], (1, a as u8));
            assert_eq!(TABLE[c][a], (1, b as u8));
            assert_eq!(TABLE[b][a], (-1, c as u8));
        }
        for (i, row) in TABLE.iter().enumerate().skip(1) {
            assert_eq!(row[i], (-1, 0));
            let mut seen = [false; 8];
            for &(_, k) in row {
                seen[k as usize] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn basis_products() {
        assert_eq!(e(1) * e(2), e(3));
        assert_eq!(e(1) * e(6), -e(7));
        assert_eq!(e(6) * e(1), e(7));
    }

    #[test]
    fn conj_norm_inverse() {
        let x = Q::from_i64s([1, 0, 0, 2, 0, 0, 0, 0]);
        assert_eq!(x.conj(), Q::from_i64s([1, 0, 0, -2, 0, 0, 0, 0]));
        assert_eq!(Q::from_i64s([1, 1, 1, 1, 0, 0, 0, 0]).norm_sq(), Rational::from_i64(4));
        assert_eq!((e(1) * e(4)).norm_sq(), Rational::from_i64(1));
        assert_eq!(e(1).inverse().unwrap(), -e(1));
        let two = Q::real(Rational::from_i64(2));
        assert_eq!(two.inverse().unwrap(), Q::real(Rational::from_ratio(1, 2)));
        let y = Q::from_i64s([1, 1, 0, 0, 0, 0, 0, 0]);
        let half = Rational::from_ratio(1, 2);
        assert_eq!(y.inverse().unwrap(), Q::from_i64s([1, -1, 0, 0, 0, 0, 0, 0]).scale(&half));
        assert_eq!(Q::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn associator_and_commutator_witnesses() {
        assert!(Q::associator(&e(1), &e(1), &e(2)).is_zero());
        assert_eq!(Q::associator(&e(1), &e(2), &e(4)), e(7).scale(&Rational::from_i64(2)));
        assert_eq!(Q::commutator(&e(1), &e(2)), e(3).scale(&Rational::from_i64(2)));
        assert!(Q::commutator(&Q::one(), &e(5)).is_zero());
    }

    #[test]
    fn left_mul_operators() {
        assert_eq!(LeftMulOperator::left_mul(&Q::one()), LeftMulOperator::identity());
        assert_eq!(LeftMulOperator::left_mul(&e(1)).apply(&e(2)), e(3));
        let l1 = LeftMulOperator::left_mul(&e(1));
        let l2 = LeftMulOperator::left_mul(&e(2));
        assert_eq!(l1.compose(&l2).apply(&e(4)), -e(7));
        assert_eq!(LeftMulOperator::left_mul(&(e(1) * e(2))).apply(&e(4)), e(7));
    }

    #[test]
    fn display_reads_naturally() {
        let x = Q::from_i64s([2, 0, 6, -3, 0, 0, 0, 0]);
        assert_eq!(alloc::format!("{x}"), "2 + 6e2 - 3e3");
        assert_eq!(alloc::format!("{}", -e(7)), "-e7");
        assert_eq!(alloc::format!("{}", Q::zero()), "0");
    }
}
