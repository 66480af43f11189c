//! Type-p splitting `x = x_p + r ω`, slice points, orbits and samplers.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Octonion;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The slice parameter `p` (`0 <= p <= 6`), with `q = 7 - p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SliceSignature {
    p: usize,
}

impl SliceSignature {
    pub fn new(p: usize) -> Result<Self> {
        if p > 6 {
            return Err(Error::InvalidSignature(p));
        }
        Ok(SliceSignature { p })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        7 - self.p
    }

    /// Real dimension `p + 2` of a slice `H_ω`.
    pub fn slice_dim(&self) -> usize {
        self.p + 2
    }

    /// The canonical unit `e_{p+1}`, used as ω when `r = 0`.
    pub fn canonical_omega<S: Scalar>(&self) -> Octonion<S> {
        Octonion::basis(self.p + 1)
    }

    pub fn check(&self, other: SliceSignature) -> Result<()> {
        if self.p != other.p {
            return Err(Error::SignatureMismatch { expected: self.p, found: other.p });
        }
        Ok(())
    }
}

/// `Σ_{i<=p} v_i e_i` as an octonion.
pub fn paravector<S: Scalar>(xp: &[S]) -> Octonion<S> {
    Octonion::from_fn(|i| xp.get(i).cloned().unwrap_or_else(S::zero))
}

/// Whether `ω` is supported on `e_{p+1}..e_7` with `|ω| = 1`.
pub fn in_sphere<S: Scalar>(omega: &Octonion<S>, sig: SliceSignature) -> bool {
    (0..=sig.p()).all(|i| omega.coeff(i).is_zero()) && omega.norm_sq().near(&S::one())
}

/// A point of `H_ω` in the form `x_p + r ω` with `r >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitPoint<S> {
    sig: SliceSignature,
    xp: Vec<S>,
    r: S,
    omega: Octonion<S>,
}

impl<S: Scalar> SplitPoint<S> {
    pub fn new(sig: SliceSignature, xp: Vec<S>, r: S, omega: Octonion<S>) -> Result<Self> {
        if xp.len() != sig.p() + 1 {
            return Err(Error::SignatureMismatch { expected: sig.p(), found: xp.len().saturating_sub(1) });
        }
        if !in_sphere(&omega, sig) {
            return Err(Error::NotInSphere(format!("{omega:?}")));
        }
        if r.is_negative_value() {
            // x_p - r ω = x_p + r (-ω)
            return Ok(SplitPoint { sig, xp, r: -r, omega: -omega });
        }
        Ok(SplitPoint { sig, xp, r, omega })
    }

    pub fn sig(&self) -> SliceSignature {
        self.sig
    }

    pub fn xp(&self) -> &[S] {
        &self.xp
    }

    pub fn r(&self) -> &S {
        &self.r
    }

    pub fn omega(&self) -> &Octonion<S> {
        &self.omega
    }

    /// `x' = (x_p, r)`.
    pub fn slice_point(&self) -> SlicePoint<S> {
        SlicePoint { xp: self.xp.clone(), r: self.r.clone() }
    }

    pub fn embed(&self) -> Octonion<S> {
        paravector(&self.xp).add(&self.omega.scale(&self.r))
    }

    /// The same `x'` on the slice of another unit `ω`.
    pub fn with_omega(&self, omega: Octonion<S>) -> Result<Self> {
        SplitPoint::new(self.sig, self.xp.clone(), self.r.clone(), omega)
    }

    pub fn to_f64(&self) -> SplitPoint<f64> {
        SplitPoint {
            sig: self.sig,
            xp: self.xp.iter().map(|v| v.to_f64()).collect(),
            r: self.r.to_f64(),
            omega: self.omega.to_f64(),
        }
    }
}

/// Splits `x` into `x_p + r ω`. In exact mode this fails when `|x_q|` is
/// irrational.
pub fn split<S: Scalar>(x: &Octonion<S>, sig: SliceSignature) -> Result<SplitPoint<S>> {
    let p = sig.p();
    let xp: Vec<S> = (0..=p).map(|i| x.coeff(i).clone()).collect();
    let xq = Octonion::from_fn(|i| if i > p { x.coeff(i).clone() } else { S::zero() });
    let r2 = xq.norm_sq();
    if r2.is_zero() {
        return Ok(SplitPoint { sig, xp, r: S::zero(), omega: sig.canonical_omega() });
    }
    let r = r2.sqrt_exact().ok_or(Error::IrrationalRadius)?;
    let omega = xq.div_scalar(&r);
    Ok(SplitPoint { sig, xp, r, omega })
}

/// `x' = (x_p, r)` with signed `r`, the coordinates of a stem function.
#[derive(Clone, Debug, PartialEq)]
pub struct SlicePoint<S> {
    pub xp: Vec<S>,
    pub r: S,
}

impl<S: Scalar> SlicePoint<S> {
    pub fn new(xp: Vec<S>, r: S) -> Self {
        SlicePoint { xp, r }
    }

    pub fn origin(sig: SliceSignature) -> Self {
        SlicePoint { xp: alloc::vec![S::zero(); sig.p() + 1], r: S::zero() }
    }

    /// `x'_◇ = (x_p, -r)`.
    pub fn reflect(&self) -> Self {
        SlicePoint { xp: self.xp.clone(), r: -self.r.clone() }
    }

    /// `x_p + r ω` for the given unit `ω`.
    pub fn on_slice(&self, omega: &Octonion<S>) -> Octonion<S> {
        paravector(&self.xp).add(&omega.scale(&self.r))
    }

    /// Coordinates as one vector `(x_0, ..., x_p, r)`.
    pub fn coords(&self) -> Vec<S> {
        let mut v = self.xp.clone();
        v.push(self.r.clone());
        v
    }

    pub fn from_coords(c: &[S]) -> Self {
        let (r, xp) = c.split_last().expect("at least one coordinate");
        SlicePoint { xp: xp.to_vec(), r: r.clone() }
    }

    pub fn norm_sq(&self) -> S {
        self.xp.iter().chain(core::iter::once(&self.r)).fold(S::zero(), |a, v| a.add_ref(&v.mul_ref(v)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        SlicePoint {
            xp: self.xp.iter().zip(&other.xp).map(|(a, b)| a.sub_ref(b)).collect(),
            r: self.r.sub_ref(&other.r),
        }
    }

    pub fn to_f64(&self) -> SlicePoint<f64> {
        SlicePoint { xp: self.xp.iter().map(|v| v.to_f64()).collect(), r: self.r.to_f64() }
    }
}

/// Whether `y` lies on the orbit `[x] = x_p + r 𝕊`.
pub fn orbit_contains<S: Scalar>(center_xp: &[S], r: &S, y: &Octonion<S>, sig: SliceSignature) -> bool {
    let p = sig.p();
    if center_xp.len() != p + 1 || !(0..=p).all(|i| y.coeff(i).near(&center_xp[i])) {
        return false;
    }
    let yq2 = (p + 1..8).fold(S::zero(), |a, i| a.add_ref(&y.coeff(i).mul_ref(y.coeff(i))));
    !r.is_negative_value() && yq2.near(&r.mul_ref(r))
}

/// Open ball `|x' - c'| < R` in slice coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub center: SlicePoint<f64>,
    pub radius: f64,
}

impl Ball {
    pub fn contains(&self, x: &SlicePoint<f64>) -> bool {
        x.sub(&self.center).norm_sq() < self.radius * self.radius
    }

    /// Whether the ball is invariant under `r -> -r`, which makes its union
    /// over all slices p-symmetric.
    pub fn is_symmetric(&self) -> bool {
        self.center.r == 0.0
    }
}

/// Open shell `R_in < |x' - c'| < R_out`.
#[derive(Clone, Debug, PartialEq)]
pub struct Shell {
    pub center: SlicePoint<f64>,
    pub inner: f64,
    pub outer: f64,
}

impl Shell {
    pub fn contains(&self, x: &SlicePoint<f64>) -> bool {
        let d = x.sub(&self.center).norm_sq();
        d > self.inner * self.inner && d < self.outer * self.outer
    }
}

/// Embeds a unit vector of `R^q` as `Σ v_j e_{p+1+j}`.
pub fn sphere_point<S: Scalar>(v: &[S], sig: SliceSignature) -> Octonion<S> {
    let p = sig.p();
    Octonion::from_fn(|i| if i > p { v[i - p - 1].clone() } else { S::zero() })
}

/// `count` points of 𝕊, deterministic in `seed`.
pub fn sample_sphere<S: Scalar>(sig: SliceSignature, count: usize, seed: u64) -> Vec<Octonion<S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_sphere_with(sig, &mut rng)).collect()
}

pub fn sample_sphere_with<S: Scalar, R: Rng + ?Sized>(sig: SliceSignature, rng: &mut R) -> Octonion<S> {
    sphere_point(&S::sample_unit_vector(sig.q(), rng), sig)
}

pub fn sample_octonion<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Octonion<S> {
    Octonion::from_fn(|_| S::sample(rng))
}

/// A random slice point whose `r` is non-negative.
pub fn sample_slice_point<S: Scalar, R: Rng + ?Sized>(sig: SliceSignature, rng: &mut R) -> SlicePoint<S> {
    let xp = (0..=sig.p()).map(|_| S::sample(rng)).collect();
    let r = S::sample(rng);
    let r = if r.is_negative_value() { -r } else { r };
    SlicePoint { xp, r }
}

/// A random split point; its embedding has exactly rational `r` in exact
/// mode.
pub fn sample_split_point<S: Scalar, R: Rng + ?Sized>(sig: SliceSignature, rng: &mut R) -> SplitPoint<S> {
    let sp = sample_slice_point(sig, rng);
    let omega = sample_sphere_with(sig, rng);
    SplitPoint::new(sig, sp.xp, sp.r, omega).expect("sampled ω is a unit")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Octonion<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn sig(p: usize) -> SliceSignature {
        SliceSignature::new(p).unwrap()
    }

    #[test]
    fn split_examples() {
        let x = Q::from_i64s([1, 2, 0, 3, 0, 0, 0, 0]);
        let s = split(&x, sig(2)).unwrap();
        assert_eq!(s.xp(), &[q(1), q(2), q(0)]);
        assert_eq!(s.r(), &q(3));
        assert_eq!(s.omega(), &Q::basis(3));
        assert_eq!(s.embed(), x);

        let x = Q::from_i64s([1, 2, 0, 0, 0, 0, 0, 0]);
        let s = split(&x, sig(2)).unwrap();
        assert_eq!(s.r(), &q(0));
        assert_eq!(s.omega(), &Q::basis(3));
        assert_eq!(s.embed(), x);

        let s = split(&Q::basis(5), sig(0)).unwrap();
        assert_eq!((s.xp(), s.r(), s.omega()), (&[q(0)][..], &q(1), &Q::basis(5)));
    }

    #[test]
    fn split_rejects_irrational_radius_exactly() {
        let x = Q::from_i64s([0, 0, 1, 1, 0, 0, 0, 0]);
        assert_eq!(split(&x, sig(1)), Err(Error::IrrationalRadius));
        assert!(split(&x.to_f64(), sig(1)).is_ok());
    }

    #[test]
    fn signature_bounds() {
        assert!(SliceSignature::new(6).is_ok());
        assert_eq!(SliceSignature::new(7), Err(Error::InvalidSignature(7)));
        assert_eq!(sig(6).q(), 1);
    }

    #[test]
    fn reflection_is_involution() {
        let x = SlicePoint::new(alloc::vec![q(1), q(2)], q(3));
        assert_eq!(x.reflect().r, q(-3));
        assert_eq!(x.reflect().reflect(), x);
        let y = SlicePoint::new(alloc::vec![q(1)], q(0));
        assert_eq!(y.reflect(), y);
    }

    #[test]
    fn orbit_membership() {
        let c = [q(1), q(0), q(0)];
        assert!(orbit_contains(&c, &q(3), &Q::from_i64s([1, 0, 0, 0, 0, 3, 0, 0]), sig(2)));
        assert!(!orbit_contains(&c, &q(3), &Q::from_i64s([1, 0, 0, 0, 0, 4, 0, 0]), sig(2)));
        assert!(!orbit_contains(&c, &q(3), &Q::from_i64s([2, 0, 0, 3, 0, 0, 0, 0]), sig(2)));
    }

    #[test]
    fn zero_sphere_samples_are_signed_e7() {
        for w in sample_sphere::<Rational>(sig(6), 20, 3) {
            assert!(w == Q::basis(7) || w == -Q::basis(7));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_sphere::<Rational>(sig(1), 10, 99);
        let b = sample_sphere::<Rational>(sig(1), 10, 99);
        assert_eq!(a, b);
        for w in a {
            assert_eq!(w.mul(&w), -Q::one());
        }
    }

    #[test]
    fn a_omega_b_identity_witness() {
        let a = Q::basis(1);
        let w = Q::basis(7);
        let b = Q::basis(2);
        let lhs = a.mul(&w.mul(&b));
        let rhs = w.mul(&a.conj().mul(&b));
        assert_eq!(lhs, -Q::basis(4));
        assert_eq!(rhs, -Q::basis(4));
    }
}
