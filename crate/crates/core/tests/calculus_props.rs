use std::sync::Arc;

use octoslice::calculus::{
    d_omega_exact, d_omega_numeric, d_omega_on_slice, d_omega_right_numeric, global_theta, partial_k, partial_k_stem,
    slice_laplacian_numeric, translate, FDScheme,
};
use octoslice::fueter::{v_poly, Side};
use octoslice::handle::{Constant, FnHandle, FueterVariable, Indicator, Kernel, StemHandle, XqPower};
use octoslice::slicegeom::{sample_sphere, sample_split_point};
use octoslice::{
    split, Error, Handle, MultiIndex, OctPolynomial, Octonion, Rational, Scalar, SlicePoint, SliceFunction,
    SliceSignature, SplitPoint, StemFunction, Var,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type O = Octonion<f64>;
type P = OctPolynomial<Rational>;

fn sig(p: usize) -> SliceSignature {
    SliceSignature::new(p).unwrap()
}

fn fd() -> FDScheme {
    FDScheme::default()
}

/// A split point with `r` bounded away from zero.
fn point(s: SliceSignature, rng: &mut ChaCha8Rng) -> SplitPoint<f64> {
    let x: SplitPoint<f64> = sample_split_point(s, rng);
    SplitPoint::new(s, x.xp().to_vec(), x.r() + 0.25, x.omega().clone()).unwrap()
}

/// A stem with random rational coefficients of degree at most `deg`; not
/// monogenic in general.
fn random_stem(s: SliceSignature, deg: u32, rng: &mut ChaCha8Rng) -> StemFunction<Rational> {
    let mut parts = [P::zero(s), P::zero(s)];
    for _ in 0..6 {
        let mut exps = vec![0u32; s.p() + 2];
        let total = rng.random_range(0..=deg);
        for _ in 0..total {
            exps[rng.random_range(0..=s.p() + 1)] += 1;
        }
        let c = Octonion::from_fn(|_| Rational::from_ratio(rng.random_range(-3..=3), rng.random_range(1..=2)));
        let odd = exps[s.p() + 1] % 2 == 1;
        parts[usize::from(odd)] = parts[usize::from(odd)].add(&P::monomial(s, exps, c));
    }
    let [f1, f2] = parts;
    StemFunction::new(f1, f2).unwrap()
}

fn stem_handle(f: &StemFunction<Rational>) -> StemHandle {
    StemHandle::new(f.to_f64(), "stem")
}

#[test]
fn fueter_variables_are_left_monogenic() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for p in 0..=6 {
        let s = sig(p);
        for l in 0..=p {
            let zl = FueterVariable { sig: s, l, side: Side::Left };
            let zr = FueterVariable { sig: s, l, side: Side::Right };
            let two_el = if l == 0 { O::zero() } else { O::basis(l).scale(&2.0) };
            for _ in 0..5 {
                let x = point(s, &mut rng);
                assert!(d_omega_numeric(&zl, &x, &fd()).unwrap().value.norm() <= 1e-8);
                assert!(d_omega_right_numeric(&zr, &x, &fd()).unwrap().value.norm() <= 1e-8);
                assert!(d_omega_right_numeric(&zl, &x, &fd()).unwrap().value.approx_eq(&two_el, 1e-8));
                assert!(d_omega_numeric(&zr, &x, &fd()).unwrap().value.approx_eq(&two_el, 1e-8));
            }
        }
    }
}

#[test]
fn constant_times_fueter_variable_is_not_monogenic() {
    let s = sig(1);
    let e2 = O::basis(2);
    let za = FnHandle::new(s, "z1 e2", move |x: &O| {
        let sp = split(x, s).unwrap();
        octoslice::fueter::fueter_var(1, &sp, Side::Left).unwrap().mul(&e2)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let x = point(s, &mut rng).with_omega(O::basis(7)).unwrap();
        let d = d_omega_numeric(&za, &x, &fd()).unwrap().value;
        assert!(d.approx_eq(&O::basis(3).scale(&2.0), 1e-8), "{d:?}");
    }
}

#[test]
fn constants_have_zero_derivatives() {
    let s = sig(3);
    let c = Constant { sig: s, c: O::new([1.0, -2.0, 0.5, 0.0, 3.0, 0.0, 1.0, 2.0]) };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = point(s, &mut rng);
    assert!(d_omega_numeric(&c, &x, &fd()).unwrap().value.norm() < 1e-12);
    assert!(d_omega_right_numeric(&c, &x, &fd()).unwrap().value.norm() < 1e-12);
    assert!(slice_laplacian_numeric(&c, &x, &fd()).unwrap().norm() < 1e-12);
}

#[test]
fn exact_operator_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let s = sig(2);
    for k in MultiIndex::up_to_degree(s, 4) {
        let v = v_poly::<Rational>(&k, s).unwrap();
        let x: SplitPoint<Rational> = sample_split_point(s, &mut rng);
        assert!(d_omega_exact(&v, &x.slice_point(), x.omega()).is_zero());
    }
    let r = P::var(s, Var::R).unwrap();
    let rr = StemFunction::new(r.mul(&r), P::zero(s)).unwrap();
    let w = sample_sphere::<Rational>(s, 1, 9).remove(0);
    let at = SlicePoint::new(vec![Rational::from_i64(1), Rational::from_ratio(1, 2), Rational::from_i64(0)], Rational::from_i64(1));
    assert_eq!(d_omega_exact(&rr, &at, &w), w.scale(&Rational::from_i64(2)));
    let c = StemFunction::constant(s, Octonion::basis(5));
    assert!(d_omega_exact(&c, &at, &w).is_zero());
}

#[test]
fn exact_and_numeric_operators_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [0usize, 1, 2, 4, 6] {
        let s = sig(p);
        for _ in 0..50 {
            let f = random_stem(s, 4, &mut rng);
            let h = stem_handle(&f);
            let x = point(s, &mut rng);
            let exact = d_omega_exact(&f.to_f64(), &x.slice_point(), x.omega());
            let numeric = d_omega_numeric(&h, &x, &fd()).unwrap().value;
            assert!(numeric.sub(&exact).norm() <= 1e-6, "p = {p}: {:e}", numeric.sub(&exact).norm());
        }
    }
}

#[test]
fn r_zero_uses_a_one_sided_stencil_and_ignores_omega() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let s = sig(2);
    for _ in 0..10 {
        let f = random_stem(s, 4, &mut rng);
        let h = stem_handle(&f);
        let xp: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
        let x = SplitPoint::new(s, xp.clone(), 0.0, s.canonical_omega()).unwrap();
        let base = d_omega_numeric(&h, &x, &fd()).unwrap();
        assert!(base.one_sided);
        let exact = d_omega_exact(&f.to_f64(), &x.slice_point(), x.omega());
        assert!(base.value.sub(&exact).norm() <= 1e-6);
        for w in sample_sphere::<f64>(s, 8, rng.random()) {
            let other = d_omega_numeric(&h, &x.with_omega(w).unwrap(), &fd()).unwrap();
            assert!(other.value.sub(&base.value).norm() <= 1e-6);
        }
    }
}

#[test]
fn p6_operator_is_the_full_cauchy_riemann_operator() {
    let s = sig(6);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = 1e-4;
    for _ in 0..20 {
        let f = random_stem(s, 3, &mut rng);
        let fh = stem_handle(&f);
        let mut c: [f64; 8] = core::array::from_fn(|_| rng.random_range(-1.0..1.0));
        c[7] = c[7].abs() + 0.25;
        let x = O::new(c);
        let mut full = O::zero();
        for i in 0..8 {
            let g = |t: f64| {
                let mut y = c;
                y[i] += t;
                fh.eval(&O::new(y))
            };
            let d = g(2.0 * h).scale(&-1.0).add(&g(h).scale(&8.0)).sub(&g(-h).scale(&8.0)).add(&g(-2.0 * h)).div_scalar(&(12.0 * h));
            full = full.add(&O::basis(i).mul(&d));
        }
        let slice = d_omega_numeric(&fh, &split(&x, s).unwrap(), &fd()).unwrap().value;
        assert!(slice.sub(&full).norm() <= 1e-8);
    }
}

#[test]
fn p0_operator_is_the_complex_operator_on_each_plane() {
    let s = sig(0);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = XqPower { sig: s, n: 4 };
    let h = 1e-4;
    for _ in 0..10 {
        let x = point(s, &mut rng);
        let (a, r, i) = (x.xp()[0], *x.r(), x.omega().clone());
        let g0 = |t: f64| f.eval(&O::real(a + t).add(&i.scale(&r)));
        let gr = |t: f64| f.eval(&O::real(a).add(&i.scale(&(r + t))));
        let d = |g: &dyn Fn(f64) -> O| g(h).sub(&g(-h)).div_scalar(&(2.0 * h));
        let complex = d(&g0).add(&i.mul(&d(&gr)));
        let slice = d_omega_numeric(&f, &x, &fd()).unwrap().value;
        assert!(slice.sub(&complex).norm() <= 1e-6);
        assert!(slice.norm() <= 1e-8);
    }
}

#[test]
fn indicator_is_monogenic_along_its_slices() {
    let s = sig(2);
    let w = sample_sphere::<f64>(s, 1, 3).remove(0);
    let f = Indicator { sig: s, omega: w.clone() };
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        for dir in [w.clone(), w.neg(), sample_sphere::<f64>(s, 1, rng.random()).remove(0)] {
            let x = point(s, &mut rng).with_omega(dir).unwrap();
            assert!(d_omega_numeric(&f, &x, &fd()).unwrap().value.norm() == 0.0);
        }
    }
}

#[test]
fn global_operator_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for p in [0usize, 1, 3, 5] {
        let s = sig(p);
        let z0 = FueterVariable { sig: s, l: 0, side: Side::Left };
        let cube = XqPower { sig: s, n: 3 };
        let xq = FnHandle::new(s, "x_q", move |x: &O| O::from_fn(|i| if i > p { *x.coeff(i) } else { 0.0 }));
        for _ in 0..10 {
            let x = point(s, &mut rng).embed();
            assert!(global_theta(&z0, &x, &fd()).unwrap().norm() <= 1e-8);
            assert!(global_theta(&cube, &x, &fd()).unwrap().norm() <= 1e-7);
            assert!(global_theta(&xq, &x, &fd()).unwrap().norm() > 0.1);
        }
        let real = O::new([0.3, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let real = O::from_fn(|i| if i <= p { *real.coeff(i) } else { 0.0 });
        assert!(matches!(global_theta(&z0, &real, &fd()), Err(Error::Singularity(_))));
    }
}

#[test]
fn global_and_slice_operators_agree_on_slice_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [1usize, 2, 4] {
        let s = sig(p);
        for _ in 0..10 {
            let f = stem_handle(&random_stem(s, 3, &mut rng));
            let x = point(s, &mut rng);
            let g = global_theta(&f, &x.embed(), &fd()).unwrap();
            let d = d_omega_numeric(&f, &x, &fd()).unwrap().value;
            assert!(g.sub(&d).norm() <= 1e-6);
        }
    }
}

#[test]
fn slice_laplacian_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let sq = XqPower { sig: sig(0), n: 2 };
    for _ in 0..10 {
        let x = point(sig(0), &mut rng);
        assert!(slice_laplacian_numeric(&sq, &x, &fd()).unwrap().norm() <= 1e-6);
    }
    for p in 0..=6 {
        let s = sig(p);
        let norm2 = FnHandle::new(s, "|x'|^2", |x: &O| O::real(x.norm_sq()));
        let x = point(s, &mut rng);
        let lap = slice_laplacian_numeric(&norm2, &x, &fd()).unwrap();
        assert!(lap.approx_eq(&O::real(2.0 * (p as f64 + 2.0)), 1e-6));
    }
}

#[test]
fn monogenic_functions_are_slice_harmonic() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for p in [1usize, 2, 3] {
        let s = sig(p);
        for k in MultiIndex::up_to_degree(s, 4) {
            let f = StemHandle::new(v_poly::<Rational>(&k, s).unwrap().to_f64(), "v");
            let x = point(s, &mut rng);
            assert!(slice_laplacian_numeric(&f, &x, &fd()).unwrap().norm() <= 1e-5);
        }
    }
}

#[test]
fn finite_difference_convergence() {
    // F = (x0^6 + r^6 e1, 0): not monogenic, so the h^4 error terms of the
    // fourth-order stencil do not cancel between the x0 and r directions
    let s = sig(1);
    let x0 = P::var(s, Var::X(0)).unwrap();
    let r = P::var(s, Var::R).unwrap();
    let pow = |v: &P, n: u32| (1..n).fold(v.clone(), |acc, _| acc.mul(v));
    let f = StemFunction::new(pow(&x0, 6).add(&pow(&r, 6).right_mul(&Octonion::basis(1))), P::zero(s)).unwrap();
    let h = stem_handle(&f);
    let x = SplitPoint::new(s, vec![0.7, -0.4], 0.9, O::basis(3)).unwrap();
    let exact = d_omega_exact(&f.to_f64(), &x.slice_point(), x.omega());
    let err = |scheme: FDScheme| d_omega_numeric(&h, &x, &scheme).unwrap().value.sub(&exact).norm();
    for step in [0.1, 0.05, 0.02] {
        let ratio = err(FDScheme::with_step(step)) / err(FDScheme::with_step(step / 2.0));
        assert!(ratio >= 16.0 * 0.8, "h = {step}: ratio {ratio}");
    }
    let o2 = |step: f64| err(FDScheme { h: step, order: 2, richardson: false });
    assert!(o2(0.05) / o2(0.025) >= 4.0 * 0.8);
    let rich = err(FDScheme { h: 0.05, order: 2, richardson: true });
    assert!(rich < o2(0.05) / 10.0);
}

#[test]
fn invalid_schemes_are_rejected() {
    let s = sig(1);
    let z = FueterVariable { sig: s, l: 0, side: Side::Left };
    let x = SplitPoint::new(s, vec![0.0, 0.0], 1.0, O::basis(2)).unwrap();
    for bad in [FDScheme::with_step(0.0), FDScheme::with_step(-1.0), FDScheme { h: 1e-3, order: 3, richardson: false }] {
        assert!(matches!(d_omega_numeric(&z, &x, &bad), Err(Error::InvalidScheme(_))));
    }
}

#[test]
fn derivative_and_translation_examples() {
    let s = sig(1);
    let x0 = P::var(s, Var::X(0)).unwrap();
    let r = P::var(s, Var::R).unwrap();
    let z0sq = StemFunction::new(x0.mul(&x0).sub(&r.mul(&r)), x0.mul(&r).scale(&Rational::from_i64(2))).unwrap();
    let d = partial_k_stem(&z0sq, &MultiIndex::unit(s, 0)).unwrap();
    let two = Rational::from_i64(2);
    assert_eq!(d, StemFunction::new(x0.scale(&two), r.scale(&two)).unwrap());
    assert_eq!(partial_k_stem(&z0sq, &MultiIndex::zero(s)).unwrap(), z0sq);

    let z0: Handle = Arc::new(FueterVariable { sig: s, l: 0, side: Side::Left });
    let y = vec![0.5, -1.0];
    let t = translate(z0.clone(), y.clone());
    let x = O::new([1.0, 2.0, 0.3, 0.0, -0.4, 0.0, 0.0, 0.1]);
    let shifted = x.sub(&O::new([0.5, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
    assert!(t.eval(&x).approx_eq(&z0.eval(&shifted), 1e-15));
    let same = partial_k(z0.clone(), &MultiIndex::zero(s), fd()).unwrap();
    assert_eq!(same.eval(&x), z0.eval(&x));
    assert!(matches!(partial_k(z0, &MultiIndex::new(vec![2, 1]), fd()), Err(Error::DerivativeOrderTooHigh(3))));
}

#[test]
fn translation_and_differentiation_preserve_monogenicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for p in [1usize, 2] {
        let s = sig(p);
        for k in MultiIndex::up_to_degree(s, 3) {
            let v: Handle = Arc::new(StemHandle::new(v_poly::<Rational>(&k, s).unwrap().to_f64(), "v"));
            let y: Vec<f64> = (0..=p).map(|_| rng.random_range(-1.0..1.0)).collect();
            let x = point(s, &mut rng);
            let t = translate(v.clone(), y);
            assert!(d_omega_numeric(t.as_ref(), &x, &fd()).unwrap().value.norm() <= 1e-8);
            let dv = partial_k(v.clone(), &MultiIndex::unit(s, p), FDScheme::with_step(1e-3)).unwrap();
            assert!(d_omega_numeric(dv.as_ref(), &x, &FDScheme::with_step(1e-3)).unwrap().value.norm() <= 1e-6);
        }
    }
}

#[test]
fn kernel_handle_is_monogenic_off_its_pole() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for p in [0usize, 2, 5] {
        let s = sig(p);
        let a = O::new([0.2, -1.0, 0.3, 0.5, 0.0, 1.0, -0.7, 0.4]);
        let f = Kernel { sig: s, pole: O::zero(), a };
        for _ in 0..10 {
            let x = point(s, &mut rng);
            let v = f.eval(&x.embed()).norm();
            assert!(d_omega_numeric(&f, &x, &fd()).unwrap().value.norm() <= 1e-6 * v.max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operator_is_real_linear(p in 0usize..=6, seed in any::<u64>(), a in -3.0f64..3.0) {
        let s = sig(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_stem(s, 3, &mut rng);
        let g = random_stem(s, 3, &mut rng);
        let sum = f.add(&g.scale(&Rational::from_ratio((a * 8.0) as i64, 8)));
        let a = ((a * 8.0) as i64) as f64 / 8.0;
        let x = point(s, &mut rng);
        let d = |h: &StemFunction<Rational>| d_omega_numeric(&stem_handle(h), &x, &fd()).unwrap().value;
        let lhs = d(&sum);
        let rhs = d(&f).add(&d(&g).scale(&a));
        prop_assert!(lhs.sub(&rhs).norm() <= 1e-8 * (1.0 + rhs.norm()));
    }

    #[test]
    fn slice_operator_handles_signed_r(p in 0usize..=6, seed in any::<u64>()) {
        let s = sig(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_stem(s, 3, &mut rng);
        let x = point(s, &mut rng);
        let w = x.omega().clone();
        let refl = x.slice_point().reflect();
        let on_reflected = d_omega_on_slice(&stem_handle(&f), &refl, &w, &fd()).unwrap();
        let via_neg = d_omega_numeric(&stem_handle(&f), &x.with_omega(w.neg()).unwrap(), &fd()).unwrap().value;
        prop_assert!(on_reflected.sub(&via_neg).norm() <= 1e-7 * (1.0 + via_neg.norm()));
    }
}
