use octoslice::fueter::{
    ck_extension, fueter_poly, fueter_poly_eval, fueter_poly_eval_with, fueter_poly_side, fueter_var, ordered_product,
    parse_multi_index, symmetrized_sum, v_poly, PermutationStrategy, Side,
};
use octoslice::slicegeom::{sample_sphere, sample_split_point};
use octoslice::{
    split, AssociationTree, Error, MultiIndex, OctPolynomial, Octonion, Rational, Scalar, SliceSignature, SplitPoint,
    StemFunction, Var,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Octonion<Rational>;
type P = OctPolynomial<Rational>;

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn sig(p: usize) -> SliceSignature {
    SliceSignature::new(p).unwrap()
}

fn mi(k: &[i64]) -> MultiIndex {
    MultiIndex::new(k.to_vec())
}

fn point_123() -> SplitPoint<Rational> {
    split(&Q::from_i64s([1, 2, 3, 0, 0, 0, 0, 0]), sig(1)).unwrap()
}

fn catalan(n: usize) -> usize {
    (0..n).fold(1usize, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

fn points(s: SliceSignature, count: usize, seed: u64) -> Vec<SplitPoint<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_split_point(s, &mut rng)).collect()
}

#[test]
fn multi_index_basics() {
    let k = mi(&[2, 0, 1]);
    assert_eq!(k.order(), 3);
    assert_eq!(k.factorial::<Rational>().unwrap(), q(2));
    assert_eq!(k.minus_unit(1).entries(), &[2, -1, 1]);
    assert!(k.minus_unit(1).has_negative());
    assert_eq!(k.to_string(), "(2,0,1)");
    assert_eq!(parse_multi_index("V(2,0,1)").unwrap(), k);
    assert_eq!(MultiIndex::of_degree(sig(2), 3).len(), 10);
    assert_eq!(MultiIndex::up_to_degree(sig(1), 3).len(), 10);
}

#[test]
fn fueter_variable_examples() {
    let x = point_123();
    let z0 = fueter_var(0, &x, Side::Left).unwrap();
    assert_eq!(z0, Q::from_i64s([1, 0, 3, 0, 0, 0, 0, 0]));
    assert_eq!(z0, fueter_var(0, &x, Side::Right).unwrap());
    assert_eq!(fueter_var(1, &x, Side::Left).unwrap(), Q::from_i64s([2, 0, 0, -3, 0, 0, 0, 0]));
    assert_eq!(fueter_var(1, &x, Side::Right).unwrap(), Q::from_i64s([2, 0, 0, 3, 0, 0, 0, 0]));
    assert!(matches!(fueter_var(2, &x, Side::Left), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn ordered_product_examples() {
    let e = |i| Q::basis(i);
    let x = Q::from_i64s([1, -2, 0, 3, 1, 0, 0, 4]);
    assert_eq!(ordered_product(&[x.clone()], &AssociationTree::left_fold(1)).unwrap(), x);
    let f = [e(1), e(2), e(4)];
    assert_eq!(ordered_product(&f, &AssociationTree::left_fold(3)).unwrap(), e(7));
    assert_eq!(ordered_product(&f, &AssociationTree::right_fold(3)).unwrap(), e(7).neg());
    for n in 1..=6 {
        let ones = vec![Q::one(); n];
        let trees = AssociationTree::enumerate(n);
        assert_eq!(trees.len(), catalan(n - 1));
        for t in &trees {
            assert_eq!(ordered_product(&ones, t).unwrap(), Q::one());
        }
    }
    assert!(matches!(
        ordered_product(&f, &AssociationTree::left_fold(2)),
        Err(Error::ArityMismatch { .. })
    ));
}

#[test]
fn fueter_polynomial_examples() {
    let x = point_123();
    let t = AssociationTree::right_fold(1);
    assert_eq!(fueter_poly_eval(&mi(&[0, 0]), &x, &t).unwrap(), Q::one());
    assert_eq!(fueter_poly_eval(&mi(&[-1, 2]), &x, &t).unwrap(), Q::zero());
    let expected = Q::from_i64s([2, 0, 6, -3, 0, 0, 0, 0]);
    assert_eq!(fueter_poly_eval(&mi(&[1, 1]), &x, &AssociationTree::left_fold(2)).unwrap(), expected);
    assert_eq!(fueter_poly(&mi(&[1, 1]), &x), expected);
    assert_eq!(v_poly::<Rational>(&mi(&[1, 1]), sig(1)).unwrap().eval_split(&x).unwrap(), expected);
}

#[test]
fn ck_extension_examples() {
    let s = sig(2);
    let var = |v| P::var(s, v).unwrap();
    assert_eq!(ck_extension(&P::constant(s, Q::one())).unwrap(), StemFunction::constant(s, Q::one()));
    for l in 0..=2 {
        let expected = StemFunction::new(var(Var::X(l)), var(Var::R).right_mul(&Q::basis(l))).unwrap();
        assert_eq!(ck_extension(&var(Var::X(l))).unwrap(), expected);
        assert_eq!(v_poly::<Rational>(&MultiIndex::unit(s, l), s).unwrap(), expected);
    }
    let x0 = var(Var::X(0));
    let r = var(Var::R);
    let expected = StemFunction::new(x0.mul(&x0).sub(&r.mul(&r)), r.mul(&x0).scale(&q(2))).unwrap();
    assert_eq!(ck_extension(&x0.mul(&x0)).unwrap(), expected);
    assert!(matches!(ck_extension(&r), Err(Error::DependsOnR)));
    assert_eq!(v_poly::<Rational>(&MultiIndex::zero(s), s).unwrap(), StemFunction::constant(s, Q::one()));
    assert!(matches!(v_poly::<Rational>(&mi(&[1, -1, 0]), s), Err(Error::NegativeIndex(_))));
}

#[test]
fn v_restricts_to_the_scaled_monomial() {
    let s = sig(2);
    for k in MultiIndex::up_to_degree(s, 5) {
        let v = v_poly::<Rational>(&k, s).unwrap();
        let mut on_real = P::zero(s);
        for (e, c) in v.f1().terms() {
            if e[s.p() + 1] == 0 {
                on_real = on_real.add(&P::monomial(s, e.clone(), c.clone()));
            }
        }
        let target = P::x_power(s, &k.naturals().unwrap()).scale(&(Rational::from_i64(1) / k.factorial::<Rational>().unwrap()));
        assert_eq!(on_real, target);
    }
}

#[test]
fn symmetrized_sums_ignore_the_bracketing() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for p in [1usize, 2] {
        let s = sig(p);
        let trailing = [Q::basis(2), Q::basis(7), Octonion::from_fn(|_| Rational::sample(&mut rng))];
        for x in points(s, 20, 100 + p as u64) {
            let vars = octoslice::fueter::fueter_vars(&x, Side::Left);
            for k in MultiIndex::up_to_degree(s, 4).into_iter().filter(|k| k.order() > 0) {
                let n = k.order() as usize;
                let bare: Vec<Q> = AssociationTree::enumerate(n)
                    .iter()
                    .map(|t| symmetrized_sum(&k, &vars, t, None, PermutationStrategy::Distinct).unwrap())
                    .collect();
                assert!(bare.windows(2).all(|w| w[0] == w[1]), "k = {k}");
                for a in &trailing {
                    let trees = AssociationTree::enumerate(n + 1);
                    assert_eq!(trees.len(), catalan(n));
                    let with_a: Vec<Q> = trees
                        .iter()
                        .map(|t| symmetrized_sum(&k, &vars, t, Some(a), PermutationStrategy::Distinct).unwrap())
                        .collect();
                    assert!(with_a.windows(2).all(|w| w[0] == w[1]), "k = {k}, a = {a:?}");
                }
            }
        }
    }
}

#[test]
fn permutation_strategies_agree() {
    for p in [1usize, 2] {
        let s = sig(p);
        for x in points(s, 10, 200 + p as u64) {
            for k in MultiIndex::up_to_degree(s, 4) {
                let n = (k.order() as usize).max(1);
                for t in [AssociationTree::left_fold(n), AssociationTree::right_fold(n)] {
                    for side in [Side::Left, Side::Right] {
                        let a = fueter_poly_eval_with(&k, &x, &t, side, PermutationStrategy::Distinct).unwrap();
                        let b = fueter_poly_eval_with(&k, &x, &t, side, PermutationStrategy::All).unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }
}

#[test]
fn v_equals_p() {
    for p in [1usize, 2] {
        let s = sig(p);
        let mut rng = ChaCha8Rng::seed_from_u64(300 + p as u64);
        let stems: Vec<(MultiIndex, StemFunction<Rational>)> =
            MultiIndex::up_to_degree(s, 4).into_iter().map(|k| { let v = v_poly(&k, s).unwrap(); (k, v) }).collect();
        for x in points(s, 20, 400 + p as u64) {
            for w in sample_sphere::<Rational>(s, 8, rng.random()) {
                let y = x.with_omega(w).unwrap();
                for (k, v) in &stems {
                    assert_eq!(v.eval_split(&y).unwrap(), fueter_poly(k, &y), "k = {k}");
                }
            }
        }
    }
}

#[test]
fn recurrence_in_both_orders() {
    for p in [1usize, 2] {
        let s = sig(p);
        let mut rng = ChaCha8Rng::seed_from_u64(500 + p as u64);
        for x in points(s, 20, 600 + p as u64) {
            for w in sample_sphere::<Rational>(s, 2, rng.random()) {
                let y = x.with_omega(w).unwrap();
                let z = octoslice::fueter::fueter_vars(&y, Side::Left);
                let v = |k: &MultiIndex| -> Q {
                    if k.has_negative() {
                        Q::zero()
                    } else {
                        v_poly::<Rational>(k, s).unwrap().eval_split(&y).unwrap()
                    }
                };
                for k in MultiIndex::up_to_degree(s, 4).into_iter().filter(|k| k.order() > 0) {
                    let target = v(&k).scale(&q(k.order()));
                    let mut left = Q::zero();
                    let mut right = Q::zero();
                    for i in 0..=p {
                        let lower = v(&k.minus_unit(i));
                        left = left.add(&z[i].mul(&lower));
                        right = right.add(&lower.mul(&z[i]));
                    }
                    assert_eq!(left, target, "k = {k}");
                    assert_eq!(right, target, "k = {k}");
                }
            }
        }
    }
}

#[test]
fn v_stems_satisfy_the_cauchy_riemann_system() {
    for p in 0..=6 {
        let s = sig(p);
        let max = if p <= 2 { 5 } else { 3 };
        for k in MultiIndex::up_to_degree(s, max) {
            assert!(v_poly::<Rational>(&k, s).unwrap().is_gsr(), "p = {p}, k = {k}");
        }
    }
}

#[test]
fn v_stems_are_homogeneous() {
    for p in [0usize, 1, 2] {
        let s = sig(p);
        let euler = |f: &P| {
            let mut acc = P::zero(s);
            for i in 0..=p {
                acc = acc.add(&f.derivative(Var::X(i)).unwrap().mul_var(Var::X(i)).unwrap());
            }
            acc.add(&f.derivative(Var::R).unwrap().mul_var(Var::R).unwrap())
        };
        for k in MultiIndex::up_to_degree(s, 5) {
            let v = v_poly::<Rational>(&k, s).unwrap();
            let n = q(k.order());
            assert_eq!(euler(v.f1()), v.f1().scale(&n));
            assert_eq!(euler(v.f2()), v.f2().scale(&n));
        }
    }
}

#[test]
fn single_variable_collapse() {
    let s = sig(0);
    for x in points(s, 20, 700) {
        let e = x.embed();
        let mut power = Q::one();
        let mut fact = q(1);
        for n in 0..=7i64 {
            if n > 0 {
                power = power.mul(&e);
                fact = fact * q(n);
            }
            let expected = power.div_scalar(&fact);
            assert_eq!(fueter_poly_side(&mi(&[n]), &x, Side::Left), expected);
            assert_eq!(fueter_poly_side(&mi(&[n]), &x, Side::Right), expected);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn v_equals_p_on_wider_signatures(p in 3usize..=6, seed in any::<u64>(), deg in 1u32..=3) {
        let s = sig(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: SplitPoint<Rational> = sample_split_point(s, &mut rng);
        let ks = MultiIndex::of_degree(s, deg);
        let k = &ks[rng.random_range(0..ks.len())];
        prop_assert_eq!(v_poly::<Rational>(k, s).unwrap().eval_split(&x).unwrap(), fueter_poly(k, &x));
    }
}
