use octoslice::algebra::{TABLE, XI};
use octoslice::{LeftMulOperator, Octonion, Rational, Scalar};
use proptest::prelude::*;

type Q = Octonion<Rational>;

fn rat() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=7).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

fn oct() -> impl Strategy<Value = Q> {
    proptest::array::uniform8(rat()).prop_map(Octonion::new)
}

fn foct() -> impl Strategy<Value = Octonion<f64>> {
    proptest::array::uniform8(-2.0f64..2.0).prop_map(Octonion::new)
}

fn e(i: usize) -> Q {
    Octonion::basis(i)
}

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

#[test]
fn table_follows_the_triples() {
    for &(a, b, c) in XI.iter() {
        for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b)] {
            assert_eq!(TABLE[i][j], (1, k as u8));
            assert_eq!(TABLE[j][i], (-1, k as u8));
        }
    }
    for i in 1..8 {
        assert_eq!(TABLE[i][i], (-1, 0));
        assert_eq!(TABLE[0][i], (1, i as u8));
        assert_eq!(TABLE[i][0], (1, i as u8));
    }
}

#[test]
fn multiplication_examples() {
    assert_eq!(e(1).mul(&e(2)), e(3));
    assert_eq!(e(1).mul(&e(6)), e(7).neg());
    let x = Q::from_i64s([3, -1, 4, 1, -5, 9, 2, -6]);
    assert_eq!(Q::one().mul(&x), x);
}

#[test]
fn conjugate_norm_inverse_examples() {
    assert_eq!(Q::one().conj(), Q::one());
    assert_eq!(e(1).conj(), e(1).neg());
    assert_eq!(Q::from_i64s([1, 0, 0, 2, 0, 0, 0, 0]).conj(), Q::from_i64s([1, 0, 0, -2, 0, 0, 0, 0]));
    assert_eq!(e(1).norm_sq(), q(1));
    assert_eq!(Q::from_i64s([1, 1, 1, 1, 0, 0, 0, 0]).norm_sq(), q(4));
    assert_eq!(e(1).mul(&e(4)).norm_sq(), q(1));
    assert_eq!(e(1).inverse().unwrap(), e(1).neg());
    assert_eq!(Q::real(q(2)).inverse().unwrap(), Q::real(Rational::from_ratio(1, 2)));
    let half = Rational::from_ratio(1, 2);
    assert_eq!(
        Q::from_i64s([1, 1, 0, 0, 0, 0, 0, 0]).inverse().unwrap(),
        Octonion::new([half.clone(), -half, q(0), q(0), q(0), q(0), q(0), q(0)])
    );
    assert!(Q::zero().inverse().is_err());
}

#[test]
fn associator_and_commutator_examples() {
    assert!(Q::associator(&e(1), &e(1), &e(2)).is_zero());
    let a = Q::from_i64s([1, 2, 0, -1, 3, 0, 0, 1]);
    let b = Q::from_i64s([0, 1, 1, 0, -2, 5, 1, 0]);
    assert!(Q::associator(&Q::one(), &a, &b).is_zero());
    assert_eq!(Q::associator(&e(1), &e(2), &e(4)), e(7).scale(&q(2)));
    assert_eq!(Q::commutator(&e(1), &e(2)), e(3).scale(&q(2)));
    assert!(Q::commutator(&a, &a).is_zero());
    assert!(Q::commutator(&Q::one(), &e(5)).is_zero());
}

#[test]
fn left_multiplication_examples() {
    assert_eq!(LeftMulOperator::left_mul(&Q::one()), LeftMulOperator::identity());
    assert_eq!(LeftMulOperator::left_mul(&e(1)).apply(&e(2)), e(3));
    let composed = LeftMulOperator::left_mul(&e(1)).compose(&LeftMulOperator::left_mul(&e(2)));
    assert_eq!(composed.apply(&e(4)), e(7).neg());
    assert_eq!(LeftMulOperator::left_mul(&e(1).mul(&e(2))).apply(&e(4)), e(7));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn alternative_laws(a in oct(), b in oct()) {
        prop_assert!(Q::associator(&a, &a, &b).is_zero());
        prop_assert!(Q::associator(&a.conj(), &a, &b).is_zero());
        prop_assert!(Q::associator(&a, &b, &b).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn moufang_identities(a in oct(), b in oct(), c in oct()) {
        prop_assert_eq!(a.mul(&b.mul(&a.mul(&c))), a.mul(&b).mul(&a).mul(&c));
        prop_assert_eq!(a.mul(&b).mul(&c).mul(&b), a.mul(&b.mul(&c).mul(&b)));
        prop_assert_eq!(a.mul(&b).mul(&c.mul(&a)), a.mul(&b.mul(&c)).mul(&a));
    }

    #[test]
    fn moufang_identities_in_float_mode(a in foct(), b in foct(), c in foct()) {
        let scale = a.norm() * a.norm() * b.norm() * c.norm() + 1.0;
        let tol = 1e-12 * scale;
        prop_assert!(a.mul(&b.mul(&a.mul(&c))).sub(&a.mul(&b).mul(&a).mul(&c)).norm() <= tol);
        let scale = a.norm() * b.norm() * b.norm() * c.norm() + 1.0;
        prop_assert!(a.mul(&b).mul(&c).mul(&b).sub(&a.mul(&b.mul(&c).mul(&b))).norm() <= 1e-12 * scale);
        let scale = a.norm() * a.norm() * b.norm() * c.norm() + 1.0;
        prop_assert!(a.mul(&b).mul(&c.mul(&a)).sub(&a.mul(&b.mul(&c)).mul(&a)).norm() <= 1e-12 * scale);
    }

    #[test]
    fn norm_is_multiplicative(a in oct(), b in oct()) {
        prop_assert_eq!(a.mul(&b).norm_sq(), a.norm_sq() * b.norm_sq());
    }

    #[test]
    fn norm_is_multiplicative_in_float_mode(a in foct(), b in foct()) {
        let lhs = a.mul(&b).norm_sq();
        let rhs = a.norm_sq() * b.norm_sq();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
    }

    #[test]
    fn inverse_is_two_sided(a in oct()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert_eq!(a.mul(&inv), Q::one());
        prop_assert_eq!(inv.mul(&a), Q::one());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn left_mul_matches_product(a in oct(), c in oct()) {
        prop_assert_eq!(LeftMulOperator::left_mul(&a).apply(&c), a.mul(&c));
    }

    #[test]
    fn imaginary_unit_squares_to_minus_identity(v in proptest::array::uniform7(rat())) {
        let im = Octonion::new([q(0), v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone(), v[5].clone(), v[6].clone()]);
        let n = im.norm_sq();
        prop_assume!(n != q(0));
        let l = LeftMulOperator::left_mul(&im);
        prop_assert_eq!(l.compose(&l), LeftMulOperator::identity().scale(&(-n)));
    }

    #[test]
    fn associator_is_alternating(a in oct(), b in oct(), c in oct()) {
        let abc = Q::associator(&a, &b, &c);
        prop_assert_eq!(Q::associator(&b, &a, &c), abc.neg());
        prop_assert_eq!(Q::associator(&a, &c, &b), abc.neg());
        prop_assert_eq!(Q::associator(&c, &b, &a), abc.neg());
        prop_assert_eq!(Q::associator(&b, &c, &a), abc);
    }

    #[test]
    fn commutator_is_antisymmetric(a in oct(), b in oct()) {
        prop_assert_eq!(Q::commutator(&a, &b), Q::commutator(&b, &a).neg());
    }
}

#[test]
fn unit_imaginaries_give_minus_identity() {
    for i in 1..8 {
        let l = LeftMulOperator::left_mul(&e(i));
        assert_eq!(l.compose(&l), LeftMulOperator::identity().scale(&q(-1)));
    }
}
