//! Invariant batteries behind `verify`.

use octoslice::algebra::{LeftMulOperator, TABLE, XI};
use octoslice::calculus::{d_omega_exact, d_omega_numeric, d_omega_right_numeric, FDScheme};
use octoslice::cauchy::{cauchy_pompeiu, cauchy_reconstruct, cauchy_reconstruct_global, mean_value, BallSlice, BoundarySamples, DerivativeSource};
use octoslice::fueter::{
    ck_extension, fueter_poly, fueter_poly_eval_with, fueter_var, fueter_vars, symmetrized_sum, v_poly,
    PermutationStrategy, Side,
};
use octoslice::handle::{FnHandle, FueterVariable, StemHandle, XqPower};
use octoslice::kernel::kernel_e_at;
use octoslice::quadrature::QuadratureRule;
use octoslice::slicegeom::{orbit_contains, sample_octonion, sample_sphere, sample_split_point};
use octoslice::stem::{rep_formula_two_point, representation_formula, stem_from_slices};
use octoslice::taylor::{kernel_series_partial, taylor_expand};
use octoslice::{
    split, AssociationTree, Error, MultiIndex, OctPolynomial, Octonion, Rational, Scalar, SliceFunction,
    SliceSignature, SplitPoint, StemFunction, Var,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Case, SuiteReport};
use crate::Mode;

type O = Octonion<f64>;
type Q = Octonion<Rational>;
type P = OctPolynomial<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Algebra,
    Slicegeom,
    Stem,
    Fueter,
    Calculus,
    Cauchy,
    Taylor,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Algebra, Suite::Slicegeom, Suite::Stem, Suite::Fueter, Suite::Calculus, Suite::Cauchy, Suite::Taylor];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Slicegeom => "slicegeom",
            Suite::Stem => "stem",
            Suite::Fueter => "fueter",
            Suite::Calculus => "calculus",
            Suite::Cauchy => "cauchy",
            Suite::Taylor => "taylor",
            Suite::All => "all",
        }
    }

    fn default_samples(self) -> usize {
        match self {
            Suite::Algebra | Suite::Slicegeom => 1000,
            Suite::Stem => 100,
            Suite::Calculus => 50,
            Suite::Fueter => 20,
            Suite::Cauchy => 10,
            Suite::Taylor | Suite::All => 5,
        }
    }

    /// Suites whose checks are all exact or all numeric, regardless of
    /// `--mode`.
    fn fixed_mode(self) -> Option<Mode> {
        match self {
            Suite::Stem | Suite::Fueter => Some(Mode::Exact),
            Suite::Calculus | Suite::Cauchy | Suite::Taylor => Some(Mode::Float),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub mode: Mode,
    pub seed: u64,
    pub samples: Option<usize>,
    pub p: Option<usize>,
    pub max_degree: Option<u32>,
}

impl VerifyOptions {
    fn samples(&self, suite: Suite) -> usize {
        self.samples.unwrap_or_else(|| suite.default_samples())
    }

    fn ps(&self, default: &[usize]) -> Vec<usize> {
        match self.p {
            Some(p) => vec![p],
            None => default.to_vec(),
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    if suite == Suite::All {
        let mut cases = Vec::new();
        for s in Suite::EACH {
            for mut c in run(s, opts).cases {
                c.name = format!("{}/{}", s.name(), c.name);
                cases.push(c);
            }
        }
        return SuiteReport { suite: "all".into(), mode: opts.mode.name().into(), seed: opts.seed, cases };
    }
    let mode = suite.fixed_mode().unwrap_or(opts.mode);
    let cases = match suite {
        Suite::Algebra => match mode {
            Mode::Exact => algebra::<Rational>(opts),
            Mode::Float => algebra::<f64>(opts),
        },
        Suite::Slicegeom => match mode {
            Mode::Exact => slicegeom::<Rational>(opts),
            Mode::Float => slicegeom::<f64>(opts),
        },
        Suite::Stem => stem(opts),
        Suite::Fueter => fueter(opts),
        Suite::Calculus => calculus(opts),
        Suite::Cauchy => cauchy(opts),
        Suite::Taylor => taylor(opts),
        Suite::All => unreachable!(),
    };
    SuiteReport { suite: suite.name().into(), mode: mode.name().into(), seed: opts.seed, cases }
}

fn sig(p: usize) -> SliceSignature {
    SliceSignature::new(p).expect("p validated by the caller")
}

/// Worst discrepancy of a family of identities: a mismatch count in exact
/// mode, a relative error in float mode.
struct Tally {
    mismatches: usize,
    worst: f64,
    total: usize,
}

impl Tally {
    fn new() -> Self {
        Tally { mismatches: 0, worst: 0.0, total: 0 }
    }

    fn record<S: Scalar>(&mut self, lhs: &Octonion<S>, rhs: &Octonion<S>, scale: f64) {
        self.total += 1;
        if S::EXACT {
            if lhs != rhs {
                self.mismatches += 1;
            }
        } else {
            let err = lhs.to_f64().sub(&rhs.to_f64()).norm() / scale.max(f64::MIN_POSITIVE);
            self.worst = self.worst.max(err);
        }
    }

    fn case<S: Scalar>(&self, name: &str, tol: f64) -> Case {
        if S::EXACT {
            Case::exact(name, self.mismatches == 0, format!("{} of {} comparisons differ", self.mismatches, self.total))
        } else {
            Case::within(name, self.worst, tol, format!("{} comparisons, relative error", self.total))
        }
    }
}

fn norm<S: Scalar>(x: &Octonion<S>) -> f64 {
    x.norm_sq().to_f64().sqrt()
}

fn algebra<S: Scalar>(opts: &VerifyOptions) -> Vec<Case> {
    let mut rng = opts.rng(1);
    let n = opts.samples(Suite::Algebra);
    let mut cases = Vec::new();

    let mut table_ok = true;
    for i in 1..8 {
        table_ok &= TABLE[i][i] == (-1, 0) && TABLE[0][i] == (1, i as u8) && TABLE[i][0] == (1, i as u8);
    }
    for &(a, b, c) in &XI {
        for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b)] {
            table_ok &= TABLE[i][j] == (1, k as u8) && TABLE[j][i] == (-1, k as u8);
        }
    }
    cases.push(Case::exact("table_generated_from_xi", table_ok, "64 products against the seven triples"));

    let names = ["alternative_left", "alternative_right", "flexible", "artin_conjugate", "moufang_left", "moufang_right", "moufang_middle", "norm_multiplicative", "inverse_two_sided"];
    let mut t: Vec<Tally> = names.iter().map(|_| Tally::new()).collect();
    for _ in 0..n {
        let a: Octonion<S> = sample_octonion(&mut rng);
        let b: Octonion<S> = sample_octonion(&mut rng);
        let c: Octonion<S> = sample_octonion(&mut rng);
        let (na, nb, nc) = (norm(&a), norm(&b), norm(&c));
        let z = Octonion::zero();
        t[0].record(&Octonion::associator(&a, &a, &b), &z, na * na * nb);
        t[1].record(&Octonion::associator(&a, &b, &b), &z, na * nb * nb);
        t[2].record(&Octonion::associator(&a, &b, &a), &z, na * nb * na);
        t[3].record(&Octonion::associator(&a.conj(), &a, &b), &z, na * na * nb);
        let s4 = na * na * nb * nc;
        t[4].record(&a.mul(&b.mul(&a.mul(&c))), &a.mul(&b).mul(&a).mul(&c), s4);
        let s4 = na * nb * nb * nc;
        t[5].record(&a.mul(&b).mul(&c).mul(&b), &a.mul(&b.mul(&c).mul(&b)), s4);
        let s4 = na * na * nb * nc;
        t[6].record(&a.mul(&b).mul(&c.mul(&a)), &a.mul(&b.mul(&c)).mul(&a), s4);
        let lhs = Octonion::real(a.mul(&b).norm_sq());
        let rhs = Octonion::real(a.norm_sq().mul_ref(&b.norm_sq()));
        t[7].record(&lhs, &rhs, na * na * nb * nb);
        if let Ok(inv) = a.inverse() {
            t[8].record(&a.mul(&inv), &Octonion::one(), 1.0);
            t[8].record(&inv.mul(&a), &Octonion::one(), 1.0);
        }
    }
    for (name, tally) in names.iter().zip(&t) {
        cases.push(tally.case::<S>(name, 1e-12));
    }

    let e = |i| Octonion::<Rational>::basis(i);
    let assoc = Octonion::associator(&e(1), &e(2), &e(4));
    cases.push(Case::exact("associator_e1_e2_e4", assoc == e(7).scale(&Rational::from_i64(2)), "[e1, e2, e4] = 2e7"));
    let composed = LeftMulOperator::left_mul(&e(1)).compose(&LeftMulOperator::left_mul(&e(2))).apply(&e(4));
    let direct = LeftMulOperator::left_mul(&e(1).mul(&e(2))).apply(&e(4));
    cases.push(Case::exact(
        "left_multiplication_not_multiplicative",
        composed != direct && composed == e(7).neg() && direct == e(7),
        "L_e1 L_e2 e4 = -e7, L_(e1 e2) e4 = e7",
    ));
    cases.push(Case::exact("commutator_e1_e2", Octonion::commutator(&e(1), &e(2)) == e(3).scale(&Rational::from_i64(2)), "[e1, e2] = 2e3"));
    cases
}

fn slicegeom<S: Scalar>(opts: &VerifyOptions) -> Vec<Case> {
    let mut rng = opts.rng(2);
    let n = opts.samples(Suite::Slicegeom);
    let mut round = Tally::new();
    let mut square = Tally::new();
    let mut reflect = Tally::new();
    let mut orbit_misses = 0usize;
    let mut split_errors = 0usize;
    let ps = opts.ps(&[0, 1, 2, 3, 4, 5, 6]);
    for i in 0..n {
        let s = sig(ps[i % ps.len()]);
        let x: SplitPoint<S> = sample_split_point(s, &mut rng);
        let e = x.embed();
        match split(&e, s) {
            Ok(y) => {
                round.record(&y.embed(), &e, 1.0 + norm(&e));
                let xr = Octonion::real(x.r().clone());
                let yr = Octonion::real(y.r().clone());
                round.record(&xr, &yr, 1.0 + norm(&e));
                for (a, b) in x.xp().iter().zip(y.xp()) {
                    round.record(&Octonion::real(a.clone()), &Octonion::real(b.clone()), 1.0 + norm(&e));
                }
            }
            Err(_) => split_errors += 1,
        }
        let w = x.omega();
        square.record(&w.mul(w), &Octonion::real(S::from_i64(-1)), 1.0);
        let sp = x.slice_point();
        reflect.record(&sp.reflect().reflect().on_slice(w), &sp.on_slice(w), 1.0 + norm(&e));
        let other: Octonion<S> = sample_sphere::<S>(s, 1, rng.random()).remove(0);
        let moved = x.with_omega(other).expect("sphere sample").embed();
        if S::EXACT && !orbit_contains(x.xp(), x.r(), &moved, s) {
            orbit_misses += 1;
        }
    }
    let exact = S::EXACT;
    let mut cases = vec![
        if split_errors == 0 {
            round.case::<S>("split_embed_round_trip", 1e-12)
        } else {
            Case::failed("split_embed_round_trip", format!("{split_errors} points failed to split"))
        },
        square.case::<S>("sphere_squares_to_minus_one", 1e-12),
        reflect.case::<S>("reflection_is_an_involution", 1e-12),
    ];
    if exact {
        cases.push(Case::exact("orbit_membership", orbit_misses == 0, format!("{orbit_misses} of {n} rotated points missed")));
    }
    let s = sig(1);
    let x = Octonion::<S>::from_fn(|i| S::from_i64([1, 2, 0, 3, 4, 0, 0, 0][i]));
    let y = split(&x, s).expect("integer radius");
    let want = y.r() == &S::from_i64(5) && y.omega().mul(&Octonion::real(S::from_i64(5))) == Octonion::from_fn(|i| S::from_i64([0, 0, 0, 3, 4, 0, 0, 0][i]));
    cases.push(Case::exact("split_example", want, "1 + 2e1 + 3e3 + 4e4 at p = 1 has r = 5, ω = (3e3 + 4e4)/5"));
    cases
}

fn random_ck_stem(s: SliceSignature, deg: u32, rng: &mut ChaCha8Rng) -> StemFunction<Rational> {
    let mut f0 = P::zero(s);
    for _ in 0..4 {
        let mut exps = vec![0u32; s.p() + 2];
        for _ in 0..rng.random_range(0..=deg) {
            exps[rng.random_range(0..=s.p())] += 1;
        }
        let c = Octonion::from_fn(|_| Rational::from_ratio(rng.random_range(-4..=4), rng.random_range(1..=3)));
        f0 = f0.add(&P::monomial(s, exps, c));
    }
    ck_extension(&f0).expect("polynomial in x_p")
}

fn stem(opts: &VerifyOptions) -> Vec<Case> {
    let mut rng = opts.rng(3);
    let n = opts.samples(Suite::Stem);
    let deg = opts.max_degree.unwrap_or(5);
    let ps = opts.ps(&[1, 2, 3]);
    let mut gsr_fail = Vec::new();
    let mut d_fail = 0usize;
    let (mut rep_fail, mut two_fail, mut eta_fail, mut total) = (0usize, 0usize, 0usize, 0usize);
    for &p in &ps {
        let s = sig(p);
        let max = if p <= 2 { deg } else { deg.min(3) };
        for k in MultiIndex::up_to_degree(s, max) {
            let v = v_poly::<Rational>(&k, s).expect("nonnegative");
            if !v.is_gsr() {
                gsr_fail.push(format!("p={p} k={k}"));
            }
            let x: SplitPoint<Rational> = sample_split_point(s, &mut rng);
            if !d_omega_exact(&v, &x.slice_point(), x.omega()).is_zero() {
                d_fail += 1;
            }
        }
        let f = random_ck_stem(s, deg, &mut rng);
        for _ in 0..n {
            total += 1;
            let x: SplitPoint<Rational> = sample_split_point(s, &mut rng);
            let ws = sample_sphere::<Rational>(s, 3, rng.random());
            let (eta, w2) = (&ws[0], &ws[1]);
            let sp = x.slice_point();
            let direct = f.eval(&x.embed()).expect("signature");
            let fp = f.eval_at(&sp, eta);
            let fm = f.eval_at(&sp.reflect(), eta);
            if representation_formula(&fp, &fm, eta, x.omega()) != direct {
                rep_fail += 1;
            }
            let f2 = f.eval_at(&sp, w2);
            match rep_formula_two_point(&fp, &f2, eta, w2, x.omega()) {
                Ok(v) if v == direct => {}
                Err(Error::DegeneratePair) if eta == w2 => {}
                _ => two_fail += 1,
            }
            let (a1, a2) = stem_from_slices(&fp, &fm, eta);
            let (b1, b2) = stem_from_slices(&f.eval_at(&sp, &ws[2]), &f.eval_at(&sp.reflect(), &ws[2]), &ws[2]);
            if a1 != b1 || a2 != b2 || a1 != f.f1().eval_point(&sp) || a2 != f.f2().eval_point(&sp) {
                eta_fail += 1;
            }
        }
    }
    let r = P::var(sig(1), Var::R).expect("r");
    let parity = matches!(StemFunction::new(r.clone(), P::zero(sig(1))), Err(Error::NotStem(_)))
        && matches!(StemFunction::new(P::zero(sig(1)), r.mul(&r)), Err(Error::NotStem(_)));
    vec![
        Case::exact("fueter_stems_are_gsr", gsr_fail.is_empty(), if gsr_fail.is_empty() { format!("|k| <= {deg}") } else { gsr_fail.join(", ") }),
        Case::exact("gsr_implies_d_omega_zero", d_fail == 0, format!("{d_fail} nonzero values")),
        Case::exact("representation_formula", rep_fail == 0, format!("{rep_fail} of {total} points differ, degree <= {deg}")),
        Case::exact("two_point_formula", two_fail == 0, format!("{two_fail} of {total} points differ")),
        Case::exact("stem_extraction_eta_independent", eta_fail == 0, format!("{eta_fail} of {total} points differ")),
        Case::exact("parity_violations_rejected", parity, "(r, 0) and (0, r^2) are not stems"),
    ]
}

fn fueter(opts: &VerifyOptions) -> Vec<Case> {
    let mut rng = opts.rng(4);
    let n = opts.samples(Suite::Fueter);
    let deg = opts.max_degree.unwrap_or(4);
    let ps = opts.ps(&[1, 2]);
    let (mut vp, mut tree, mut strat, mut rec_l, mut rec_r, mut cr) = (0usize, 0usize, 0usize, 0usize, 0usize, 0usize);
    let (mut checks, mut rec_checks) = (0usize, 0usize);
    for &p in &ps {
        let s = sig(p);
        let ks = MultiIndex::up_to_degree(s, deg);
        let stems: Vec<StemFunction<Rational>> = ks.iter().map(|k| v_poly(k, s).expect("nonnegative")).collect();
        cr += stems.iter().filter(|v| !v.is_gsr()).count();
        let omegas = sample_sphere::<Rational>(s, 8, rng.random());
        for _ in 0..n {
            let x: SplitPoint<Rational> = sample_split_point(s, &mut rng);
            for w in &omegas {
                let y = x.with_omega(w.clone()).expect("sphere sample");
                for (k, v) in ks.iter().zip(&stems) {
                    checks += 1;
                    if v.eval_split(&y).expect("signature") != fueter_poly(k, &y) {
                        vp += 1;
                    }
                }
            }
            // bracketing and enumeration at one direction per point
            let y = x.with_omega(omegas[0].clone()).expect("sphere sample");
            let vars = fueter_vars(&y, Side::Left);
            for k in ks.iter().filter(|k| k.order() > 0) {
                let m = k.order() as usize;
                let trees = AssociationTree::enumerate(m);
                let first = symmetrized_sum(k, &vars, &trees[0], None, PermutationStrategy::Distinct).expect("arity");
                for t in &trees[1..] {
                    if symmetrized_sum(k, &vars, t, None, PermutationStrategy::Distinct).expect("arity") != first {
                        tree += 1;
                    }
                }
                for t in [&trees[0], &trees[trees.len() - 1]] {
                    for side in [Side::Left, Side::Right] {
                        let a = fueter_poly_eval_with(k, &y, t, side, PermutationStrategy::Distinct).expect("arity");
                        let b = fueter_poly_eval_with(k, &y, t, side, PermutationStrategy::All).expect("arity");
                        if a != b {
                            strat += 1;
                        }
                    }
                }
                let v = |k: &MultiIndex| -> Q {
                    if k.has_negative() {
                        Q::zero()
                    } else {
                        stems[ks.iter().position(|j| j == k).expect("lower index")].eval_split(&y).expect("signature")
                    }
                };
                let target = v(k).scale(&Rational::from_i64(k.order()));
                let (mut left, mut right) = (Q::zero(), Q::zero());
                for (i, zi) in vars.iter().enumerate() {
                    let lower = v(&k.minus_unit(i));
                    left = left.add(&zi.mul(&lower));
                    right = right.add(&lower.mul(zi));
                }
                rec_checks += 1;
                rec_l += usize::from(left != target);
                rec_r += usize::from(right != target);
            }
        }
    }
    let bad_index = matches!(fueter_var::<Rational>(ps[0] + 1, &sample_split_point(sig(ps[0]), &mut rng), Side::Left), Err(Error::IndexOutOfRange { .. }));
    vec![
        Case::exact("v_equals_p", vp == 0, format!("{vp} of {checks} values differ, |k| <= {deg}")),
        Case::exact("association_tree_independence", tree == 0, format!("{tree} bracketings differ")),
        Case::exact("permutation_strategies_agree", strat == 0, format!("{strat} differ")),
        Case::exact("recurrence_left", rec_l == 0, format!("{rec_l} of {rec_checks} differ")),
        Case::exact("recurrence_right", rec_r == 0, format!("{rec_r} of {rec_checks} differ")),
        Case::exact("cr_residual_zero", cr == 0, format!("{cr} stems with nonzero residual")),
        Case::exact("variable_index_checked", bad_index, "z_{p+1} is rejected"),
    ]
}

/// A float split point with `r >= 0.25`.
fn lifted_point(s: SliceSignature, rng: &mut ChaCha8Rng) -> SplitPoint<f64> {
    let x: SplitPoint<f64> = sample_split_point(s, rng);
    SplitPoint::new(s, x.xp().to_vec(), x.r() + 0.25, x.omega().clone()).expect("valid point")
}

fn random_parity_stem(s: SliceSignature, deg: u32, rng: &mut ChaCha8Rng) -> StemFunction<Rational> {
    let mut parts = [P::zero(s), P::zero(s)];
    for _ in 0..6 {
        let mut exps = vec![0u32; s.p() + 2];
        for _ in 0..rng.random_range(0..=deg) {
            exps[rng.random_range(0..=s.p() + 1)] += 1;
        }
        let c = Octonion::from_fn(|_| Rational::from_ratio(rng.random_range(-3..=3), rng.random_range(1..=2)));
        let odd = usize::from(exps[s.p() + 1] % 2 == 1);
        parts[odd] = parts[odd].add(&P::monomial(s, exps, c));
    }
    let [f1, f2] = parts;
    StemFunction::new(f1, f2).expect("parity by construction")
}

fn calculus(opts: &VerifyOptions) -> Vec<Case> {
    let mut rng = opts.rng(5);
    let n = opts.samples(Suite::Calculus);
    let fd = FDScheme::default();
    let ps = opts.ps(&[0, 1, 2, 4, 6]);
    let mut cases = Vec::new();

    let (mut mono, mut right) = (0.0f64, 0.0f64);
    let mut errors = 0usize;
    for &p in &ps {
        let s = sig(p);
        for l in 0..=p {
            let zl = FueterVariable { sig: s, l, side: Side::Left };
            let two_el = if l == 0 { O::zero() } else { O::basis(l).scale(&2.0) };
            for _ in 0..5 {
                let x = lifted_point(s, &mut rng);
                match (d_omega_numeric(&zl, &x, &fd), d_omega_right_numeric(&zl, &x, &fd)) {
                    (Ok(d), Ok(dr)) => {
                        mono = mono.max(d.value.norm());
                        right = right.max(dr.value.sub(&two_el).norm());
                    }
                    _ => errors += 1,
                }
            }
        }
    }
    cases.push(Case::within("fueter_variables_monogenic", if errors > 0 { f64::INFINITY } else { mono }, 1e-8, "|D_ω z_l|"));
    cases.push(Case::within("fueter_variable_right_derivative", if errors > 0 { f64::INFINITY } else { right }, 1e-8, "|z_l D_ω - 2e_l| (0 for l = 0)"));

    let s = sig(1);
    let e2 = O::basis(2);
    let za = FnHandle::new(s, "z1 e2", move |x: &O| {
        let sp = split(x, s).expect("float split");
        fueter_var(1, &sp, Side::Left).expect("index").mul(&e2)
    });
    let mut za_err = 0.0f64;
    for _ in 0..10 {
        let x = lifted_point(s, &mut rng).with_omega(O::basis(7)).expect("e7 in sphere");
        za_err = za_err.max(match d_omega_numeric(&za, &x, &fd) {
            Ok(d) => d.value.sub(&O::basis(3).scale(&2.0)).norm(),
            Err(_) => f64::INFINITY,
        });
    }
    cases.push(Case::within("z1_times_e2_at_e7", za_err, 1e-8, "D_ω(z1 e2) against 2e3"));

    let mut agree = 0.0f64;
    for &p in &ps {
        let s = sig(p);
        for _ in 0..n {
            let f = random_parity_stem(s, 4, &mut rng);
            let h = StemHandle::new(f.to_f64(), "stem");
            let x = lifted_point(s, &mut rng);
            let exact = d_omega_exact(&f.to_f64(), &x.slice_point(), x.omega());
            agree = agree.max(match d_omega_numeric(&h, &x, &fd) {
                Ok(d) => d.value.sub(&exact).norm(),
                Err(_) => f64::INFINITY,
            });
        }
    }
    cases.push(Case::within("exact_and_numeric_operators_agree", agree, 1e-6, format!("{n} degree-4 stems per p")));
    cases
}

/// `|a - b| / |b|`, or the absolute error when `b = 0`.
fn rel(a: &O, b: &O) -> f64 {
    let d = a.sub(b).norm();
    if b.norm() > 0.0 {
        d / b.norm()
    } else {
        d
    }
}

fn v_handle(k: &MultiIndex, s: SliceSignature) -> StemHandle {
    StemHandle::new(v_poly::<Rational>(k, s).expect("nonnegative").to_f64(), k.to_string())
}

/// A point of the slice `H_eta` with `|x'| <= 0.5`.
fn interior_point(s: SliceSignature, eta: &O, rng: &mut ChaCha8Rng) -> SplitPoint<f64> {
    let dim = s.p() + 2;
    let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt().max(1e-9);
    let rho = rng.random_range(0.05..0.5);
    let c: Vec<f64> = v.iter().map(|c| c * rho / n).collect();
    SplitPoint::new(s, c[..dim - 1].to_vec(), c[dim - 1], eta.clone()).expect("valid point")
}

fn cauchy(opts: &VerifyOptions) -> Vec<Case> {
    let mut rng = opts.rng(6);
    let n = opts.samples(Suite::Cauchy);
    let deg = opts.max_degree.unwrap_or(3);
    let ps = opts.ps(&[0, 1, 2]);
    let mut cases = Vec::new();

    let (mut worst, mut monotone, mut failures) = (0.0f64, true, Vec::new());
    let mut mv_worst = 0.0f64;
    for &p in &ps {
        let s = sig(p);
        let eta = sample_sphere::<f64>(s, 1, rng.random()).remove(0);
        let ball = BallSlice::new(s, eta.clone(), 1.0).expect("unit ball");
        let fine = ball.default_rule();
        let coarse = QuadratureRule::sphere(p + 2, fine.level() / 2).expect("level");
        let points: Vec<SplitPoint<f64>> = (0..n).map(|_| interior_point(s, &eta, &mut rng)).collect();
        for k in MultiIndex::up_to_degree(s, deg) {
            let f = v_handle(&k, s);
            let errs: Vec<f64> = [&coarse, &fine]
                .iter()
                .map(|rule| match BoundarySamples::new(&f, &ball, rule) {
                    Ok(samples) => points
                        .iter()
                        .map(|x| samples.reconstruct(x).map_or(f64::INFINITY, |v| rel(&v, &f.eval(&x.embed()))))
                        .fold(0.0, f64::max),
                    Err(_) => f64::INFINITY,
                })
                .collect();
            worst = worst.max(errs[1]);
            if !(errs[1] <= errs[0] * 1.1 || errs[1] <= 1e-13) {
                monotone = false;
                failures.push(format!("p={p} k={k}"));
            }
            let centered = BallSlice::new(s, eta.clone(), 0.6).expect("ball");
            let center = interior_point(s, &eta, &mut rng).slice_point();
            let centered = centered.with_center(center.clone()).expect("center");
            mv_worst = mv_worst.max(match mean_value(&f, &centered, &fine) {
                Ok(m) => m.sub(&f.eval_slice(&center, &eta)).norm(),
                Err(_) => f64::INFINITY,
            });
        }
    }
    cases.push(Case::within("reconstruction_v_battery", worst, 1e-7, format!("relative, |k| <= {deg}, {n} points per p")));
    cases.push(Case::check(
        "reconstruction_improves_with_level",
        monotone,
        worst,
        if monotone { "doubling the level never increases the error".to_string() } else { failures.join(", ") },
    ));
    cases.push(Case::within("mean_value_v_battery", mv_worst, 1e-8, "f(center) against the sphere average"));

    let s = sig(1);
    let eta = O::basis(2);
    let ball = BallSlice::new(s, eta.clone(), 1.0).expect("unit ball");
    let rule = ball.default_rule();
    let x = SplitPoint::new(s, vec![0.3, 0.1], 0.2, eta.clone()).expect("point");
    let r = P::var(s, Var::R).expect("r");
    let rr = StemHandle::new(StemFunction::new(r.mul(&r), P::zero(s)).expect("stem").to_f64(), "r^2");
    let e_rr = cauchy_pompeiu(&rr, &DerivativeSource::Stem(&rr.stem), &ball, &x, &rule)
        .map_or(f64::INFINITY, |parts| parts.value.sub(&rr.eval(&x.embed())).norm());
    cases.push(Case::within("pompeiu_r_squared", e_rr, 1e-5, "boundary minus volume term"));
    let xq = FnHandle::new(s, "x_q", |y: &O| O::from_fn(|i| if i > 1 { *y.coeff(i) } else { 0.0 }));
    let e_xq = cauchy_pompeiu(&xq, &DerivativeSource::Numeric(FDScheme::default()), &ball, &x, &rule)
        .map_or(f64::INFINITY, |parts| parts.value.sub(&xq.eval(&x.embed())).norm());
    cases.push(Case::within("pompeiu_x_q", e_xq, 1e-5, "numeric derivative source"));

    let f = v_handle(&MultiIndex::new(vec![2, 1]), s);
    let w = O::basis(3).add(&O::basis(4)).scale(&0.5f64.sqrt());
    let xw = SplitPoint::new(s, vec![0.3, -0.2], 0.25, w).expect("point");
    let reference = f.eval(&xw.embed());
    let mut values = Vec::new();
    let mut reduction = 0.0f64;
    for eta in [O::basis(2), O::basis(4)] {
        let ball = BallSlice::new(s, eta.clone(), 1.0).expect("unit ball");
        let rule = ball.default_rule();
        values.push(cauchy_reconstruct_global(&f, &ball, &xw, &rule).unwrap_or_else(|_| O::from_fn(|_| f64::NAN)));
        let on = xw.with_omega(eta).expect("sphere");
        reduction = reduction.max(match (cauchy_reconstruct_global(&f, &ball, &on, &rule), cauchy_reconstruct(&f, &ball, &on, &rule)) {
            (Ok(g), Ok(c)) => g.sub(&c).norm(),
            _ => f64::INFINITY,
        });
    }
    let off = values.iter().map(|v| v.sub(&reference).norm()).fold(0.0, f64::max);
    cases.push(Case::within("global_formula_off_slice", nan_inf(off), 1e-6, "V_(2,1) at ω = (e3 + e4)/√2"));
    cases.push(Case::within("global_formula_eta_independent", nan_inf(values[0].sub(&values[1]).norm()), 2e-7, "η = e2 against η = e4"));
    cases.push(Case::within("global_formula_reduces_on_slice", reduction, 1e-12, "ω = η"));
    cases
}

fn nan_inf(x: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        x
    }
}

fn taylor(opts: &VerifyOptions) -> Vec<Case> {
    let mut rng = opts.rng(7);
    let n = opts.samples(Suite::Taylor);
    let deg = opts.max_degree.unwrap_or(3);
    let ps = opts.ps(&[0, 1, 2]);
    let mut cases = Vec::new();
    let (mut recon, mut account, mut complex_tail) = (0.0f64, 0.0f64, 0.0f64);
    for &p in &ps {
        let s = sig(p);
        let eta = sample_sphere::<f64>(s, 1, rng.random()).remove(0);
        let ball = BallSlice::new(s, eta.clone(), 1.0).expect("unit ball");
        let rule = ball.default_rule();
        for _ in 0..n {
            let f = StemHandle::new(random_ck_stem(s, deg, &mut rng).to_f64(), "f");
            let x = interior_point(s, &eta, &mut rng);
            let truth = f.eval(&x.embed());
            match taylor_expand(&f, &x, deg, &ball, &rule) {
                Ok(e) => {
                    let scale = 1.0 + truth.norm();
                    recon = recon.max(e.reconstruction.sub(&truth).norm() / scale);
                    account = account.max(truth.sub(&e.polynomial_part).sub(&e.tail_sum()).norm() / scale);
                    if p == 0 {
                        complex_tail = complex_tail.max(e.max_tail());
                    }
                }
                Err(_) => recon = f64::INFINITY,
            }
        }
    }
    cases.push(Case::within("reconstruction_of_polynomials", nan_inf(recon), 1e-6, format!("K = deg = {deg}, relative")));
    cases.push(Case::within("tail_accounting", nan_inf(account), 2e-6, "f - Σ P_k ∂_k f(0) - Σ T_k"));
    if ps.contains(&0) {
        cases.push(Case::within("complex_case_tails_vanish", nan_inf(complex_tail), 1e-9, "p = 0"));
        let s = sig(0);
        let ball = BallSlice::new(s, O::basis(1), 1.0).expect("unit ball");
        let x = SplitPoint::new(s, vec![0.3], 0.4, O::basis(1)).expect("point");
        let cube = XqPower { sig: s, n: 3 };
        let t = taylor_expand(&cube, &x, 3, &ball, &ball.default_rule()).map_or(f64::INFINITY, |e| e.max_tail());
        cases.push(Case::within("complex_cube_tails", t, 1e-9, "x^3 with K = 3"));
    }

    let (mut monotone, mut lr) = (true, 0.0f64);
    let mut last_err = 0.0;
    for &p in &ps {
        let s = sig(p);
        let eta = sample_sphere::<f64>(s, 1, rng.random()).remove(0);
        let y = interior_point(s, &eta, &mut rng);
        let yn = y.embed().norm();
        let y = SplitPoint::new(s, y.xp().iter().map(|c| c / yn).collect(), y.r() / yn, eta.clone()).expect("unit y");
        let x = interior_point(s, &eta, &mut rng);
        let xn = x.embed().norm();
        let x = SplitPoint::new(s, x.xp().iter().map(|c| 0.5 * c / xn).collect(), 0.5 * x.r() / xn, eta).expect("x");
        let exact = kernel_e_at(&y.embed(), &x.embed(), p).expect("distinct points");
        let mut prev = f64::INFINITY;
        for k in 0..=8 {
            match kernel_series_partial(&x, &y, k) {
                Ok(sp) => {
                    let err = sp.left.sub(&exact).norm();
                    monotone &= err < prev;
                    prev = err;
                    lr = lr.max(sp.left.sub(&sp.right).norm());
                }
                Err(_) => monotone = false,
            }
        }
        last_err = f64::max(last_err, prev);
    }
    cases.push(Case::check("kernel_series_decays", monotone, last_err, "|x|/|y| = 1/2, K = 0..8; error at K = 8 reported"));
    cases.push(Case::within("kernel_series_sides_agree", lr, 1e-9, "left and right partial sums"));
    cases
}
