//! Fueter variables, association orders, Fueter polynomials `P_k`, the
//! CK-extension and `V_k`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Octonion;
use crate::error::{Error, Result};
use crate::poly::OctPolynomial;
use crate::scalar::Scalar;
use crate::slicegeom::{SliceSignature, SplitPoint};
use crate::stem::StemFunction;

/// `k = (k_0, ..., k_p)`; negative entries are allowed as sentinels for
/// which `P_k = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(k: Vec<i64>) -> Self {
        MultiIndex(k)
    }

    pub fn zero(sig: SliceSignature) -> Self {
        MultiIndex(vec![0; sig.p() + 1])
    }

    /// `ε_i`.
    pub fn unit(sig: SliceSignature, i: usize) -> Self {
        let mut k = vec![0; sig.p() + 1];
        k[i] = 1;
        MultiIndex(k)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|k|`.
    pub fn order(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&v| v < 0)
    }

    /// Entries as naturals, or an error naming the index.
    pub fn naturals(&self) -> Result<Vec<u32>> {
        if self.has_negative() {
            return Err(Error::NegativeIndex(format!("{self}")));
        }
        Ok(self.0.iter().map(|&v| v as u32).collect())
    }

    /// `k! = Π k_i!` as a scalar.
    pub fn factorial<S: Scalar>(&self) -> Result<S> {
        let k = self.naturals()?;
        Ok(k.iter().fold(S::one(), |acc, &v| acc.mul_ref(&factorial::<S>(v))))
    }

    pub fn minus_unit(&self, i: usize) -> Self {
        let mut k = self.0.clone();
        k[i] -= 1;
        MultiIndex(k)
    }

    pub fn plus_unit(&self, i: usize) -> Self {
        let mut k = self.0.clone();
        k[i] += 1;
        MultiIndex(k)
    }

    /// The sorted alignment `(j_1 <= ... <= j_k)` in which `i` occurs
    /// `k_i` times.
    pub fn alignment(&self) -> Result<Vec<usize>> {
        let k = self.naturals()?;
        Ok(k.iter().enumerate().flat_map(|(i, &c)| core::iter::repeat_n(i, c as usize)).collect())
    }

    /// All multi-indices of length `p + 1` with `|k| = degree`, in
    /// lexicographic order.
    pub fn of_degree(sig: SliceSignature, degree: u32) -> Vec<MultiIndex> {
        fn rec(len: usize, left: u32, cur: &mut Vec<i64>, out: &mut Vec<MultiIndex>) {
            if cur.len() + 1 == len {
                cur.push(left as i64);
                out.push(MultiIndex(cur.clone()));
                cur.pop();
                return;
            }
            for v in (0..=left).rev() {
                cur.push(v as i64);
                rec(len, left - v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(sig.p() + 1, degree, &mut Vec::new(), &mut out);
        out
    }

    /// All multi-indices with `|k| <= max_degree`, grouped by degree.
    pub fn up_to_degree(sig: SliceSignature, max_degree: u32) -> Vec<MultiIndex> {
        (0..=max_degree).flat_map(|d| Self::of_degree(sig, d)).collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl From<&[i64]> for MultiIndex {
    fn from(v: &[i64]) -> Self {
        MultiIndex(v.to_vec())
    }
}

pub(crate) fn factorial<S: Scalar>(n: u32) -> S {
    (2..=n as i64).fold(S::one(), |acc, v| acc.mul_ref(&S::from_i64(v)))
}

/// A full binary bracketing of `n` ordered factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AssociationTree {
    Leaf,
    Node(Box<AssociationTree>, Box<AssociationTree>),
}

impl AssociationTree {
    pub fn leaves(&self) -> usize {
        match self {
            AssociationTree::Leaf => 1,
            AssociationTree::Node(a, b) => a.leaves() + b.leaves(),
        }
    }

    /// `(...((x_1 x_2) x_3) ...) x_n`.
    pub fn left_fold(n: usize) -> Self {
        assert!(n >= 1, "a product has at least one factor");
        (1..n).fold(AssociationTree::Leaf, |acc, _| {
            AssociationTree::Node(Box::new(acc), Box::new(AssociationTree::Leaf))
        })
    }

    /// `x_1 (... (x_{n-1} x_n) ...)`.
    pub fn right_fold(n: usize) -> Self {
        assert!(n >= 1, "a product has at least one factor");
        (1..n).fold(AssociationTree::Leaf, |acc, _| {
            AssociationTree::Node(Box::new(AssociationTree::Leaf), Box::new(acc))
        })
    }

    /// Every bracketing of `n` factors; there are `Catalan(n - 1)` of them.
    pub fn enumerate(n: usize) -> Vec<Self> {
        assert!(n >= 1, "a product has at least one factor");
        if n == 1 {
            return vec![AssociationTree::Leaf];
        }
        let mut out = Vec::new();
        for left in 1..n {
            let ls = Self::enumerate(left);
            let rs = Self::enumerate(n - left);
            for a in &ls {
                for b in &rs {
                    out.push(AssociationTree::Node(Box::new(a.clone()), Box::new(b.clone())));
                }
            }
        }
        out
    }

    fn product<S: Scalar>(&self, factors: &[Octonion<S>]) -> Octonion<S> {
        match self {
            AssociationTree::Leaf => factors[0].clone(),
            AssociationTree::Node(a, b) => {
                let (fa, fb) = factors.split_at(a.leaves());
                a.product(fa).mul(&b.product(fb))
            }
        }
    }
}

impl fmt::Display for AssociationTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &AssociationTree, next: &mut usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                AssociationTree::Leaf => {
                    *next += 1;
                    write!(f, "x{next}")
                }
                AssociationTree::Node(a, b) => {
                    f.write_str("(")?;
                    go(a, next, f)?;
                    go(b, next, f)?;
                    f.write_str(")")
                }
            }
        }
        go(self, &mut 0, f)
    }
}

/// Product of `factors` bracketed by `tree`.
pub fn ordered_product<S: Scalar>(factors: &[Octonion<S>], tree: &AssociationTree) -> Result<Octonion<S>> {
    if tree.leaves() != factors.len() {
        return Err(Error::ArityMismatch { leaves: tree.leaves(), factors: factors.len() });
    }
    Ok(tree.product(factors))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `z_ℓ = x_ℓ + r ω e_ℓ` (left) or `z_ℓ^R = x_ℓ + r e_ℓ ω` (right).
pub fn fueter_var<S: Scalar>(l: usize, s: &SplitPoint<S>, side: Side) -> Result<Octonion<S>> {
    let p = s.sig().p();
    if l > p {
        return Err(Error::IndexOutOfRange { index: l, p });
    }
    let e = Octonion::basis(l);
    let prod = match side {
        Side::Left => s.omega().mul(&e),
        Side::Right => e.mul(s.omega()),
    };
    Ok(Octonion::real(s.xp()[l].clone()).add(&prod.scale(s.r())))
}

/// The Fueter variables `z_0, ..., z_p` at `s`.
pub fn fueter_vars<S: Scalar>(s: &SplitPoint<S>, side: Side) -> Vec<Octonion<S>> {
    (0..=s.sig().p()).map(|l| fueter_var(l, s, side).expect("index within 0..=p")).collect()
}

/// Rearranges `v` into the next lexicographic permutation; `false` once the
/// last one has been reached. Repeated entries yield each distinct
/// arrangement once.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// How the permutations of the alignment are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermutationStrategy {
    /// Each distinguishable arrangement once.
    Distinct,
    /// All `|k|!` orderings of positions, then divided by the multiplicity
    /// `k!`.
    All,
}

/// `Σ_{σ} (z_{i_1} ... z_{i_k} a)_tree` over the distinguishable
/// permutations of the alignment of `k`. The tree has `|k|` leaves, or
/// `|k| + 1` when a trailing factor is given.
pub fn symmetrized_sum<S: Scalar>(
    k: &MultiIndex,
    vars: &[Octonion<S>],
    tree: &AssociationTree,
    trailing: Option<&Octonion<S>>,
    strategy: PermutationStrategy,
) -> Result<Octonion<S>> {
    let align = k.alignment()?;
    let n = align.len() + usize::from(trailing.is_some());
    if n == 0 {
        return Ok(Octonion::one());
    }
    if tree.leaves() != n {
        return Err(Error::ArityMismatch { leaves: tree.leaves(), factors: n });
    }
    let term = |order: &[usize]| {
        let mut factors: Vec<Octonion<S>> = order.iter().map(|&i| vars[i].clone()).collect();
        if let Some(a) = trailing {
            factors.push(a.clone());
        }
        tree.product(&factors)
    };
    let mut acc = Octonion::zero();
    match strategy {
        PermutationStrategy::Distinct => {
            let mut cur = align;
            loop {
                acc = acc.add(&term(&cur));
                if !next_permutation(&mut cur) {
                    break;
                }
            }
        }
        PermutationStrategy::All => {
            let mut pos: Vec<usize> = (0..align.len()).collect();
            loop {
                let order: Vec<usize> = pos.iter().map(|&i| align[i]).collect();
                acc = acc.add(&term(&order));
                if !next_permutation(&mut pos) {
                    break;
                }
            }
            acc = acc.div_scalar(&k.factorial::<S>()?);
        }
    }
    Ok(acc)
}

/// `P_k(x) = (1/|k|!) Σ_σ z_{i_1} ... z_{i_k}` with products bracketed by
/// `tree` (which must have `|k|` leaves). `P_0 = 1`; a negative entry gives 0.
pub fn fueter_poly_eval_with<S: Scalar>(
    k: &MultiIndex,
    s: &SplitPoint<S>,
    tree: &AssociationTree,
    side: Side,
    strategy: PermutationStrategy,
) -> Result<Octonion<S>> {
    if k.has_negative() {
        return Ok(Octonion::zero());
    }
    if k.order() == 0 {
        return Ok(Octonion::one());
    }
    let vars = fueter_vars(s, side);
    let sum = symmetrized_sum(k, &vars, tree, None, strategy)?;
    Ok(sum.div_scalar(&factorial::<S>(k.order() as u32)))
}

pub fn fueter_poly_eval<S: Scalar>(k: &MultiIndex, s: &SplitPoint<S>, tree: &AssociationTree) -> Result<Octonion<S>> {
    fueter_poly_eval_with(k, s, tree, Side::Left, PermutationStrategy::Distinct)
}

/// `P_k` (left) with the default right-fold bracketing.
pub fn fueter_poly<S: Scalar>(k: &MultiIndex, s: &SplitPoint<S>) -> Octonion<S> {
    fueter_poly_side(k, s, Side::Left)
}

/// `P^L_k` or `P^R_k` with the default right-fold bracketing.
pub fn fueter_poly_side<S: Scalar>(k: &MultiIndex, s: &SplitPoint<S>, side: Side) -> Octonion<S> {
    let n = (k.order().max(1)) as usize;
    fueter_poly_eval_with(k, s, &AssociationTree::right_fold(n), side, PermutationStrategy::Distinct)
        .expect("tree arity matches |k|")
}

/// The CK-extension of a polynomial `f0` in `x_p`:
/// `F1 = Σ r^{2j}/(2j)! (-Δ)^j f0`, `F2 = Σ r^{2j+1}/(2j+1)! (-Δ)^j D f0`.
pub fn ck_extension<S: Scalar>(f0: &OctPolynomial<S>) -> Result<StemFunction<S>> {
    if f0.depends_on_r() {
        return Err(Error::DependsOnR);
    }
    let sig = f0.sig();
    let series = |start: &OctPolynomial<S>, first_power: u32| {
        let mut out = OctPolynomial::zero(sig);
        let mut cur = start.clone();
        let mut j = 0u32;
        while !cur.is_zero() {
            let power = 2 * j + first_power;
            let mut rpow = vec![0u32; sig.p() + 2];
            rpow[sig.p() + 1] = power;
            let scale = factorial::<S>(power);
            let monomial = OctPolynomial::monomial(sig, rpow, Octonion::one());
            out = out.add(&cur.mul(&monomial).scale(&S::one().div_ref(&scale)));
            cur = cur.laplacian_xp().neg();
            j += 1;
        }
        out
    };
    StemFunction::new(series(f0, 0), series(&f0.apply_dxp(), 1))
}

/// `V_k = CK[x_p^k] / k!`.
pub fn v_poly<S: Scalar>(k: &MultiIndex, sig: SliceSignature) -> Result<StemFunction<S>> {
    let exps = k.naturals()?;
    if exps.len() != sig.p() + 1 {
        return Err(Error::SignatureMismatch { expected: sig.p(), found: exps.len().saturating_sub(1) });
    }
    let stem = ck_extension(&OctPolynomial::x_power(sig, &exps))?;
    Ok(stem.scale(&S::one().div_ref(&k.factorial::<S>()?)))
}

/// Parses `"V21"` or `"V(2,1)"` style labels into a multi-index.
pub fn parse_multi_index(label: &str) -> Result<MultiIndex> {
    let body = label.trim().trim_start_matches(['V', 'v', 'k']).trim_start_matches('=');
    let bad = || Error::NegativeIndex(String::from(label));
    if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        let v: core::result::Result<Vec<i64>, _> = inner.split(',').map(|t| t.trim().parse::<i64>()).collect();
        return v.map(MultiIndex).map_err(|_| bad());
    }
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    Ok(MultiIndex(body.chars().map(|c| c as i64 - '0' as i64).collect()))
}
