//! Taylor coefficients `∂_k f(0)` from boundary integrals, the associator
//! tails `T_k`, and partial sums of the kernel expansion.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::algebra::Octonion;
use crate::cauchy::BallSlice;
use crate::error::{Error, Result};
use crate::fueter::{fueter_poly, fueter_poly_side, MultiIndex, Side};
use crate::handle::SliceFunction;
use crate::kernel::{KernelBatch, KernelDerivative};
use crate::quadrature::{PairwiseSum, QuadratureRule};
use crate::slicegeom::SplitPoint;

/// `∂_k f(0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorTerm {
    pub k: MultiIndex,
    pub coeff: Octonion<f64>,
    pub degree: u32,
}

/// `T_k(x)` summed over all multi-indices of one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct TailTerm {
    pub degree: u32,
    pub value: Octonion<f64>,
}

/// Everything computed by one pass over the boundary nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorExpansion {
    pub coeffs: Vec<TaylorTerm>,
    pub tails: Vec<TailTerm>,
    /// `Σ_{|k|<=K} P_k(x) ∂_k f(0)`.
    pub polynomial_part: Octonion<f64>,
    /// `polynomial_part + Σ T_k(x)`.
    pub reconstruction: Octonion<f64>,
    pub k_max: u32,
}

impl TaylorExpansion {
    pub fn tail_sum(&self) -> Octonion<f64> {
        self.tails.iter().fold(Octonion::zero(), |acc, t| acc.add(&t.value))
    }

    pub fn max_tail(&self) -> f64 {
        self.tails.iter().map(|t| t.value.norm()).fold(0.0, f64::max)
    }
}

fn check_centered(ball: &BallSlice) -> Result<()> {
    if ball.center().coords().iter().any(|c| *c != 0.0) {
        return Err(Error::UncenteredBall);
    }
    Ok(())
}

fn nan() -> Octonion<f64> {
    Octonion::from_fn(|_| f64::NAN)
}

/// `∫_{∂B} Q_k(y)(n(y) f(y)) dS`.
pub fn taylor_coeff(
    f: &dyn SliceFunction,
    k: &MultiIndex,
    ball: &BallSlice,
    rule: &QuadratureRule,
) -> Result<Octonion<f64>> {
    check_centered(ball)?;
    ball.sig().check(f.sig())?;
    let q = KernelDerivative::q_kernel(k, ball.sig())?;
    ball.boundary_integral(rule, |node| {
        let nf = node.normal.mul(&f.eval_slice(&node.slice, ball.eta()));
        q.eval(&node.slice, ball.eta()).map(|qk| qk.mul(&nf)).unwrap_or_else(|_| nan())
    })
}

/// `∫_{∂B} [P_k(x), Q_k(y), n(y) f(y)] dS` for one multi-index.
pub fn tail_term_k(
    f: &dyn SliceFunction,
    k: &MultiIndex,
    x: &SplitPoint<f64>,
    ball: &BallSlice,
    rule: &QuadratureRule,
) -> Result<Octonion<f64>> {
    check_centered(ball)?;
    ball.sig().check(f.sig())?;
    ball.slice_coords(x)?;
    let pk = fueter_poly(k, x);
    let q = KernelDerivative::q_kernel(k, ball.sig())?;
    ball.boundary_integral(rule, |node| {
        let nf = node.normal.mul(&f.eval_slice(&node.slice, ball.eta()));
        q.eval(&node.slice, ball.eta()).map(|qk| Octonion::associator(&pk, &qk, &nf)).unwrap_or_else(|_| nan())
    })
}

/// `T_k(x)` for `k = degree`, summed over `|k| = degree`.
pub fn tail_term(
    f: &dyn SliceFunction,
    degree: u32,
    x: &SplitPoint<f64>,
    ball: &BallSlice,
    rule: &QuadratureRule,
) -> Result<TailTerm> {
    let mut value = Octonion::zero();
    for k in MultiIndex::of_degree(ball.sig(), degree) {
        value = value.add(&tail_term_k(f, &k, x, ball, rule)?);
    }
    Ok(TailTerm { degree, value })
}

/// Coefficients, tails and reconstruction up to degree `k_max` in a single
/// pass over the boundary.
pub fn taylor_expand(
    f: &dyn SliceFunction,
    x: &SplitPoint<f64>,
    k_max: u32,
    ball: &BallSlice,
    rule: &QuadratureRule,
) -> Result<TaylorExpansion> {
    check_centered(ball)?;
    ball.sig().check(f.sig())?;
    let xs = ball.slice_coords(x)?;
    if !ball.contains(&xs) {
        return Err(Error::OutsideDomain);
    }
    let table: BTreeMap<MultiIndex, KernelDerivative> = KernelDerivative::table(ball.sig(), k_max)?;
    let batch = KernelBatch::new(ball.sig(), table.values());
    let entries: Vec<(MultiIndex, Octonion<f64>)> = table
        .keys()
        .map(|k| (k.clone(), fueter_poly(k, x)))
        .collect();
    let mut coeff_acc: Vec<PairwiseSum> = entries.iter().map(|_| PairwiseSum::new()).collect();
    let mut tail_acc: Vec<PairwiseSum> = entries.iter().map(|_| PairwiseSum::new()).collect();
    let mut qs = Vec::with_capacity(batch.len());
    ball.for_each_node(rule, |node| {
        let nf = node.normal.mul(&f.eval_slice(&node.slice, ball.eta()));
        let ok = batch.eval(&node.slice, ball.eta(), &mut qs).is_ok();
        for (i, (_, pk)) in entries.iter().enumerate() {
            let (c, t) = if ok {
                (qs[i].mul(&nf), Octonion::associator(pk, &qs[i], &nf))
            } else {
                (nan(), nan())
            };
            coeff_acc[i].push(c.scale(&node.weight));
            tail_acc[i].push(t.scale(&node.weight));
        }
    })?;
    let mut coeffs = Vec::with_capacity(entries.len());
    let mut tails: Vec<TailTerm> = (0..=k_max).map(|degree| TailTerm { degree, value: Octonion::zero() }).collect();
    let mut polynomial_part = Octonion::zero();
    for (((k, pk), c), t) in entries.into_iter().zip(coeff_acc).zip(tail_acc) {
        let coeff = c.finish();
        let degree = k.order() as u32;
        polynomial_part = polynomial_part.add(&pk.mul(&coeff));
        let slot = &mut tails[degree as usize];
        slot.value = slot.value.add(&t.finish());
        coeffs.push(TaylorTerm { k, coeff, degree });
    }
    coeffs.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| b.k.cmp(&a.k)));
    let reconstruction = tails.iter().fold(polynomial_part.clone(), |acc, t| acc.add(&t.value));
    Ok(TaylorExpansion { coeffs, tails, polynomial_part, reconstruction, k_max })
}

/// `Σ_{k<=K} (Σ_{|k|=k} P_k(x) ∂_k f(0) + T_k(x))`.
pub fn taylor_reconstruct(
    f: &dyn SliceFunction,
    x: &SplitPoint<f64>,
    k_max: u32,
    ball: &BallSlice,
    rule: &QuadratureRule,
) -> Result<Octonion<f64>> {
    Ok(taylor_expand(f, x, k_max, ball, rule)?.reconstruction)
}

/// Partial sums of both kernel expansions, with the size of the last
/// degree block of each.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesPartial {
    /// `Σ P_k(x) Q_k(y)`.
    pub left: Octonion<f64>,
    /// `Σ Q_k(y) P^R_k(x)`.
    pub right: Octonion<f64>,
    pub k_max: u32,
    pub last_left_norm: f64,
    pub last_right_norm: f64,
}

/// Truncation at degree `k_max` of the expansions of `E(y - x)` for `x`, `y`
/// on a common slice with `|x| < |y|`.
pub fn kernel_series_partial(x: &SplitPoint<f64>, y: &SplitPoint<f64>, k_max: u32) -> Result<SeriesPartial> {
    let sig = y.sig();
    sig.check(x.sig())?;
    let eta = y.omega();
    let same_slice = *x.r() == 0.0
        || *y.r() == 0.0
        || x.omega().sub(eta).norm() < 1e-12
        || x.omega().add(eta).norm() < 1e-12;
    if !same_slice {
        return Err(Error::OffSlice);
    }
    if x.embed().norm() >= y.embed().norm() {
        return Err(Error::OutsideConvergence);
    }
    let ys = y.slice_point();
    let table = KernelDerivative::table(sig, k_max)?;
    let mut left = Octonion::zero();
    let mut right = Octonion::zero();
    let mut block = (Octonion::zero(), Octonion::zero());
    for degree in 0..=k_max {
        block = (Octonion::zero(), Octonion::zero());
        for k in MultiIndex::of_degree(sig, degree) {
            let q = table[&k].eval(&ys, eta)?;
            block.0 = block.0.add(&fueter_poly(&k, x).mul(&q));
            block.1 = block.1.add(&q.mul(&fueter_poly_side(&k, x, Side::Right)));
        }
        left = left.add(&block.0);
        right = right.add(&block.1);
    }
    Ok(SeriesPartial { left, right, k_max, last_left_norm: block.0.norm(), last_right_norm: block.1.norm() })
}
