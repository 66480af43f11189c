//! Product quadrature on the unit sphere `S^{n-1} ⊂ R^n` and the unit ball,
//! with deterministic pairwise summation.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::algebra::Octonion;
use crate::error::{Error, Result};
use crate::kernel::sphere_area;

/// Gauss–Jacobi nodes and weights for `(1 - t)^α (1 + t)^β` on `[-1, 1]`,
/// nodes in decreasing order.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let nf = n as f64;
    let ab = alpha + beta;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let log_norm = libm::lgamma(alpha + nf) + libm::lgamma(beta + nf) - libm::lgamma(nf + 1.0) - libm::lgamma(nf + ab + 1.0);
    for i in 0..n {
        let mut z = match i {
            0 => {
                let an = alpha / nf;
                let bn = beta / nf;
                let r1 = (1.0 + alpha) * (2.78 / (4.0 + nf * nf) + 0.768 * an / nf);
                let r2 = 1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
                1.0 - r1 / r2
            }
            1 => {
                let z = x[0];
                let r1 = (4.1 + alpha) / ((1.0 + alpha) * (1.0 + 0.156 * alpha));
                let r2 = 1.0 + 0.06 * (nf - 8.0) * (1.0 + 0.12 * alpha) / nf;
                let r3 = 1.0 + 0.012 * beta * (1.0 + 0.25 * alpha.abs()) / nf;
                z - (1.0 - z) * r1 * r2 * r3
            }
            2 => {
                let z = x[1];
                let r1 = (1.67 + 0.28 * alpha) / (1.0 + 0.37 * alpha);
                let r2 = 1.0 + 0.22 * (nf - 8.0) / nf;
                let r3 = 1.0 + 8.0 * beta / ((6.28 + beta) * nf * nf);
                z - (x[0] - z) * r1 * r2 * r3
            }
            _ if i == n - 2 => {
                let z = x[i - 1];
                let r1 = (1.0 + 0.235 * beta) / (0.766 + 0.119 * beta);
                let r2 = 1.0 / (1.0 + 0.639 * (nf - 4.0) / (1.0 + 0.71 * (nf - 4.0)));
                let r3 = 1.0 / (1.0 + 20.0 * alpha / ((7.5 + alpha) * nf * nf));
                z + (z - x[i - 2]) * r1 * r2 * r3
            }
            _ if i == n - 1 => {
                let z = x[i - 1];
                let r1 = (1.0 + 0.37 * beta) / (1.67 + 0.28 * beta);
                let r2 = 1.0 / (1.0 + 0.22 * (nf - 8.0) / nf);
                let r3 = 1.0 / (1.0 + 8.0 * alpha / ((6.28 + alpha) * nf * nf));
                z + (z - x[i - 2]) * r1 * r2 * r3
            }
            _ => 3.0 * x[i - 1] - 3.0 * x[i - 2] + x[i - 3],
        };
        let mut pp = 1.0;
        let mut p2 = 1.0;
        let mut temp = 2.0 + ab;
        for _ in 0..100 {
            temp = 2.0 + ab;
            let mut p1 = (alpha - beta + temp * z) / 2.0;
            p2 = 1.0;
            for j in 2..=n {
                let jf = j as f64;
                let p3 = p2;
                p2 = p1;
                temp = 2.0 * jf + ab;
                let a = 2.0 * jf * (jf + ab) * (temp - 2.0);
                let b = (temp - 1.0) * (alpha * alpha - beta * beta + temp * (temp - 2.0) * z);
                let c = 2.0 * (jf - 1.0 + alpha) * (jf - 1.0 + beta) * temp;
                p1 = (b * p2 - c * p3) / a;
            }
            pp = (nf * (alpha - beta - temp * z) * p1 + 2.0 * (nf + alpha) * (nf + beta) * p2) / (temp * (1.0 - z * z));
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 {
                break;
            }
        }
        x[i] = z;
        w[i] = libm::exp(log_norm) * temp * libm::pow(2.0, ab) / (pp * p2);
    }
    (x, w)
}

/// Gauss–Legendre on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    gauss_jacobi(n, 0.0, 0.0)
}

/// Default level for a slice of real dimension `n = p + 2`.
pub fn default_level(n: usize) -> usize {
    match n {
        0..=4 => 48,
        5 | 6 => 32,
        _ => 20,
    }
}

/// Product rule on `S^{n-1}`: Gauss–Gegenbauer in the polar cosines and the
/// periodic trapezoid rule with `level` nodes in the final angle. Each cosine
/// factor uses `level / 2` nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    n: usize,
    level: usize,
    cosines: Vec<(Vec<f64>, Vec<f64>)>,
}

impl QuadratureRule {
    pub fn sphere(n: usize, level: usize) -> Result<Self> {
        if !(2..=8).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        if level < 2 {
            return Err(Error::InvalidLevel(level));
        }
        let m = level / 2;
        let cosines = (3..=n)
            .rev()
            .map(|d| {
                let a = (d as f64 - 3.0) / 2.0;
                gauss_jacobi(m, a, a)
            })
            .collect();
        Ok(QuadratureRule { n, level, cosines })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.cosines.iter().map(|(x, _)| x.len()).product::<usize>() * self.level
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Visits every node `u ∈ S^{n-1}` with its weight, in a fixed order.
    pub fn for_each(&self, mut f: impl FnMut(&[f64], f64)) {
        let mut u = vec![0.0; self.n];
        self.visit(0, 1.0, 1.0, &mut u, &mut f);
    }

    fn visit(&self, depth: usize, scale: f64, weight: f64, u: &mut [f64], f: &mut impl FnMut(&[f64], f64)) {
        if depth == self.cosines.len() {
            let h = 2.0 * PI / self.level as f64;
            for j in 0..self.level {
                let theta = h * j as f64;
                u[depth] = scale * libm::cos(theta);
                u[depth + 1] = scale * libm::sin(theta);
                f(u, weight * h);
            }
            return;
        }
        let (ts, ws) = &self.cosines[depth];
        for (t, w) in ts.iter().zip(ws) {
            u[depth] = scale * t;
            let s = libm::sqrt((1.0 - t * t).max(0.0));
            self.visit(depth + 1, scale * s, weight * w, u, f);
        }
    }

    /// All nodes and weights, materialized.
    pub fn nodes(&self) -> Vec<(Vec<f64>, f64)> {
        let mut out = Vec::with_capacity(self.len());
        self.for_each(|u, w| out.push((u.to_vec(), w)));
        out
    }

    pub fn weight_sum(&self) -> f64 {
        let mut acc = PairwiseSum::new();
        self.for_each(|_, w| acc.push(Octonion::real(w)));
        *acc.finish().re()
    }

    /// `∫_{S^{n-1}} g dS`.
    pub fn integrate(&self, mut g: impl FnMut(&[f64]) -> Octonion<f64>) -> Octonion<f64> {
        let mut acc = PairwiseSum::new();
        self.for_each(|u, w| acc.push(g(u).scale(&w)));
        acc.finish()
    }

    /// Exact area of `S^{n-1}`.
    pub fn area(&self) -> f64 {
        sphere_area(self.n as u32)
    }
}

/// Sphere rule times Gauss–Legendre radial nodes on `[0, 1]` carrying the
/// weight `ρ^{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BallRule {
    pub sphere: QuadratureRule,
    pub radial: (Vec<f64>, Vec<f64>),
}

impl BallRule {
    pub fn new(n: usize, level: usize) -> Result<Self> {
        let sphere = QuadratureRule::sphere(n, level)?;
        let (t, w) = gauss_legendre((level / 2).max(1));
        let radial = t
            .iter()
            .zip(&w)
            .map(|(t, w)| {
                let rho = (1.0 + t) / 2.0;
                (rho, w / 2.0 * libm::pow(rho, n as f64 - 1.0))
            })
            .unzip();
        Ok(BallRule { sphere, radial })
    }

    /// `∫_{|y|<1} g dV`.
    pub fn integrate(&self, mut g: impl FnMut(&[f64]) -> Octonion<f64>) -> Octonion<f64> {
        let mut acc = PairwiseSum::new();
        let mut y = vec![0.0; self.sphere.dim()];
        self.sphere.for_each(|u, wu| {
            for (rho, wr) in self.radial.0.iter().zip(&self.radial.1) {
                for (yi, ui) in y.iter_mut().zip(u) {
                    *yi = rho * ui;
                }
                acc.push(g(&y).scale(&(wu * wr)));
            }
        });
        acc.finish()
    }
}

pub fn sphere_rule(n: usize, level: usize) -> Result<QuadratureRule> {
    QuadratureRule::sphere(n, level)
}

pub fn ball_rule(n: usize, level: usize) -> Result<BallRule> {
    BallRule::new(n, level)
}

/// Streaming pairwise summation: values are merged as a binary tree over
/// their insertion order, so the result depends only on that order.
#[derive(Clone, Debug, Default)]
pub struct PairwiseSum {
    stack: Vec<(u32, Octonion<f64>)>,
}

impl PairwiseSum {
    pub fn new() -> Self {
        PairwiseSum { stack: Vec::new() }
    }

    pub fn push(&mut self, v: Octonion<f64>) {
        let mut item = (0u32, v);
        while let Some((lvl, _)) = self.stack.last() {
            if *lvl != item.0 {
                break;
            }
            let (lvl, top) = self.stack.pop().expect("non-empty");
            item = (lvl + 1, top.add(&item.1));
        }
        self.stack.push(item);
    }

    pub fn finish(self) -> Octonion<f64> {
        self.stack.into_iter().rev().fold(Octonion::zero(), |acc, (_, v)| v.add(&acc))
    }
}

/// Pairwise sum of a gathered slice.
pub fn pairwise_sum(values: &[Octonion<f64>]) -> Octonion<f64> {
    let mut acc = PairwiseSum::new();
    for v in values {
        acc.push(v.clone());
    }
    acc.finish()
}
