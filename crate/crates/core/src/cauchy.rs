//! Integral formulas on a ball of one slice `H_η`: Cauchy and
//! Cauchy–Pompeiu (both the slice form and the global form through the
//! operator kernel), the inverse boundary operator and the mean value.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::Octonion;
use crate::calculus::{d_omega_exact, d_omega_on_slice, FDScheme};
use crate::error::{Error, Result};
use crate::handle::SliceFunction;
use crate::kernel::{apply_operator_kernel, kernel_e_at, sigma};
use crate::quadrature::{default_level, gauss_legendre, PairwiseSum, QuadratureRule};
use crate::slicegeom::{in_sphere, SlicePoint, SliceSignature, SplitPoint};
use crate::stem::StemFunction;

const SLICE_TOL: f64 = 1e-12;

/// `B(c, R) ∩ H_η` in slice coordinates `(x_p, r)` with signed `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct BallSlice {
    sig: SliceSignature,
    eta: Octonion<f64>,
    center: SlicePoint<f64>,
    radius: f64,
}

/// A quadrature node on the boundary sphere.
#[derive(Clone, Debug)]
pub struct BoundaryNode {
    pub slice: SlicePoint<f64>,
    pub point: Octonion<f64>,
    pub normal: Octonion<f64>,
    /// Includes the `R^{n-1}` surface scaling.
    pub weight: f64,
}

impl BallSlice {
    /// Ball of radius `radius` centered at the origin.
    pub fn new(sig: SliceSignature, eta: Octonion<f64>, radius: f64) -> Result<Self> {
        if !in_sphere(&eta, sig) {
            return Err(Error::NotInSphere(format!("{eta}")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(BallSlice { sig, eta, center: SlicePoint::origin(sig), radius })
    }

    pub fn with_center(mut self, center: SlicePoint<f64>) -> Result<Self> {
        if center.xp.len() != self.sig.p() + 1 {
            return Err(Error::SignatureMismatch { expected: self.sig.p(), found: center.xp.len().saturating_sub(1) });
        }
        self.center = center;
        Ok(self)
    }

    pub fn sig(&self) -> SliceSignature {
        self.sig
    }

    pub fn eta(&self) -> &Octonion<f64> {
        &self.eta
    }

    pub fn center(&self) -> &SlicePoint<f64> {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Real dimension `p + 2` of the slice.
    pub fn dim(&self) -> usize {
        self.sig.slice_dim()
    }

    pub fn default_rule(&self) -> QuadratureRule {
        QuadratureRule::sphere(self.dim(), default_level(self.dim())).expect("slice dimension is in 2..=8")
    }

    pub fn contains(&self, x: &SlicePoint<f64>) -> bool {
        x.sub(&self.center).norm_sq() < self.radius * self.radius
    }

    /// Whether `r -> -r` maps the ball to itself.
    pub fn is_symmetric(&self) -> bool {
        self.center.r == 0.0
    }

    /// Coordinates of `x` in `H_η` with signed `r`.
    pub fn slice_coords(&self, x: &SplitPoint<f64>) -> Result<SlicePoint<f64>> {
        self.sig.check(x.sig())?;
        let sp = x.slice_point();
        if sp.r == 0.0 || x.omega().sub(&self.eta).norm() < SLICE_TOL {
            Ok(sp)
        } else if x.omega().add(&self.eta).norm() < SLICE_TOL {
            Ok(sp.reflect())
        } else {
            Err(Error::OffSlice)
        }
    }

    fn interior(&self, x: &SlicePoint<f64>) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutsideDomain)
        }
    }

    /// `π_y(x)` and `π_y(x)◇` in slice coordinates; both must be interior.
    fn orbit_points(&self, x: &SplitPoint<f64>) -> Result<(SlicePoint<f64>, SlicePoint<f64>)> {
        self.sig.check(x.sig())?;
        let plus = x.slice_point();
        let minus = plus.reflect();
        if !self.contains(&plus) || !self.contains(&minus) {
            return Err(Error::OrbitMismatch);
        }
        Ok((plus, minus))
    }

    fn node(&self, u: &[f64], w: f64) -> BoundaryNode {
        let n = u.len();
        let coords: Vec<f64> = self.center.coords().iter().zip(u).map(|(c, ui)| c + self.radius * ui).collect();
        let slice = SlicePoint::from_coords(&coords);
        let normal = SlicePoint::from_coords(u).on_slice(&self.eta);
        BoundaryNode {
            point: slice.on_slice(&self.eta),
            slice,
            normal,
            weight: w * libm::pow(self.radius, n as f64 - 1.0),
        }
    }

    /// Visits the boundary nodes in rule order.
    pub fn for_each_node(&self, rule: &QuadratureRule, mut f: impl FnMut(&BoundaryNode)) -> Result<()> {
        if rule.dim() != self.dim() {
            return Err(Error::UnsupportedDimension(rule.dim()));
        }
        rule.for_each(|u, w| f(&self.node(u, w)));
        Ok(())
    }

    /// `∫_{∂B} g dS`, pairwise summed.
    pub fn boundary_integral(
        &self,
        rule: &QuadratureRule,
        mut g: impl FnMut(&BoundaryNode) -> Octonion<f64>,
    ) -> Result<Octonion<f64>> {
        let mut acc = PairwiseSum::new();
        self.for_each_node(rule, |node| acc.push(g(node).scale(&node.weight)))?;
        Ok(acc.finish())
    }

    /// `∫_B E(y - x) g(y) dV` in polar coordinates centered at the interior
    /// point `x`, which absorbs the kernel singularity.
    pub fn volume_kernel_integral(
        &self,
        x: &SlicePoint<f64>,
        rule: &QuadratureRule,
        mut g: impl FnMut(&SlicePoint<f64>) -> Octonion<f64>,
    ) -> Result<Octonion<f64>> {
        self.interior(x)?;
        if rule.dim() != self.dim() {
            return Err(Error::UnsupportedDimension(rule.dim()));
        }
        let (t, wt) = gauss_legendre((rule.level() / 2).max(1));
        let d: Vec<f64> = x.sub(&self.center).coords();
        let d2: f64 = d.iter().map(|v| v * v).sum();
        let base = x.coords();
        let sig_p = sigma(self.sig.p());
        let mut acc = PairwiseSum::new();
        let mut coords = base.clone();
        rule.for_each(|u, wu| {
            let du: f64 = d.iter().zip(u).map(|(a, b)| a * b).sum();
            let rho_max = -du + libm::sqrt(du * du + self.radius * self.radius - d2);
            let dir = SlicePoint::from_coords(u).on_slice(&self.eta).conj().div_scalar(&sig_p);
            for (ti, wi) in t.iter().zip(&wt) {
                let rho = rho_max * (1.0 + ti) / 2.0;
                for ((c, b), ui) in coords.iter_mut().zip(&base).zip(u) {
                    *c = b + rho * ui;
                }
                let val = dir.mul(&g(&SlicePoint::from_coords(&coords)));
                acc.push(val.scale(&(wu * wi * rho_max / 2.0)));
            }
        });
        Ok(acc.finish())
    }
}

/// Where `D_η f` comes from in the Cauchy–Pompeiu volume term.
pub enum DerivativeSource<'a> {
    /// Central differences on the slice.
    Numeric(FDScheme),
    /// Exact stem calculus.
    Stem(&'a StemFunction<f64>),
    /// Caller-supplied `y' -> D_η f(y)`.
    Closure(&'a dyn Fn(&SlicePoint<f64>) -> Octonion<f64>),
}

impl DerivativeSource<'_> {
    fn eval(&self, f: &dyn SliceFunction, y: &SlicePoint<f64>, eta: &Octonion<f64>) -> Octonion<f64> {
        match self {
            DerivativeSource::Numeric(scheme) => {
                d_omega_on_slice(f, y, eta, scheme).unwrap_or_else(|_| Octonion::from_fn(|_| f64::NAN))
            }
            DerivativeSource::Stem(stem) => d_omega_exact(stem, y, eta),
            DerivativeSource::Closure(g) => g(y),
        }
    }
}

/// The two terms of a Cauchy–Pompeiu formula; `value = boundary - volume`.
#[derive(Clone, Debug, PartialEq)]
pub struct PompeiuParts {
    pub boundary: Octonion<f64>,
    pub volume: Octonion<f64>,
    pub value: Octonion<f64>,
}

fn cauchy_integrand(x: &Octonion<f64>, p: usize, node: &BoundaryNode, nf: &Octonion<f64>) -> Octonion<f64> {
    match kernel_e_at(&node.point, x, p) {
        Ok(e) => e.mul(nf),
        Err(_) => Octonion::from_fn(|_| f64::NAN),
    }
}

/// `∫_{∂B} E(y - x)(n(y) f(y)) dS` for `x` in the ball on `H_η`.
pub fn cauchy_reconstruct(
    f: &dyn SliceFunction,
    ball: &BallSlice,
    x: &SplitPoint<f64>,
    rule: &QuadratureRule,
) -> Result<Octonion<f64>> {
    ball.sig.check(f.sig())?;
    let xs = ball.slice_coords(x)?;
    ball.interior(&xs)?;
    let xo = xs.on_slice(&ball.eta);
    let p = ball.sig.p();
    ball.boundary_integral(rule, |node| {
        let nf = node.normal.mul(&f.eval_slice(&node.slice, &ball.eta));
        cauchy_integrand(&xo, p, node, &nf)
    })
}

/// The function defined inside the ball by boundary data `g`.
pub fn inverse_boundary_operator(
    g: &dyn SliceFunction,
    ball: &BallSlice,
    x: &SplitPoint<f64>,
    rule: &QuadratureRule,
) -> Result<Octonion<f64>> {
    cauchy_reconstruct(g, ball, x, rule)
}

/// `∫_{∂B} E(y - x)(n f) dS - ∫_B E(y - x) D_η f(y) dV`.
pub fn cauchy_pompeiu(
    f: &dyn SliceFunction,
    deriv: &DerivativeSource<'_>,
    ball: &BallSlice,
    x: &SplitPoint<f64>,
    rule: &QuadratureRule,
) -> Result<PompeiuParts> {
    let boundary = cauchy_reconstruct(f, ball, x, rule)?;
    let xs = ball.slice_coords(x)?;
    let volume = ball.volume_kernel_integral(&xs, rule, |y| deriv.eval(f, y, &ball.eta))?;
    Ok(PompeiuParts { value: boundary.sub(&volume), boundary, volume })
}

/// `∫_{∂B} 𝓔_y(x)(n(y) f(y)) dS` for `x` on any slice whose orbit meets the
/// ball on both sides.
pub fn cauchy_reconstruct_global(
    f: &dyn SliceFunction,
    ball: &BallSlice,
    x: &SplitPoint<f64>,
    rule: &QuadratureRule,
) -> Result<Octonion<f64>> {
    ball.sig.check(f.sig())?;
    let (plus, minus) = ball.orbit_points(x)?;
    let (xp, xm) = (plus.on_slice(&ball.eta), minus.on_slice(&ball.eta));
    let p = ball.sig.p();
    ball.boundary_integral(rule, |node| {
        let nf = node.normal.mul(&f.eval_slice(&node.slice, &ball.eta));
        match (kernel_e_at(&node.point, &xp, p), kernel_e_at(&node.point, &xm, p)) {
            (Ok(ep), Ok(em)) => apply_operator_kernel(&ep, &em, x.omega(), &ball.eta, &nf),
            _ => Octonion::from_fn(|_| f64::NAN),
        }
    })
}

/// The global Cauchy–Pompeiu formula: boundary and volume terms both use
/// the operator kernel `𝓔`.
pub fn cauchy_pompeiu_global(
    f: &dyn SliceFunction,
    deriv: &DerivativeSource<'_>,
    ball: &BallSlice,
    x: &SplitPoint<f64>,
    rule: &QuadratureRule,
) -> Result<PompeiuParts> {
    let boundary = cauchy_reconstruct_global(f, ball, x, rule)?;
    let (plus, minus) = ball.orbit_points(x)?;
    let vp = ball.volume_kernel_integral(&plus, rule, |y| deriv.eval(f, y, &ball.eta))?;
    let vm = ball.volume_kernel_integral(&minus, rule, |y| deriv.eval(f, y, &ball.eta))?;
    let volume = vp.add(&vm).add(&x.omega().mul(&ball.eta.mul(&vm.sub(&vp)))).scale(&0.5);
    Ok(PompeiuParts { value: boundary.sub(&volume), boundary, volume })
}

/// `(1 / (σ_{p+1} R^{p+1})) ∫_{∂B} f dS`.
pub fn mean_value(f: &dyn SliceFunction, ball: &BallSlice, rule: &QuadratureRule) -> Result<Octonion<f64>> {
    ball.sig.check(f.sig())?;
    let total = ball.boundary_integral(rule, |node| f.eval_slice(&node.slice, &ball.eta))?;
    let area = sigma(ball.sig.p()) * libm::pow(ball.radius, ball.sig.p() as f64 + 1.0);
    Ok(total.div_scalar(&area))
}

/// Boundary values `n(y) f(y)` sampled once, for evaluating the Cauchy
/// integrals at many points.
#[derive(Clone, Debug)]
pub struct BoundarySamples {
    ball: BallSlice,
    points: Vec<Octonion<f64>>,
    weights: Vec<f64>,
    nf: Vec<Octonion<f64>>,
    label: String,
}

impl BoundarySamples {
    pub fn new(f: &dyn SliceFunction, ball: &BallSlice, rule: &QuadratureRule) -> Result<Self> {
        ball.sig.check(f.sig())?;
        let mut points = Vec::with_capacity(rule.len());
        let mut weights = Vec::with_capacity(rule.len());
        let mut nf = Vec::with_capacity(rule.len());
        ball.for_each_node(rule, |node| {
            points.push(node.point.clone());
            weights.push(node.weight);
            nf.push(node.normal.mul(&f.eval_slice(&node.slice, &ball.eta)));
        })?;
        Ok(BoundarySamples { ball: ball.clone(), points, weights, nf, label: f.name() })
    }

    pub fn ball(&self) -> &BallSlice {
        &self.ball
    }

    fn sum(&self, mut g: impl FnMut(usize) -> Octonion<f64>) -> Octonion<f64> {
        let mut acc = PairwiseSum::new();
        for (i, w) in self.weights.iter().enumerate() {
            acc.push(g(i).scale(w));
        }
        acc.finish()
    }

    /// Same value as [`cauchy_reconstruct`].
    pub fn reconstruct(&self, x: &SplitPoint<f64>) -> Result<Octonion<f64>> {
        let xs = self.ball.slice_coords(x)?;
        self.ball.interior(&xs)?;
        let xo = xs.on_slice(&self.ball.eta);
        let p = self.ball.sig.p();
        Ok(self.sum(|i| match kernel_e_at(&self.points[i], &xo, p) {
            Ok(e) => e.mul(&self.nf[i]),
            Err(_) => Octonion::from_fn(|_| f64::NAN),
        }))
    }

    /// Same value as [`cauchy_reconstruct_global`].
    pub fn reconstruct_global(&self, x: &SplitPoint<f64>) -> Result<Octonion<f64>> {
        let (plus, minus) = self.ball.orbit_points(x)?;
        let (xp, xm) = (plus.on_slice(&self.ball.eta), minus.on_slice(&self.ball.eta));
        let p = self.ball.sig.p();
        Ok(self.sum(|i| {
            match (kernel_e_at(&self.points[i], &xp, p), kernel_e_at(&self.points[i], &xm, p)) {
                (Ok(ep), Ok(em)) => apply_operator_kernel(&ep, &em, x.omega(), &self.ball.eta, &self.nf[i]),
                _ => Octonion::from_fn(|_| f64::NAN),
            }
        }))
    }
}

/// The function `x -> ∫ 𝓔_y(x)(n g) dS` as a handle; NaN outside the ball.
impl SliceFunction for BoundarySamples {
    fn sig(&self) -> SliceSignature {
        self.ball.sig
    }

    fn eval(&self, x: &Octonion<f64>) -> Octonion<f64> {
        crate::slicegeom::split(x, self.ball.sig)
            .and_then(|s| self.reconstruct_global(&s))
            .unwrap_or_else(|_| Octonion::from_fn(|_| f64::NAN))
    }

    fn name(&self) -> String {
        format!("cauchy({})", self.label)
    }
}
