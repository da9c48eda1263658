//! Numeric differentiation, hyperbolic Cauchy-Riemann verification,
//! wave-equation residuals and the (n,m)-angle conformality probe.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::number::HNumber;

type ComponentFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Default absolute tolerance on the Cauchy-Riemann residuals.
pub const DEFAULT_CR_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiffError {
    /// A stencil point evaluated outside the field's domain.
    #[error("field is not evaluable near ({0}, {1})")]
    EvaluationDomain(f64, f64),
    /// A tangent vector unusable for the requested angle.
    #[error("tangent vector at t = {0} cannot be normalized")]
    NullTangent(f64),
    #[error("curves do not intersect at the given parameters (gap {gap:e})")]
    CurvesDoNotIntersect { gap: f64 },
}

/// A map `f(x + iy) = u(x, y) + i v(x, y)` given by its two components.
///
/// Out-of-domain evaluation is signalled by non-finite component values,
/// which every consumer converts into [`DiffError::EvaluationDomain`].
#[derive(Clone)]
pub struct Field2 {
    u: ComponentFn,
    v: ComponentFn,
}

impl Field2 {
    pub fn new(
        u: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        v: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Field2 { u: Arc::new(u), v: Arc::new(v) }
    }

    /// Wraps a ring-valued map, sharing one closure for both components.
    pub fn from_map(f: impl Fn(HNumber) -> HNumber + Send + Sync + 'static) -> Self {
        let f = Arc::new(f);
        let g = f.clone();
        Field2 {
            u: Arc::new(move |x, y| f(HNumber::new(x, y)).re),
            v: Arc::new(move |x, y| g(HNumber::new(x, y)).im),
        }
    }

    /// Wraps a fallible map; errors surface as out-of-domain (NaN) values.
    pub fn from_fallible_map<E>(
        f: impl Fn(HNumber) -> Result<HNumber, E> + Send + Sync + 'static,
    ) -> Self {
        let f = Arc::new(f);
        let g = f.clone();
        Field2 {
            u: Arc::new(move |x, y| f(HNumber::new(x, y)).map_or(f64::NAN, |w| w.re)),
            v: Arc::new(move |x, y| g(HNumber::new(x, y)).map_or(f64::NAN, |w| w.im)),
        }
    }

    pub fn u(&self, x: f64, y: f64) -> f64 {
        (self.u)(x, y)
    }

    pub fn v(&self, x: f64, y: f64) -> f64 {
        (self.v)(x, y)
    }

    pub fn eval(&self, z: HNumber) -> Result<HNumber, DiffError> {
        let w = HNumber::new(self.u(z.re, z.im), self.v(z.re, z.im));
        if w.is_finite() {
            Ok(w)
        } else {
            Err(DiffError::EvaluationDomain(z.re, z.im))
        }
    }

    pub fn component(&self, which: Component) -> ComponentFn {
        match which {
            Component::U => self.u.clone(),
            Component::V => self.v.clone(),
        }
    }
}

/// Selects the real or imaginary component of a [`Field2`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    U,
    V,
}

/// Rectangular sample region with inclusive bounds.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn square(lo: f64, hi: f64, n: usize) -> Self {
        GridSpec { x_min: lo, x_max: hi, y_min: lo, y_max: hi, nx: n, ny: n }
    }

    pub fn x_at(&self, i: usize) -> f64 {
        if self.nx <= 1 {
            self.x_min
        } else {
            self.x_min + (self.x_max - self.x_min) * i as f64 / (self.nx - 1) as f64
        }
    }

    pub fn y_at(&self, j: usize) -> f64 {
        if self.ny <= 1 {
            self.y_min
        } else {
            self.y_min + (self.y_max - self.y_min) * j as f64 / (self.ny - 1) as f64
        }
    }

    /// Row-major sweep over all nodes.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| (self.x_at(i), self.y_at(j))))
    }
}

/// Finite-difference primitives shared by the derivative estimators.
pub mod stencil {
    /// Plain second-order central difference.
    pub fn d1(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    /// Central difference with one Richardson level; also returns the
    /// step-halving discrepancy as an error estimate.
    pub fn d1_richardson(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> (f64, f64) {
        let coarse = d1(f, x, h);
        let fine = d1(f, x, h / 2.0);
        ((4.0 * fine - coarse) / 3.0, (fine - coarse).abs() / 3.0)
    }

    /// Plain second-order central second difference.
    pub fn d2(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    }

    pub fn d2_richardson(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> (f64, f64) {
        let coarse = d2(f, x, h);
        let fine = d2(f, x, h / 2.0);
        ((4.0 * fine - coarse) / 3.0, (fine - coarse).abs() / 3.0)
    }

    /// Mixed second partial via the four-corner cross.
    pub fn dxy(f: &dyn Fn(f64, f64) -> f64, x: f64, y: f64, h: f64) -> f64 {
        (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h)
    }

    pub fn dxy_richardson(f: &dyn Fn(f64, f64) -> f64, x: f64, y: f64, h: f64) -> (f64, f64) {
        let coarse = dxy(f, x, y, h);
        let fine = dxy(f, x, y, h / 2.0);
        ((4.0 * fine - coarse) / 3.0, (fine - coarse).abs() / 3.0)
    }
}

/// Base step for first-order stencils at the given point.
pub fn first_order_step(point: (f64, f64)) -> f64 {
    1e-5f64.max(1e-7 * (1.0 + point.0.hypot(point.1)))
}

/// Base step for second-order stencils; larger to tame rounding in `h^2`.
pub fn second_order_step(point: (f64, f64)) -> f64 {
    5e-3 * (1.0 + point.0.hypot(point.1))
}

/// First partials of both components at a point.
#[derive(Clone, Copy, Debug)]
pub struct FirstPartials {
    pub u_x: f64,
    pub u_y: f64,
    pub v_x: f64,
    pub v_y: f64,
    /// Largest Richardson discrepancy across the four derivatives.
    pub err: f64,
}

/// Second partials of both components at a point.
#[derive(Clone, Copy, Debug)]
pub struct SecondPartials {
    pub u_xx: f64,
    pub u_xy: f64,
    pub u_yy: f64,
    pub v_xx: f64,
    pub v_xy: f64,
    pub v_yy: f64,
    pub err: f64,
}

fn guard(v: f64, point: (f64, f64)) -> Result<f64, DiffError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(DiffError::EvaluationDomain(point.0, point.1))
    }
}

pub fn first_partials(field: &Field2, point: (f64, f64)) -> Result<FirstPartials, DiffError> {
    let (x, y) = point;
    // The stencil includes the point itself; reject singular centers even
    // though central differences would not sample them.
    guard(field.u(x, y), point)?;
    guard(field.v(x, y), point)?;
    let h = first_order_step(point);
    let mut err = 0.0f64;
    let mut take = |f: &dyn Fn(f64) -> f64, at: f64| -> Result<f64, DiffError> {
        let (d, e) = stencil::d1_richardson(f, at, h);
        err = err.max(e);
        guard(d, point)
    };
    let u_x = take(&|s| field.u(s, y), x)?;
    let u_y = take(&|s| field.u(x, s), y)?;
    let v_x = take(&|s| field.v(s, y), x)?;
    let v_y = take(&|s| field.v(x, s), y)?;
    Ok(FirstPartials { u_x, u_y, v_x, v_y, err })
}

pub fn second_partials(field: &Field2, point: (f64, f64)) -> Result<SecondPartials, DiffError> {
    let (x, y) = point;
    let h = second_order_step(point);
    let mut err = 0.0f64;
    let mut take = |d: (f64, f64)| -> Result<f64, DiffError> {
        err = err.max(d.1);
        guard(d.0, point)
    };
    let u_xx = take(stencil::d2_richardson(&|s| field.u(s, y), x, h))?;
    let u_yy = take(stencil::d2_richardson(&|s| field.u(x, s), y, h))?;
    let u_xy = take(stencil::dxy_richardson(&|a, b| field.u(a, b), x, y, h))?;
    let v_xx = take(stencil::d2_richardson(&|s| field.v(s, y), x, h))?;
    let v_yy = take(stencil::d2_richardson(&|s| field.v(x, s), y, h))?;
    let v_xy = take(stencil::dxy_richardson(&|a, b| field.v(a, b), x, y, h))?;
    Ok(SecondPartials { u_xx, u_xy, u_yy, v_xx, v_xy, v_yy, err })
}

/// Derivative estimate along the two coordinate paths.
#[derive(Clone, Copy, Debug)]
pub struct Derivative {
    /// `du/dx + i dv/dx`, the real-path limit.
    pub value: HNumber,
    /// `dv/dy + i du/dy`, the imaginary-path limit.
    pub alt: HNumber,
    /// Whether both paths produced the same limit within tolerance.
    pub agrees: bool,
}

pub fn derivative(field: &Field2, z0: HNumber) -> Result<Derivative, DiffError> {
    derivative_with_tol(field, z0, DEFAULT_CR_TOL)
}

pub fn derivative_with_tol(
    field: &Field2,
    z0: HNumber,
    tol: f64,
) -> Result<Derivative, DiffError> {
    let p = first_partials(field, (z0.re, z0.im))?;
    let value = HNumber::new(p.u_x, p.v_x);
    let alt = HNumber::new(p.v_y, p.u_y);
    Ok(Derivative { value, alt, agrees: (value - alt).euclid_norm() <= tol })
}

/// Residuals of the hyperbolic Cauchy-Riemann conditions at one point.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CrReport {
    pub point: (f64, f64),
    /// `du/dx - dv/dy`
    pub r1: f64,
    /// `du/dy - dv/dx`
    pub r2: f64,
    pub ok: bool,
}

/// Grid sweep outcome; out-of-domain nodes are collected, not fatal.
#[derive(Clone, Debug, Default)]
pub struct CrSummary {
    pub reports: Vec<CrReport>,
    pub skipped: Vec<(f64, f64)>,
    pub all_ok: bool,
}

pub fn cr_check(field: &Field2, grid: &GridSpec, tol: f64) -> CrSummary {
    let mut summary = CrSummary { all_ok: true, ..Default::default() };
    for point in grid.points() {
        match first_partials(field, point) {
            Ok(p) => {
                let r1 = p.u_x - p.v_y;
                let r2 = p.u_y - p.v_x;
                let ok = r1.abs().max(r2.abs()) <= tol;
                summary.all_ok &= ok;
                summary.reports.push(CrReport { point, r1, r2, ok });
            }
            Err(_) => {
                summary.all_ok = false;
                summary.skipped.push(point);
            }
        }
    }
    summary
}

/// `(d^2/dx^2 - d^2/dy^2)` applied to one component.
pub fn wave_residual(
    field: &Field2,
    which: Component,
    point: (f64, f64),
) -> Result<f64, DiffError> {
    let f = field.component(which);
    let h = second_order_step(point);
    let (x, y) = point;
    let (xx, _) = stencil::d2_richardson(&|s| f(s, y), x, h);
    let (yy, _) = stencil::d2_richardson(&|s| f(x, s), y, h);
    guard(xx - yy, point)
}

/// Quadratic form selecting the angle flavor.
///
/// Both flavors evaluate the form on Euclidean-unit tangent vectors, which
/// is what makes the hyperbolic-plane non-conformality observable for the
/// indefinite form as well.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleSignature {
    /// `(2,0)`: the ordinary cosine `dx1 dx2 + dy1 dy2`.
    Euclidean,
    /// `(1,1)`: the indefinite form `dx1 dx2 - dy1 dy2`.
    Minkowski,
}

fn signature_form(sig: AngleSignature, a: (f64, f64), b: (f64, f64)) -> f64 {
    match sig {
        AngleSignature::Euclidean => a.0 * b.0 + a.1 * b.1,
        AngleSignature::Minkowski => a.0 * b.0 - a.1 * b.1,
    }
}

fn unit_tangent(d: (f64, f64), sig: AngleSignature, t: f64) -> Result<(f64, f64), DiffError> {
    let n = d.0.hypot(d.1);
    if n == 0.0 || !n.is_finite() {
        return Err(DiffError::NullTangent(t));
    }
    if sig == AngleSignature::Minkowski {
        // Light-like tangents have a vanishing (1,1)-normalizer.
        let q = (d.0 - d.1) * (d.0 + d.1);
        if q.abs() <= 1e-12 * n * n {
            return Err(DiffError::NullTangent(t));
        }
    }
    Ok((d.0 / n, d.1 / n))
}

fn angle_of(
    d1: (f64, f64),
    d2: (f64, f64),
    sig: AngleSignature,
    t1: f64,
    t2: f64,
) -> Result<f64, DiffError> {
    let e1 = unit_tangent(d1, sig, t1)?;
    let e2 = unit_tangent(d2, sig, t2)?;
    Ok(signature_form(sig, e1, e2))
}

/// Angle between two curves at their intersection parameters.
pub fn nm_angle(
    c1: &Curve,
    c2: &Curve,
    t1: f64,
    t2: f64,
    sig: AngleSignature,
) -> Result<f64, DiffError> {
    check_intersection(c1, c2, t1, t2)?;
    angle_of(c1.velocity(t1), c2.velocity(t2), sig, t1, t2)
}

fn check_intersection(c1: &Curve, c2: &Curve, t1: f64, t2: f64) -> Result<(), DiffError> {
    let (x1, y1) = c1.point(t1);
    let (x2, y2) = c2.point(t2);
    let gap = (x1 - x2).hypot(y1 - y2);
    if gap > 1e-9 * (1.0 + x1.hypot(y1)) {
        return Err(DiffError::CurvesDoNotIntersect { gap });
    }
    Ok(())
}

/// Angle between the curves before and after mapping through the field.
///
/// Image tangents are pushed through the Jacobian
/// `(dx', dy') = (u_x dx + u_y dy, v_x dx + v_y dy)`.
pub fn conformality_probe(
    field: &Field2,
    c1: &Curve,
    c2: &Curve,
    t1: f64,
    t2: f64,
    sig: AngleSignature,
) -> Result<(f64, f64), DiffError> {
    check_intersection(c1, c2, t1, t2)?;
    let before = angle_of(c1.velocity(t1), c2.velocity(t2), sig, t1, t2)?;
    let p = first_partials(field, c1.point(t1))?;
    let push = |d: (f64, f64)| (p.u_x * d.0 + p.u_y * d.1, p.v_x * d.0 + p.v_y * d.1);
    let after = angle_of(push(c1.velocity(t1)), push(c2.velocity(t2)), sig, t1, t2)?;
    Ok((before, after))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_field() -> Field2 {
        Field2::from_map(|z| z * z)
    }

    fn inv_field() -> Field2 {
        Field2::from_fallible_map(|z| HNumber::ONE.div(z))
    }

    #[test]
    fn polynomial_partials() {
        let f = Field2::new(|x, y| x * x + y * y, |x, y| 2.0 * x * y);
        let p = first_partials(&f, (1.0, 2.0)).unwrap();
        assert!((p.u_x - 2.0).abs() < 1e-8);
        assert!((p.u_y - 4.0).abs() < 1e-8);
        let s = second_partials(&f, (1.0, 2.0)).unwrap();
        assert!((s.u_xx - 2.0).abs() < 1e-6);
        assert!((s.u_yy - 2.0).abs() < 1e-6);
        assert!((s.v_xy - 2.0).abs() < 1e-6);
    }

    #[test]
    fn exponential_partials_at_origin() {
        let f = Field2::new(|x, y| x.exp() * y.cosh(), |x, y| x.exp() * y.sinh());
        let p = first_partials(&f, (0.0, 0.0)).unwrap();
        assert!((p.u_x - 1.0).abs() < 1e-8);
        assert!(p.u_y.abs() < 1e-8);
    }

    #[test]
    fn halving_the_step_improves_plain_central_differences() {
        let f = |x: f64| (3.0 * x).sin() * x.exp();
        let exact = 3.0 * (3.0f64).cos() * 1f64.exp() + (3.0f64).sin() * 1f64.exp();
        let h = 0.1;
        let coarse = (stencil::d1(&f, 1.0, h) - exact).abs();
        let fine = (stencil::d1(&f, 1.0, h / 2.0) - exact).abs();
        assert!(coarse / fine >= 3.0, "ratio {}", coarse / fine);
    }

    #[test]
    fn derivative_of_square_is_two_z() {
        let d = derivative(&square_field(), HNumber::new(1.0, 2.0)).unwrap();
        assert!((d.value - HNumber::new(2.0, 4.0)).euclid_norm() < 1e-7);
        assert!(d.agrees);
    }

    #[test]
    fn conjugate_map_fails_path_agreement() {
        let f = Field2::from_map(|z| z.conj());
        let d = derivative(&f, HNumber::new(0.3, -0.4)).unwrap();
        assert!(!d.agrees);
        assert!((d.value - HNumber::ONE).euclid_norm() < 1e-7);
        assert!((d.alt + HNumber::ONE).euclid_norm() < 1e-7);
    }

    #[test]
    fn derivative_of_exp_at_zero() {
        let f = Field2::new(|x, y| x.exp() * y.cosh(), |x, y| x.exp() * y.sinh());
        let d = derivative(&f, HNumber::ZERO).unwrap();
        assert!((d.value - HNumber::ONE).euclid_norm() < 1e-8);
        assert!(d.agrees);
    }

    #[test]
    fn cr_check_flags_each_field_correctly() {
        let grid = GridSpec::square(-2.0, 2.0, 5);
        assert!(cr_check(&square_field(), &grid, DEFAULT_CR_TOL).all_ok);

        let h1 = GridSpec { x_min: 1.6, x_max: 2.4, y_min: -0.4, y_max: 0.4, nx: 5, ny: 5 };
        assert!(cr_check(&inv_field(), &h1, DEFAULT_CR_TOL).all_ok);

        let conj = Field2::from_map(|z| z.conj());
        let s = cr_check(&conj, &grid, DEFAULT_CR_TOL);
        assert!(!s.all_ok);
        assert!(s.reports.iter().all(|r| !r.ok && (r.r1 - 2.0).abs() < 1e-6));
    }

    #[test]
    fn cr_check_skips_unevaluable_nodes() {
        let grid = GridSpec::square(-1.0, 1.0, 3); // crosses the diagonals
        let s = cr_check(&inv_field(), &grid, DEFAULT_CR_TOL);
        assert!(!s.skipped.is_empty());
        assert!(!s.all_ok);
    }

    #[test]
    fn agreement_follows_cr_on_interior_nodes() {
        let grid = GridSpec::square(-1.5, 1.5, 4);
        for f in [square_field(), Field2::from_map(|z| z * z * z)] {
            assert!(cr_check(&f, &grid, DEFAULT_CR_TOL).all_ok);
            for point in grid.points() {
                let d = derivative(&f, HNumber::new(point.0, point.1)).unwrap();
                assert!(d.agrees, "paths disagree at {point:?}");
            }
        }
    }

    #[test]
    fn wave_residual_vanishes_for_analytic_components() {
        let sq = square_field();
        assert!(wave_residual(&sq, Component::U, (0.7, -1.3)).unwrap().abs() < 1e-6);
        let f = Field2::new(|x, y| x.exp() * y.cosh(), |x, y| x.exp() * y.sinh());
        assert!(wave_residual(&f, Component::U, (0.5, 0.5)).unwrap().abs() < 1e-5);
        let h1 = inv_field();
        assert!(wave_residual(&h1, Component::V, (2.0, 0.3)).unwrap().abs() < 1e-4);
    }

    #[test]
    fn wave_residual_negative_control() {
        let f = Field2::new(|x, _| x * x, |_, _| 0.0);
        let r = wave_residual(&f, Component::U, (1.0, 1.0)).unwrap();
        assert!((r - 2.0).abs() < 1e-6);
    }

    #[test]
    fn euclidean_angle_between_lines() {
        let l1 = Curve::segment(HNumber::new(-1.0, 0.0), HNumber::new(1.0, 0.0));
        let l2 = Curve::segment(HNumber::new(-1.0, -1.0), HNumber::new(1.0, 1.0));
        let a = nm_angle(&l1, &l2, 0.5, 0.5, AngleSignature::Euclidean).unwrap();
        assert!((a - 1.0 / 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn light_like_tangents_are_rejected_for_the_indefinite_form() {
        let l1 = Curve::segment(HNumber::ZERO, HNumber::new(1.0, 1.0));
        let l2 = Curve::segment(HNumber::ZERO, HNumber::new(1.0, 0.0));
        let err = nm_angle(&l1, &l2, 0.0, 0.0, AngleSignature::Minkowski).unwrap_err();
        assert!(matches!(err, DiffError::NullTangent(_)));
        assert!(nm_angle(&l1, &l2, 0.0, 0.0, AngleSignature::Euclidean).is_ok());
    }

    #[test]
    fn probe_requires_intersecting_curves() {
        let l1 = Curve::segment(HNumber::ZERO, HNumber::new(1.0, 0.0));
        let l2 = Curve::segment(HNumber::new(5.0, 5.0), HNumber::new(6.0, 5.0));
        let err =
            conformality_probe(&square_field(), &l1, &l2, 0.0, 0.0, AngleSignature::Euclidean)
                .unwrap_err();
        assert!(matches!(err, DiffError::CurvesDoNotIntersect { .. }));
    }

    #[test]
    fn square_map_distorts_both_angle_flavors() {
        // Lines through 1 + 0.5i with directions (1, 0) and (2, 1)/sqrt(5).
        let z0 = HNumber::new(1.0, 0.5);
        let l1 = Curve::segment(z0, z0 + HNumber::new(1.0, 0.0));
        let l2 = Curve::segment(z0, z0 + HNumber::new(2.0, 1.0));
        let f = square_field();
        let (b20, a20) =
            conformality_probe(&f, &l1, &l2, 0.0, 0.0, AngleSignature::Euclidean).unwrap();
        assert!((b20 - 2.0 / 5.0f64.sqrt()).abs() < 1e-9);
        assert!((a20 - 14.0 / 205.0f64.sqrt()).abs() < 1e-7);
        assert!((b20 - a20).abs() > 0.01);

        let (b11, a11) =
            conformality_probe(&f, &l1, &l2, 0.0, 0.0, AngleSignature::Minkowski).unwrap();
        assert!((b11 - 2.0 / 5.0f64.sqrt()).abs() < 1e-9);
        assert!((a11 - 6.0 / 205.0f64.sqrt()).abs() < 1e-7);
        assert!((b11 - a11).abs() > 0.01);
    }

    #[test]
    fn cr_report_serializes_with_short_keys() {
        let r = CrReport { point: (1.0, 2.0), r1: 0.5, r2: -0.25, ok: false };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"point":[1.0,2.0],"r1":0.5,"r2":-0.25,"ok":false}"#);
    }
}
