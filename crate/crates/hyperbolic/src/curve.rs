//! Parametric paths `t -> (x(t), y(t))` with finite or infinite span.

use std::sync::Arc;

use crate::number::HNumber;
use crate::quad;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Tolerance on the endpoint gap of a curve declared closed.
pub const CLOSURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CurveError {
    #[error("curve span must satisfy t_min < t_max (got [{0}, {1}])")]
    BadSpan(f64, f64),
    #[error("singular parameter {0} is not strictly inside the span")]
    SingularOutsideSpan(f64),
    #[error("curve declared closed but endpoints differ by {gap:e}")]
    NotClosed { gap: f64 },
}

/// A parametric path through the hyperbolic plane.
///
/// Component derivatives are taken from the supplied closures when present
/// and fall back to Richardson-extrapolated central differences otherwise.
#[derive(Clone)]
pub struct Curve {
    x: RealFn,
    y: RealFn,
    dx: Option<RealFn>,
    dy: Option<RealFn>,
    t_min: f64,
    t_max: f64,
    singular_ts: Vec<f64>,
    closed: bool,
}

impl std::fmt::Debug for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Curve")
            .field("span", &(self.t_min, self.t_max))
            .field("singular_ts", &self.singular_ts)
            .field("closed", &self.closed)
            .finish_non_exhaustive()
    }
}

impl Curve {
    pub fn new(
        x: impl Fn(f64) -> f64 + Send + Sync + 'static,
        y: impl Fn(f64) -> f64 + Send + Sync + 'static,
        span: (f64, f64),
    ) -> Result<Self, CurveError> {
        Curve::build(Arc::new(x), Arc::new(y), None, None, span, Vec::new(), false)
    }

    /// Full constructor used by the JSON loader and the builders below.
    #[allow(clippy::too_many_arguments)]
    pub fn with_options(
        x: impl Fn(f64) -> f64 + Send + Sync + 'static,
        y: impl Fn(f64) -> f64 + Send + Sync + 'static,
        dx: Option<Box<dyn Fn(f64) -> f64 + Send + Sync>>,
        dy: Option<Box<dyn Fn(f64) -> f64 + Send + Sync>>,
        span: (f64, f64),
        singular_ts: Vec<f64>,
        closed: bool,
    ) -> Result<Self, CurveError> {
        Curve::build(
            Arc::new(x),
            Arc::new(y),
            dx.map(Arc::from),
            dy.map(Arc::from),
            span,
            singular_ts,
            closed,
        )
    }

    fn build(
        x: RealFn,
        y: RealFn,
        dx: Option<RealFn>,
        dy: Option<RealFn>,
        (t_min, t_max): (f64, f64),
        mut singular_ts: Vec<f64>,
        closed: bool,
    ) -> Result<Self, CurveError> {
        if t_min.is_nan() || t_max.is_nan() || t_min >= t_max {
            return Err(CurveError::BadSpan(t_min, t_max));
        }
        singular_ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for &s in &singular_ts {
            if !(s > t_min && s < t_max) {
                return Err(CurveError::SingularOutsideSpan(s));
            }
        }
        if closed && t_min.is_finite() && t_max.is_finite() {
            let gap = (x(t_min) - x(t_max)).hypot(y(t_min) - y(t_max));
            if gap > CLOSURE_TOL {
                return Err(CurveError::NotClosed { gap });
            }
        }
        Ok(Curve { x, y, dx, dy, t_min, t_max, singular_ts, closed })
    }

    /// Ellipse `center + (a cos t, b sin t)` over one full turn.
    pub fn ellipse(center: HNumber, a: f64, b: f64) -> Self {
        let (cx, cy) = (center.re, center.im);
        Curve::build(
            Arc::new(move |t: f64| cx + a * t.cos()),
            Arc::new(move |t: f64| cy + b * t.sin()),
            Some(Arc::new(move |t: f64| -a * t.sin())),
            Some(Arc::new(move |t: f64| b * t.cos())),
            (0.0, 2.0 * std::f64::consts::PI),
            Vec::new(),
            true,
        )
        .expect("ellipse parameters are always valid")
    }

    pub fn circle(center: HNumber, r: f64) -> Self {
        Curve::ellipse(center, r, r)
    }

    /// Straight segment from `from` to `to`, parameterized over [0, 1].
    pub fn segment(from: HNumber, to: HNumber) -> Self {
        let d = to - from;
        Curve::build(
            Arc::new(move |t: f64| from.re + t * d.re),
            Arc::new(move |t: f64| from.im + t * d.im),
            Some(Arc::new(move |_| d.re)),
            Some(Arc::new(move |_| d.im)),
            (0.0, 1.0),
            Vec::new(),
            false,
        )
        .expect("segment spans are always valid")
    }

    /// Branch of the unit hyperbola `±(cosh t, sinh t)` over the whole line.
    pub fn unit_hyperbola(positive_branch: bool) -> Self {
        let s = if positive_branch { 1.0 } else { -1.0 };
        Curve::build(
            Arc::new(move |t: f64| s * t.cosh()),
            Arc::new(move |t: f64| s * t.sinh()),
            Some(Arc::new(move |t: f64| s * t.sinh())),
            Some(Arc::new(move |t: f64| s * t.cosh())),
            (f64::NEG_INFINITY, f64::INFINITY),
            Vec::new(),
            false,
        )
        .expect("hyperbola span is always valid")
    }

    pub fn span(&self) -> (f64, f64) {
        (self.t_min, self.t_max)
    }

    pub fn is_finite(&self) -> bool {
        self.t_min.is_finite() && self.t_max.is_finite()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn singular_ts(&self) -> &[f64] {
        &self.singular_ts
    }

    pub fn point(&self, t: f64) -> (f64, f64) {
        ((self.x)(t), (self.y)(t))
    }

    pub fn at(&self, t: f64) -> HNumber {
        let (x, y) = self.point(t);
        HNumber::new(x, y)
    }

    /// Component derivatives `(x'(t), y'(t))`.
    pub fn velocity(&self, t: f64) -> (f64, f64) {
        let dx = match &self.dx {
            Some(f) => f(t),
            None => fd_derivative(&*self.x, t),
        };
        let dy = match &self.dy {
            Some(f) => f(t),
            None => fd_derivative(&*self.y, t),
        };
        (dx, dy)
    }

    pub fn speed(&self, t: f64) -> f64 {
        let (dx, dy) = self.velocity(t);
        dx.hypot(dy)
    }

    /// Same trace with opposite orientation.
    pub fn reversed(&self) -> Self {
        let (lo, hi) = (self.t_min, self.t_max);
        let flip = move |t: f64| lo + hi - t;
        let x = self.x.clone();
        let y = self.y.clone();
        let dx = self.dx.clone();
        let dy = self.dy.clone();
        Curve {
            x: Arc::new(move |t| x(flip(t))),
            y: Arc::new(move |t| y(flip(t))),
            dx: dx.map(|f| -> RealFn { Arc::new(move |t| -f(flip(t))) }),
            dy: dy.map(|f| -> RealFn { Arc::new(move |t| -f(flip(t))) }),
            t_min: lo,
            t_max: hi,
            singular_ts: self.singular_ts.iter().rev().map(|&s| flip(s)).collect(),
            closed: self.closed,
        }
    }

    /// Splits at an interior parameter; both pieces keep their orientation.
    pub fn split_at(&self, t: f64) -> Result<(Self, Self), CurveError> {
        if !(t > self.t_min && t < self.t_max) {
            return Err(CurveError::SingularOutsideSpan(t));
        }
        let cut = |lo: f64, hi: f64| Curve {
            x: self.x.clone(),
            y: self.y.clone(),
            dx: self.dx.clone(),
            dy: self.dy.clone(),
            t_min: lo,
            t_max: hi,
            singular_ts: self
                .singular_ts
                .iter()
                .copied()
                .filter(|&s| s > lo && s < hi)
                .collect(),
            closed: false,
        };
        Ok((cut(self.t_min, t), cut(t, self.t_max)))
    }

    /// Euclidean arclength by quadrature of the speed.
    pub fn arclength(&self, tol: f64) -> Result<f64, quad::QuadError> {
        quad::adaptive(&|t| self.speed(t), self.t_min, self.t_max, tol, 1e-12, 4000)
            .map(|r| r.value)
    }
}

/// Central difference with one Richardson level, step scaled to `|t|`.
fn fd_derivative(f: &(dyn Fn(f64) -> f64 + Send + Sync), t: f64) -> f64 {
    let h = 1e-6 * (1.0 + t.abs());
    crate::diff::stencil::d1_richardson(&|s| f(s), t, h).0
}
