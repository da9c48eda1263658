//! d'Alembert reconstruction of analytic-function components from axis
//! data, and characteristic-form verification.
//!
//! Both components of an analytic map solve `(d²/dx² - d²/dy²) f = 0`, so
//! value and normal-rate data on one coordinate axis determine the
//! component everywhere. The velocity integral carries the standard `1/2`
//! factor; the literal form without it is kept behind an option because it
//! breaks the normal-rate initial condition (the reconstruction then
//! returns `2h` instead of `h` on the axis).

use std::sync::Arc;

use crate::diff::{stencil, Field2, GridSpec};
use crate::quad;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Absolute tolerance for the velocity-term quadrature.
pub const WAVE_QUAD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WaveError {
    #[error("axis data is not evaluable at s = {0}")]
    EvaluationDomain(f64),
}

/// Which coordinate axis carries the data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Data on `y = 0`: `g(x) = f(x, 0)`, `h(x) = df/dy (x, 0)`.
    X,
    /// Data on `x = 0`: `g(y) = f(0, y)`, `h(y) = df/dx (0, y)`.
    Y,
}

/// Treatment of the velocity integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VelocityFactor {
    /// The `1/2` factor that makes the rate initial condition hold.
    #[default]
    Halved,
    /// No factor on the integral; the reconstructed axis rate doubles.
    Literal,
}

/// Value and normal rate of change of one component on a coordinate axis.
#[derive(Clone)]
pub struct AxisData {
    axis: Axis,
    g: RealFn,
    h: RealFn,
}

impl AxisData {
    pub fn new(
        axis: Axis,
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
        h: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        AxisData { axis, g: Arc::new(g), h: Arc::new(h) }
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn value_on_axis(&self, s: f64) -> f64 {
        (self.g)(s)
    }

    pub fn rate_on_axis(&self, s: f64) -> f64 {
        (self.h)(s)
    }
}

/// Reconstructs the component at `point` from its axis data:
/// `1/2 (g(b) + g(a)) + c * int_a^b h`, with `(a, b)` the characteristic
/// pair of the point and `c` per the velocity option.
pub fn dalembert_eval(
    data: &AxisData,
    point: (f64, f64),
    factor: VelocityFactor,
) -> Result<f64, WaveError> {
    let (x, y) = point;
    let (a, b) = match data.axis {
        Axis::Y => (y - x, y + x),
        Axis::X => (x - y, x + y),
    };
    let g_part = 0.5 * ((data.g)(a) + (data.g)(b));
    if !g_part.is_finite() {
        return Err(WaveError::EvaluationDomain(a));
    }
    let h = data.h.clone();
    let (lo, hi, sign) = if a <= b { (a, b, 1.0) } else { (b, a, -1.0) };
    let integral = quad::adaptive(&|s| h(s), lo, hi, WAVE_QUAD_TOL, 1e-12, 4000)
        .map_err(|e| match e {
            quad::QuadError::NonFinite { t } => WaveError::EvaluationDomain(t),
            quad::QuadError::ToleranceNotReached { .. } => WaveError::EvaluationDomain(lo),
        })?
        .value;
    let c = match factor {
        VelocityFactor::Halved => 0.5,
        VelocityFactor::Literal => 1.0,
    };
    Ok(g_part + c * sign * integral)
}

/// Bundles two reconstructed components into a field.
pub fn reconstruct_field(u: AxisData, v: AxisData, factor: VelocityFactor) -> Field2 {
    Field2::new(
        move |x, y| dalembert_eval(&u, (x, y), factor).unwrap_or(f64::NAN),
        move |x, y| dalembert_eval(&v, (x, y), factor).unwrap_or(f64::NAN),
    )
}

/// Checks that a component splits into right/left movers.
///
/// The movers are recovered from the `x = 0` slices (value and normal
/// rate, the latter by central differences) through the same d'Alembert
/// split, then compared against the component on the region grid.
pub fn characteristic_check(
    component: &(impl Fn(f64, f64) -> f64 + Send + Sync + Clone + 'static),
    region: &GridSpec,
    tol: f64,
) -> Result<bool, WaveError> {
    let comp = component.clone();
    let g = move |s: f64| comp(0.0, s);
    let comp = component.clone();
    let h = move |s: f64| {
        let (d, _) = stencil::d1_richardson(&|x| comp(x, s), 0.0, 1e-5 * (1.0 + s.abs()));
        d
    };
    let data = AxisData::new(Axis::Y, g, h);
    for (x, y) in region.points() {
        let predicted = dalembert_eval(&data, (x, y), VelocityFactor::Halved)?;
        let actual = component(x, y);
        if !actual.is_finite() {
            return Err(WaveError::EvaluationDomain(x));
        }
        if (predicted - actual).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}
