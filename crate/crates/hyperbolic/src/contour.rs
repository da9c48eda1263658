//! Contour integrals along parametric curves.
//!
//! The integral of `f = u + iv` along `C` splits into the two real
//! pullbacks `int (u x' + v y') dt` and `int (v x' + u y') dt`; note the
//! cross-coupling (`i^2 = +1` puts `v dy` into the real part). On top of
//! the plain adaptive integral this module provides symmetric
//! principal-value excision, truncation ladders for improper integrals
//! with divergence detection, pointwise-combined multi-curve integrands,
//! and the `M L` upper bound.

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::diff::Field2;
use crate::number::HNumber;
use crate::quad::{self, QuadError};

/// Default absolute tolerance per real sub-integral.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Epsilon ladder used for symmetric principal-value excision.
pub const PV_EPSILONS: [f64; 5] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

/// Default truncation ladder for improper integrals over infinite spans.
pub const DEFAULT_LADDER: [f64; 7] = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0];

/// Partial-sum growth factor that counts toward divergence.
const GROWTH_FACTOR: f64 = 2.0;
/// Number of consecutive growth steps required to declare divergence.
const GROWTH_STEPS: usize = 3;
/// Magnitude a partial sum must exceed before divergence is declared.
const DIVERGENCE_MAGNITUDE: f64 = 1e6;

const MAX_PANELS: usize = 20_000;

/// Relative floor for strict quadrature; `|K - G|` estimates on smooth
/// integrands bottom out near `1e-11 * L1`, so stopping thresholds must sit
/// above it.
const STRICT_REL_TOL: f64 = 2e-11;
/// Looser floor for truncation ladders, where only magnitudes matter.
const LADDER_REL_TOL: f64 = 1e-10;
const LADDER_MAX_PANELS: usize = 4_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ContourError {
    #[error("quadrature could not reach tolerance {tol:e} (error {err:e}, {panels} panels)")]
    QuadratureFailure { err: f64, panels: usize, tol: f64 },
    #[error("integrand is not evaluable at t = {t}")]
    EvaluationDomain { t: f64 },
    #[error("principal-value epsilon ladder did not stabilize (last change {last_change:e})")]
    PvNonconvergent { last_change: f64 },
    #[error("truncation ladder ended without meeting the convergence or divergence criterion")]
    Inconclusive,
    #[error("curve is unsupported by this operation: {0}")]
    UnsupportedCurve(&'static str),
}

impl From<QuadError> for ContourError {
    fn from(e: QuadError) -> Self {
        match e {
            QuadError::NonFinite { t } => ContourError::EvaluationDomain { t },
            QuadError::ToleranceNotReached { err, panels, tol, .. } => {
                ContourError::QuadratureFailure { err, panels, tol }
            }
        }
    }
}

/// Outcome classification of a contour integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntegralStatus {
    Converged,
    Divergent,
    PrincipalValue,
}

/// Value-or-divergence outcome with an error estimate and panel count.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct IntegralResult {
    pub status: IntegralStatus,
    pub value: Option<HNumber>,
    pub err_estimate: f64,
    pub panels: usize,
}

impl IntegralResult {
    fn converged(value: HNumber, err: f64, panels: usize) -> Self {
        IntegralResult { status: IntegralStatus::Converged, value: Some(value), err_estimate: err, panels }
    }

    fn principal_value(value: HNumber, err: f64, panels: usize) -> Self {
        IntegralResult {
            status: IntegralStatus::PrincipalValue,
            value: Some(value),
            err_estimate: err,
            panels,
        }
    }

    fn divergent(panels: usize) -> Self {
        IntegralResult {
            status: IntegralStatus::Divergent,
            value: None,
            err_estimate: f64::INFINITY,
            panels,
        }
    }
}

/// The two real pullback integrands of `f` along `c`.
struct Pullback<'a> {
    f: &'a Field2,
    c: &'a Curve,
}

impl Pullback<'_> {
    /// `u x' + v y'` (real part of `f dz`).
    fn real_part(&self, t: f64) -> f64 {
        let (x, y) = self.c.point(t);
        let (dx, dy) = self.c.velocity(t);
        self.f.u(x, y) * dx + self.f.v(x, y) * dy
    }

    /// `v x' + u y'` (imaginary part of `f dz`).
    fn imag_part(&self, t: f64) -> f64 {
        let (x, y) = self.c.point(t);
        let (dx, dy) = self.c.velocity(t);
        self.f.v(x, y) * dx + self.f.u(x, y) * dy
    }
}

fn integrate_span(
    f: &Field2,
    c: &Curve,
    lo: f64,
    hi: f64,
    tol: f64,
    lenient: bool,
) -> Result<(HNumber, f64, usize), QuadError> {
    let p = Pullback { f, c };
    let real = |t: f64| p.real_part(t);
    let imag = |t: f64| p.imag_part(t);
    let (re, im) = if lenient {
        (
            quad::adaptive_lenient(&real, lo, hi, tol, LADDER_REL_TOL, LADDER_MAX_PANELS)?,
            quad::adaptive_lenient(&imag, lo, hi, tol, LADDER_REL_TOL, LADDER_MAX_PANELS)?,
        )
    } else {
        (
            quad::adaptive(&real, lo, hi, tol, STRICT_REL_TOL, MAX_PANELS)?,
            quad::adaptive(&imag, lo, hi, tol, STRICT_REL_TOL, MAX_PANELS)?,
        )
    };
    Ok((HNumber::new(re.value, im.value), re.err + im.err, re.panels + im.panels))
}

/// `int_C f dz` over a finite curve without singular parameters.
pub fn integrate(f: &Field2, c: &Curve, tol: f64) -> Result<IntegralResult, ContourError> {
    if !c.is_finite() {
        return Err(ContourError::UnsupportedCurve("infinite span requires integrate_improper"));
    }
    if !c.singular_ts().is_empty() {
        return Err(ContourError::UnsupportedCurve("singular parameters require integrate_pv"));
    }
    let (lo, hi) = c.span();
    let (value, err, panels) = integrate_span(f, c, lo, hi, tol, false)?;
    Ok(IntegralResult::converged(value, err, panels))
}

/// Symmetric principal value across the curve's singular parameters.
///
/// Each epsilon of [`PV_EPSILONS`] excises `(s - eps, s + eps)` around every
/// singular parameter; the excised totals are extrapolated to `eps -> 0` by
/// Neville's scheme and declared stable once the last two diagonal entries
/// agree within the tolerance.
pub fn integrate_pv(f: &Field2, c: &Curve, tol: f64) -> Result<IntegralResult, ContourError> {
    if !c.is_finite() {
        return Err(ContourError::UnsupportedCurve("infinite span requires integrate_improper"));
    }
    if c.singular_ts().is_empty() {
        return Err(ContourError::UnsupportedCurve("no singular parameters; use integrate"));
    }
    let (lo, hi) = c.span();
    let seg_tol = (tol * 1e-3).max(1e-12);
    let mut ladder = Vec::with_capacity(PV_EPSILONS.len());
    let mut panels = 0;
    for &eps in PV_EPSILONS.iter() {
        let mut total = HNumber::ZERO;
        let mut cursor = lo;
        for &s in c.singular_ts() {
            let stop = s - eps;
            if stop > cursor {
                let (v, _, n) = integrate_span(f, c, cursor, stop, seg_tol, false)?;
                total += v;
                panels += n;
            }
            cursor = cursor.max(s + eps);
        }
        if hi > cursor {
            let (v, _, n) = integrate_span(f, c, cursor, hi, seg_tol, false)?;
            total += v;
            panels += n;
        }
        ladder.push(total);
    }
    let (value, change) = neville_at_zero(&PV_EPSILONS, &ladder);
    if change <= tol.max(1e-12 * value.euclid_norm()) {
        Ok(IntegralResult::principal_value(value, change, panels))
    } else {
        Err(ContourError::PvNonconvergent { last_change: change })
    }
}

/// Polynomial extrapolation of the ladder to `eps = 0`; returns the final
/// diagonal entry and its distance from the previous one.
fn neville_at_zero(xs: &[f64], ys: &[HNumber]) -> (HNumber, f64) {
    let n = ys.len();
    let mut table = ys.to_vec();
    let mut prev_diag = table[0];
    let mut diag = table[0];
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xk) = (xs[i], xs[i + level]);
            let num = table[i + 1].scale(0.0 - xi) - table[i].scale(0.0 - xk);
            table[i] = num.scale(1.0 / (xk - xi));
        }
        prev_diag = diag;
        diag = table[0];
    }
    (diag, (diag - prev_diag).euclid_norm())
}

/// Truncated evaluation of an integral over an infinite span.
///
/// Each rung integrates the span clipped to `[-T_k, T_k]`. Divergence is
/// declared after [`GROWTH_STEPS`] consecutive partial-sum doublings once
/// the magnitude passes [`DIVERGENCE_MAGNITUDE`] (a non-finite partial also
/// counts as growth); convergence requires two consecutive Cauchy steps
/// within the tolerance.
pub fn integrate_improper(
    f: &Field2,
    c: &Curve,
    ladder: &[f64],
    tol: f64,
) -> Result<IntegralResult, ContourError> {
    let (lo, hi) = c.span();
    if lo.is_finite() && hi.is_finite() {
        return Err(ContourError::UnsupportedCurve("finite span; use integrate"));
    }
    run_ladder(
        |bounds_lo, bounds_hi| integrate_span(f, c, bounds_lo, bounds_hi, tol.min(1e-8), true),
        (lo, hi),
        ladder,
        tol,
    )
}

fn run_ladder(
    mut piece: impl FnMut(f64, f64) -> Result<(HNumber, f64, usize), QuadError>,
    (lo, hi): (f64, f64),
    ladder: &[f64],
    tol: f64,
) -> Result<IntegralResult, ContourError> {
    let clip_lo = |t: f64| if lo.is_finite() { lo } else { -t };
    let clip_hi = |t: f64| if hi.is_finite() { hi } else { t };
    let mut partial = HNumber::ZERO;
    let mut partial_finite = true;
    let mut panels = 0;
    let mut prev: Option<(f64, HNumber)> = None; // (norm, value) of previous rung
    let mut growth_streak = 0usize;
    let mut cauchy_streak = 0usize;
    let mut prev_bounds: Option<(f64, f64)> = None;
    for &t in ladder {
        let (a, b) = (clip_lo(t), clip_hi(t));
        if a >= b || a.is_nan() || b.is_nan() {
            return Err(ContourError::UnsupportedCurve("ladder does not reach the span"));
        }
        // Add only the freshly uncovered pieces so rungs share work.
        let pieces: Vec<(f64, f64)> = match prev_bounds {
            None => vec![(a, b)],
            Some((pa, pb)) => {
                let mut v = Vec::new();
                if a < pa {
                    v.push((a, pa));
                }
                if b > pb {
                    v.push((pb, b));
                }
                v
            }
        };
        prev_bounds = Some((a, b));
        for (x0, x1) in pieces {
            match piece(x0, x1) {
                Ok((v, _, n)) => {
                    panels += n;
                    partial += v;
                    partial_finite &= v.is_finite();
                }
                Err(QuadError::NonFinite { .. }) => partial_finite = false,
                Err(e) => return Err(e.into()),
            }
        }
        let norm = if partial_finite { partial.euclid_norm() } else { f64::INFINITY };
        if let Some((prev_norm, prev_value)) = prev {
            if !norm.is_finite() || norm > GROWTH_FACTOR * prev_norm {
                growth_streak += 1;
                cauchy_streak = 0;
            } else {
                growth_streak = 0;
                if partial_finite && (partial - prev_value).euclid_norm() < tol {
                    cauchy_streak += 1;
                } else {
                    cauchy_streak = 0;
                }
            }
            if growth_streak >= GROWTH_STEPS && (norm > DIVERGENCE_MAGNITUDE || !norm.is_finite())
            {
                return Ok(IntegralResult::divergent(panels));
            }
            if cauchy_streak >= 2 {
                return Ok(IntegralResult::converged(partial, tol, panels));
            }
        }
        prev = Some((norm, partial));
    }
    Err(ContourError::Inconclusive)
}

/// One signed summand of a combined integral.
pub struct CombinedTerm<'a> {
    pub field: &'a Field2,
    pub curve: &'a Curve,
    pub sign: f64,
}

/// Integrates the pointwise signed sum of several pullback integrands over
/// a shared parameter interval, so symmetric cancellations happen before
/// any limit is taken. Finite spans integrate directly; infinite spans run
/// the truncation ladder.
pub fn integrate_combined(
    terms: &[CombinedTerm<'_>],
    ladder: &[f64],
    tol: f64,
) -> Result<IntegralResult, ContourError> {
    let Some(first) = terms.first() else {
        return Err(ContourError::UnsupportedCurve("no terms"));
    };
    let span = first.curve.span();
    if terms.iter().any(|t| t.curve.span() != span) {
        return Err(ContourError::UnsupportedCurve("terms must share one parameter interval"));
    }
    let real = |t: f64| -> f64 {
        terms
            .iter()
            .map(|term| term.sign * Pullback { f: term.field, c: term.curve }.real_part(t))
            .sum()
    };
    let imag = |t: f64| -> f64 {
        terms
            .iter()
            .map(|term| term.sign * Pullback { f: term.field, c: term.curve }.imag_part(t))
            .sum()
    };
    if span.0.is_finite() && span.1.is_finite() {
        let re = quad::adaptive(&real, span.0, span.1, tol, STRICT_REL_TOL, MAX_PANELS)?;
        let im = quad::adaptive(&imag, span.0, span.1, tol, STRICT_REL_TOL, MAX_PANELS)?;
        return Ok(IntegralResult::converged(
            HNumber::new(re.value, im.value),
            re.err + im.err,
            re.panels + im.panels,
        ));
    }
    run_ladder(
        |a, b| {
            let re =
                quad::adaptive_lenient(&real, a, b, tol.min(1e-8), LADDER_REL_TOL, LADDER_MAX_PANELS)?;
            let im =
                quad::adaptive_lenient(&imag, a, b, tol.min(1e-8), LADDER_REL_TOL, LADDER_MAX_PANELS)?;
            Ok((HNumber::new(re.value, im.value), re.err + im.err, re.panels + im.panels))
        },
        span,
        ladder,
        tol,
    )
}

/// Supremum sample count used by [`ml_bound`].
pub const ML_SAMPLES: usize = 720;

/// `(M, L)`: sampled supremum of `||f||` on the curve and the Euclidean
/// arclength. The caller checks `||int f dz|| <= M * L`.
pub fn ml_bound(f: &Field2, c: &Curve, samples: usize) -> Result<(f64, f64), ContourError> {
    if !c.is_finite() {
        return Err(ContourError::UnsupportedCurve("ML bound needs a finite curve"));
    }
    let (lo, hi) = c.span();
    let n = samples.max(2);
    let mut sup = 0.0f64;
    for k in 0..=n {
        let t = lo + (hi - lo) * k as f64 / n as f64;
        let w = f.eval(c.at(t)).map_err(|_| ContourError::EvaluationDomain { t })?;
        sup = sup.max(w.euclid_norm());
    }
    let len = c.arclength(DEFAULT_QUAD_TOL)?;
    Ok((sup, len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{self, SeriesConfig};
    use std::f64::consts::PI;

    fn square() -> Field2 {
        Field2::from_map(|z| z * z)
    }

    fn exp_field() -> Field2 {
        Field2::from_fallible_map(|z| specfun::exp(z, &SeriesConfig::default()))
    }

    fn inv() -> Field2 {
        Field2::from_fallible_map(|z| HNumber::ONE.div(z))
    }

    #[test]
    fn closed_integrals_of_entire_functions_vanish() {
        let ellipse = Curve::ellipse(HNumber::ZERO, 2.0, 1.0);
        for f in [square(), exp_field()] {
            let r = integrate(&f, &ellipse, DEFAULT_QUAD_TOL).unwrap();
            assert_eq!(r.status, IntegralStatus::Converged);
            assert!(r.value.unwrap().euclid_norm() < 1e-8);
        }
    }

    #[test]
    fn closed_integral_of_inverse_away_from_diagonals() {
        let c = Curve::ellipse(HNumber::new(4.0, 2.0), 1.0, 0.5);
        let r = integrate(&inv(), &c, DEFAULT_QUAD_TOL).unwrap();
        assert!(r.value.unwrap().euclid_norm() < 1e-8);
    }

    #[test]
    fn segment_integral_of_constant_is_the_chord() {
        let field = Field2::from_map(|_| HNumber::ONE);
        let seg = Curve::segment(HNumber::ZERO, HNumber::new(3.0, 4.0));
        let r = integrate(&field, &seg, DEFAULT_QUAD_TOL).unwrap();
        assert!((r.value.unwrap() - HNumber::new(3.0, 4.0)).euclid_norm() < 1e-12);
    }

    #[test]
    fn reversing_a_curve_negates_the_integral() {
        let c = Curve::segment(HNumber::new(-1.0, 0.5), HNumber::new(2.0, 1.5));
        let r = integrate(&square(), &c, DEFAULT_QUAD_TOL).unwrap().value.unwrap();
        let rr = integrate(&square(), &c.reversed(), DEFAULT_QUAD_TOL)
            .unwrap()
            .value
            .unwrap();
        assert!((r + rr).euclid_norm() < 1e-12);
    }

    #[test]
    fn splitting_a_curve_is_additive() {
        let c = Curve::ellipse(HNumber::ZERO, 2.0, 1.0);
        let whole = integrate(&exp_field(), &c, DEFAULT_QUAD_TOL).unwrap().value.unwrap();
        let (a, b) = c.split_at(1.234).unwrap();
        let sum = integrate(&exp_field(), &a, DEFAULT_QUAD_TOL).unwrap().value.unwrap()
            + integrate(&exp_field(), &b, DEFAULT_QUAD_TOL).unwrap().value.unwrap();
        assert!((whole - sum).euclid_norm() < 2.0 * DEFAULT_QUAD_TOL + 1e-12);
    }

    #[test]
    fn integrate_rejects_mismatched_curves() {
        let hyper = Curve::unit_hyperbola(true);
        assert!(matches!(
            integrate(&square(), &hyper, 1e-9),
            Err(ContourError::UnsupportedCurve(_))
        ));
        let with_singular = Curve::with_options(
            |t| t.cos(),
            |t| t.sin(),
            None,
            None,
            (0.0, 2.0 * PI),
            vec![PI / 4.0],
            true,
        )
        .unwrap();
        assert!(matches!(
            integrate(&inv(), &with_singular, 1e-9),
            Err(ContourError::UnsupportedCurve(_))
        ));
        assert!(matches!(
            integrate_pv(&inv(), &Curve::circle(HNumber::ZERO, 1.0), 1e-6),
            Err(ContourError::UnsupportedCurve(_))
        ));
    }

    #[test]
    fn integrand_singular_on_the_curve_is_a_domain_error() {
        // The unit circle crosses the diagonals, where 1/z blows up.
        let c = Curve::circle(HNumber::ZERO, 1.0);
        let r = integrate(&inv(), &c, 1e-9);
        assert!(matches!(r, Err(ContourError::EvaluationDomain { .. })));
    }

    fn pv_circle() -> Curve {
        Curve::with_options(
            |t| t.cos(),
            |t| t.sin(),
            Some(Box::new(|t| -t.sin())),
            Some(Box::new(|t| t.cos())),
            (0.0, 2.0 * PI),
            vec![PI / 4.0, 3.0 * PI / 4.0, 5.0 * PI / 4.0, 7.0 * PI / 4.0],
            true,
        )
        .unwrap()
    }

    #[test]
    fn principal_value_of_the_cauchy_kernel_counterexample() {
        // f = (z^2 + 1)/z on the unit circle.
        let f = Field2::from_fallible_map(|z| (z * z + HNumber::ONE).div(z));
        let r = integrate_pv(&f, &pv_circle(), 1e-6).unwrap();
        assert_eq!(r.status, IntegralStatus::PrincipalValue);
        assert!(r.value.unwrap().euclid_norm() < 1e-6);
    }

    #[test]
    fn pv_sub_integrals_vanish_separately() {
        // Along the parameter line the real pullback is just u(t), so the
        // two scalar integrands I1 and I2 can be fed in directly.
        let line = Curve::with_options(
            |t| t,
            |_| 0.0,
            Some(Box::new(|_| 1.0)),
            Some(Box::new(|_| 0.0)),
            (0.0, 2.0 * PI),
            vec![PI / 4.0, 3.0 * PI / 4.0, 5.0 * PI / 4.0, 7.0 * PI / 4.0],
            false,
        )
        .unwrap();
        let f1 = Field2::new(|t, _| t.sin() * t.cos() / (2.0 * t).cos(), |_, _| 0.0);
        let r1 = integrate_pv(&f1, &line, 1e-6).unwrap();
        assert!(r1.value.unwrap().euclid_norm() < 1e-6, "I1 = {:?}", r1.value);
        let f2 = Field2::new(|t, _| 1.0 / (2.0 * t).cos(), |_, _| 0.0);
        let r2 = integrate_pv(&f2, &line, 1e-6).unwrap();
        assert!(r2.value.unwrap().euclid_norm() < 1e-6, "I2 = {:?}", r2.value);
    }

    #[test]
    fn pv_reproduces_a_nonzero_offset_principal_value() {
        // PV of dt/t over [-1, 2] is ln 2.
        let line = Curve::with_options(
            |t| t,
            |_| 0.0,
            Some(Box::new(|_| 1.0)),
            Some(Box::new(|_| 0.0)),
            (-1.0, 2.0),
            vec![0.0],
            false,
        )
        .unwrap();
        let f = Field2::new(|t, _| 1.0 / t, |_, _| 0.0);
        let r = integrate_pv(&f, &line, 1e-7).unwrap();
        let got = r.value.unwrap();
        assert!((got.re - 2.0f64.ln()).abs() < 1e-7, "got {got}");
        assert!(got.im.abs() < 1e-9);
    }

    #[test]
    fn pv_is_invariant_under_parameter_shift() {
        let f = Field2::from_fallible_map(|z| (z * z + HNumber::ONE).div(z));
        let shifted = Curve::with_options(
            |t| t.cos(),
            |t| t.sin(),
            Some(Box::new(|t| -t.sin())),
            Some(Box::new(|t| t.cos())),
            (2.0 * PI, 4.0 * PI),
            vec![
                2.0 * PI + PI / 4.0,
                2.0 * PI + 3.0 * PI / 4.0,
                2.0 * PI + 5.0 * PI / 4.0,
                2.0 * PI + 7.0 * PI / 4.0,
            ],
            true,
        )
        .unwrap();
        let a = integrate_pv(&f, &pv_circle(), 1e-6).unwrap().value.unwrap();
        let b = integrate_pv(&f, &shifted, 1e-6).unwrap().value.unwrap();
        assert!((a - b).euclid_norm() < 1e-8);
    }

    #[test]
    fn improper_integrals_of_entire_functions_diverge_on_the_hyperbola() {
        let c1 = Curve::unit_hyperbola(true);
        for f in [exp_field(), square()] {
            let r = integrate_improper(&f, &c1, &DEFAULT_LADDER, 1e-9).unwrap();
            assert_eq!(r.status, IntegralStatus::Divergent);
            assert!(r.value.is_none());
        }
    }

    #[test]
    fn improper_integral_of_zero_field_converges() {
        let zero = Field2::from_map(|_| HNumber::ZERO);
        let r = integrate_improper(&zero, &Curve::unit_hyperbola(true), &DEFAULT_LADDER, 1e-9)
            .unwrap();
        assert_eq!(r.status, IntegralStatus::Converged);
        assert_eq!(r.value.unwrap(), HNumber::ZERO);
    }

    #[test]
    fn improper_gaussian_integral_converges_to_sqrt_pi() {
        let line = Curve::with_options(
            |t| t,
            |_| 0.0,
            Some(Box::new(|_| 1.0)),
            Some(Box::new(|_| 0.0)),
            (f64::NEG_INFINITY, f64::INFINITY),
            Vec::new(),
            false,
        )
        .unwrap();
        let f = Field2::new(|x, _| (-x * x).exp(), |_, _| 0.0);
        let r = integrate_improper(&f, &line, &DEFAULT_LADDER, 1e-9).unwrap();
        assert_eq!(r.status, IntegralStatus::Converged);
        assert!((r.value.unwrap().re - PI.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn combined_difference_cancels_before_the_limit() {
        let f = Field2::from_fallible_map(|z| (z * z + HNumber::ONE).div(z));
        let c1 = Curve::unit_hyperbola(true);
        let c2 = Curve::unit_hyperbola(false);
        let r = integrate_combined(
            &[
                CombinedTerm { field: &f, curve: &c1, sign: 1.0 },
                CombinedTerm { field: &f, curve: &c2, sign: -1.0 },
            ],
            &DEFAULT_LADDER,
            1e-9,
        )
        .unwrap();
        assert_eq!(r.status, IntegralStatus::Converged);
        assert!(r.value.unwrap().euclid_norm() < 1e-9);
        // (1/2pi i) * 0 = 0 differs from f(0) = 1.
        let scaled = r.value.unwrap() * HNumber::new(0.0, 1.0 / (2.0 * PI));
        assert!((scaled - HNumber::ONE).euclid_norm() > 0.5);
    }

    #[test]
    fn combined_sum_diverges() {
        let f = Field2::from_fallible_map(|z| (z * z + HNumber::ONE).div(z));
        let c1 = Curve::unit_hyperbola(true);
        let c2 = Curve::unit_hyperbola(false);
        let r = integrate_combined(
            &[
                CombinedTerm { field: &f, curve: &c1, sign: 1.0 },
                CombinedTerm { field: &f, curve: &c2, sign: 1.0 },
            ],
            &DEFAULT_LADDER,
            1e-9,
        )
        .unwrap();
        assert_eq!(r.status, IntegralStatus::Divergent);
    }

    #[test]
    fn combined_opposite_signs_on_a_finite_curve_cancel() {
        let c = Curve::ellipse(HNumber::ZERO, 1.0, 1.0);
        let f = exp_field();
        let r = integrate_combined(
            &[
                CombinedTerm { field: &f, curve: &c, sign: 1.0 },
                CombinedTerm { field: &f, curve: &c, sign: -1.0 },
            ],
            &DEFAULT_LADDER,
            1e-10,
        )
        .unwrap();
        assert_eq!(r.status, IntegralStatus::Converged);
        assert_eq!(r.value.unwrap(), HNumber::ZERO);
    }

    #[test]
    fn ml_bound_is_tight_for_constants() {
        let field = Field2::from_map(|_| HNumber::ONE);
        let seg = Curve::segment(HNumber::ZERO, HNumber::new(3.0, 4.0));
        let (m, l) = ml_bound(&field, &seg, ML_SAMPLES).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
        assert!((l - 5.0).abs() < 1e-10);
        let norm = integrate(&field, &seg, DEFAULT_QUAD_TOL)
            .unwrap()
            .value
            .unwrap()
            .euclid_norm();
        assert!((norm - m * l).abs() < 1e-10);
    }

    #[test]
    fn ml_bound_dominates_closed_integrals() {
        let ellipse = Curve::ellipse(HNumber::ZERO, 2.0, 1.0);
        for f in [square(), exp_field()] {
            let (m, l) = ml_bound(&f, &ellipse, ML_SAMPLES).unwrap();
            let norm = integrate(&f, &ellipse, DEFAULT_QUAD_TOL)
                .unwrap()
                .value
                .unwrap()
                .euclid_norm();
            assert!(norm <= m * l);
        }
    }

    #[test]
    fn result_json_mirrors_the_fields() {
        let r = IntegralResult::converged(HNumber::new(0.0, 1.0), 1e-12, 42);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains(r#""status":"Converged""#));
        assert!(s.contains(r#""panels":42"#));
        let d = IntegralResult::divergent(7);
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains(r#""value":null"#));
    }
}
