//! Power-series elementary functions on the ring: exp, cosh, sinh.
//!
//! Each series is summed until the Euclidean norm of the current term drops
//! below the configured tolerance; factorial decay makes that a sound tail
//! bound at desk scale. Large arguments go through argument halving.

use crate::number::HNumber;

/// Norm threshold above which `exp` switches to argument scaling.
const SCALING_THRESHOLD: f64 = 20.0;

/// Termination policy for the power series.
#[derive(Clone, Copy, Debug)]
pub struct SeriesConfig {
    /// Absolute tail bound: stop once the current term norm falls below it.
    pub tol: f64,
    pub max_terms: usize,
}

impl SeriesConfig {
    pub fn new(tol: f64, max_terms: usize) -> Self {
        assert!(tol > 0.0, "series tolerance must be positive");
        assert!(max_terms >= 8, "series needs at least 8 terms");
        SeriesConfig { tol, max_terms }
    }
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig { tol: 1e-15, max_terms: 256 }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeriesError {
    #[error("series did not reach tolerance {tol:e} within {max_terms} terms")]
    MaxTermsExceeded { tol: f64, max_terms: usize },
}

fn exp_series(z: HNumber, cfg: &SeriesConfig) -> Result<HNumber, SeriesError> {
    let mut term = HNumber::ONE;
    let mut sum = HNumber::ONE;
    for n in 1..=cfg.max_terms {
        term = (term * z).scale(1.0 / n as f64);
        sum += term;
        if term.euclid_norm() < cfg.tol {
            return Ok(sum);
        }
    }
    Err(SeriesError::MaxTermsExceeded { tol: cfg.tol, max_terms: cfg.max_terms })
}

/// `exp(z) = sum z^n / n!`; converges everywhere on the ring.
pub fn exp(z: HNumber, cfg: &SeriesConfig) -> Result<HNumber, SeriesError> {
    let norm = z.euclid_norm();
    if norm <= SCALING_THRESHOLD {
        return exp_series(z, cfg);
    }
    // exp(z) = exp(z / 2^k)^(2^k) keeps every partial sum desk-sized.
    let k = (norm / SCALING_THRESHOLD).log2().ceil() as u32;
    let mut value = exp_series(z.scale(0.5f64.powi(k as i32)), cfg)?;
    for _ in 0..k {
        value *= value;
    }
    Ok(value)
}

/// `cosh(z) = sum z^(2n) / (2n)!`
pub fn cosh(z: HNumber, cfg: &SeriesConfig) -> Result<HNumber, SeriesError> {
    if z.euclid_norm() > SCALING_THRESHOLD {
        let (p, m) = (exp(z, cfg)?, exp(-z, cfg)?);
        return Ok((p + m).scale(0.5));
    }
    let z2 = z * z;
    let mut term = HNumber::ONE;
    let mut sum = HNumber::ONE;
    for n in 0..cfg.max_terms {
        let k = 2.0 * n as f64;
        term = (term * z2).scale(1.0 / ((k + 1.0) * (k + 2.0)));
        sum += term;
        if term.euclid_norm() < cfg.tol {
            return Ok(sum);
        }
    }
    Err(SeriesError::MaxTermsExceeded { tol: cfg.tol, max_terms: cfg.max_terms })
}

/// `sinh(z) = sum z^(2n+1) / (2n+1)!`
pub fn sinh(z: HNumber, cfg: &SeriesConfig) -> Result<HNumber, SeriesError> {
    if z.euclid_norm() > SCALING_THRESHOLD {
        let (p, m) = (exp(z, cfg)?, exp(-z, cfg)?);
        return Ok((p - m).scale(0.5));
    }
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for n in 0..cfg.max_terms {
        let k = 2.0 * n as f64;
        term = (term * z2).scale(1.0 / ((k + 2.0) * (k + 3.0)));
        sum += term;
        if term.euclid_norm() < cfg.tol {
            return Ok(sum);
        }
    }
    Err(SeriesError::MaxTermsExceeded { tol: cfg.tol, max_terms: cfg.max_terms })
}
