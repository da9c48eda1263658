//! Unit-sphere areas, the Cauchy kernel, and circle flux integrals.

use super::algebra::CliffordError;
use std::f64::consts::PI;

/// Gamma at half-integer arguments by recursion from `G(1/2)` and `G(1)`.
///
/// `two_x` is twice the argument, so `gamma_half(3)` is `G(3/2)`.
fn gamma_half(two_x: u32) -> f64 {
    match two_x {
        0 => f64::INFINITY,
        1 => PI.sqrt(),
        2 => 1.0,
        t => (t as f64 / 2.0 - 1.0) * gamma_half(t - 2),
    }
}

/// Surface area of the unit sphere in `R^n`: `2 pi^(n/2) / Gamma(n/2)`.
pub fn sigma_n(n: u32) -> f64 {
    assert!(n >= 1, "sphere dimension must be at least 1");
    2.0 * PI.powf(n as f64 / 2.0) / gamma_half(n)
}

/// The Cauchy kernel `e(x) = -x / (sigma_n |x|^n)`, componentwise.
pub fn kernel_e(x: &[f64], n: u32) -> Result<Vec<f64>, CliffordError> {
    assert_eq!(x.len(), n as usize, "kernel dimension mismatch");
    let norm_sq: f64 = x.iter().map(|c| c * c).sum();
    if norm_sq == 0.0 {
        return Err(CliffordError::ZeroArgument);
    }
    let scale = -1.0 / (sigma_n(n) * norm_sq.powf(n as f64 / 2.0));
    Ok(x.iter().map(|&c| c * scale).collect())
}

/// Outward flux of the Euclidean Cauchy kernel `(r - r0) / |r - r0|^2`
/// over the circle of the given radius; approaches `2 pi` at any radius.
pub fn green_flux(center: (f64, f64), radius: f64, samples: usize) -> f64 {
    assert!(radius > 0.0, "flux circle needs a positive radius");
    let n = samples.max(8);
    let dtheta = 2.0 * PI / n as f64;
    let mut flux = 0.0;
    for k in 0..n {
        let theta = (k as f64 + 0.5) * dtheta;
        let (nx, ny) = (theta.cos(), theta.sin());
        let pos = (center.0 + radius * nx, center.1 + radius * ny);
        let (dx, dy) = (pos.0 - center.0, pos.1 - center.1);
        let q = dx * dx + dy * dy;
        let (kx, ky) = (dx / q, dy / q);
        flux += (kx * nx + ky * ny) * radius * dtheta;
    }
    flux
}

/// Scalar-part flux of the hyperbolic Cauchy kernel image
/// `(dx e0 - dy e1) / (dx^2 - dy^2)` over a circle around the center.
///
/// The Minkowski-plane Dirac operator has scalar part
/// `-d/dx K0 + d/dy K1 = div(-K0, K1)`, so the matching boundary flux is
/// `(-K0, K1) . n`. The kernel is singular where the circle crosses the
/// diagonals; symmetric midpoint sampling realizes the principal value,
/// which vanishes instead of reproducing `2 pi`.
pub fn hyperbolic_kernel_flux(center: (f64, f64), radius: f64, samples: usize) -> f64 {
    assert!(radius > 0.0, "flux circle needs a positive radius");
    let mut n = samples.max(8);
    // Multiples of 8 keep the sample set symmetric about every diagonal.
    n += (8 - n % 8) % 8;
    let dtheta = 2.0 * PI / n as f64;
    let mut flux = 0.0;
    for k in 0..n {
        let theta = (k as f64 + 0.5) * dtheta;
        let (nx, ny) = (theta.cos(), theta.sin());
        let pos = (center.0 + radius * nx, center.1 + radius * ny);
        let (dx, dy) = (pos.0 - center.0, pos.1 - center.1);
        let q = (dx - dy) * (dx + dy);
        if q == 0.0 {
            continue;
        }
        let (k0, k1) = (dx / q, -dy / q);
        flux += (-k0 * nx + k1 * ny) * radius * dtheta;
    }
    flux
}

/// Finite-difference norm of the Euclidean-plane Dirac derivative of the
/// Euclidean Cauchy kernel at `at`; vanishes away from the center.
pub fn euclidean_kernel_dirac_residual(center: (f64, f64), at: (f64, f64)) -> f64 {
    let k0 = move |x: f64, y: f64| {
        let (dx, dy) = (x - center.0, y - center.1);
        dx / (dx * dx + dy * dy)
    };
    let k1 = move |x: f64, y: f64| {
        let (dx, dy) = (x - center.0, y - center.1);
        dy / (dx * dx + dy * dy)
    };
    // Scalar part d/dx K0 + d/dy K1, bivector part d/dx K1 - d/dy K0.
    let h = 1e-5;
    let ddx = |f: &dyn Fn(f64, f64) -> f64| (f(at.0 + h, at.1) - f(at.0 - h, at.1)) / (2.0 * h);
    let ddy = |f: &dyn Fn(f64, f64) -> f64| (f(at.0, at.1 + h) - f(at.0, at.1 - h)) / (2.0 * h);
    let scalar = ddx(&k0) + ddy(&k1);
    let bivector = ddx(&k1) - ddy(&k0);
    scalar.hypot(bivector)
}

/// Finite-difference norm of the Minkowski-plane Dirac derivative of the
/// hyperbolic kernel image at `at`; vanishes off the diagonals through the
/// center.
pub fn hyperbolic_kernel_dirac_residual(center: (f64, f64), at: (f64, f64)) -> f64 {
    let k0 = move |x: f64, y: f64| {
        let (dx, dy) = (x - center.0, y - center.1);
        dx / ((dx - dy) * (dx + dy))
    };
    let k1 = move |x: f64, y: f64| {
        let (dx, dy) = (x - center.0, y - center.1);
        -dy / ((dx - dy) * (dx + dy))
    };
    // Scalar part -d/dx K0 + d/dy K1, bivector part d/dx K1 - d/dy K0.
    let h = 1e-5;
    let ddx = |f: &dyn Fn(f64, f64) -> f64| (f(at.0 + h, at.1) - f(at.0 - h, at.1)) / (2.0 * h);
    let ddy = |f: &dyn Fn(f64, f64) -> f64| (f(at.0, at.1 + h) - f(at.0, at.1 - h)) / (2.0 * h);
    let scalar = -ddx(&k0) + ddy(&k1);
    let bivector = ddx(&k1) - ddy(&k0);
    scalar.hypot(bivector)
}
