//! Shared inputs for the benchmark targets.

use hyperbolic::curve::Curve;
use hyperbolic::diff::Field2;
use hyperbolic::number::HNumber;
use hyperbolic::specfun::{self, SeriesConfig};

pub fn sample_points(n: usize) -> Vec<HNumber> {
    use std::f64::consts::TAU;
    (0..n)
        .map(|k| {
            let t = k as f64 / n as f64;
            HNumber::new(2.0 * (TAU * t).cos() + 0.1, 1.3 * (2.0 * TAU * t).sin())
        })
        .collect()
}

pub fn exp_field() -> Field2 {
    Field2::from_fallible_map(|z| specfun::exp(z, &SeriesConfig::default()))
}

pub fn bench_ellipse() -> Curve {
    Curve::ellipse(HNumber::ZERO, 2.0, 1.0)
}
