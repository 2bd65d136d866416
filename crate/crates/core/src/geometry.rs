//! Hyperbolic lengths and the short-generator extendability criterion.
//!
//! Curvature `-4` convention throughout: the disk carries the density
//! `(1 - |z|^2)^-1 |dz|`, half of the more common curvature `-1` density. In
//! this normalization the core curve of `{1 < |z| < R}` has length
//! `pi^2 / log R`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::circle::spectral_derivative;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("systole length must be non-negative, got {0}")]
    NegativeLength(f64),
    #[error("length bound must be positive, got {0}")]
    NonPositiveBound(f64),
    #[error("outer radius must exceed 1, got {0}")]
    BadRadius(f64),
    #[error("sample {index} at {point} is not strictly inside the annulus")]
    SampleOutside { index: usize, point: Complex64 },
}

/// `log(2 + sqrt 5)`, the cap in the bound.
pub fn length_bound_cap() -> f64 {
    (2.0 + 5f64.sqrt()).ln()
}

/// `{1 < |z| < R}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HyperbolicAnnulus {
    outer: f64,
}

impl HyperbolicAnnulus {
    pub fn new(outer: f64) -> Result<Self, GeometryError> {
        if !(outer > 1.0) || !outer.is_finite() {
            return Err(GeometryError::BadRadius(outer));
        }
        Ok(Self { outer })
    }

    pub fn outer_radius(&self) -> f64 {
        self.outer
    }

    /// Curvature `-4` density at `z`.
    pub fn density(&self, z: Complex64) -> f64 {
        let log_r = self.outer.ln();
        let m = z.norm();
        (PI / (2.0 * log_r)) / (m * (PI * m.ln() / log_r).sin())
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let m = z.norm();
        m > 1.0 && m < self.outer
    }
}

/// Systole input together with the derived bound `L(E)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LengthBound {
    pub systole: f64,
    pub bound: f64,
}

impl LengthBound {
    pub fn new(systole: f64) -> Result<Self, GeometryError> {
        Ok(Self { systole, bound: config_length_bound(systole)? })
    }
}

/// `min{ log(2 + sqrt 5), 1/2 log((l/pi)^2 + 1) }`.
pub fn config_length_bound(systole: f64) -> Result<f64, GeometryError> {
    if !(systole >= 0.0) {
        return Err(GeometryError::NegativeLength(systole));
    }
    let ratio = systole / PI;
    Ok(length_bound_cap().min(0.5 * (ratio * ratio).ln_1p()))
}

/// Outer radius beyond which every motion over `{1 < |z| < R}` extends.
pub fn annulus_extension_threshold(bound: f64) -> Result<f64, GeometryError> {
    if !(bound > 0.0) {
        return Err(GeometryError::NonPositiveBound(bound));
    }
    Ok((PI * PI / bound).exp())
}

pub fn annulus_core_length(outer: f64) -> Result<f64, GeometryError> {
    let a = HyperbolicAnnulus::new(outer)?;
    Ok(PI * PI / a.outer.ln())
}

/// Length of a sampled closed curve.
///
/// The samples are read as a uniformly parameterized periodic path. The
/// velocity comes from the spectral derivative of the samples and the
/// integrand `rho(c) |c'|` is summed with the trapezoidal rule, which is
/// spectrally accurate for smooth closed curves. A chord polygon would carry
/// an `O(n^-2)` geometric error of about `1e-6` on the `R = 2` core circle at
/// 4096 samples.
pub fn annulus_curve_length(outer: f64, curve: &[Complex64]) -> Result<f64, GeometryError> {
    let a = HyperbolicAnnulus::new(outer)?;
    if let Some((index, &point)) = curve.iter().enumerate().find(|(_, z)| !a.contains(**z)) {
        return Err(GeometryError::SampleOutside { index, point });
    }
    let n = curve.len();
    if n < 2 {
        return Ok(0.0);
    }
    let velocity = spectral_derivative(curve);
    let h = 2.0 * PI / n as f64;
    Ok(curve.iter().zip(&velocity).map(|(&z, v)| a.density(z) * v.norm()).sum::<f64>() * h)
}

/// True when every generator is strictly shorter than `L(E)`.
pub fn check_short_generator_criterion(lengths: &[f64], systole: f64) -> Result<bool, GeometryError> {
    let bound = config_length_bound(systole)?;
    Ok(lengths.iter().all(|&l| l < bound))
}

/// `n` equally spaced samples of `|z| = radius`.
pub fn circle_samples(radius: f64, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64))
        .collect()
}
