//! Functions on the unit circle sampled on a uniform power-of-two grid.
//!
//! Samples sit at `xi_k = exp(2 pi i k / N)`. Fourier coefficients `c_m`,
//! `m in [-N/2, N/2)`, are kept in FFT order: slot `k` holds `m = k` for
//! `k < N/2` and `m = k - N` otherwise. All transforms act in coefficient
//! space.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use thiserror::Error;

/// Fraction of spectral energy allowed in `|m| >= N/4` before the band-limit
/// guard complains.
pub const BAND_LIMIT_FRACTION: f64 = 0.01;

/// Default relative tolerance for "real" and "analytic" checks.
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircleError {
    #[error("sample count {0} must be a power of two >= 64")]
    BadSize(usize),
    #[error("expected a real function; relative imaginary energy {0:.3e}")]
    NotReal(f64),
    #[error("point {0} is not inside the unit disk")]
    OutsideDisk(Complex64),
    #[error("analyticity residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotAnalytic { residual: f64, tol: f64 },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plans(n: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        (p.plan_fft_forward(n), p.plan_fft_inverse(n))
    })
}

/// Samples -> coefficients (`c_m = 1/N sum_k f_k xi_k^-m`).
pub fn forward(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    if n == 0 {
        return buf;
    }
    let (fwd, _) = plans(n);
    fwd.process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

/// Coefficients -> samples.
pub fn inverse(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len();
    let mut buf = coeffs.to_vec();
    if n == 0 {
        return buf;
    }
    let (_, inv) = plans(n);
    inv.process(&mut buf);
    buf
}

/// Frequency of FFT slot `k` for length `n`.
pub fn frequency(k: usize, n: usize) -> i64 {
    if k < n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

fn slot(m: i64, n: usize) -> Option<usize> {
    let half = (n / 2) as i64;
    if m >= -half && m < half {
        Some(if m >= 0 { m as usize } else { (m + n as i64) as usize })
    } else {
        None
    }
}

/// Derivative with respect to the angle of a periodic sequence, computed
/// spectrally. Works for any length.
pub fn spectral_derivative(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut c = forward(samples);
    for (k, ck) in c.iter_mut().enumerate() {
        let m = frequency(k, n);
        // the Nyquist mode has no well-defined derivative
        *ck = if n.is_multiple_of(2) && k == n / 2 { Complex64::new(0.0, 0.0) } else { *ck * Complex64::new(0.0, m as f64) };
    }
    inverse(&c)
}

/// Hilbert multiplier applied in place to coefficients of a real function:
/// `c_m -> -i sgn(m) c_m`, with the mean and the Nyquist mode sent to zero.
pub(crate) fn apply_conjugate(coeffs: &mut [Complex64]) {
    let n = coeffs.len();
    for (k, c) in coeffs.iter_mut().enumerate() {
        let m = frequency(k, n);
        *c = if m == 0 || (k == n / 2) {
            Complex64::new(0.0, 0.0)
        } else if m > 0 {
            Complex64::new(c.im, -c.re)
        } else {
            Complex64::new(-c.im, c.re)
        };
    }
}

/// Zeroes the negative frequencies (including Nyquist).
pub(crate) fn project_analytic(coeffs: &mut [Complex64]) {
    let n = coeffs.len();
    coeffs[n / 2..].iter_mut().for_each(|c| *c = Complex64::new(0.0, 0.0));
}

pub(crate) fn negative_energy_ratio(coeffs: &[Complex64]) -> f64 {
    let n = coeffs.len();
    let total: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    if total == 0.0 {
        return 0.0;
    }
    let neg: f64 = coeffs[n / 2..].iter().map(|c| c.norm_sqr()).sum();
    (neg / total).sqrt()
}

/// Sample locations `exp(2 pi i k / n)`.
pub fn unit_grid(n: usize) -> Vec<Complex64> {
    (0..n).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)).collect()
}

/// A sampled function on the unit circle with its Fourier coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFunction {
    samples: Vec<Complex64>,
    coeffs: Vec<Complex64>,
}

impl BoundaryFunction {
    fn check_size(n: usize) -> Result<(), CircleError> {
        if n < 64 || !n.is_power_of_two() {
            return Err(CircleError::BadSize(n));
        }
        Ok(())
    }

    pub fn from_samples(samples: Vec<Complex64>) -> Result<Self, CircleError> {
        Self::check_size(samples.len())?;
        let coeffs = forward(&samples);
        Ok(Self { samples, coeffs })
    }

    pub fn from_coefficients(coeffs: Vec<Complex64>) -> Result<Self, CircleError> {
        Self::check_size(coeffs.len())?;
        let samples = inverse(&coeffs);
        Ok(Self { samples, coeffs })
    }

    pub fn from_real(values: &[f64]) -> Result<Self, CircleError> {
        Self::from_samples(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Samples `f(xi_k)` for a closure on the unit circle.
    pub fn from_fn(n: usize, f: impl Fn(Complex64) -> Complex64) -> Result<Self, CircleError> {
        Self::check_size(n)?;
        Self::from_samples(unit_grid(n).into_iter().map(f).collect())
    }

    pub fn constant(n: usize, value: Complex64) -> Result<Self, CircleError> {
        Self::from_samples(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Coefficients in FFT order.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `c_m`, zero outside the represented band.
    pub fn coefficient(&self, m: i64) -> Complex64 {
        slot(m, self.len()).map_or(Complex64::new(0.0, 0.0), |k| self.coeffs[k])
    }

    pub fn mean(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn real_part(&self) -> Vec<f64> {
        self.samples.iter().map(|c| c.re).collect()
    }

    /// Relative imaginary energy of the samples.
    pub fn imaginary_ratio(&self) -> f64 {
        let total: f64 = self.samples.iter().map(|c| c.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let im: f64 = self.samples.iter().map(|c| c.im * c.im).sum();
        (im / total).sqrt()
    }

    /// Energy fraction in the top quarter of the band (`|m| >= N/4`).
    pub fn spectral_tail_fraction(&self) -> f64 {
        let n = self.len();
        let total: f64 = self.coeffs.iter().map(|c| c.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let tail: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(k, _)| frequency(*k, n).unsigned_abs() as usize >= n / 4)
            .map(|(_, c)| c.norm_sqr())
            .sum();
        tail / total
    }

    /// Logs a warning when the band-limit guard trips; returns whether it did.
    pub fn band_limit_warning(&self, what: &str) -> bool {
        let frac = self.spectral_tail_fraction();
        let tripped = frac > BAND_LIMIT_FRACTION;
        if tripped {
            log::warn!("{what}: {:.2}% of spectral energy in the top quarter band", 100.0 * frac);
        }
        tripped
    }

    pub fn scale(&self, s: Complex64) -> BoundaryFunction {
        BoundaryFunction {
            samples: self.samples.iter().map(|c| c * s).collect(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &BoundaryFunction) -> Result<BoundaryFunction, CircleError> {
        if self.len() != other.len() {
            return Err(CircleError::SizeMismatch(self.len(), other.len()));
        }
        Ok(BoundaryFunction {
            samples: self.samples.iter().zip(&other.samples).map(|(a, b)| a + b).collect(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Writes `k,re,im` rows.
    pub fn write_samples_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["k", "re", "im"])?;
        for (k, c) in self.samples.iter().enumerate() {
            w.write_record([k.to_string(), c.re.to_string(), c.im.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes `m,re,im` rows, `m` ascending from `-N/2`.
    pub fn write_coefficients_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["m", "re", "im"])?;
        let half = (self.len() / 2) as i64;
        for m in -half..half {
            let c = self.coefficient(m);
            w.write_record([m.to_string(), c.re.to_string(), c.im.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// A boundary function certified to extend holomorphically to the disk.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticBoundaryFunction(BoundaryFunction);

impl AnalyticBoundaryFunction {
    pub fn certify(f: BoundaryFunction, tol: f64) -> Result<Self, CircleError> {
        let residual = analyticity_residual(&f);
        if residual > tol {
            return Err(CircleError::NotAnalytic { residual, tol });
        }
        Ok(Self(f))
    }

    /// Drops the negative-frequency part.
    pub fn project(f: &BoundaryFunction) -> Self {
        let mut c = f.coeffs.clone();
        project_analytic(&mut c);
        Self(BoundaryFunction::from_coefficients(c).expect("size already validated"))
    }

    pub fn inner(&self) -> &BoundaryFunction {
        &self.0
    }

    pub fn into_inner(self) -> BoundaryFunction {
        self.0
    }

    /// `sum_{m >= 0} c_m lambda^m`, for `|lambda| <= 1`.
    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        let half = self.0.len() / 2;
        self.0.coeffs[..half].iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * lambda + c)
    }
}

/// Conjugate function with mean-zero normalization.
pub fn hilbert_transform(f: &BoundaryFunction) -> Result<BoundaryFunction, CircleError> {
    let ratio = f.imaginary_ratio();
    if ratio > DEFAULT_TOL {
        return Err(CircleError::NotReal(ratio));
    }
    f.band_limit_warning("hilbert_transform");
    let mut c = f.coeffs.clone();
    apply_conjugate(&mut c);
    // the output is real up to round-off; drop the round-off
    let samples: Vec<Complex64> = inverse(&c).into_iter().map(|s| Complex64::new(s.re, 0.0)).collect();
    BoundaryFunction::from_samples(samples)
}

/// Harmonic extension `sum c_m |lambda|^|m| e^{i m arg lambda}`.
pub fn poisson_eval(f: &BoundaryFunction, lambda: Complex64) -> Result<Complex64, CircleError> {
    let rho = lambda.norm();
    if !(rho < 1.0) {
        return Err(CircleError::OutsideDisk(lambda));
    }
    let n = f.len();
    let unit = if rho > 0.0 { lambda / rho } else { Complex64::new(1.0, 0.0) };
    let mut pos = Complex64::new(0.0, 0.0);
    let mut neg = Complex64::new(0.0, 0.0);
    let conj_unit = unit.conj();
    let mut zp = Complex64::new(1.0, 0.0);
    let mut zn = Complex64::new(1.0, 0.0);
    let half = (n / 2) as i64;
    for m in 1..=half {
        zp *= lambda;
        zn *= conj_unit * rho;
        if m < half {
            pos += f.coefficient(m) * zp;
        }
        neg += f.coefficient(-m) * zn;
    }
    Ok(f.mean() + pos + neg)
}

/// Power-series evaluation for analytic boundary data.
pub fn cauchy_eval(f: &BoundaryFunction, lambda: Complex64, tol: f64) -> Result<Complex64, CircleError> {
    if lambda.norm() > 1.0 + 1e-14 {
        return Err(CircleError::OutsideDisk(lambda));
    }
    let residual = analyticity_residual(f);
    if residual > tol {
        return Err(CircleError::NotAnalytic { residual, tol });
    }
    let half = f.len() / 2;
    Ok(f.coeffs[..half].iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * lambda + c))
}

/// Relative l2 mass of the negative-frequency coefficients.
pub fn analyticity_residual(f: &BoundaryFunction) -> f64 {
    negative_energy_ratio(&f.coeffs)
}

/// Discrete Holder-1/2 quotient over all sample pairs.
pub fn holder_half_seminorm(f: &BoundaryFunction) -> f64 {
    let grid = unit_grid(f.len());
    let s = f.samples();
    let mut best: f64 = 0.0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let d = (grid[i] - grid[j]).norm();
            best = best.max((s[i] - s[j]).norm() / d.sqrt());
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real_fn(n: usize, f: impl Fn(f64) -> f64) -> BoundaryFunction {
        let vals: Vec<f64> = (0..n).map(|k| f(2.0 * PI * k as f64 / n as f64)).collect();
        BoundaryFunction::from_real(&vals).unwrap()
    }

    fn max_err(a: &BoundaryFunction, f: impl Fn(f64) -> f64) -> f64 {
        let n = a.len();
        a.samples()
            .iter()
            .enumerate()
            .map(|(k, v)| (v - Complex64::new(f(2.0 * PI * k as f64 / n as f64), 0.0)).norm())
            .fold(0.0, f64::max)
    }

    /// Conjugate function by direct quadrature of the conjugate Poisson kernel
    /// at radius `rho`, extrapolated to the circle: `Q_rho(t) = 2 rho sin t / (1 - 2 rho cos t + rho^2)`.
    fn conjugate_quadrature(f: &dyn Fn(f64) -> f64, theta: f64, rho: f64, m: usize) -> f64 {
        let mut acc = 0.0;
        for j in 0..m {
            let s = 2.0 * PI * j as f64 / m as f64;
            let t = theta - s;
            acc += f(s) * 2.0 * rho * t.sin() / (1.0 - 2.0 * rho * t.cos() + rho * rho);
        }
        acc / m as f64
    }

    #[test]
    fn sizes_validated() {
        assert_eq!(BoundaryFunction::from_samples(vec![Complex64::new(0.0, 0.0); 32]), Err(CircleError::BadSize(32)));
        assert_eq!(BoundaryFunction::from_samples(vec![Complex64::new(0.0, 0.0); 96]), Err(CircleError::BadSize(96)));
    }

    #[test]
    fn round_trip_consistency() {
        let f = BoundaryFunction::from_fn(128, |z| z * z + z.conj() * 0.3 + 2.0).unwrap();
        let back = BoundaryFunction::from_coefficients(f.coefficients().to_vec()).unwrap();
        let scale = f.sup_norm();
        for (a, b) in f.samples().iter().zip(back.samples()) {
            assert!((a - b).norm() < 1e-12 * scale);
        }
        assert!((f.coefficient(2) - 1.0).norm() < 1e-14);
        assert!((f.coefficient(-1) - 0.3).norm() < 1e-14);
    }

    #[test]
    fn hilbert_examples() {
        let n = 256;
        let c = real_fn(n, |_| 3.5);
        assert!(hilbert_transform(&c).unwrap().sup_norm() < 1e-14);
        for k in [1usize, 5, 17, 64] {
            let h = hilbert_transform(&real_fn(n, |t| (k as f64 * t).cos())).unwrap();
            assert!(max_err(&h, |t| (k as f64 * t).sin()) < 1e-10);
        }
        let h = hilbert_transform(&real_fn(n, f64::sin)).unwrap();
        assert!(max_err(&h, |t| -t.cos()) < 1e-12);
        let complex = BoundaryFunction::from_fn(n, |z| z).unwrap();
        assert!(matches!(hilbert_transform(&complex), Err(CircleError::NotReal(_))));
    }

    #[test]
    fn hilbert_matches_poisson_kernel_quadrature() {
        let n = 128;
        let f = |t: f64| (2.0 * t).cos() + 0.5 * (3.0 * t).sin() + 0.1;
        let h = hilbert_transform(&real_fn(n, f)).unwrap();
        // conjugate series at radius rho is sum rho^|m| (-i sgn m) c_m e^{imt}; compare at rho = 0.9
        for k in [0usize, 10, 40, 77] {
            let theta = 2.0 * PI * k as f64 / n as f64;
            let quad = conjugate_quadrature(&f, theta, 0.9, 4096);
            let series = 0.81 * (2.0 * theta).sin() - 0.5 * 0.729 * (3.0 * theta).cos();
            assert!((quad - series).abs() < 1e-10, "{quad} vs {series}");
            // boundary limit
            let exact = (2.0 * theta).sin() - 0.5 * (3.0 * theta).cos();
            assert!((h.samples()[k].re - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn poisson_examples() {
        let c = BoundaryFunction::constant(64, Complex64::new(2.0, -1.0)).unwrap();
        let z = Complex64::new(0.3, 0.4);
        assert!((poisson_eval(&c, z).unwrap() - Complex64::new(2.0, -1.0)).norm() < 1e-14);
        let f = real_fn(64, |t| (3.0 * t).cos() + t.sin().powi(2));
        let mean: Complex64 = f.samples().iter().sum::<Complex64>() / 64.0;
        assert!((poisson_eval(&f, Complex64::new(0.0, 0.0)).unwrap() - mean).norm() < 1e-14);
        let g = real_fn(64, |t| (3.0 * t).cos());
        assert!((poisson_eval(&g, Complex64::new(0.7, 0.0)).unwrap().re - 0.343).abs() < 1e-13);
        assert!(poisson_eval(&g, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn cauchy_examples() {
        let id = BoundaryFunction::from_fn(64, |z| z).unwrap();
        assert!((cauchy_eval(&id, Complex64::new(0.5, 0.0), 1e-10).unwrap() - 0.5).norm() < 1e-15);
        let zeta = Complex64::new(-1.0, 2.0);
        let c = BoundaryFunction::constant(64, zeta).unwrap();
        assert!((cauchy_eval(&c, Complex64::new(0.2, -0.9), 1e-10).unwrap() - zeta).norm() < 1e-14);
        let p = BoundaryFunction::from_fn(128, |z| 1.0 + z * 0.5 - z * z * z * Complex64::new(0.0, 0.2)).unwrap();
        for lam in [Complex64::new(0.1, 0.2), Complex64::new(-0.6, 0.3), Complex64::new(0.0, -0.95)] {
            let a = cauchy_eval(&p, lam, 1e-10).unwrap();
            let b = poisson_eval(&p, lam).unwrap();
            assert!((a - b).norm() < 1e-10);
        }
        let bad = BoundaryFunction::from_fn(64, |z| z.conj()).unwrap();
        assert!(matches!(cauchy_eval(&bad, Complex64::new(0.0, 0.0), 1e-8), Err(CircleError::NotAnalytic { .. })));
    }

    #[test]
    fn residual_examples() {
        assert!(analyticity_residual(&BoundaryFunction::from_fn(64, |z| z * z).unwrap()) < 1e-15);
        assert!((analyticity_residual(&BoundaryFunction::from_fn(64, |z| z.conj()).unwrap()) - 1.0).abs() < 1e-14);
        let r = analyticity_residual(&BoundaryFunction::from_fn(64, |z| z + z.conj()).unwrap());
        assert!((r - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn holder_examples() {
        assert_eq!(holder_half_seminorm(&BoundaryFunction::constant(64, Complex64::new(1.0, 1.0)).unwrap()), 0.0);
        let id = BoundaryFunction::from_fn(64, |z| z).unwrap();
        let s = holder_half_seminorm(&id);
        assert!(s <= 2f64.sqrt() + 1e-12 && s > 1.41);
        let twice = id.scale(Complex64::new(2.0, 0.0));
        assert!((holder_half_seminorm(&twice) - 2.0 * s).abs() < 1e-12);
    }

    #[test]
    fn band_limit_guard() {
        let low = real_fn(64, |t| t.cos());
        assert!(!low.band_limit_warning("low"));
        let high = real_fn(64, |t| (20.0 * t).cos());
        assert!(high.band_limit_warning("high"));
    }

    #[test]
    fn csv_dumps() {
        let f = BoundaryFunction::from_fn(64, |z| z).unwrap();
        let mut buf = Vec::new();
        f.write_samples_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("k,re,im\n0,1,0\n"));
        let mut buf = Vec::new();
        f.write_coefficients_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 65);
        assert!(text.lines().nth(1).unwrap().starts_with("-32,"));
    }

    #[test]
    fn derivative_of_circle() {
        let z = unit_grid(16);
        let d = spectral_derivative(&z);
        for (a, b) in z.iter().zip(&d) {
            assert!((b - a * Complex64::new(0.0, 1.0)).norm() < 1e-13);
        }
    }
}
