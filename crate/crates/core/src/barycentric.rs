//! Douady–Earle (conformal barycenter) extension of circle homeomorphisms.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::circle::{forward, frequency};

/// Default sample count for boundary maps.
pub const DEFAULT_SAMPLES: usize = 512;
const MAX_ITER: usize = 100;
/// Barycenter residual accepted by the solver.
pub const RESIDUAL_TOL: f64 = 1e-10;
const TARGET_TOL: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BarycentricError {
    #[error("need at least 4 samples, got {0}")]
    TooFewSamples(usize),
    #[error("lift not strictly increasing at sample {0}")]
    NotMonotone(usize),
    #[error("lift does not have degree 1")]
    NotDegreeOne,
    #[error("point {0} is not inside the unit disk")]
    OutsideDisk(Complex64),
    #[error("Mobius parameter |a| = {0} must be < 1")]
    BadMobius(f64),
    #[error("Newton iteration did not converge after {iterations} steps (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("finite-difference step too large for z = {0}")]
    StepTooLarge(Complex64),
    #[error("holomorphic derivative vanishes (|f_z| = {0:.3e})")]
    DegenerateDerivative(f64),
}

/// `z -> e^{i psi} (z - a) / (1 - conj(a) z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskMobius {
    pub a: Complex64,
    pub psi: f64,
}

impl DiskMobius {
    pub fn new(a: Complex64, psi: f64) -> Result<Self, BarycentricError> {
        if !(a.norm() < 1.0) {
            return Err(BarycentricError::BadMobius(a.norm()));
        }
        Ok(Self { a, psi })
    }

    pub fn identity() -> Self {
        Self { a: Complex64::new(0.0, 0.0), psi: 0.0 }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        Complex64::from_polar(1.0, self.psi) * (z - self.a) / (1.0 - self.a.conj() * z)
    }

    /// Inverse map: `(e^{-i psi} w + a) / (1 + conj(a) e^{-i psi} w)`.
    pub fn inverse(&self) -> Self {
        Self { a: -self.a * Complex64::from_polar(1.0, self.psi), psi: -self.psi }
    }
}

/// An orientation-preserving circle homeomorphism sampled at
/// `phi_k = 2 pi k / N`, stored as its lift `theta_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleHomeo {
    lift: Vec<f64>,
    /// Fourier coefficients of the periodic part `theta(phi) - phi`.
    #[serde(skip)]
    disp: Vec<Complex64>,
}

impl CircleHomeo {
    pub fn new(lift: Vec<f64>) -> Result<Self, BarycentricError> {
        let n = lift.len();
        if n < 4 {
            return Err(BarycentricError::TooFewSamples(n));
        }
        for k in 1..n {
            if !(lift[k] > lift[k - 1]) {
                return Err(BarycentricError::NotMonotone(k));
            }
        }
        if !(lift[n - 1] < lift[0] + 2.0 * PI) {
            return Err(BarycentricError::NotMonotone(0));
        }
        let phis = grid_angles(n);
        let d: Vec<Complex64> = lift.iter().zip(&phis).map(|(t, p)| Complex64::new(t - p, 0.0)).collect();
        Ok(Self { lift, disp: forward(&d) })
    }

    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self, BarycentricError> {
        Self::new(grid_angles(n).into_iter().map(f).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::new(grid_angles(n)).expect("identity lift is valid")
    }

    /// Boundary values of a disk automorphism.
    pub fn from_mobius(m: &DiskMobius, n: usize) -> Self {
        Self::from_boundary(n, |phi| m.apply(Complex64::from_polar(1.0, phi))).expect("Mobius maps are homeomorphisms")
    }

    /// Lifts `phi -> arg f(e^{i phi})` continuously, starting in `(-pi, pi]`.
    pub fn from_boundary(n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self, BarycentricError> {
        let phis = grid_angles(n);
        let mut lift = Vec::with_capacity(n);
        let mut prev = f(phis[0]);
        lift.push(prev.arg());
        for &p in &phis[1..] {
            let cur = f(p);
            let step = (cur / prev).arg();
            lift.push(lift.last().unwrap() + step);
            prev = cur;
        }
        let closing = (f(phis[0]) / prev).arg();
        if ((lift[n - 1] + closing - lift[0]) - 2.0 * PI).abs() > 1e-9 {
            return Err(BarycentricError::NotDegreeOne);
        }
        Self::new(lift)
    }

    pub fn len(&self) -> usize {
        self.lift.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lift.is_empty()
    }

    pub fn lift(&self) -> &[f64] {
        &self.lift
    }

    /// `h(e^{i phi_k})`.
    pub fn boundary_values(&self) -> Vec<Complex64> {
        self.lift.iter().map(|&t| Complex64::from_polar(1.0, t)).collect()
    }

    /// Lift at an arbitrary angle by trigonometric interpolation.
    pub fn lift_at(&self, phi: f64) -> f64 {
        let n = self.len();
        let mut acc = 0.0;
        for (k, c) in self.disp.iter().enumerate() {
            let m = frequency(k, n);
            if n.is_multiple_of(2) && k == n / 2 {
                acc += c.re * (m as f64 * phi).cos();
                continue;
            }
            acc += (c * Complex64::from_polar(1.0, m as f64 * phi)).re;
        }
        phi + acc
    }

    pub fn apply(&self, zeta: Complex64) -> Complex64 {
        Complex64::from_polar(1.0, self.lift_at(zeta.arg()))
    }

    /// `f o h o g` resampled on the same grid.
    pub fn conjugated(&self, f: &DiskMobius, g: &DiskMobius) -> Result<Self, BarycentricError> {
        Self::from_boundary(self.len(), |phi| f.apply(self.apply(g.apply(Complex64::from_polar(1.0, phi)))))
    }
}

fn grid_angles(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

/// Outcome of a barycenter solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Barycenter {
    pub w: Complex64,
    pub residual: f64,
    pub iterations: usize,
}

struct Equation {
    weights: Vec<f64>,
    h: Vec<Complex64>,
}

impl Equation {
    fn new(h: &CircleHomeo, z: Complex64) -> Self {
        let n = h.len();
        let s = 1.0 - z.norm_sqr();
        let mut weights: Vec<f64> =
            grid_angles(n).into_iter().map(|p| s / (Complex64::from_polar(1.0, p) - z).norm_sqr()).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        Self { weights, h: h.boundary_values() }
    }

    fn value(&self, w: Complex64) -> Complex64 {
        self.weights.iter().zip(&self.h).map(|(p, h)| (h - w) / (1.0 - w.conj() * h) * p).sum()
    }

    /// `F`, `dF/dw`, `dF/dw-bar`.
    fn jet(&self, w: Complex64) -> (Complex64, Complex64, Complex64) {
        let (mut f, mut a, mut b) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for (p, h) in self.weights.iter().zip(&self.h) {
            let d = 1.0 - w.conj() * h;
            f += (h - w) / d * *p;
            a -= *p / d;
            b += (h - w) * h / (d * d) * *p;
        }
        (f, a, b)
    }
}

/// Douady–Earle extension `E(h)(z)`.
pub fn barycentric_extend(h: &CircleHomeo, z: Complex64) -> Result<Barycenter, BarycentricError> {
    if !(z.norm() < 1.0) {
        return Err(BarycentricError::OutsideDisk(z));
    }
    let eq = Equation::new(h, z);
    // Poisson average of h
    let mut w: Complex64 = eq.weights.iter().zip(&eq.h).map(|(p, h)| h * *p).sum();
    let mut res = eq.value(w).norm();
    for it in 0..MAX_ITER {
        if res <= TARGET_TOL {
            return Ok(Barycenter { w, residual: res, iterations: it });
        }
        let (f, a, b) = eq.jet(w);
        let det = a.norm_sqr() - b.norm_sqr();
        let delta = (-a.conj() * f + b * f.conj()) / det;
        let mut s = 1.0;
        let mut moved = false;
        for _ in 0..40 {
            let cand = w + delta * s;
            if cand.norm() < 1.0 {
                let r = eq.value(cand).norm();
                if r < res {
                    w = cand;
                    res = r;
                    moved = true;
                    break;
                }
            }
            s *= 0.5;
        }
        if !moved {
            break;
        }
    }
    if res <= RESIDUAL_TOL {
        Ok(Barycenter { w, residual: res, iterations: MAX_ITER })
    } else {
        Err(BarycentricError::NoConvergence { iterations: MAX_ITER, residual: res })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NaturalityReport {
    pub samples: usize,
    pub max_residual: f64,
    pub passed: bool,
}

/// Naturality residual threshold.
pub const NATURALITY_TOL: f64 = 1e-8;

/// `max |E(f o h o g)(z) - f(E(h)(g(z)))|` over the sample points.
pub fn check_conformal_naturality(
    h: &CircleHomeo,
    f: &DiskMobius,
    g: &DiskMobius,
    points: &[Complex64],
) -> Result<NaturalityReport, BarycentricError> {
    let fhg = h.conjugated(f, g)?;
    let mut worst: f64 = 0.0;
    for &z in points {
        let lhs = barycentric_extend(&fhg, z)?.w;
        let rhs = f.apply(barycentric_extend(h, g.apply(z))?.w);
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(NaturalityReport { samples: points.len(), max_residual: worst, passed: worst < NATURALITY_TOL })
}

/// `E(h)_{z-bar} / E(h)_z` by central differences with spacing `step`.
pub fn beltrami_of_extension(h: &CircleHomeo, z: Complex64, step: f64) -> Result<Complex64, BarycentricError> {
    if !(z.norm() + 2.0 * step < 1.0) {
        return Err(BarycentricError::StepTooLarge(z));
    }
    let e = |p: Complex64| barycentric_extend(h, p).map(|b| b.w);
    let i = Complex64::new(0.0, 1.0);
    let fx = (e(z + step)? - e(z - step)?) / (2.0 * step);
    let fy = (e(z + i * step)? - e(z - i * step)?) / (2.0 * step);
    let fz = (fx - i * fy) * 0.5;
    let fzb = (fx + i * fy) * 0.5;
    if fz.norm() < 1e-12 {
        return Err(BarycentricError::DegenerateDerivative(fz.norm()));
    }
    Ok(fzb / fz)
}
