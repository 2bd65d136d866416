//! Radial structure for a finite-point motion over the disk.
//!
//! For each boundary parameter `xi` the plane carries a family of arcs
//! `l(xi, zeta)`, one for each `zeta = R e^{i theta}`, parameterized by the
//! modulus: `rho -> rho e^{i(theta + u(xi, rho, theta))}`. The angular
//! displacement `u` is a sum of smooth bumps centred at the traces, cut off to
//! zero for `rho <= 2r` and at `rho = R`, with bump weights chosen so that
//! the arc through `z_j` passes through `w_j(xi)`.
//!
//! Orientation: the tangent `tau = (z/|z|) e^{i alpha}` points towards
//! increasing modulus, i.e. from 0 towards `zeta`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::circle::unit_grid;

/// Default angular bump width.
pub const SIGMA_THETA: f64 = 0.35;
/// Default radial bump width.
pub const SIGMA_RHO: f64 = 0.25;

const VERIFY_RHO: usize = 48;
const VERIFY_THETA: usize = 128;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RadialError {
    #[error("no traces supplied")]
    Empty,
    #[error("trace {0} has no coefficients")]
    EmptyTrace(usize),
    #[error("trace {trace} vanishes near lambda = {lambda}")]
    TraceVanishes { trace: usize, lambda: Complex64 },
    #[error("traces {a} and {b} collide near lambda = {lambda}")]
    TracesCollide { a: usize, b: usize, lambda: Complex64 },
    #[error("sample count {0} must be a power of two >= 64")]
    BadSize(usize),
    #[error("ray count must be positive")]
    NoRays,
    #[error("interpolation system singular at sample {0}")]
    Singular(usize),
    #[error("circle map not monotone at sample {sample}: min(1 + u_theta) = {min:.3e}")]
    MonotonicityViolation { sample: usize, min: f64 },
    #[error("point {0} lies outside the annulus r <= |z| <= R")]
    OutsideAnnulus(Complex64),
}

/// Holomorphic traces `w_j(lambda)` given by power-series coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MotionTraces {
    traces: Vec<Vec<Complex64>>,
}

impl MotionTraces {
    /// Validates the traces and appends the constant trace 1 if absent.
    pub fn new(mut traces: Vec<Vec<Complex64>>) -> Result<Self, RadialError> {
        for (i, t) in traces.iter().enumerate() {
            if t.is_empty() {
                return Err(RadialError::EmptyTrace(i));
            }
        }
        let one = Complex64::new(1.0, 0.0);
        let has_one = traces.iter().any(|t| t[0] == one && t[1..].iter().all(|c| c.norm() == 0.0));
        if !has_one {
            traces.push(vec![one]);
        }
        let mt = Self { traces };
        mt.validate()?;
        Ok(mt)
    }

    /// Constant traces at the given points (plus 1).
    pub fn constant(points: &[Complex64]) -> Result<Self, RadialError> {
        Self::new(points.iter().map(|&p| vec![p]).collect())
    }

    fn validate(&self) -> Result<(), RadialError> {
        // closed-disk verification grid: rings of radius 0, 1/8, ..., 1
        let mut grid = vec![Complex64::new(0.0, 0.0)];
        for ring in 1..=8 {
            let s = ring as f64 / 8.0;
            grid.extend(unit_grid(128).into_iter().map(|z| z * s));
        }
        for &lam in &grid {
            let vals: Vec<Complex64> = (0..self.len()).map(|j| self.eval(j, lam)).collect();
            for (a, va) in vals.iter().enumerate() {
                if va.norm() < 1e-9 {
                    return Err(RadialError::TraceVanishes { trace: a, lambda: lam });
                }
                for (b, vb) in vals.iter().enumerate().skip(a + 1) {
                    if (va - vb).norm() < 1e-9 {
                        return Err(RadialError::TracesCollide { a, b, lambda: lam });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    pub fn coefficients(&self, j: usize) -> &[Complex64] {
        &self.traces[j]
    }

    pub fn eval(&self, j: usize, lambda: Complex64) -> Complex64 {
        self.traces[j].iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * lambda + c)
    }

    /// Basepoint `z_j = w_j(0)`.
    pub fn basepoint(&self, j: usize) -> Complex64 {
        self.traces[j][0]
    }

    pub fn is_constant(&self) -> bool {
        self.traces.iter().all(|t| t[1..].iter().all(|c| c.norm() == 0.0))
    }

    /// Continuous `arg(w_j(xi) / z_j)`, continued along the segment `[0, xi]`.
    pub fn angular_offset(&self, j: usize, xi: Complex64) -> f64 {
        const STEPS: usize = 64;
        let z = self.basepoint(j);
        let mut acc = 0.0;
        let mut prev = Complex64::new(1.0, 0.0);
        for s in 1..=STEPS {
            let cur = self.eval(j, xi * (s as f64 / STEPS as f64)) / z;
            acc += (cur / prev).arg();
            prev = cur;
        }
        acc
    }
}

/// Inner and outer radii of the flow annulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Radii {
    pub r: f64,
    #[serde(rename = "R")]
    pub outer: f64,
}

/// `R = max |w_j| + 1`, `r = min |w_j| / 3` over `n` boundary samples.
pub fn compute_radii(traces: &MotionTraces, n: usize) -> Result<Radii, RadialError> {
    if traces.is_empty() {
        return Err(RadialError::Empty);
    }
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for xi in unit_grid(n.max(1)) {
        for j in 0..traces.len() {
            let m = traces.eval(j, xi).norm();
            if m == 0.0 {
                return Err(RadialError::TraceVanishes { trace: j, lambda: xi });
            }
            lo = lo.min(m);
            hi = hi.max(m);
        }
    }
    Ok(Radii { r: lo / 3.0, outer: hi + 1.0 })
}

/// `C^infty` step: 0 for `x <= 0`, 1 for `x >= 1`.
fn smooth_step(x: f64) -> (f64, f64) {
    if x <= 0.0 {
        return (0.0, 0.0);
    }
    if x >= 1.0 {
        return (1.0, 0.0);
    }
    let f = |t: f64| (-1.0 / t).exp();
    let (a, b) = (f(x), f(1.0 - x));
    let (da, db) = (a / (x * x), b / ((1.0 - x) * (1.0 - x)));
    let s = a + b;
    (a / s, (da * b + a * db) / (s * s))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bump {
    pub rho: f64,
    pub theta: f64,
    pub weight: f64,
}

/// The displacement field for one boundary parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Slice {
    r: f64,
    outer: f64,
    sigma_theta: f64,
    sigma_rho: f64,
    bumps: Vec<Bump>,
}

/// Displacement and its first partials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Displacement {
    pub u: f64,
    pub u_rho: f64,
    pub u_theta: f64,
}

impl Slice {
    fn cutoff(&self, rho: f64) -> (f64, f64) {
        let (a, da) = smooth_step((rho - 2.0 * self.r) / self.r);
        let (b, db) = smooth_step(self.outer - rho);
        (a * b, da / self.r * b - a * db)
    }

    fn kernels(&self, b: &Bump, rho: f64, theta: f64) -> (f64, f64, f64) {
        let x = (rho - b.rho) / self.sigma_rho;
        let g = (-0.5 * x * x).exp();
        let dg = -x / self.sigma_rho * g;
        let d = theta - b.theta;
        let s2 = self.sigma_theta * self.sigma_theta;
        let v = ((d.cos() - 1.0) / s2).exp();
        let dv = -d.sin() / s2 * v;
        (g * v, dg * v, g * dv)
    }

    pub fn displacement(&self, rho: f64, theta: f64) -> Displacement {
        let (chi, dchi) = self.cutoff(rho);
        if chi == 0.0 && dchi == 0.0 {
            return Displacement { u: 0.0, u_rho: 0.0, u_theta: 0.0 };
        }
        let (mut s, mut s_rho, mut s_theta) = (0.0, 0.0, 0.0);
        for b in &self.bumps {
            let (k, kr, kt) = self.kernels(b, rho, theta);
            s += b.weight * k;
            s_rho += b.weight * kr;
            s_theta += b.weight * kt;
        }
        Displacement { u: chi * s, u_rho: dchi * s + chi * s_rho, u_theta: chi * s_theta }
    }

    pub fn u(&self, rho: f64, theta: f64) -> f64 {
        self.displacement(rho, theta).u
    }

    /// Bound on `|u|`.
    fn amplitude(&self) -> f64 {
        self.bumps.iter().map(|b| b.weight.abs()).sum()
    }

    /// Point of `l(xi, R e^{i theta})` at modulus `rho`.
    pub fn point(&self, theta: f64, rho: f64) -> Complex64 {
        Complex64::from_polar(rho, theta + self.u(rho, theta))
    }

    /// Ray label `theta` with `z` on `l(xi, R e^{i theta})`, taken near `guess`.
    pub fn label_near(&self, z: Complex64, guess: f64) -> f64 {
        let rho = z.norm();
        let f = |t: f64| t + self.u(rho, t);
        let fg = f(guess);
        let target = fg + wrap(z.arg() - fg);
        let amp = self.amplitude();
        if amp == 0.0 || rho <= 2.0 * self.r {
            return target;
        }
        // f is increasing with f(t) - t in [-amp, amp]
        let (mut lo, mut hi) = (target - amp, target + amp);
        let mut t = guess.clamp(lo, hi);
        for _ in 0..100 {
            let d = self.displacement(rho, t);
            let val = t + d.u - target;
            if val.abs() < 1e-15 {
                break;
            }
            if val > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let step = t - val / (1.0 + d.u_theta);
            t = if step > lo && step < hi { step } else { 0.5 * (lo + hi) };
            if hi - lo < 1e-15 {
                break;
            }
        }
        t
    }

    pub fn label(&self, z: Complex64) -> f64 {
        self.label_near(z, z.arg())
    }

    /// Angle between the tangent and the radial direction, given the label.
    pub fn alpha_at(&self, theta: f64, rho: f64) -> f64 {
        (rho * self.displacement(rho, theta).u_rho).atan()
    }

    pub fn alpha(&self, z: Complex64) -> f64 {
        self.alpha_at(self.label(z), z.norm())
    }

    pub fn tangent(&self, z: Complex64) -> Complex64 {
        z / z.norm() * Complex64::from_polar(1.0, self.alpha(z))
    }

    pub fn bumps(&self) -> &[Bump] {
        &self.bumps
    }
}

/// Wraps to `(-pi, pi]`.
fn wrap(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Bump widths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialConfig {
    pub sigma_theta: f64,
    pub sigma_rho: f64,
}

impl Default for RadialConfig {
    fn default() -> Self {
        Self { sigma_theta: SIGMA_THETA, sigma_rho: SIGMA_RHO }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialStructure {
    traces: MotionTraces,
    radii: Radii,
    config: RadialConfig,
    slices: Vec<Slice>,
    rays: usize,
    /// Fixed extra bumps added to every slice (negative controls only).
    extra: Vec<Bump>,
}

impl RadialStructure {
    pub fn build(traces: MotionTraces, n: usize, m: usize) -> Result<Self, RadialError> {
        Self::build_with(traces, n, m, RadialConfig::default())
    }

    pub fn build_with(traces: MotionTraces, n: usize, m: usize, config: RadialConfig) -> Result<Self, RadialError> {
        if n < 64 || !n.is_power_of_two() {
            return Err(RadialError::BadSize(n));
        }
        if m == 0 {
            return Err(RadialError::NoRays);
        }
        let radii = compute_radii(&traces, n)?;
        let mut rs = Self { traces, radii, config, slices: Vec::with_capacity(n), rays: m, extra: Vec::new() };
        for (k, xi) in unit_grid(n).into_iter().enumerate() {
            let slice = rs.solve_slice(xi).ok_or(RadialError::Singular(k))?;
            rs.slices.push(slice);
        }
        for k in 0..n {
            let min = rs.min_monotonicity(k, 32, 128);
            if min <= 0.0 {
                return Err(RadialError::MonotonicityViolation { sample: k, min });
            }
        }
        Ok(rs)
    }

    /// Copy with an additional fixed bump in every slice; no checks are run.
    pub fn corrupted(&self, bump: Bump) -> Self {
        let mut out = self.clone();
        out.extra.push(bump);
        for s in &mut out.slices {
            s.bumps.push(bump);
        }
        out
    }

    fn solve_slice(&self, xi: Complex64) -> Option<Slice> {
        let nt = self.traces.len();
        let mut bumps: Vec<Bump> = (0..nt)
            .map(|j| Bump { rho: self.traces.eval(j, xi).norm(), theta: self.traces.basepoint(j).arg(), weight: 0.0 })
            .collect();
        let mut slice = Slice {
            r: self.radii.r,
            outer: self.radii.outer,
            sigma_theta: self.config.sigma_theta,
            sigma_rho: self.config.sigma_rho,
            bumps: Vec::new(),
        };
        let rhs = DVector::from_iterator(nt, (0..nt).map(|j| self.traces.angular_offset(j, xi)));
        if rhs.iter().all(|&d| d == 0.0) {
            slice.bumps = bumps;
            slice.bumps.extend(self.extra.iter().copied());
            return Some(slice);
        }
        let mat = DMatrix::from_fn(nt, nt, |i, k| {
            let chi = slice.cutoff(bumps[i].rho).0;
            chi * slice.kernels(&bumps[k], bumps[i].rho, bumps[i].theta).0
        });
        let w = mat.lu().solve(&rhs)?;
        for (b, c) in bumps.iter_mut().zip(w.iter()) {
            b.weight = *c;
        }
        slice.bumps = bumps;
        slice.bumps.extend(self.extra.iter().copied());
        Some(slice)
    }

    /// Slice at an arbitrary boundary point (not cached).
    pub fn slice_at(&self, xi: Complex64) -> Option<Slice> {
        self.solve_slice(xi)
    }

    pub fn slice(&self, k: usize) -> &Slice {
        &self.slices[k]
    }

    pub fn samples(&self) -> usize {
        self.slices.len()
    }

    pub fn rays(&self) -> usize {
        self.rays
    }

    /// Ray labels `2 pi l / M`.
    pub fn ray_labels(&self) -> Vec<f64> {
        (0..self.rays).map(|l| 2.0 * PI * l as f64 / self.rays as f64).collect()
    }

    pub fn radii(&self) -> Radii {
        self.radii
    }

    pub fn traces(&self) -> &MotionTraces {
        &self.traces
    }

    pub fn config(&self) -> RadialConfig {
        self.config
    }

    /// Whether every slice has zero displacement.
    pub fn is_trivial(&self) -> bool {
        self.slices.iter().all(|s| s.bumps.iter().all(|b| b.weight == 0.0))
    }

    fn check_annulus(&self, z: Complex64) -> Result<(), RadialError> {
        let m = z.norm();
        // a relative slack of 1e-12 absorbs rounding in polar constructions
        if !(m >= self.radii.r * (1.0 - 1e-12) && m <= self.radii.outer * (1.0 + 1e-12)) {
            return Err(RadialError::OutsideAnnulus(z));
        }
        Ok(())
    }

    /// Unit tangent at `z` for boundary sample `k`, pointing away from 0.
    pub fn tangent_field(&self, k: usize, z: Complex64) -> Result<Complex64, RadialError> {
        self.check_annulus(z)?;
        Ok(self.slices[k].tangent(z))
    }

    pub fn angle_field(&self, k: usize, z: Complex64) -> Result<f64, RadialError> {
        self.check_annulus(z)?;
        Ok(self.slices[k].alpha(z))
    }

    /// Minimum of `1 + u_theta` over a polar grid of `[2r, R] x [0, 2 pi)`.
    fn min_monotonicity(&self, k: usize, nr: usize, nth: usize) -> f64 {
        let s = &self.slices[k];
        let (r, big) = (self.radii.r, self.radii.outer);
        let mut min = f64::INFINITY;
        for i in 0..=nr {
            let rho = 2.0 * r + (big - 2.0 * r) * i as f64 / nr as f64;
            for j in 0..nth {
                let th = 2.0 * PI * j as f64 / nth as f64;
                min = min.min(1.0 + s.displacement(rho, th).u_theta);
            }
        }
        min
    }

    /// Sampled curve `l(xi_k, R e^{i theta})` from 0 to `zeta`.
    pub fn curve(&self, k: usize, theta: f64, points: usize) -> Vec<Complex64> {
        let s = &self.slices[k];
        (0..=points).map(|i| s.point(theta, self.radii.outer * i as f64 / points as f64)).collect()
    }

    pub fn dump(&self) -> RadialDump {
        RadialDump {
            radii: self.radii,
            samples: self.samples(),
            rays: self.rays,
            config: self.config,
            traces: self.traces.traces.iter().map(|t| t.iter().map(|c| [c.re, c.im]).collect()).collect(),
            bumps: self.slices.iter().map(|s| s.bumps.clone()).collect(),
        }
    }

    pub fn verify_lemma_properties(&self) -> LemmaReport {
        let mut items = Vec::new();
        let n = self.samples();
        let (r, big) = (self.radii.r, self.radii.outer);
        let labels = self.ray_labels();

        // (1) endpoints and differentiability
        let mut end_err: f64 = 0.0;
        let mut fd_err: f64 = 0.0;
        let h = 1e-5;
        for k in 0..n {
            let s = &self.slices[k];
            for &th in &labels {
                let zeta = Complex64::from_polar(big, th);
                end_err = end_err.max((s.point(th, big) - zeta).norm()).max(s.point(th, 0.0).norm());
                for i in 1..8 {
                    let rho = r + (big - r) * i as f64 / 8.0;
                    let d = s.point(th, rho + h) - s.point(th, rho - h);
                    let fd = d / d.norm();
                    let exact = s.tangent(s.point(th, rho));
                    fd_err = fd_err.max((fd - exact).norm());
                }
            }
        }
        items.push(LemmaItem::check(
            1,
            "arc from 0 to zeta, differentiable",
            end_err == 0.0 && fd_err < 1e-6,
            fd_err,
            format!("endpoint error {end_err:.1e}, finite-difference tangent error {fd_err:.1e}"),
        ));

        // (2) each circle map has degree 1, hence with (3) is onto
        let mut degree_err: f64 = 0.0;
        for k in 0..n {
            let s = &self.slices[k];
            for i in 0..=VERIFY_RHO {
                let rho = r + (big - r) * i as f64 / VERIFY_RHO as f64;
                let mut total = 0.0;
                let mut prev = s.u(rho, 0.0);
                for j in 1..=VERIFY_THETA {
                    let th = 2.0 * PI * j as f64 / VERIFY_THETA as f64;
                    let cur = th + s.u(rho, th);
                    total += wrap(cur - prev);
                    prev = cur;
                }
                degree_err = degree_err.max((total - 2.0 * PI).abs());
            }
        }
        items.push(LemmaItem::check(
            2,
            "arcs cover the disk",
            degree_err < 1e-9,
            degree_err,
            format!("max deviation of circle-map increment from 2 pi: {degree_err:.1e}"),
        ));

        // (3) disjointness away from 0
        let min_mono = (0..n).map(|k| self.min_monotonicity(k, VERIFY_RHO, VERIFY_THETA)).fold(f64::INFINITY, f64::min);
        items.push(LemmaItem::check(
            3,
            "arcs pairwise disjoint away from 0",
            min_mono > 0.0,
            min_mono,
            format!("min(1 + u_theta) = {min_mono:.4}"),
        ));

        // (4) incidence
        let xis = unit_grid(n);
        let mut inc: f64 = 0.0;
        for (k, &xi) in xis.iter().enumerate() {
            let s = &self.slices[k];
            for j in 0..self.traces.len() {
                let w = self.traces.eval(j, xi);
                let th = self.traces.basepoint(j).arg();
                inc = inc.max((s.point(th, w.norm()) - w).norm());
            }
        }
        items.push(LemmaItem::check(4, "marked points on their arcs", inc < 1e-8, inc, format!("max incidence error {inc:.1e}")));

        // (5) straight inside the closed r-disk
        let mut bent: f64 = 0.0;
        for s in &self.slices {
            for i in 0..=VERIFY_RHO {
                let rho = 2.0 * r * i as f64 / VERIFY_RHO as f64;
                for j in 0..VERIFY_THETA {
                    bent = bent.max(s.u(rho, 2.0 * PI * j as f64 / VERIFY_THETA as f64).abs());
                }
            }
        }
        items.push(LemmaItem::check(5, "straight inside r-disk", bent == 0.0, bent, format!("max |u| for rho <= 2r: {bent:.1e}")));

        items.push(LemmaItem {
            index: 6,
            name: "arcs agree at identified boundary points".into(),
            status: LemmaStatus::NotApplicable,
            value: 0.0,
            detail: "the disk has no identified boundary points".into(),
        });

        // (7) Stolz margin
        let mut max_alpha: f64 = 0.0;
        for s in &self.slices {
            for i in 0..=VERIFY_RHO {
                let rho = r + (big - r) * i as f64 / VERIFY_RHO as f64;
                for j in 0..VERIFY_THETA {
                    max_alpha = max_alpha.max(s.alpha_at(2.0 * PI * j as f64 / VERIFY_THETA as f64, rho).abs());
                }
            }
        }
        let eps = PI / 2.0 - max_alpha;
        items.push(LemmaItem::check(
            7,
            "Stolz approach",
            eps > 0.0,
            eps,
            format!("epsilon = pi/2 - max|alpha| = {eps:.4}, c = {max_alpha:.4}"),
        ));
        LemmaReport { items }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialDump {
    pub radii: Radii,
    pub samples: usize,
    pub rays: usize,
    pub config: RadialConfig,
    pub traces: Vec<Vec<[f64; 2]>>,
    /// Per boundary sample: bump centres and weights, which determine `u`.
    pub bumps: Vec<Vec<Bump>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaItem {
    pub index: u8,
    pub name: String,
    pub status: LemmaStatus,
    pub value: f64,
    pub detail: String,
}

impl LemmaItem {
    fn check(index: u8, name: &str, ok: bool, value: f64, detail: String) -> Self {
        let status = if ok { LemmaStatus::Pass } else { LemmaStatus::Fail };
        Self { index, name: name.into(), status, value, detail }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub items: Vec<LemmaItem>,
}

impl LemmaReport {
    pub fn status(&self, index: u8) -> Option<LemmaStatus> {
        self.items.iter().find(|i| i.index == index).map(|i| i.status)
    }

    /// True when no applicable item failed.
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.status != LemmaStatus::Fail)
    }
}
