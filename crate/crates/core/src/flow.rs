//! The boundary-value flow `dg/dt = F(g)` over a radial structure and the
//! extended motion assembled from it.
//!
//! Time runs backwards from the constant `g = zeta` at `t = 0`; interior
//! targets are reached at `t < 0`. Each boundary sample `g(xi_k)` moves
//! along its arc `l(xi_k, zeta)`, and `F(g) = g exp(i H)` with
//! `H = beta + i T[beta]`, `beta(xi) = alpha(xi, g(xi))`, keeps `g`
//! holomorphic.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::circle::{
    forward, frequency, inverse, negative_energy_ratio, project_analytic, unit_grid, AnalyticBoundaryFunction,
    BoundaryFunction, CircleError, BAND_LIMIT_FRACTION,
};
use crate::radial::{MotionTraces, RadialError, RadialStructure};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("point {0} is inside the closed r-disk, where the flow is not defined")]
    OutsideFlowRegion(Complex64),
    #[error("point {0} lies outside |z| <= R")]
    OutsideAnnulus(Complex64),
    #[error("state left r < |g| < R + delta (|g| ranged over [{min:.6}, {max:.6}])")]
    LeftRegion { min: f64, max: f64 },
    #[error("cross-track drift {drift:.3e} exceeds ten times the tolerance")]
    Drift { drift: f64 },
    #[error("angle field aliased: {fraction:.3e} of its energy in the top quarter band")]
    Aliasing { fraction: f64 },
    #[error("time step fell below {0:.1e} while controlling drift")]
    StepUnderflow(f64),
    #[error("no convergence inverting the basepoint map at {z}: residual {residual:.3e}")]
    NoConvergence { z: Complex64, residual: f64 },
    #[error("pair {0} repeats a point")]
    DuplicatePair(usize),
    #[error(transparent)]
    Circle(#[from] CircleError),
    #[error(transparent)]
    Radial(#[from] RadialError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowConfig {
    /// Initial step magnitude; steps are taken with negative sign.
    pub dt: f64,
    /// Per-step cross-track drift tolerance.
    pub drift_tol: f64,
    pub min_dt: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self { dt: 1e-2, drift_tol: 1e-6, min_dt: 1e-8 }
    }
}

/// A point of a flow trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub t: f64,
    /// Ray label: `zeta = R e^{i theta}`.
    pub theta: f64,
    pub g: AnalyticBoundaryFunction,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepInfo {
    /// Largest distance of a sample from its arc before re-projection.
    pub drift: f64,
}

/// Outcome of the time-to-point search.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSolution {
    pub theta: f64,
    pub t: f64,
    pub g: AnalyticBoundaryFunction,
    pub steps: usize,
    pub max_drift: f64,
}

impl PointSolution {
    pub fn zeta(&self, outer: f64) -> Complex64 {
        Complex64::from_polar(outer, self.theta)
    }
}

pub struct Flow<'a> {
    rs: &'a RadialStructure,
    cfg: FlowConfig,
    delta: f64,
}

fn mean(v: &[Complex64]) -> Complex64 {
    v.iter().sum::<Complex64>() / v.len() as f64
}

fn project(samples: Vec<Complex64>) -> Vec<Complex64> {
    let mut c = forward(&samples);
    project_analytic(&mut c);
    inverse(&c)
}

impl<'a> Flow<'a> {
    pub fn new(rs: &'a RadialStructure, cfg: FlowConfig) -> Self {
        let radii = rs.radii();
        let top = (0..rs.traces().len())
            .flat_map(|j| unit_grid(rs.samples()).into_iter().map(move |xi| (j, xi)))
            .map(|(j, xi)| rs.traces().eval(j, xi).norm())
            .fold(0.0, f64::max);
        let delta = (0.5 * (radii.outer - top)).max(1e-3);
        Self { rs, cfg, delta }
    }

    pub fn structure(&self) -> &RadialStructure {
        self.rs
    }

    pub fn config(&self) -> FlowConfig {
        self.cfg
    }

    /// The `delta` of the open set `r < |g| < R + delta`.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    fn check_region(&self, g: &[Complex64]) -> Result<(), FlowError> {
        let radii = self.rs.radii();
        let (mut min, mut max) = (f64::INFINITY, 0.0f64);
        for z in g {
            let m = z.norm();
            min = min.min(m);
            max = max.max(m);
        }
        if !(min > radii.r && max < radii.outer + self.delta) {
            return Err(FlowError::LeftRegion { min, max });
        }
        Ok(())
    }

    /// `F(g)` on the sample grid, projected onto the analytic spectrum.
    fn field(&self, g: &[Complex64], theta: f64) -> Result<Vec<Complex64>, FlowError> {
        self.check_region(g)?;
        let n = g.len();
        let beta: Vec<Complex64> = g
            .iter()
            .enumerate()
            .map(|(k, &z)| {
                let s = self.rs.slice(k);
                Complex64::new(s.alpha_at(s.label_near(z, theta), z.norm()), 0.0)
            })
            .collect();
        let b = forward(&beta);
        let total: f64 = b.iter().map(|c| c.norm_sqr()).sum();
        if total > 0.0 {
            let tail: f64 = b
                .iter()
                .enumerate()
                .filter(|(k, _)| frequency(*k, n).unsigned_abs() as usize >= n / 4)
                .map(|(_, c)| c.norm_sqr())
                .sum();
            if tail / total > BAND_LIMIT_FRACTION {
                return Err(FlowError::Aliasing { fraction: tail / total });
            }
        }
        // H = beta + i T[beta] keeps c_0, doubles m > 0, drops m < 0
        let h: Vec<Complex64> = b
            .iter()
            .enumerate()
            .map(|(k, &c)| match k {
                0 => Complex64::new(c.re, 0.0),
                k if k < n / 2 => 2.0 * c,
                _ => Complex64::new(0.0, 0.0),
            })
            .collect();
        let i = Complex64::new(0.0, 1.0);
        let f: Vec<Complex64> = inverse(&h).into_iter().zip(g).map(|(hk, gk)| gk * (i * hk).exp()).collect();
        Ok(project(f))
    }

    /// Public form of `F`.
    pub fn vector_field(&self, state: &FlowState) -> Result<BoundaryFunction, FlowError> {
        Ok(BoundaryFunction::from_samples(self.field(state.g.inner().samples(), state.theta)?)?)
    }

    /// One RK4 step followed by re-projection onto the arcs and the analytic
    /// spectrum. Returns the new samples and the pre-projection drift.
    fn raw_step(&self, g: &[Complex64], theta: f64, dt: f64) -> Result<(Vec<Complex64>, f64), FlowError> {
        let axpy = |a: &[Complex64], s: f64, b: &[Complex64]| -> Vec<Complex64> {
            a.iter().zip(b).map(|(x, y)| x + y * s).collect()
        };
        let k1 = self.field(g, theta)?;
        let k2 = self.field(&axpy(g, 0.5 * dt, &k1), theta)?;
        let k3 = self.field(&axpy(g, 0.5 * dt, &k2), theta)?;
        let k4 = self.field(&axpy(g, dt, &k3), theta)?;
        let mut next: Vec<Complex64> = (0..g.len())
            .map(|k| g[k] + (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]) * (dt / 6.0))
            .collect();
        let mut drift: f64 = 0.0;
        for (k, z) in next.iter_mut().enumerate() {
            let on_arc = self.rs.slice(k).point(theta, z.norm());
            drift = drift.max((*z - on_arc).norm());
            *z = on_arc;
        }
        Ok((project(next), drift))
    }

    /// Public single step. `dt = 0` leaves the state untouched.
    pub fn flow_step(&self, state: &FlowState, dt: f64) -> Result<(FlowState, StepInfo), FlowError> {
        if dt == 0.0 {
            return Ok((state.clone(), StepInfo { drift: 0.0 }));
        }
        let (g, drift) = self.raw_step(state.g.inner().samples(), state.theta, dt)?;
        if drift > 10.0 * self.cfg.drift_tol {
            return Err(FlowError::Drift { drift });
        }
        let g = AnalyticBoundaryFunction::project(&BoundaryFunction::from_samples(g)?);
        Ok((FlowState { t: state.t + dt, theta: state.theta, g }, StepInfo { drift }))
    }

    /// Steps with `-|dt|`, halving while the drift exceeds tolerance.
    /// Returns the new samples, the step actually taken and the drift.
    fn advance(&self, g: &[Complex64], theta: f64, dt: f64) -> Result<(Vec<Complex64>, f64, f64), FlowError> {
        let mut dt = dt;
        loop {
            let (next, drift) = self.raw_step(g, theta, dt)?;
            if drift <= self.cfg.drift_tol {
                return Ok((next, dt, drift));
            }
            dt *= 0.5;
            if dt.abs() < self.cfg.min_dt {
                return Err(FlowError::StepUnderflow(self.cfg.min_dt));
            }
        }
    }

    pub fn initial_state(&self, theta: f64) -> Result<FlowState, FlowError> {
        let zeta = Complex64::from_polar(self.rs.radii().outer, theta);
        let g = BoundaryFunction::constant(self.rs.samples(), zeta)?;
        Ok(FlowState { t: 0.0, theta, g: AnalyticBoundaryFunction::project(&g) })
    }

    /// Flow from `g = zeta` to time `t_end <= 0`.
    pub fn integrate_to_time(&self, theta: f64, t_end: f64) -> Result<FlowState, FlowError> {
        let zeta = Complex64::from_polar(self.rs.radii().outer, theta);
        let mut g = vec![zeta; self.rs.samples()];
        let mut t = 0.0;
        let mut dt = -self.cfg.dt;
        while t > t_end {
            let remaining = t_end - t;
            let last = remaining >= dt;
            let attempt = if last { remaining } else { dt };
            let (next, used, _) = self.advance(&g, theta, attempt)?;
            g = next;
            if last && used == attempt {
                t = t_end;
            } else {
                t += used;
                if used != attempt {
                    dt = used;
                }
            }
        }
        let g = AnalyticBoundaryFunction::project(&BoundaryFunction::from_samples(g)?);
        Ok(FlowState { t: t_end, theta, g })
    }

    /// Finds the ray through `z` (at `xi = 1`) and the time at which the
    /// flow's boundary value at 1 reaches `z`.
    pub fn integrate_to_point(&self, z: Complex64) -> Result<PointSolution, FlowError> {
        let radii = self.rs.radii();
        let s = z.norm();
        if s <= radii.r {
            return Err(FlowError::OutsideFlowRegion(z));
        }
        if s > radii.outer * (1.0 + 1e-14) {
            return Err(FlowError::OutsideAnnulus(z));
        }
        let theta = self.rs.slice(0).label(z);
        let zeta = Complex64::from_polar(radii.outer, theta);
        let n = self.rs.samples();
        if s >= radii.outer {
            let g = BoundaryFunction::constant(n, zeta)?;
            return Ok(PointSolution { theta, t: 0.0, g: AnalyticBoundaryFunction::project(&g), steps: 0, max_drift: 0.0 });
        }
        let mut g = vec![zeta; n];
        let mut t = 0.0;
        let mut dt = -self.cfg.dt;
        let mut steps = 0;
        let mut max_drift: f64 = 0.0;
        loop {
            let (next, used, drift) = self.advance(&g, theta, dt)?;
            steps += 1;
            max_drift = max_drift.max(drift);
            dt = used;
            if next[0].norm() > s {
                g = next;
                t += used;
                continue;
            }
            // the crossing lies inside this step; solve |step(g, -h)(1)| = s
            let phi = |h: f64| -> Result<(f64, Vec<Complex64>), FlowError> {
                let (v, _) = self.raw_step(&g, theta, -h)?;
                Ok((v[0].norm() - s, v))
            };
            let (mut lo, mut hi) = (0.0, used.abs());
            let (mut f_lo, mut f_hi) = (g[0].norm() - s, next[0].norm() - s);
            let mut best = (hi, next);
            if f_hi != 0.0 {
                let mut side = 0;
                for _ in 0..200 {
                    // Illinois false position with a bisection fallback
                    let mut h = hi - f_hi * (hi - lo) / (f_hi - f_lo);
                    if !(h > lo && h < hi) {
                        h = 0.5 * (lo + hi);
                    }
                    let (f, v) = phi(h)?;
                    best = (h, v);
                    if f.abs() <= 4.0 * f64::EPSILON * s || hi - lo <= 4.0 * f64::EPSILON * hi {
                        break;
                    }
                    if f > 0.0 {
                        lo = h;
                        f_lo = f;
                        if side == 1 {
                            f_hi *= 0.5;
                        }
                        side = 1;
                    } else {
                        hi = h;
                        f_hi = f;
                        if side == -1 {
                            f_lo *= 0.5;
                        }
                        side = -1;
                    }
                }
            }
            t -= best.0;
            let g = AnalyticBoundaryFunction::project(&BoundaryFunction::from_samples(best.1)?);
            return Ok(PointSolution { theta, t, g, steps, max_drift });
        }
    }

    /// Trajectory from `zeta` down to the inner cutoff `min |g| <= r (1 + 1e-3)`.
    pub fn trajectory(&self, theta: f64) -> Result<RayTrajectory, FlowError> {
        let radii = self.rs.radii();
        let zeta = Complex64::from_polar(radii.outer, theta);
        let mut g = vec![zeta; self.rs.samples()];
        let mut t = 0.0;
        let mut dt = -self.cfg.dt;
        let mut points = vec![TrajectoryPoint { t, at_zero: zeta, at_one: zeta, spread: 0.0 }];
        let cutoff = radii.r * (1.0 + 1e-3);
        for _ in 0..1_000_000 {
            let (next, used, _) = match self.advance(&g, theta, dt) {
                Ok(x) => x,
                Err(FlowError::LeftRegion { .. }) => break,
                Err(e) => return Err(e),
            };
            if next.iter().any(|z| z.norm() <= cutoff) {
                break;
            }
            dt = used;
            t += used;
            g = next;
            let c0 = mean(&g);
            let spread = g.iter().map(|z| (z - c0).norm()).fold(0.0, f64::max);
            points.push(TrajectoryPoint { t, at_zero: c0, at_one: g[0], spread });
        }
        Ok(RayTrajectory { theta, points })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    /// `g_t(0)`.
    pub at_zero: Complex64,
    /// `g_t(1)`.
    pub at_one: Complex64,
    /// `max_k |g_t(xi_k) - g_t(0)|`; zero means `g_t` is constant.
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RayTrajectory {
    pub theta: f64,
    pub points: Vec<TrajectoryPoint>,
}

/// Solution of `Psi_0(z') = z`: the flow state whose value at 0 is `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct Preimage {
    pub theta: f64,
    pub t: f64,
    pub g: AnalyticBoundaryFunction,
    pub residual: f64,
}

impl Preimage {
    /// `Psi_0^{-1}(z) = g(1)`.
    pub fn point(&self) -> Complex64 {
        self.g.inner().samples()[0]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairFailure {
    pub index: usize,
    pub min_abs: f64,
    pub winding: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InjectivityReport {
    pub pairs: usize,
    pub min_abs: f64,
    pub max_abs_winding: i64,
    pub failures: Vec<PairFailure>,
}

impl InjectivityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Discrete winding number of a closed sampled curve around 0.
pub fn winding_number(curve: &[Complex64]) -> i64 {
    let n = curve.len();
    let total: f64 = (0..n).map(|k| (curve[(k + 1) % n] / curve[k]).arg()).sum();
    (total / (2.0 * PI)).round() as i64
}

/// Relative negative-spectrum energy of `lambda -> f(lambda)` on `|lambda| = 0.9`.
pub fn holomorphy_residual_of<F>(f: F, k: usize) -> Result<f64, FlowError>
where
    F: Fn(Complex64) -> Result<Complex64, FlowError>,
{
    let samples = unit_grid(k).into_iter().map(|l| f(l * 0.9)).collect::<Result<Vec<_>, _>>()?;
    Ok(negative_energy_ratio(&forward(&samples)))
}

/// `phi_hat(lambda, z) = Psi_lambda(Psi_0^{-1}(z))` with its flow cache.
#[derive(Debug, Clone)]
pub struct ExtendedMotion {
    rs: RadialStructure,
    cfg: FlowConfig,
    rays: Vec<RayTrajectory>,
}

impl ExtendedMotion {
    pub fn build(traces: MotionTraces, n: usize, m: usize, cfg: FlowConfig) -> Result<Self, FlowError> {
        let rs = RadialStructure::build(traces, n, m)?;
        Self::from_structure(rs, cfg)
    }

    pub fn from_structure(rs: RadialStructure, cfg: FlowConfig) -> Result<Self, FlowError> {
        let rays = {
            let flow = Flow::new(&rs, cfg);
            rs.ray_labels().into_iter().map(|th| flow.trajectory(th)).collect::<Result<Vec<_>, _>>()?
        };
        Ok(Self { rs, cfg, rays })
    }

    pub fn flow(&self) -> Flow<'_> {
        Flow::new(&self.rs, self.cfg)
    }

    pub fn structure(&self) -> &RadialStructure {
        &self.rs
    }

    pub fn rays(&self) -> &[RayTrajectory] {
        &self.rays
    }

    /// Whether `z` lies in `r < |z| <= R`, where the motion is not the identity.
    pub fn in_flow_region(&self, z: Complex64) -> bool {
        let radii = self.rs.radii();
        let m = z.norm();
        m > radii.r && m <= radii.outer
    }

    /// `Psi_lambda(z) = g_{t(z)}(lambda)`; the identity off the flow region.
    pub fn psi(&self, lambda: Complex64, z: Complex64) -> Result<Complex64, FlowError> {
        if !self.in_flow_region(z) {
            return Ok(z);
        }
        let sol = self.flow().integrate_to_point(z)?;
        Ok(sol.g.eval(lambda))
    }

    /// Solves `g^theta_t(0) = z` by Newton's method in `(theta, t)`.
    pub fn preimage(&self, z: Complex64) -> Result<Option<Preimage>, FlowError> {
        if !self.in_flow_region(z) {
            return Ok(None);
        }
        let flow = self.flow();
        let outer = self.rs.radii().outer;
        let tol = 1e-12 * outer;
        // start from the nearest cached trajectory point
        let (mut theta, mut t) = (z.arg(), (z.norm() / outer).ln());
        let mut best = f64::INFINITY;
        for ray in &self.rays {
            for p in &ray.points {
                let d = (p.at_zero - z).norm();
                if d < best {
                    best = d;
                    theta = ray.theta;
                    t = p.t;
                }
            }
        }
        let t_floor = self.rays.iter().filter_map(|r| r.points.last()).map(|p| p.t).fold(0.0, f64::min);
        let eval = |theta: f64, t: f64| -> Result<(FlowState, Complex64), FlowError> {
            let st = flow.integrate_to_time(theta, t)?;
            let v = st.g.inner().mean();
            Ok((st, v))
        };
        let (mut state, mut val) = eval(theta, t)?;
        let mut res = (val - z).norm();
        for _ in 0..60 {
            if res <= tol {
                break;
            }
            let h = 1e-6;
            let d_theta = (eval(theta + h, t)?.1 - val) / h;
            let d_t = mean(&flow.field(state.g.inner().samples(), theta)?);
            // solve [d_theta d_t] (a, b)^T = z - val over the reals
            let rhs = z - val;
            let det = d_theta.re * d_t.im - d_theta.im * d_t.re;
            if det == 0.0 {
                break;
            }
            let a = (rhs.re * d_t.im - rhs.im * d_t.re) / det;
            let b = (d_theta.re * rhs.im - d_theta.im * rhs.re) / det;
            let mut scale = 1.0;
            let mut accepted = false;
            for _ in 0..12 {
                let nt = (t + scale * b).clamp(t_floor, 0.0);
                let nth = theta + scale * a;
                if let Ok((s2, v2)) = eval(nth, nt) {
                    let r2 = (v2 - z).norm();
                    if r2 < res {
                        theta = nth;
                        t = nt;
                        state = s2;
                        val = v2;
                        res = r2;
                        accepted = true;
                        break;
                    }
                }
                scale *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        if res > tol {
            return Err(FlowError::NoConvergence { z, residual: res });
        }
        Ok(Some(Preimage { theta, t, g: state.g, residual: res }))
    }

    /// `phi_hat(lambda, z)` for several `lambda` at once.
    pub fn eval_many(&self, lambdas: &[Complex64], z: Complex64) -> Result<Vec<Complex64>, FlowError> {
        Ok(match self.preimage(z)? {
            None => vec![z; lambdas.len()],
            Some(p) => lambdas.iter().map(|&l| p.g.eval(l)).collect(),
        })
    }

    pub fn eval(&self, lambda: Complex64, z: Complex64) -> Result<Complex64, FlowError> {
        Ok(self.eval_many(&[lambda], z)?[0])
    }

    /// `max |phi_hat(lambda, z_j) - w_j(lambda)|` over the marked points and
    /// `lambda` on the rings `|lambda| = 0, 1/2, 1` (`k` points per ring).
    pub fn agreement_residual(&self, k: usize) -> Result<f64, FlowError> {
        let mut lambdas = vec![Complex64::new(0.0, 0.0)];
        for s in [0.5, 1.0] {
            lambdas.extend(unit_grid(k).into_iter().map(|l| l * s));
        }
        let traces = self.rs.traces();
        let mut worst: f64 = 0.0;
        for j in 0..traces.len() {
            let vals = self.eval_many(&lambdas, traces.basepoint(j))?;
            for (l, v) in lambdas.iter().zip(vals) {
                worst = worst.max((v - traces.eval(j, *l)).norm());
            }
        }
        Ok(worst)
    }

    pub fn holomorphy_residual(&self, z: Complex64, k: usize) -> Result<f64, FlowError> {
        let lambdas: Vec<Complex64> = unit_grid(k).into_iter().map(|l| l * 0.9).collect();
        let vals = self.eval_many(&lambdas, z)?;
        Ok(negative_energy_ratio(&forward(&vals)))
    }

    /// Checks that `g_{t(z)} - g_{t(z')}` is zero-free with winding 0 on the
    /// boundary grid for each pair.
    pub fn injectivity_certificate(&self, pairs: &[(Complex64, Complex64)]) -> Result<InjectivityReport, FlowError> {
        let flow = self.flow();
        let n = self.rs.samples();
        let mut cache: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
        let mut boundary = |z: Complex64| -> Result<Vec<Complex64>, FlowError> {
            if let Some((_, g)) = cache.iter().find(|(w, _)| *w == z) {
                return Ok(g.clone());
            }
            let g = if self.in_flow_region(z) {
                flow.integrate_to_point(z)?.g.inner().samples().to_vec()
            } else {
                vec![z; n]
            };
            cache.push((z, g.clone()));
            Ok(g)
        };
        let mut report = InjectivityReport { pairs: pairs.len(), min_abs: f64::INFINITY, max_abs_winding: 0, failures: Vec::new() };
        for (index, &(a, b)) in pairs.iter().enumerate() {
            if a == b {
                return Err(FlowError::DuplicatePair(index));
            }
            let ga = boundary(a)?;
            let gb = boundary(b)?;
            let diff: Vec<Complex64> = ga.iter().zip(&gb).map(|(x, y)| x - y).collect();
            let min_abs = diff.iter().map(|d| d.norm()).fold(f64::INFINITY, f64::min);
            let winding = if min_abs > 0.0 { winding_number(&diff) } else { 0 };
            report.min_abs = report.min_abs.min(min_abs);
            report.max_abs_winding = report.max_abs_winding.max(winding.abs());
            if !(min_abs > 0.0) || winding != 0 {
                report.failures.push(PairFailure { index, min_abs, winding });
            }
        }
        Ok(report)
    }
}
