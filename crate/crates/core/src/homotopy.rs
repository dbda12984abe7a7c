//! Total-degree homotopy continuation: start systems, predictor–corrector
//! path tracking, endpoint classification, deduplication and multiplicity
//! clustering, and a θ-parameter sweep for the one-parameter collapse family.
//!
//! Tracking is affine with a large divergence cutoff; at-infinity paths are
//! detected, not followed. Multiplicities come from clustering coincident
//! endpoints (with a condition-scaled radius) rather than a power-series
//! endgame; the multiple points arising here (the origin of the homogeneous
//! subsystems) cluster cleanly.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

use crate::config::{Configuration, StationaryKind, Tolerances, Vorticities};
use crate::error::{Error, Result};
use crate::poly::{EvalWorkspace, MultiPoly, PolySystem};
use crate::systems::build_collapse;

/// t-distance from 1 at which tracking stops and the endpoint is polished.
const FINAL_JUMP: f64 = 1e-8;
/// Norm below which a polished endpoint snaps to a known exact origin root.
const SNAP_RADIUS: f64 = 1e-4;
/// Cap on the condition-scaled clustering radius.
const CLUSTER_RADIUS_CAP: f64 = 1e-4;
/// Iteration budget for the damped-Newton polish of singular endpoints.
const POLISH_BUDGET: usize = 200;
/// Hard cap on predictor–corrector steps per path; exhaustion fails the path.
const MAX_STEPS_PER_PATH: u64 = 100_000;
/// Seed perturbation for whole-solve retries with a fresh random γ.
const RESCUE_SALT: u64 = 0xa076_1d64_78bd_642f;
/// h-to-scale ratio at or below which a polished endpoint is at infinity.
const INF_RATIO_HARD: f64 = 1e-8;
/// Looser ratio applied to mid-track aborts already closing in on h = 0.
const INF_RATIO_SOFT: f64 = 1e-6;
/// Ratio bound for endpoints that satisfy the projective system but refuse
/// affine polishing: the dehomogenized norm exceeds 1/INF_RATIO_POLISHED,
/// beyond which a finite root cannot be certified in double precision.
const INF_RATIO_POLISHED: f64 = 1e-4;
/// Extra Newton iterations allowed while h shrinks toward infinity.
const INF_ENDGAME_BUDGET: usize = 80;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn max_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn dist_inf(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q).norm())
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// Options and result types
// ---------------------------------------------------------------------------

/// Knobs for the path tracker.
#[derive(Clone, Debug, Serialize)]
pub struct TrackOptions {
    pub seed: u64,
    pub initial_step: f64,
    pub min_step: f64,
    pub newton_tol: f64,
    pub track_tol: f64,
    pub max_newton_iters: usize,
    pub divergence_cutoff: f64,
    pub endgame_start: f64,
    pub dedup_radius: f64,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            seed: 0,
            initial_step: 0.05,
            min_step: 1e-7,
            newton_tol: 1e-12,
            track_tol: 1e-10,
            max_newton_iters: 10,
            divergence_cutoff: 1e10,
            endgame_start: 0.95,
            dedup_radius: 1e-6,
        }
    }
}

impl TrackOptions {
    /// Checks the option invariants: positive tolerances, min_step < initial_step.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.initial_step,
            self.min_step,
            self.newton_tol,
            self.track_tol,
            self.divergence_cutoff,
            self.dedup_radius,
        ];
        if positive.iter().any(|&v| !(v > 0.0)) {
            return Err(Error::InvalidArgument(
                "all tracking tolerances must be positive".into(),
            ));
        }
        if self.min_step >= self.initial_step {
            return Err(Error::InvalidArgument(format!(
                "min_step {} must be below initial_step {}",
                self.min_step, self.initial_step
            )));
        }
        if !(0.0..1.0).contains(&self.endgame_start) {
            return Err(Error::InvalidArgument(
                "endgame_start must lie in [0, 1)".into(),
            ));
        }
        Ok(())
    }

    /// Same options with a different seed.
    pub fn with_seed(&self, seed: u64) -> Self {
        TrackOptions { seed, ..self.clone() }
    }
}

/// Terminal state of one tracked path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathStatus {
    Converged,
    AtInfinity,
    Failed,
}

/// One homotopy path from a start root to an endpoint of the target system.
#[derive(Clone, Debug, Serialize)]
pub struct PathResult {
    pub endpoint: Vec<Complex64>,
    pub status: PathStatus,
    pub final_t: f64,
    pub residual: f64,
    pub newton_steps_total: usize,
    pub condition_estimate: f64,
}

/// A deduplicated endpoint with path-cluster multiplicity.
#[derive(Clone, Debug, Serialize)]
pub struct Solution {
    pub point: Vec<Complex64>,
    pub multiplicity: usize,
    pub residual: f64,
    pub is_collision: bool,
    pub condition: f64,
}

/// All endpoints of a solve, clustered, plus the path accounting.
#[derive(Clone, Debug, Serialize)]
pub struct SolutionSet {
    pub solutions: Vec<Solution>,
    pub n_paths: usize,
    pub n_at_infinity: usize,
    pub n_failed: usize,
    pub warning: Option<String>,
    pub path_results: Vec<PathResult>,
}

impl SolutionSet {
    /// Counts are certified only when every path was accounted for.
    pub fn certified(&self) -> bool {
        self.n_failed == 0
    }

    /// Total finite multiplicity Σ multiplicities.
    pub fn multiplicity_total(&self) -> usize {
        self.solutions.iter().map(|s| s.multiplicity).sum()
    }

    /// The solutions not lying on any collision factor.
    pub fn collision_free(&self) -> Vec<&Solution> {
        self.solutions.iter().filter(|s| !s.is_collision).collect()
    }
}

// ---------------------------------------------------------------------------
// Start systems
// ---------------------------------------------------------------------------

fn gamma_from_seed(seed: u64) -> Complex64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    Complex64::from_polar(1.0, rng.random_range(0.0..TAU))
}

/// The total-degree start system x_i^{d_i} − c_i with seeded unit-modulus
/// constants, together with all Πd_i start roots in lexicographic order
/// (last coordinate fastest).
pub fn make_start_system(
    degrees: &[usize],
    seed: u64,
) -> Result<(PolySystem, Vec<Vec<Complex64>>)> {
    if degrees.is_empty() {
        return Err(Error::InvalidArgument("empty degree list".into()));
    }
    if degrees.iter().any(|&d| d < 1) {
        return Err(Error::InvalidArgument("all degrees must be >= 1".into()));
    }
    let n = degrees.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..TAU)).collect();

    let polys: Vec<MultiPoly> = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            MultiPoly::monomial(n, cx(1.0, 0.0), &[(i, d as u32)])
                .sub(&MultiPoly::constant(n, Complex64::from_polar(1.0, angles[i])))
        })
        .collect();
    let sys = PolySystem::new(
        polys,
        (1..=n).map(|i| format!("x{i}")).collect(),
        "total-degree start system",
        Vec::new(),
    )?;

    let roots: Vec<Vec<Complex64>> = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            (0..d)
                .map(|m| Complex64::from_polar(1.0, (angles[i] + TAU * m as f64) / d as f64))
                .collect()
        })
        .collect();
    let total: usize = degrees.iter().product();
    let mut points = Vec::with_capacity(total);
    let mut odometer = vec![0usize; n];
    for _ in 0..total {
        points.push((0..n).map(|i| roots[i][odometer[i]]).collect());
        for i in (0..n).rev() {
            odometer[i] += 1;
            if odometer[i] < degrees[i] {
                break;
            }
            odometer[i] = 0;
        }
    }
    Ok((sys, points))
}

// ---------------------------------------------------------------------------
// Dense complex linear algebra (small systems, partial pivoting)
// ---------------------------------------------------------------------------

mod linalg {
    use num_complex::Complex64;

    /// In-place LU with partial pivoting; false if a pivot underflows.
    pub fn lu_factor(a: &mut [Complex64], n: usize, piv: &mut [usize]) -> bool {
        for k in 0..n {
            let mut p = k;
            let mut best = a[k * n + k].norm_sqr();
            for i in (k + 1)..n {
                let v = a[i * n + k].norm_sqr();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if !(best > 1e-300) {
                return false;
            }
            piv[k] = p;
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
            }
            let inv = a[k * n + k].inv();
            for i in (k + 1)..n {
                let m = a[i * n + k] * inv;
                a[i * n + k] = m;
                for j in (k + 1)..n {
                    let t = a[k * n + j];
                    a[i * n + j] -= m * t;
                }
            }
        }
        true
    }

    /// Back/forward substitution for a factored matrix. All row
    /// interchanges are applied to b up front: interleaving them with the
    /// forward sweep would pair partially reduced values with L entries of
    /// rows that a later interchange still relocates.
    pub fn lu_solve(a: &[Complex64], n: usize, piv: &[usize], b: &mut [Complex64]) {
        for k in 0..n {
            b.swap(k, piv[k]);
        }
        for k in 0..n {
            for i in (k + 1)..n {
                let m = a[i * n + k];
                let t = b[k];
                b[i] -= m * t;
            }
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for j in (i + 1)..n {
                s -= a[i * n + j] * b[j];
            }
            b[i] = s * a[i * n + i].inv();
        }
    }

    /// Cheap condition estimate from the U diagonal, capped at 1e16.
    pub fn cond_from_factors(a: &[Complex64], n: usize) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0_f64;
        for k in 0..n {
            let d = a[k * n + k].norm();
            lo = lo.min(d);
            hi = hi.max(d);
        }
        if lo <= 0.0 {
            1e16
        } else {
            (hi / lo).min(1e16)
        }
    }

    /// Factor + solve; returns the condition estimate, or None if singular.
    pub fn solve_linear(
        a: &mut [Complex64],
        b: &mut [Complex64],
        n: usize,
        piv: &mut [usize],
    ) -> Option<f64> {
        if !lu_factor(a, n, piv) {
            return None;
        }
        lu_solve(a, n, piv, b);
        Some(cond_from_factors(a, n))
    }
}

// ---------------------------------------------------------------------------
// Newton iteration on a single system (used by the polish and the θ sweep)
// ---------------------------------------------------------------------------

enum NewtonOutcome {
    Converged { cond: f64, iters: usize },
    Diverged { iters: usize },
    NotConverged { iters: usize },
    Singular { iters: usize },
}

struct NewtonScratch {
    ws: EvalWorkspace,
    fv: Vec<Complex64>,
    jm: Vec<Complex64>,
    piv: Vec<usize>,
}

impl NewtonScratch {
    fn new(sys: &PolySystem) -> Self {
        let n = sys.nvars();
        NewtonScratch {
            ws: EvalWorkspace::new(sys),
            fv: vec![cx(0.0, 0.0); n],
            jm: vec![cx(0.0, 0.0); n * n],
            piv: vec![0; n],
        }
    }

    fn run(
        &mut self,
        sys: &PolySystem,
        x: &mut [Complex64],
        tol: f64,
        max_iters: usize,
        cutoff: f64,
    ) -> NewtonOutcome {
        let n = sys.nvars();
        let mut cond = 1.0;
        for it in 0..max_iters {
            let xnorm = max_norm(x);
            if xnorm > cutoff {
                return NewtonOutcome::Diverged { iters: it };
            }
            sys.eval_into(x, &mut self.fv, &mut self.ws);
            sys.jacobian_into(x, &mut self.jm, &mut self.ws);
            for v in self.fv.iter_mut() {
                *v = -*v;
            }
            match linalg::solve_linear(&mut self.jm, &mut self.fv, n, &mut self.piv) {
                None => return NewtonOutcome::Singular { iters: it },
                Some(c) => cond = c,
            }
            let mut dnorm = 0.0_f64;
            for i in 0..n {
                x[i] += self.fv[i];
                dnorm = dnorm.max(self.fv[i].norm());
            }
            if dnorm <= tol * (1.0 + max_norm(x)) {
                return NewtonOutcome::Converged { cond, iters: it + 1 };
            }
        }
        NewtonOutcome::NotConverged { iters: max_iters }
    }
}

// ---------------------------------------------------------------------------
// Path tracker
// ---------------------------------------------------------------------------

enum CorrectOutcome {
    Converged { cond: f64, iters: usize },
    Diverged { iters: usize },
    NotConverged { iters: usize },
    Singular { iters: usize },
}

/// Classification of a tracked path once t reaches 1.
enum Finish {
    AtInfinity { endpoint: Vec<Complex64>, residual: f64, cond: f64 },
    Finite { endpoint: Vec<Complex64>, residual: f64, cond: f64, converged: bool },
}

/// Homogenizes every equation of a square system to its own total degree with
/// one shared extra variable appended last.
fn homogenize_system(sys: &PolySystem) -> Result<PolySystem> {
    let polys: Vec<MultiPoly> = sys.polys().iter().map(|p| p.homogenize(p.degree())).collect();
    let mut names: Vec<String> = sys.var_names().to_vec();
    names.push("h".into());
    PolySystem::new(polys, names, sys.gauge_note(), vec![])
}

/// Tracks paths in projective coordinates on a moving affine patch.
///
/// Both systems are homogenized row-by-row and the iterate carries one extra
/// coordinate `h`, constrained by a patch equation `a·X = 1`. The patch is
/// re-centered to the orthogonal chart `a = conj(X)/‖X‖²` after every
/// accepted step, so ‖X‖ stays near 1 along the whole path: affine
/// excursions through large ‖x‖ — and paths that genuinely diverge — remain
/// bounded, and an endpoint with `h ≈ 0` is a solution at infinity,
/// recognized without chasing ‖x‖ → ∞.
struct Tracker<'a> {
    target: &'a PolySystem,
    proj_target: PolySystem,
    proj_start: PolySystem,
    gamma: Complex64,
    patch: Vec<Complex64>,
    opts: &'a TrackOptions,
    /// Endpoints inside SNAP_RADIUS may snap to a known exact root at 0.
    origin_known: bool,
    /// Affine dimension.
    n: usize,
    /// Projective tracking dimension, n + 1.
    m: usize,
    ws_f: EvalWorkspace,
    ws_g: EvalWorkspace,
    ws_a: EvalWorkspace,
    fv: Vec<Complex64>,
    gv: Vec<Complex64>,
    jf: Vec<Complex64>,
    jg: Vec<Complex64>,
    mat: Vec<Complex64>,
    rhs: Vec<Complex64>,
    piv: Vec<usize>,
    amat: Vec<Complex64>,
    arhs: Vec<Complex64>,
    apiv: Vec<usize>,
    vsum: Vec<Complex64>,
    xs: Vec<Complex64>,
    dbg_trace: bool,
}

impl<'a> Tracker<'a> {
    fn new(
        target: &'a PolySystem,
        start: &'a PolySystem,
        opts: &'a TrackOptions,
        origin_known: bool,
    ) -> Result<Self> {
        if target.nvars() != start.nvars() || target.num_equations() != start.num_equations() {
            return Err(Error::Dimension {
                expected: target.nvars(),
                got: start.nvars(),
            });
        }
        let n = target.nvars();
        let m = n + 1;
        let proj_target = homogenize_system(target)?;
        let proj_start = homogenize_system(start)?;
        let patch = vec![cx(0.0, 0.0); m];
        let ws_f = EvalWorkspace::new(&proj_target);
        let ws_g = EvalWorkspace::new(&proj_start);
        Ok(Tracker {
            target,
            proj_target,
            proj_start,
            gamma: gamma_from_seed(opts.seed),
            patch,
            opts,
            origin_known,
            n,
            m,
            ws_f,
            ws_g,
            ws_a: EvalWorkspace::new(target),
            fv: vec![cx(0.0, 0.0); n],
            gv: vec![cx(0.0, 0.0); n],
            jf: vec![cx(0.0, 0.0); n * m],
            jg: vec![cx(0.0, 0.0); n * m],
            mat: vec![cx(0.0, 0.0); m * m],
            rhs: vec![cx(0.0, 0.0); m],
            piv: vec![0; m],
            amat: vec![cx(0.0, 0.0); n * n],
            arhs: vec![cx(0.0, 0.0); n],
            apiv: vec![0; n],
            vsum: vec![cx(0.0, 0.0); m],
            xs: vec![cx(0.0, 0.0); m],
            dbg_trace: false,
        })
    }

    /// Re-center the patch on the orthogonal chart through X: a = conj(X)/‖X‖²,
    /// which makes a·X = 1 exact and keeps the representative near unit norm.
    fn center_patch(&mut self, x: &[Complex64]) {
        let s2: f64 = x.iter().map(|v| v.norm_sqr()).sum();
        for i in 0..self.m {
            self.patch[i] = x[i].conj() / cx(s2, 0.0);
        }
    }

    /// Lift an affine point to a unit-norm representative and center the
    /// patch there.
    fn lift(&mut self, x: &[Complex64]) -> Vec<Complex64> {
        let norm: f64 = (x.iter().map(|v| v.norm_sqr()).sum::<f64>() + 1.0).sqrt();
        let mut out = Vec::with_capacity(self.m);
        for i in 0..self.n {
            out.push(x[i] / norm);
        }
        out.push(cx(1.0, 0.0) / cx(norm, 0.0));
        self.center_patch(&out);
        out
    }

    /// |h| relative to the largest coordinate: ≈0 means a point at infinity.
    fn h_ratio(&self, x: &[Complex64]) -> f64 {
        let scale = max_norm(x);
        if scale == 0.0 {
            return 1.0;
        }
        x[self.n].norm() / scale
    }

    /// Dehomogenize to affine coordinates (caller checks h first).
    fn dehom(&self, x: &[Complex64]) -> Vec<Complex64> {
        let h = x[self.n];
        (0..self.n).map(|i| x[i] / h).collect()
    }

    /// The projective direction scaled to unit max-norm, recorded as the
    /// endpoint of an at-infinity path.
    fn direction(&self, x: &[Complex64]) -> Vec<Complex64> {
        let scale = x[..self.n].iter().map(|v| v.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return vec![cx(0.0, 0.0); self.n];
        }
        x[..self.n].iter().map(|v| v / cx(scale, 0.0)).collect()
    }

    /// Max |row| of the homogenized target at a patch point.
    fn proj_residual(&mut self, x: &[Complex64]) -> f64 {
        self.proj_target.eval_into(x, &mut self.fv, &mut self.ws_f);
        self.fv.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// H(X,t) = ((1−t)·γ·Ĝ(X) + t·F̂(X), a·X − 1) into self.rhs.
    fn eval_h(&mut self, x: &[Complex64], t: f64) {
        self.proj_target.eval_into(x, &mut self.fv, &mut self.ws_f);
        self.proj_start.eval_into(x, &mut self.gv, &mut self.ws_g);
        let a = cx(1.0 - t, 0.0) * self.gamma;
        let b = cx(t, 0.0);
        for i in 0..self.n {
            self.rhs[i] = a * self.gv[i] + b * self.fv[i];
        }
        let mut p = cx(-1.0, 0.0);
        for i in 0..self.m {
            p += self.patch[i] * x[i];
        }
        self.rhs[self.n] = p;
    }

    /// ∂H/∂X at (X,t) into self.mat; the last row is the constant patch.
    fn eval_jh(&mut self, x: &[Complex64], t: f64) {
        self.proj_target.jacobian_into(x, &mut self.jf, &mut self.ws_f);
        self.proj_start.jacobian_into(x, &mut self.jg, &mut self.ws_g);
        let a = cx(1.0 - t, 0.0) * self.gamma;
        let b = cx(t, 0.0);
        for k in 0..self.n * self.m {
            self.mat[k] = a * self.jg[k] + b * self.jf[k];
        }
        self.mat[self.n * self.m..].copy_from_slice(&self.patch);
    }

    /// First-order (Davidenko) path velocity: J_H·v = −∂H/∂t = (γĜ − F̂, 0),
    /// left in self.rhs. Returns ‖v‖∞, or None when the Jacobian is singular.
    fn path_velocity(&mut self, x: &[Complex64], t: f64) -> Option<f64> {
        self.eval_jh(x, t);
        self.proj_target.eval_into(x, &mut self.fv, &mut self.ws_f);
        self.proj_start.eval_into(x, &mut self.gv, &mut self.ws_g);
        for i in 0..self.n {
            self.rhs[i] = self.gamma * self.gv[i] - self.fv[i];
        }
        self.rhs[self.n] = cx(0.0, 0.0);
        linalg::solve_linear(&mut self.mat, &mut self.rhs, self.m, &mut self.piv)?;
        Some(self.rhs.iter().map(|v| v.norm()).fold(0.0, f64::max))
    }

    /// Classical RK4 integration of the Davidenko field across one step.
    /// On entry self.rhs must hold the velocity at (x, t); returns false if
    /// any later stage hits a singular Jacobian. A fourth-order predictor
    /// keeps the corrector's starting error tiny at practical step sizes,
    /// which is what carries paths through narrow-basin (near-discriminant)
    /// stretches that a first-order predictor can only cross by crawling.
    fn predict_rk4(&mut self, x: &[Complex64], t: f64, dt: f64, out: &mut [Complex64]) -> bool {
        let h2 = cx(0.5 * dt, 0.0);
        let h = cx(dt, 0.0);
        // Stage 1 velocity is already in self.rhs.
        for i in 0..self.m {
            self.vsum[i] = self.rhs[i];
            self.xs[i] = x[i] + self.rhs[i] * h2;
        }
        // Stage 2 at the half step.
        let xs = std::mem::take(&mut self.xs);
        let ok = self.path_velocity(&xs, t + 0.5 * dt).is_some();
        self.xs = xs;
        if !ok {
            return false;
        }
        for i in 0..self.m {
            self.vsum[i] += self.rhs[i] * cx(2.0, 0.0);
            self.xs[i] = x[i] + self.rhs[i] * h2;
        }
        // Stage 3, also at the half step.
        let xs = std::mem::take(&mut self.xs);
        let ok = self.path_velocity(&xs, t + 0.5 * dt).is_some();
        self.xs = xs;
        if !ok {
            return false;
        }
        for i in 0..self.m {
            self.vsum[i] += self.rhs[i] * cx(2.0, 0.0);
            self.xs[i] = x[i] + self.rhs[i] * h;
        }
        // Stage 4 at the full step.
        let xs = std::mem::take(&mut self.xs);
        let ok = self.path_velocity(&xs, t + dt).is_some();
        self.xs = xs;
        if !ok {
            return false;
        }
        let scale = cx(dt / 6.0, 0.0);
        for i in 0..self.m {
            self.vsum[i] += self.rhs[i];
            out[i] = x[i] + self.vsum[i] * scale;
        }
        true
    }

    /// Newton correction of x on H(·, t), accepting at displacement `tol`
    /// (relative to scale). In-path corrections use a loose tracking-tube
    /// tolerance and a small iteration cap — a healthy step converges
    /// quadratically in 2–3 iterations, and letting Newton run longer risks
    /// jumping to a nearby path. Endpoint calls pass a tight tolerance.
    /// Max-norm of H(x, t), clobbering self.rhs.
    fn h_norm_at(&mut self, x: &[Complex64], t: f64) -> f64 {
        self.eval_h(x, t);
        self.rhs.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn correct(&mut self, x: &mut [Complex64], t: f64, iter_cap: usize, tol: f64) -> CorrectOutcome {
        let mut cond = 1.0;
        let mut prev_dnorm = f64::INFINITY;
        // Near-singular regions stall Newton at a conditioning-limited floor
        // above `tol`; a stagnating displacement still inside this band is
        // accepted as converged-to-the-arithmetic — but only when the
        // residual is also at rounding level. A stall with a substantial
        // residual is basin-boundary cycling at a high-curvature point, and
        // accepting it would hand the tracker an off-path base point.
        let stall_band = (1e3 * tol).min(1e-4);
        for it in 0..iter_cap {
            let xnorm = max_norm(x);
            if xnorm > self.opts.divergence_cutoff {
                return CorrectOutcome::Diverged { iters: it };
            }
            let hnorm = self.h_norm_at(x, t);
            if hnorm <= 0.1 * self.opts.track_tol * (1.0 + xnorm) {
                return CorrectOutcome::Converged { cond, iters: it };
            }
            let residual_small = hnorm <= 100.0 * self.opts.track_tol * (1.0 + xnorm);
            self.eval_jh(x, t);
            for v in self.rhs.iter_mut() {
                *v = -*v;
            }
            match linalg::solve_linear(&mut self.mat, &mut self.rhs, self.m, &mut self.piv) {
                None => return CorrectOutcome::Singular { iters: it },
                Some(c) => cond = c,
            }
            let mut dnorm = 0.0_f64;
            for i in 0..self.m {
                x[i] += self.rhs[i];
                dnorm = dnorm.max(self.rhs[i].norm());
            }
            if self.dbg_trace {
                eprintln!("  corr it={it} hnorm={hnorm:.3e} dnorm={dnorm:.3e} cond={cond:.3e}");
            }
            let xn = max_norm(x);
            // Accept only when the last step lands deep inside the
            // tolerance: a merely tube-sized last step leaves the base point
            // with an offset that narrow-basin stretches punish on every
            // subsequent step. Driving each accept near the quadratic floor
            // costs about one extra iteration and keeps later corrections
            // starting from pure prediction error.
            if dnorm <= 0.01 * tol * (1.0 + xn) {
                return CorrectOutcome::Converged { cond, iters: it + 1 };
            }
            if residual_small && dnorm >= 0.25 * prev_dnorm && dnorm <= stall_band * (1.0 + xn) {
                return CorrectOutcome::Converged { cond, iters: it + 1 };
            }
            prev_dnorm = dnorm;
        }
        CorrectOutcome::NotConverged { iters: iter_cap }
    }

    /// Classifies and refines a patch point after tracking reaches t = 1:
    /// tight projective Newton, then — while `h` keeps shrinking — an endgame
    /// that separates roots at infinity from large finite roots, and finally
    /// an affine polish of finite endpoints.
    fn finish_endpoint(&mut self, xproj: &mut [Complex64], newton_total: &mut usize) -> Finish {
        let tight = self.opts.newton_tol.max(0.5 * self.opts.track_tol);
        let mut cond = 1.0;
        self.center_patch(xproj);
        match self.correct(xproj, 1.0, self.opts.max_newton_iters, tight) {
            CorrectOutcome::Converged { cond: c, iters } => {
                *newton_total += iters;
                cond = c;
            }
            CorrectOutcome::Diverged { iters }
            | CorrectOutcome::NotConverged { iters }
            | CorrectOutcome::Singular { iters } => {
                *newton_total += iters;
            }
        }

        // Endgame: a root at infinity pulls h to zero under continued Newton
        // (quadratically if regular, linearly if singular); a large finite
        // root stalls at its true h. Iterate while h shrinks decisively.
        let mut ratio = self.h_ratio(xproj);
        if std::env::var_os("DBG_EXIT").is_some() {
            eprintln!("finish: post-correct ratio={ratio:.3e}");
        }
        if ratio < 1e-3 {
            for _ in 0..INF_ENDGAME_BUDGET {
                if ratio <= 1e-12 {
                    break;
                }
                self.eval_jh(xproj, 1.0);
                self.eval_h(xproj, 1.0);
                for v in self.rhs.iter_mut() {
                    *v = -*v;
                }
                if linalg::solve_linear(&mut self.mat, &mut self.rhs, self.m, &mut self.piv)
                    .is_none()
                {
                    break;
                }
                let dnorm = self.rhs.iter().map(|v| v.norm()).fold(0.0, f64::max);
                if dnorm > 0.5 * (1.0 + max_norm(xproj)) {
                    break;
                }
                for i in 0..self.m {
                    xproj[i] += self.rhs[i];
                }
                self.center_patch(xproj);
                *newton_total += 1;
                let r2 = self.h_ratio(xproj);
                if r2 > 0.9 * ratio {
                    ratio = ratio.min(r2);
                    break;
                }
                ratio = r2;
            }
        }
        if std::env::var_os("DBG_EXIT").is_some() {
            eprintln!(
                "finish: post-endgame ratio={ratio:.3e} projres={:.3e}",
                self.proj_residual(xproj)
            );
        }
        if ratio <= INF_RATIO_HARD {
            let residual = self.proj_residual(xproj);
            return Finish::AtInfinity { endpoint: self.direction(xproj), residual, cond };
        }
        let mut x = self.dehom(xproj);
        let proj_res = self.proj_residual(xproj);
        if max_norm(&x) > self.opts.divergence_cutoff {
            return Finish::AtInfinity { endpoint: self.direction(xproj), residual: proj_res, cond };
        }
        let (converged, residual, pcond) = self.polish_affine(&mut x, newton_total);
        if !converged
            && ratio <= INF_RATIO_POLISHED
            && proj_res <= 100.0 * self.opts.track_tol * (1.0 + max_norm(xproj))
        {
            // The path reached t=1 as a clean projective root with h nearly
            // zero, yet refuses to polish as an affine root: it diverges at
            // the endpoint. The scaled coordinates stay on the unit sphere,
            // so the dehomogenized norm (1/ratio) is what actually blew up.
            return Finish::AtInfinity { endpoint: self.direction(xproj), residual: proj_res, cond };
        }
        Finish::Finite { endpoint: x, residual, cond: cond.max(pcond), converged }
    }

    /// Damped Newton on the affine target: always moves downhill in ‖F‖∞,
    /// with diagonal regularization for singular Jacobians. Multiplicity > 1
    /// endpoints contract linearly, so the budget is generous.
    fn polish_affine(&mut self, x: &mut [Complex64], newton_total: &mut usize) -> (bool, f64, f64) {
        let n = self.n;
        let accept = |res: f64, xnorm: f64, tol: f64| res <= tol * xnorm.max(1.0);
        let mut cond = 1.0;
        let mut res = self.target.residual(x);
        let mut xtry = vec![cx(0.0, 0.0); n];
        for _ in 0..POLISH_BUDGET {
            let xnorm = max_norm(x);
            if self.origin_known && xnorm <= SNAP_RADIUS * 0.1 {
                // Deep inside the basin of the exact root at the origin.
                for v in x.iter_mut() {
                    *v = cx(0.0, 0.0);
                }
                return (true, 0.0, cond);
            }
            if accept(res, xnorm, self.opts.track_tol) {
                return (true, res, cond);
            }
            if xnorm > self.opts.divergence_cutoff {
                return (false, res, cond);
            }
            self.target.eval_into(x, &mut self.arhs, &mut self.ws_a);
            self.target.jacobian_into(x, &mut self.amat, &mut self.ws_a);
            for v in self.arhs.iter_mut() {
                *v = -*v;
            }
            let solved =
                match linalg::solve_linear(&mut self.amat, &mut self.arhs, n, &mut self.apiv) {
                    Some(c) => {
                        cond = c;
                        true
                    }
                    None => {
                        // Tikhonov fallback for an exactly singular Jacobian.
                        self.target.eval_into(x, &mut self.arhs, &mut self.ws_a);
                        self.target.jacobian_into(x, &mut self.amat, &mut self.ws_a);
                        let mu = 1e-10
                            * (1.0 + self.amat.iter().map(|v| v.norm()).fold(0.0, f64::max));
                        for i in 0..n {
                            self.amat[i * n + i] += cx(mu, 0.0);
                        }
                        for v in self.arhs.iter_mut() {
                            *v = -*v;
                        }
                        linalg::solve_linear(&mut self.amat, &mut self.arhs, n, &mut self.apiv)
                            .is_some()
                    }
                };
            if !solved {
                return (false, res, cond);
            }
            *newton_total += 1;
            let mut lambda = 1.0_f64;
            let mut improved = false;
            for _ in 0..12 {
                for i in 0..n {
                    xtry[i] = x[i] + self.arhs[i] * cx(lambda, 0.0);
                }
                let rtry = self.target.residual(&xtry);
                if rtry < res {
                    x.copy_from_slice(&xtry);
                    res = rtry;
                    improved = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !improved {
                return (accept(res, max_norm(x), self.opts.track_tol), res, cond);
            }
        }
        (accept(res, max_norm(x), self.opts.track_tol), res, cond)
    }

    fn track(&mut self, x0: &[Complex64]) -> PathResult {
        let mut x = self.lift(x0);
        let mut xp = vec![cx(0.0, 0.0); self.m];
        let mut xc = vec![cx(0.0, 0.0); self.m];
        let mut t = 0.0_f64;
        let mut step = self.opts.initial_step;
        let mut newton_total = 0usize;
        let mut cond = 1.0_f64;
        let mut consecutive_ok = 0u32;
        let mut singular_retries = 0u32;
        let mut steps_taken = 0u64;
        let mut dbg_accepts = 0u64;
        let mut dbg_rejects = 0u64;
        let mut dbg_guards = 0u64;
        let mut dbg_pred_fail = 0u64;
        let mut dbg_min_seen = f64::INFINITY;
        let correct_cap = self.opts.max_newton_iters.min(6);
        // The in-path tube is deliberately much looser than the endpoint
        // tolerance: per-step accuracy only needs to keep the iterate on its
        // own path, and the endpoint is re-polished at full precision.
        let tube = self.opts.track_tol.sqrt().max(self.opts.newton_tol);
        // Slightly varied halving factors realize the "perturbed step" retry.
        const RETRY_FACTORS: [f64; 3] = [0.5, 0.45, 0.55];

        loop {
            self.dbg_trace = step < 2e-7 && std::env::var_os("DBG_EXIT").is_some();
            steps_taken += 1;
            if steps_taken > MAX_STEPS_PER_PATH {
                if std::env::var_os("DBG_EXIT").is_some() {
                    eprintln!("exit: max_steps t={t:.8}");
                }
                return self.fail_or_infinity(&x, t, newton_total, cond);
            }
            if max_norm(&x) > self.opts.divergence_cutoff {
                return self.infinity_result(&x, t, newton_total, cond);
            }
            if 1.0 - t <= FINAL_JUMP {
                if std::env::var_os("DBG_EXIT").is_some() {
                    eprintln!(
                        "exit: final_jump t={t:.10} h={:.3e} |x|={:.3e}",
                        self.h_ratio(&x),
                        max_norm(&self.dehom(&x))
                    );
                }
                break;
            }
            // Arclength stepping: `step` bounds the predicted displacement
            // ‖v‖·dt rather than dt itself, so pinch regions where the path
            // moves fast in t are crossed at constant spatial resolution. dt
            // may drop far below min_step there; the underflow floor applies
            // to the displacement bound `step`, which only shrinks on
            // corrector failure.
            let vnorm = self.path_velocity(&x, t);
            let mut dt = match vnorm {
                Some(v) => step / v.max(1.0),
                None => step,
            };
            dt = dt.min(1.0 - t);
            if t >= self.opts.endgame_start {
                dt = dt.min((1.0 - t) * 0.5);
            }
            // path_velocity leaves v in self.rhs, which predict_rk4 uses as
            // its first stage; fall back to zeroth order when any Jacobian
            // along the stages is singular.
            if !(vnorm.is_some() && self.predict_rk4(&x, t, dt, &mut xp)) {
                dbg_pred_fail += 1;
                xp.copy_from_slice(&x);
            }
            let t_new = t + dt;
            if steps_taken % 250 == 0 && std::env::var_os("DBG_PROFILE").is_some() {
                eprintln!(
                    "prof: n={steps_taken} t={t:.6} step={step:.2e} dt={dt:.2e} v={:.2e} h={:.2e} cond={cond:.2e}",
                    vnorm.unwrap_or(f64::NAN),
                    self.h_ratio(&x)
                );
            }
            let pred_move = dist_inf(&xp, &x);
            xc.copy_from_slice(&xp);
            let mut outcome = self.correct(&mut xc, t_new, correct_cap, tube);
            // Trust guard: a correction far beyond both the predicted
            // displacement and the local scale means Newton left this path's
            // tube for a neighbor; force a smaller step instead.
            if let CorrectOutcome::Converged { .. } = outcome {
                let corr_move = dist_inf(&xc, &xp);
                let allowed = (3.0 * pred_move).max(2e-2 * (1.0 + max_norm(&xc)));
                if corr_move > allowed {
                    dbg_guards += 1;
                    outcome = CorrectOutcome::NotConverged { iters: 0 };
                }
            }
            match outcome {
                CorrectOutcome::Converged { cond: c, iters } => {
                    newton_total += iters;
                    cond = c;
                    x.copy_from_slice(&xc);
                    self.center_patch(&x);
                    t = t_new;
                    singular_retries = 0;
                    dbg_accepts += 1;
                    dbg_min_seen = dbg_min_seen.min(step);
                    // Grow gently on streaks of easy accepts and pre-shrink
                    // when the corrector needed most of its budget. With a
                    // fourth-order predictor the error scales as dt⁵, so
                    // small multiplicative adjustments move the error a lot.
                    if iters <= 3 {
                        consecutive_ok += 1;
                        if consecutive_ok >= 2 {
                            step = (step * 1.4).min(self.opts.initial_step);
                        }
                    } else {
                        consecutive_ok = 0;
                        if iters >= 5 {
                            step *= 0.7;
                        }
                    }
                }
                CorrectOutcome::Diverged { iters } => {
                    newton_total += iters;
                    return self.infinity_result(&xc, t, newton_total, cond);
                }
                CorrectOutcome::Singular { iters } => {
                    newton_total += iters;
                    consecutive_ok = 0;
                    singular_retries += 1;
                    if singular_retries >= 3 {
                        if std::env::var_os("DBG_EXIT").is_some() {
                            eprintln!("exit: singular_cascade t={t:.8} step={step:.3e}");
                        }
                        return self.fail_or_infinity(&x, t, newton_total, cond);
                    }
                    step *= RETRY_FACTORS[singular_retries as usize % 3];
                    if step < self.opts.min_step {
                        if std::env::var_os("DBG_EXIT").is_some() {
                            eprintln!("exit: singular_underflow t={t:.8} step={step:.3e}");
                        }
                        return self.fail_or_infinity(&x, t, newton_total, cond);
                    }
                }
                CorrectOutcome::NotConverged { iters } => {
                    newton_total += iters;
                    consecutive_ok = 0;
                    dbg_rejects += 1;
                    step *= 0.25;
                    if step < self.opts.min_step {
                        if std::env::var_os("DBG_EXIT").is_some() {
                            eprintln!(
                                "exit: nc_underflow t={t:.8} h={:.3e} |x|={:.3e} cond={cond:.3e}",
                                self.h_ratio(&x),
                                max_norm(&self.dehom(&x))
                            );
                        }
                        return self.fail_or_infinity(&x, t, newton_total, cond);
                    }
                }
            }
        }

        if std::env::var_os("DBG_EXIT").is_some() {
            eprintln!(
                "stats: steps={steps_taken} acc={dbg_accepts} rej={dbg_rejects} guard={dbg_guards} pfail={dbg_pred_fail} minstep={dbg_min_seen:.2e}"
            );
        }
        match self.finish_endpoint(&mut x, &mut newton_total) {
            Finish::AtInfinity { endpoint, residual, cond: c } => PathResult {
                endpoint,
                status: PathStatus::AtInfinity,
                final_t: 1.0,
                residual,
                newton_steps_total: newton_total,
                condition_estimate: cond.max(c),
            },
            Finish::Finite { endpoint, residual, cond: c, converged } => PathResult {
                endpoint,
                status: if converged { PathStatus::Converged } else { PathStatus::Failed },
                final_t: 1.0,
                residual,
                newton_steps_total: newton_total,
                condition_estimate: cond.max(c),
            },
        }
    }

    /// An at-infinity result at the current patch point.
    fn infinity_result(
        &mut self,
        x: &[Complex64],
        t: f64,
        newton_total: usize,
        cond: f64,
    ) -> PathResult {
        let residual = self.proj_residual(x);
        PathResult {
            endpoint: self.direction(x),
            status: PathStatus::AtInfinity,
            final_t: t,
            residual,
            newton_steps_total: newton_total,
            condition_estimate: cond,
        }
    }

    /// A mid-track abort: near-zero h means the path was already closing in
    /// on a root at infinity; otherwise the failure is reported at the
    /// dehomogenized point.
    fn fail_or_infinity(
        &mut self,
        x: &[Complex64],
        t: f64,
        mut newton_total: usize,
        cond: f64,
    ) -> PathResult {
        if self.h_ratio(x) <= INF_RATIO_SOFT {
            return self.infinity_result(x, t, newton_total, cond);
        }
        if 1.0 - t <= 1e-5 {
            // Stepping broke down only a whisker from the end, which is how
            // paths that diverge exactly at t=1 die: h shrinks but has not
            // yet crossed the ratio cutoff. The endpoint machinery can still
            // resolve these, so give it the chance before reporting failure.
            let mut xe = x.to_vec();
            match self.finish_endpoint(&mut xe, &mut newton_total) {
                Finish::AtInfinity { endpoint, residual, cond: c } => {
                    return PathResult {
                        endpoint,
                        status: PathStatus::AtInfinity,
                        final_t: 1.0,
                        residual,
                        newton_steps_total: newton_total,
                        condition_estimate: cond.max(c),
                    };
                }
                Finish::Finite { endpoint, residual, cond: c, converged } if converged => {
                    return PathResult {
                        endpoint,
                        status: PathStatus::Converged,
                        final_t: 1.0,
                        residual,
                        newton_steps_total: newton_total,
                        condition_estimate: cond.max(c),
                    };
                }
                Finish::Finite { .. } => {}
            }
        }
        let xa = self.dehom(x);
        if max_norm(&xa) > self.opts.divergence_cutoff {
            return self.infinity_result(x, t, newton_total, cond);
        }
        let residual = self.target.residual(&xa);
        PathResult {
            endpoint: xa,
            status: PathStatus::Failed,
            final_t: t,
            residual,
            newton_steps_total: newton_total,
            condition_estimate: cond,
        }
    }
}

/// Tracks one path of the convex homotopy (1−t)·γ·G + t·F from a start root
/// x0 of G to an endpoint of F.
pub fn track_path(
    target: &PolySystem,
    start: &PolySystem,
    x0: &[Complex64],
    opts: &TrackOptions,
) -> Result<PathResult> {
    opts.validate()?;
    let zeros = vec![cx(0.0, 0.0); target.nvars()];
    let origin_known = target.nvars() == target.num_equations()
        && target.eval_all(&zeros).iter().all(|v| v.re == 0.0 && v.im == 0.0);
    let mut tracker = Tracker::new(target, start, opts, origin_known)?;
    Ok(tracker.track(x0))
}

// ---------------------------------------------------------------------------
// Full solve with deduplication and multiplicity clustering
// ---------------------------------------------------------------------------

fn canonical_cmp(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (p, q) in a.iter().zip(b) {
        let c = p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im));
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    std::cmp::Ordering::Equal
}

fn find_root(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn snap_to_origin(path_results: &mut [PathResult], n: usize) {
    let zeros = vec![cx(0.0, 0.0); n];
    for pr in path_results.iter_mut() {
        if pr.status != PathStatus::AtInfinity && max_norm(&pr.endpoint) <= SNAP_RADIUS {
            pr.endpoint = zeros.clone();
            pr.residual = 0.0;
            pr.status = PathStatus::Converged;
            pr.final_t = 1.0;
        }
    }
}

/// Groups converged paths whose endpoints coincide within a condition-scaled
/// radius (ill-conditioned endpoints scatter more), capped well below the
/// separation of distinct solutions.
fn cluster_paths(path_results: &[PathResult], opts: &TrackOptions) -> Vec<Vec<usize>> {
    let conv: Vec<usize> = (0..path_results.len())
        .filter(|&i| path_results[i].status == PathStatus::Converged)
        .collect();
    let radii: Vec<f64> = conv
        .iter()
        .map(|&i| {
            let c = path_results[i].condition_estimate;
            (opts.dedup_radius * (c * 1e-6).max(1.0)).min(CLUSTER_RADIUS_CAP)
        })
        .collect();
    let mut parent: Vec<usize> = (0..conv.len()).collect();
    for a in 0..conv.len() {
        for b in (a + 1)..conv.len() {
            let d = dist_inf(&path_results[conv[a]].endpoint, &path_results[conv[b]].endpoint);
            if d <= radii[a].max(radii[b]) {
                let (ra, rb) = (find_root(&mut parent, a), find_root(&mut parent, b));
                if ra != rb {
                    parent[rb] = ra;
                }
            }
        }
    }
    let mut clusters: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for a in 0..conv.len() {
        let r = find_root(&mut parent, a);
        clusters.entry(r).or_default().push(conv[a]);
    }
    clusters.into_values().collect()
}

/// Tracks every total-degree path of a square system, snaps endpoints to a
/// known exact root at the origin, clusters coincident endpoints into
/// multiplicities, and flags collision-factor roots. Paths that fail, or that
/// produce coincident endpoints at a regular (well-conditioned) point — which
/// can only mean a path jumped to a neighbor mid-track — are re-tracked with
/// progressively smaller steps. If failures survive those retries, the whole
/// solve is redone with a reseeded random constant γ (a different γ moves the
/// homotopy's near-singular pinch points away from the tracked paths) and the
/// outcome with the fewest failures is kept; endpoints do not depend on γ.
pub fn solve(sys: &PolySystem, opts: &TrackOptions) -> Result<SolutionSet> {
    opts.validate()?;
    let mut best = solve_once(sys, opts)?;
    for k in 1..=3u64 {
        if best.n_failed == 0 {
            break;
        }
        let rescue = TrackOptions { seed: opts.seed ^ RESCUE_SALT.wrapping_mul(k), ..opts.clone() };
        let cand = solve_once(sys, &rescue)?;
        eprintln!(
            "dbg rescue: base_seed={} k={k} rescue_seed={} cand_failed={} best_failed={}",
            opts.seed, rescue.seed, cand.n_failed, best.n_failed
        );
        if cand.n_failed < best.n_failed {
            best = cand;
        }
    }
    Ok(best)
}

fn solve_once(sys: &PolySystem, opts: &TrackOptions) -> Result<SolutionSet> {
    let n = sys.nvars();
    if sys.num_equations() != n {
        return Err(Error::Dimension { expected: n, got: sys.num_equations() });
    }
    let degrees = sys.degrees();
    let (start, points) = make_start_system(&degrees, opts.seed)?;
    let zeros = vec![cx(0.0, 0.0); n];
    let origin_known = sys.eval_all(&zeros).iter().all(|v| v.re == 0.0 && v.im == 0.0);

    let mut tracker = Tracker::new(sys, &start, opts, origin_known)?;
    let mut path_results: Vec<PathResult> =
        points.iter().map(|x0| tracker.track(x0)).collect();
    if origin_known {
        snap_to_origin(&mut path_results, n);
    }

    for round in 1..=2u32 {
        let clusters = cluster_paths(&path_results, opts);
        let mut suspicious: Vec<usize> = (0..path_results.len())
            .filter(|&i| path_results[i].status == PathStatus::Failed)
            .collect();
        for members in &clusters {
            let exact = members.iter().any(|&i| path_results[i].residual == 0.0);
            let cond = members
                .iter()
                .map(|&i| path_results[i].condition_estimate)
                .fold(f64::INFINITY, f64::min);
            if members.len() > 1 && !exact && cond < 1e10 {
                suspicious.extend(members.iter().copied());
            }
        }
        if suspicious.is_empty() {
            break;
        }
        suspicious.sort_unstable();
        suspicious.dedup();
        let factor = 4f64.powi(round as i32);
        let retry_opts = TrackOptions {
            initial_step: opts.initial_step / factor,
            min_step: (opts.min_step / factor).max(1e-12),
            ..opts.clone()
        };
        let mut retry_tracker = Tracker::new(sys, &start, &retry_opts, origin_known)?;
        for &i in &suspicious {
            path_results[i] = retry_tracker.track(&points[i]);
        }
        if origin_known {
            snap_to_origin(&mut path_results, n);
        }
    }

    let n_at_infinity = path_results.iter().filter(|p| p.status == PathStatus::AtInfinity).count();
    let n_failed = path_results.iter().filter(|p| p.status == PathStatus::Failed).count();
    let clusters = cluster_paths(&path_results, opts);

    let mut solutions = Vec::with_capacity(clusters.len());
    for members in &clusters {
        let exact = members.iter().find(|&&i| path_results[i].residual == 0.0);
        let point: Vec<Complex64> = if let Some(&i) = exact {
            path_results[i].endpoint.clone()
        } else {
            let mut acc = vec![cx(0.0, 0.0); n];
            let mut wsum = 0.0_f64;
            for &i in members {
                let w = 1.0 / path_results[i].residual.max(1e-16);
                for k in 0..n {
                    acc[k] += path_results[i].endpoint[k] * cx(w, 0.0);
                }
                wsum += w;
            }
            for v in acc.iter_mut() {
                *v /= cx(wsum, 0.0);
            }
            acc
        };
        let residual = if exact.is_some() { 0.0 } else { sys.residual(&point) };
        let condition = members
            .iter()
            .map(|&i| path_results[i].condition_estimate)
            .fold(f64::INFINITY, f64::min);
        let is_collision = sys
            .min_collision_factor(&point)
            .is_some_and(|m| m <= 1e-8 * (1.0 + max_norm(&point)));
        solutions.push(Solution {
            point,
            multiplicity: members.len(),
            residual,
            is_collision,
            condition,
        });
    }
    solutions.sort_by(|a, b| canonical_cmp(&a.point, &b.point));

    let warning = (n_failed > 0)
        .then(|| format!("{n_failed} path(s) failed; counts are not certified"));
    Ok(SolutionSet {
        solutions,
        n_paths: points.len(),
        n_at_infinity,
        n_failed,
        warning,
        path_results,
    })
}

// ---------------------------------------------------------------------------
// θ sweep for the collapse family
// ---------------------------------------------------------------------------

/// Mirror-symmetric default grid: n points split over (0,π) ∪ (π,2π),
/// clamped 1e−3 away from the real-Λ axis.
pub fn default_theta_grid(n: usize) -> Vec<f64> {
    let n = n.max(4);
    let half = n / 2;
    let lin = |a: f64, b: f64, m: usize| -> Vec<f64> {
        (0..m)
            .map(|i| a + (b - a) * i as f64 / (m.max(2) - 1) as f64)
            .collect()
    };
    let mut grid = lin(1e-3, PI - 1e-3, half);
    grid.extend(lin(PI + 1e-3, TAU - 1e-3, n - half));
    grid
}

/// A refined θ at which a continued solution becomes real (w ≈ conj z).
#[derive(Clone, Debug, Serialize)]
pub struct CollapseEvent {
    pub theta: f64,
    pub configuration: Configuration,
    pub sigma: f64,
    pub residual: f64,
}

/// Result of sweeping the collapse family over a θ grid.
#[derive(Clone, Debug, Serialize)]
pub struct CollapseSweep {
    pub thetas: Vec<f64>,
    /// σ(θ): min over collision-free nonzero solutions of ‖w − conj z‖∞/scale.
    pub sigmas: Vec<f64>,
    pub sets: Vec<SolutionSet>,
    pub events: Vec<CollapseEvent>,
    pub reanchors: usize,
}

fn realness_miss(x: &[Complex64]) -> f64 {
    let scale = max_norm(x).max(1.0);
    (0..4)
        .map(|j| (x[4 + j] - x[j].conj()).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Continues a solution from one θ to another, bisecting in θ when Newton
/// fails to follow in a single hop.
fn continue_in_theta(
    g: &Vorticities,
    tol: &Tolerances,
    from: f64,
    to: f64,
    x: &mut Vec<Complex64>,
    opts: &TrackOptions,
    depth: usize,
) -> Result<ContinueOutcome> {
    let sys = build_collapse(g, to, tol)?;
    let mut scratch = NewtonScratch::new(&sys);
    match scratch.run(
        &sys,
        x,
        opts.newton_tol,
        opts.max_newton_iters,
        opts.divergence_cutoff,
    ) {
        NewtonOutcome::Converged { cond, .. } => Ok(ContinueOutcome::Ok {
            residual: sys.residual(x),
            cond,
        }),
        NewtonOutcome::Diverged { .. } => Ok(ContinueOutcome::Diverged),
        NewtonOutcome::NotConverged { .. } | NewtonOutcome::Singular { .. } => {
            if depth == 0 {
                return Ok(ContinueOutcome::Failed);
            }
            let mid = 0.5 * (from + to);
            match continue_in_theta(g, tol, from, mid, x, opts, depth - 1)? {
                ContinueOutcome::Ok { .. } => {
                    continue_in_theta(g, tol, mid, to, x, opts, depth - 1)
                }
                other => Ok(other),
            }
        }
    }
}

enum ContinueOutcome {
    Ok { residual: f64, cond: f64 },
    Diverged,
    Failed,
}

struct HalfSweep {
    thetas: Vec<f64>,
    sigmas: Vec<f64>,
    sets: Vec<SolutionSet>,
    lives: Vec<Vec<Vec<Complex64>>>,
    reanchors: usize,
}

fn live_points(set: &SolutionSet) -> Vec<Vec<Complex64>> {
    set.solutions
        .iter()
        .filter(|s| !s.is_collision && max_norm(&s.point) > SNAP_RADIUS)
        .map(|s| s.point.clone())
        .collect()
}

fn set_from_lives(
    sys: &PolySystem,
    lives: &[Vec<Complex64>],
    attempted: usize,
    at_infinity: usize,
    failed: usize,
) -> SolutionSet {
    let mut solutions: Vec<Solution> = lives
        .iter()
        .map(|x| Solution {
            point: x.clone(),
            multiplicity: 1,
            residual: sys.residual(x),
            is_collision: sys
                .min_collision_factor(x)
                .is_some_and(|m| m <= 1e-8 * (1.0 + max_norm(x))),
            condition: 1.0,
        })
        .collect();
    solutions.sort_by(|a, b| canonical_cmp(&a.point, &b.point));
    SolutionSet {
        solutions,
        n_paths: attempted,
        n_at_infinity: at_infinity,
        n_failed: failed,
        warning: (failed > 0).then(|| format!("{failed} continued solution(s) lost")),
        path_results: Vec::new(),
    }
}

fn sweep_half(
    g: &Vorticities,
    tol: &Tolerances,
    thetas: &[f64],
    anchor_target: f64,
    opts: &TrackOptions,
) -> Result<HalfSweep> {
    let m = thetas.len();
    let mut sigmas = vec![f64::INFINITY; m];
    let mut sets: Vec<Option<SolutionSet>> = (0..m).map(|_| None).collect();
    let mut lives_per: Vec<Vec<Vec<Complex64>>> = vec![Vec::new(); m];
    let mut reanchors = 0usize;

    let anchor_idx = (0..m)
        .min_by(|&a, &b| {
            (thetas[a] - anchor_target)
                .abs()
                .total_cmp(&(thetas[b] - anchor_target).abs())
        })
        .expect("non-empty half grid");

    let anchor_sys = build_collapse(g, thetas[anchor_idx], tol)?;
    let anchor_set = solve(&anchor_sys, opts)?;
    let anchor_lives = live_points(&anchor_set);
    sigmas[anchor_idx] = anchor_lives.iter().map(|x| realness_miss(x)).fold(f64::INFINITY, f64::min);
    lives_per[anchor_idx] = anchor_lives.clone();
    sets[anchor_idx] = Some(anchor_set);

    // March outward from the anchor in both directions.
    for dir in [1i64, -1i64] {
        let mut cur = anchor_lives.clone();
        let mut prev_theta = thetas[anchor_idx];
        let mut idx = anchor_idx as i64 + dir;
        while idx >= 0 && (idx as usize) < m {
            let i = idx as usize;
            let theta = thetas[i];
            let attempted = cur.len();
            let mut next: Vec<Vec<Complex64>> = Vec::with_capacity(attempted);
            let mut at_infinity = 0usize;
            let mut failed = 0usize;
            for x in cur.iter() {
                let mut xc = x.clone();
                match continue_in_theta(g, tol, prev_theta, theta, &mut xc, opts, 6)? {
                    ContinueOutcome::Ok { .. } => next.push(xc),
                    ContinueOutcome::Diverged => at_infinity += 1,
                    ContinueOutcome::Failed => failed += 1,
                }
            }
            // Crossing detection: two continued solutions landing on each
            // other means the continuation jumped families — re-anchor.
            let mut crossed = false;
            'outer: for a in 0..next.len() {
                for b in (a + 1)..next.len() {
                    if dist_inf(&next[a], &next[b]) <= opts.dedup_radius {
                        crossed = true;
                        break 'outer;
                    }
                }
            }
            let sys = build_collapse(g, theta, tol)?;
            if crossed && reanchors < 8 {
                reanchors += 1;
                let fresh = solve(&sys, opts)?;
                next = live_points(&fresh);
                sets[i] = Some(fresh);
            } else {
                if crossed {
                    // Too many re-anchors: merge the duplicates and continue.
                    let mut merged: Vec<Vec<Complex64>> = Vec::new();
                    for x in next.into_iter() {
                        if merged.iter().all(|y| dist_inf(x.as_slice(), y) > opts.dedup_radius) {
                            merged.push(x);
                        }
                    }
                    next = merged;
                }
                sets[i] = Some(set_from_lives(&sys, &next, attempted, at_infinity, failed));
            }
            sigmas[i] = next.iter().map(|x| realness_miss(x)).fold(f64::INFINITY, f64::min);
            lives_per[i] = next.clone();
            cur = next;
            prev_theta = theta;
            idx += dir;
        }
    }

    Ok(HalfSweep {
        thetas: thetas.to_vec(),
        sigmas,
        sets: sets.into_iter().map(|s| s.expect("all grid points visited")).collect(),
        lives: lives_per,
        reanchors,
    })
}

/// σ for a candidate continued to a probe θ; ∞ when continuation fails.
fn sigma_at(
    g: &Vorticities,
    tol: &Tolerances,
    base_theta: f64,
    theta: f64,
    candidates: &[Vec<Complex64>],
    opts: &TrackOptions,
) -> Result<(f64, Vec<Vec<Complex64>>)> {
    let mut best = f64::INFINITY;
    let mut moved = Vec::with_capacity(candidates.len());
    for x in candidates {
        let mut xc = x.clone();
        if let ContinueOutcome::Ok { .. } =
            continue_in_theta(g, tol, base_theta, theta, &mut xc, opts, 3)?
        {
            best = best.min(realness_miss(&xc));
            moved.push(xc);
        }
    }
    Ok((best, moved))
}

fn refine_minimum(
    g: &Vorticities,
    tol: &Tolerances,
    half: &HalfSweep,
    i: usize,
    opts: &TrackOptions,
    events: &mut Vec<CollapseEvent>,
) -> Result<()> {
    let lo = if i > 0 { half.thetas[i - 1] } else { half.thetas[i] };
    let hi = if i + 1 < half.thetas.len() { half.thetas[i + 1] } else { half.thetas[i] };
    let base = half.thetas[i];
    let candidates: Vec<Vec<Complex64>> = half.lives[i]
        .iter()
        .filter(|x| realness_miss(x) <= 1e-2)
        .cloned()
        .collect();
    if candidates.is_empty() {
        return Ok(());
    }

    // Golden-section shrink of [lo, hi] on σ(θ).
    let gr = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - gr * (b - a);
    let mut d = a + gr * (b - a);
    let mut fc = sigma_at(g, tol, base, c, &candidates, opts)?.0;
    let mut fd = sigma_at(g, tol, base, d, &candidates, opts)?.0;
    while (b - a) > 1e-10 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = sigma_at(g, tol, base, c, &candidates, opts)?.0;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = sigma_at(g, tol, base, d, &candidates, opts)?.0;
        }
    }
    let theta_star = 0.5 * (a + b);
    let (_, moved) = sigma_at(g, tol, base, theta_star, &candidates, opts)?;
    let sys = build_collapse(g, theta_star, tol)?;
    for x in moved {
        let sigma = realness_miss(&x);
        if sigma <= 1e-8 {
            let z = [x[0], x[1], x[2], x[3]];
            let w = [x[4], x[5], x[6], x[7]];
            let configuration = Configuration {
                z,
                w,
                lambda: Complex64::from_polar(1.0, theta_star),
                kind: StationaryKind::Collapse,
            };
            let duplicate = events.iter().any(|e| {
                (e.theta - theta_star).abs() <= 1e-6
                    && dist_inf(&x, &concat_zw(&e.configuration)) <= 10.0 * opts.dedup_radius
            });
            if !duplicate {
                events.push(CollapseEvent {
                    theta: theta_star,
                    configuration,
                    sigma,
                    residual: sys.residual(&x),
                });
            }
        }
    }
    Ok(())
}

fn concat_zw(cfg: &Configuration) -> Vec<Complex64> {
    cfg.z.iter().chain(cfg.w.iter()).copied().collect()
}

/// Sweeps the collapse family over a θ grid: anchors a full total-degree
/// solve near the middle of each half-circle, continues the solutions across
/// the grid, records σ(θ), and refines σ local minima below 1e−3 into real
/// collapse configurations when σ drops below 1e−8.
pub fn sweep_collapse(
    g: &Vorticities,
    thetas: &[f64],
    opts: &TrackOptions,
) -> Result<CollapseSweep> {
    opts.validate()?;
    let tol = Tolerances::default();
    if thetas.is_empty() {
        return Err(Error::InvalidArgument("empty theta grid".into()));
    }
    let mut grid = thetas.to_vec();
    grid.sort_by(f64::total_cmp);
    for &t in &grid {
        // Fails early with the builder's message on axis-adjacent values.
        build_collapse(g, t, &tol)?;
    }

    let lower: Vec<f64> = grid.iter().copied().filter(|&t| t < PI).collect();
    let upper: Vec<f64> = grid.iter().copied().filter(|&t| t > PI).collect();

    let mut halves = Vec::new();
    if !lower.is_empty() {
        halves.push(sweep_half(g, &tol, &lower, PI / 2.0, opts)?);
    }
    if !upper.is_empty() {
        halves.push(sweep_half(g, &tol, &upper, 3.0 * PI / 2.0, opts)?);
    }

    let mut events = Vec::new();
    for half in &halves {
        let m = half.thetas.len();
        for i in 0..m {
            let s = half.sigmas[i];
            if !(s < 1e-3) {
                continue;
            }
            let left_up = i == 0 || half.sigmas[i - 1] >= s;
            let right_up = i + 1 == m || half.sigmas[i + 1] >= s;
            // Strictly-below-left avoids refining both ends of a flat pair.
            let strict_left = i == 0 || half.sigmas[i - 1] > s;
            if left_up && right_up && (strict_left || i == 0) {
                refine_minimum(g, &tol, half, i, opts, &mut events)?;
            }
        }
    }
    events.sort_by(|a, b| a.theta.total_cmp(&b.theta));

    let mut thetas_all = Vec::new();
    let mut sigmas_all = Vec::new();
    let mut sets_all = Vec::new();
    let mut reanchors = 0;
    for half in halves {
        reanchors += half.reanchors;
        thetas_all.extend(half.thetas);
        sigmas_all.extend(half.sigmas);
        sets_all.extend(half.sets);
    }
    Ok(CollapseSweep {
        thetas: thetas_all,
        sigmas: sigmas_all,
        sets: sets_all,
        events,
        reanchors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dbg_predictor_order() {
        use crate::config::Vorticities;
        use crate::systems::build_collinear;
        let g = Vorticities::new([1.0, 2.0, 3.0, 4.0]).unwrap();
        let sys = build_collinear(&g);
        let opts = TrackOptions::default();
        let (start, points) = make_start_system(&sys.degrees(), opts.seed).unwrap();
        let mut tr = Tracker::new(&sys, &start, &opts, false).unwrap();
        // Walk carefully to t = 0.3 with tiny steps and tight corrections.
        let mut x = tr.lift(&points[0]);
        let mut t = 0.0_f64;
        let mut xp = vec![cx(0.0, 0.0); tr.m];
        while t < 0.3 {
            let v = tr.path_velocity(&x, t).unwrap();
            let dt = (1e-3 / v.max(1.0)).min(0.3 - t + 1e-12);
            assert!(tr.predict_rk4(&x, t, dt, &mut xp));
            match tr.correct(&mut xp, t + dt, 20, 1e-9) {
                CorrectOutcome::Converged { .. } => {}
                _ => panic!("walk correction failed at t={t}"),
            }
            x.copy_from_slice(&xp);
            tr.center_patch(&x);
            t += dt;
        }
        // Measure predictor error against a machine-converged reference.
        // Standalone LU sanity on a random 5×5 system.
        {
            use rand::Rng;
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            let mm = 5usize;
            let a0: Vec<Complex64> = (0..mm * mm)
                .map(|_| cx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let b0: Vec<Complex64> = (0..mm)
                .map(|_| cx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let mut a = a0.clone();
            let mut b = b0.clone();
            let mut piv = vec![0usize; mm];
            linalg::solve_linear(&mut a, &mut b, mm, &mut piv).unwrap();
            let mut worst = 0.0_f64;
            for i in 0..mm {
                let mut s = cx(0.0, 0.0);
                for j in 0..mm {
                    s += a0[i * mm + j] * b[j];
                }
                worst = worst.max((s - b0[i]).norm());
            }
            eprintln!("dbg-lu residual={worst:.3e}");
        }
        // FD consistency of the assembled homotopy Jacobian at (x, t).
        {
            tr.eval_jh(&x, t);
            let jcopy = tr.mat.clone();
            let eps = 1e-7;
            let mut worst = 0.0_f64;
            let mut worst_ij = (0usize, 0usize);
            for j in 0..tr.m {
                let mut xp1 = x.clone();
                let mut xm1 = x.clone();
                xp1[j] += cx(eps, 0.0);
                xm1[j] -= cx(eps, 0.0);
                tr.eval_h(&xp1, t);
                let hp = tr.rhs.clone();
                tr.eval_h(&xm1, t);
                let hm = tr.rhs.clone();
                for i in 0..tr.m {
                    let fd = (hp[i] - hm[i]) / cx(2.0 * eps, 0.0);
                    let err = (fd - jcopy[i * tr.m + j]).norm() / (1.0 + fd.norm());
                    if err > worst {
                        worst = err;
                        worst_ij = (i, j);
                    }
                }
            }
            eprintln!("dbg-jh worst={worst:.3e} at row {} col {}", worst_ij.0, worst_ij.1);
        }
        // Linear-solve residual check: J·v must reproduce (γG − F, 0).
        {
            tr.eval_jh(&x, t);
            let jcopy = tr.mat.clone();
            let vv = {
                tr.path_velocity(&x, t).unwrap();
                tr.rhs.clone()
            };
            tr.proj_target.eval_into(&x, &mut tr.fv, &mut tr.ws_f);
            tr.proj_start.eval_into(&x, &mut tr.gv, &mut tr.ws_g);
            let mut worst = 0.0_f64;
            for i in 0..tr.m {
                let mut s = cx(0.0, 0.0);
                for j in 0..tr.m {
                    s += jcopy[i * tr.m + j] * vv[j];
                }
                let want = if i < tr.n { tr.gamma * tr.gv[i] - tr.fv[i] } else { cx(0.0, 0.0) };
                worst = worst.max((s - want).norm());
            }
            eprintln!("dbg-solve residual={worst:.3e}");
        }
        // Taylor check: ‖H(x + v dt, t+dt)‖ must be O(dt²).
        for dt in [4e-3, 2e-3, 1e-3] {
            tr.path_velocity(&x, t).unwrap();
            let xe: Vec<Complex64> =
                (0..tr.m).map(|i| x[i] + tr.rhs[i] * cx(dt, 0.0)).collect();
            let base = tr.h_norm_at(&x, t + dt);
            let moved = tr.h_norm_at(&xe, t + dt);
            eprintln!("dbg-taylor dt={dt:.2e} frozen={base:.3e} advected={moved:.3e}");
        }
        for dt in [2e-3, 1e-3, 5e-4, 2.5e-4] {
            let v1 = tr.path_velocity(&x, t).unwrap();
            let xe: Vec<Complex64> =
                (0..tr.m).map(|i| x[i] + tr.rhs[i] * cx(dt, 0.0)).collect();
            let mut xec = xe.clone();
            match tr.correct(&mut xec, t + dt, 40, 1e-13) {
                CorrectOutcome::Converged { .. } => {}
                _ => panic!("euler reference correction failed"),
            }
            let err_euler = dist_inf(&xe, &xec);
            let v1b = tr.path_velocity(&x, t).unwrap();
            assert!((v1 - v1b).abs() < 1e-12 * (1.0 + v1));
            assert!(tr.predict_rk4(&x, t, dt, &mut xp));
            let mut xc = xp.clone();
            match tr.correct(&mut xc, t + dt, 40, 1e-13) {
                CorrectOutcome::Converged { .. } => {}
                o => panic!(
                    "reference correction failed: {}",
                    match o {
                        CorrectOutcome::Diverged { .. } => "diverged",
                        CorrectOutcome::NotConverged { .. } => "not converged",
                        CorrectOutcome::Singular { .. } => "singular",
                        CorrectOutcome::Converged { .. } => unreachable!(),
                    }
                ),
            }
            let err = dist_inf(&xp, &xc);
            eprintln!("dbg-order dt={dt:.2e} v={v1:.3e} euler={err_euler:.3e} rk4={err:.3e}");
        }
        panic!("debug only");
    }

    fn univariate(coeffs: &[Complex64]) -> PolySystem {
        // coeffs[k] multiplies x^k.
        let mut p = MultiPoly::zero(1);
        for (k, &c) in coeffs.iter().enumerate() {
            p = p.add(&MultiPoly::monomial(1, c, &[(0, k as u32)]));
        }
        PolySystem::new(vec![p], vec!["x".into()], "", Vec::new()).unwrap()
    }

    #[test]
    fn start_system_counts_and_residuals() {
        let degrees = [1usize, 1, 2, 1, 3, 3, 4, 4];
        let (sys, points) = make_start_system(&degrees, 7).unwrap();
        assert_eq!(points.len(), 288);
        for p in &points {
            assert!(sys.residual(p) <= 1e-14);
        }
        // Degree-2 start roots are a ± pair.
        let (_, pts2) = make_start_system(&[2], 3).unwrap();
        assert_eq!(pts2.len(), 2);
        assert!((pts2[0][0] + pts2[1][0]).norm() < 1e-15);
        assert!(make_start_system(&[0, 2], 1).is_err());
        assert!(make_start_system(&[], 1).is_err());
    }

    #[test]
    fn quadratic_roots() {
        let sys = univariate(&[cx(-1.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0)]);
        let set = solve(&sys, &TrackOptions::default()).unwrap();
        assert_eq!(set.n_paths, 2);
        assert_eq!(set.n_failed, 0);
        assert_eq!(set.solutions.len(), 2);
        let mut roots: Vec<f64> = set.solutions.iter().map(|s| s.point[0].re).collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] + 1.0).abs() < 1e-10);
        assert!((roots[1] - 1.0).abs() < 1e-10);
        for s in &set.solutions {
            assert!(s.residual <= 1e-12);
            assert!(s.point[0].im.abs() < 1e-10);
        }
    }

    #[test]
    fn two_variable_known_roots() {
        // {x²+y²−5, xy−2}: eliminating y = 2/x gives x⁴−5x²+4 = 0,
        // so x ∈ {±1, ±2} and the roots are (1,2),(2,1),(−1,−2),(−2,−1).
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let five = MultiPoly::constant(2, cx(5.0, 0.0));
        let two = MultiPoly::constant(2, cx(2.0, 0.0));
        let sys = PolySystem::new(
            vec![x.mul(&x).add(&y.mul(&y)).sub(&five), x.mul(&y).sub(&two)],
            vec!["x".into(), "y".into()],
            "",
            Vec::new(),
        )
        .unwrap();
        let set = solve(&sys, &TrackOptions::default()).unwrap();
        assert_eq!(set.n_paths, 4);
        assert_eq!(set.n_failed, 0);
        assert_eq!(set.solutions.len(), 4);
        let expected = [(1.0, 2.0), (2.0, 1.0), (-1.0, -2.0), (-2.0, -1.0)];
        for (ex, ey) in expected {
            let hit = set.solutions.iter().any(|s| {
                (s.point[0] - cx(ex, 0.0)).norm() < 1e-9 && (s.point[1] - cx(ey, 0.0)).norm() < 1e-9
            });
            assert!(hit, "missing root ({ex},{ey})");
        }
    }

    #[test]
    fn seed_independence() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let five = MultiPoly::constant(2, cx(5.0, 0.0));
        let two = MultiPoly::constant(2, cx(2.0, 0.0));
        let sys = PolySystem::new(
            vec![x.mul(&x).add(&y.mul(&y)).sub(&five), x.mul(&y).sub(&two)],
            vec!["x".into(), "y".into()],
            "",
            Vec::new(),
        )
        .unwrap();
        let a = solve(&sys, &TrackOptions::default().with_seed(11)).unwrap();
        let b = solve(&sys, &TrackOptions::default().with_seed(99)).unwrap();
        assert_eq!(a.solutions.len(), b.solutions.len());
        for (sa, sb) in a.solutions.iter().zip(&b.solutions) {
            assert!(dist_inf(&sa.point, &sb.point) < 1e-8);
        }
    }

    #[test]
    fn collinear_path_conservation() {
        let g = Vorticities::new([1.0, 2.0, 3.0, 4.0]).unwrap();
        let sys = crate::systems::build_collinear(&g);
        let set = solve(&sys, &TrackOptions::default()).unwrap();
        assert_eq!(set.n_paths, 24);
        assert_eq!(set.n_failed, 0, "warning: {:?}", set.warning);
        assert_eq!(set.multiplicity_total() + set.n_at_infinity, 24);
        assert!(set.certified());
    }

    #[test]
    fn collinear_origin_multiplicity() {
        // L = 0 makes the origin an exact quadruple point of the system.
        let g = Vorticities::new([1.0, 1.0, 1.0, -1.0]).unwrap();
        let sys = crate::systems::build_collinear(&g);
        let set = solve(&sys, &TrackOptions::default()).unwrap();
        assert_eq!(set.n_failed, 0, "warning: {:?}", set.warning);
        let origin = set
            .solutions
            .iter()
            .find(|s| max_norm(&s.point) == 0.0)
            .expect("origin cluster present");
        assert_eq!(origin.multiplicity, 4);
        assert_eq!(origin.residual, 0.0);
    }

    #[test]
    fn track_path_public_api() {
        let degrees = [2usize];
        let (start, points) = make_start_system(&degrees, 5).unwrap();
        let sys = univariate(&[cx(-1.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0)]);
        let opts = TrackOptions::default().with_seed(5);
        for p in &points {
            let r = track_path(&sys, &start, p, &opts).unwrap();
            assert_eq!(r.status, PathStatus::Converged);
            assert!(r.residual <= 1e-12);
            assert!((r.endpoint[0].norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn options_validate() {
        let mut o = TrackOptions::default();
        assert!(o.validate().is_ok());
        o.min_step = 1.0;
        assert!(o.validate().is_err());
        let mut o2 = TrackOptions::default();
        o2.newton_tol = 0.0;
        assert!(o2.validate().is_err());
    }

    #[test]
    fn default_grid_is_mirror_symmetric() {
        let grid = default_theta_grid(720);
        assert_eq!(grid.len(), 720);
        for &t in &grid {
            let mirror = TAU - t;
            assert!(
                grid.iter().any(|&u| (u - mirror).abs() < 1e-12),
                "no mirror for {t}"
            );
            assert!(t > 1e-4 && (t - PI).abs() > 1e-4 && t < TAU);
        }
    }
}
