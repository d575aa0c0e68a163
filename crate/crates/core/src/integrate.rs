//! Line integrals of `omega = log x dy/y - log y dx/x = a db - b da` along
//! oriented arcs of the real branch, and the Godbillon-Vey difference
//! `GV(end) - GV(start) = -4 * integral`.
//!
//! Two independent routes:
//!
//! * [`integrate_param`] pulls `omega` back along the closed-form branch
//!   parametrization and integrates `a b' - b a'` in `s` adaptively.
//! * [`integrate_traced`] works on a traced polyline. Each chord is mapped
//!   onto the true curve by projecting along the chord normal, which gives
//!   an exactly differentiable local parametrization; the chord panels are
//!   refined uniformly until two successive levels agree.

use std::cell::Cell;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::config::CurveTolerances;
use crate::curve::{BranchId, CurveEquation, CurveError, CurvePoint, TracedPath};
use crate::knots::builtin_ref;
use crate::quadrature::{gauss_kronrod_15, integrate_panels, Accumulator, QuadError, QuadOptions};

/// Fixed panel count for the parametrized route.
const PARAM_PANELS: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegrateError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("chord refinement stagnated: levels differ by {difference:e} after {levels} levels")]
    Stagnation { levels: u32, difference: f64 },
    #[error("projected node ({x}, {y}) has residual {residual:e}")]
    ResidualViolation { x: f64, y: f64, residual: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    Parametrized,
    Traced,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub method: Method,
    pub endpoints: (CurvePoint, CurvePoint),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GvResult {
    pub value: f64,
    pub integral: IntegralResult,
}

/// `GV(end) - GV(start) = 4 * integral(log y dx/x - log x dy/y)`.
pub fn gv_difference(integral: IntegralResult) -> GvResult {
    GvResult {
        value: -4.0 * integral.value,
        integral,
    }
}

fn endpoint(branch: BranchId, s: f64) -> Result<CurvePoint, CurveError> {
    let (a, b) = branch.log_coords(s)?;
    Ok(CurvePoint::from_log(builtin_ref(branch.knot()), a, b))
}

/// Integrand in `s` for the parametrized route, `a b' - b a'`.
pub fn param_integrand(branch: BranchId, s: f64) -> Result<f64, CurveError> {
    let (a, b) = branch.log_coords(s)?;
    let (da, db) = branch.log_derivs(s)?;
    Ok(a * db - b * da)
}

fn integrate_s<F: Fn(f64) -> f64 + Sync>(
    f: &F,
    s0: f64,
    s1: f64,
    opts: &QuadOptions,
) -> Result<(f64, f64), IntegrateError> {
    let r = integrate_panels(f, s0, s1, PARAM_PANELS, opts)?;
    Ok((r.value, r.error))
}

/// Integral of `omega` from `s0` to `s1` along the parametrized branch.
pub fn integrate_param(
    branch: BranchId,
    s0: f64,
    s1: f64,
) -> Result<IntegralResult, IntegrateError> {
    integrate_param_with(branch, s0, s1, &QuadOptions::default())
}

pub fn integrate_param_with(
    branch: BranchId,
    s0: f64,
    s1: f64,
    opts: &QuadOptions,
) -> Result<IntegralResult, IntegrateError> {
    let endpoints = (endpoint(branch, s0)?, endpoint(branch, s1)?);
    let f = |s: f64| param_integrand(branch, s).unwrap_or(f64::NAN);
    let (value, error_estimate) = integrate_s(&f, s0, s1, opts)?;
    Ok(IntegralResult {
        value,
        error_estimate,
        method: Method::Parametrized,
        endpoints,
    })
}

/// `integral a db` along the parametrized branch.
pub fn integrate_a_db(
    branch: BranchId,
    s0: f64,
    s1: f64,
    opts: &QuadOptions,
) -> Result<f64, IntegrateError> {
    let f = |s: f64| match (branch.log_coords(s), branch.log_derivs(s)) {
        (Ok((a, _)), Ok((_, db))) => a * db,
        _ => f64::NAN,
    };
    Ok(integrate_s(&f, s0, s1, opts)?.0)
}

/// Controls for the traced route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracedQuadOptions {
    /// Stop refining once two successive levels differ by less than this.
    pub refine_tol: f64,
    pub max_levels: u32,
    pub compensated: bool,
}

impl Default for TracedQuadOptions {
    fn default() -> Self {
        Self {
            refine_tol: 1e-9,
            max_levels: 6,
            compensated: false,
        }
    }
}

/// Local parametrization of the curve arc over one chord.
struct Chord<'a> {
    eq: &'a CurveEquation,
    origin: (f64, f64),
    dir: (f64, f64),
    normal: (f64, f64),
    tol: CurveTolerances,
}

impl Chord<'_> {
    /// `omega(gamma'(t))` at chord parameter `t`.
    fn integrand(&self, t: f64) -> Result<f64, IntegrateError> {
        let cx = self.origin.0 + t * self.dir.0;
        let cy = self.origin.1 + t * self.dir.1;
        let (nx, ny) = self.normal;
        let target = self.eq.residual_floor(cx, cy, self.tol.projection_residual);
        let mut lambda = 0.0;
        let (mut x, mut y) = (cx, cy);
        for _ in 0..self.tol.newton_max_iter {
            let v = self.eq.value(x, y);
            if v.abs() <= target {
                break;
            }
            let (gx, gy) = self.eq.gradient(x, y);
            let slope = gx * nx + gy * ny;
            if slope == 0.0 {
                return Err(CurveError::Singular { x, y }.into());
            }
            lambda -= v / slope;
            x = cx + lambda * nx;
            y = cy + lambda * ny;
        }
        let residual = self.eq.value(x, y).abs();
        if residual > self.tol.curve_residual || !(x > 0.0 && y > 0.0) {
            return Err(IntegrateError::ResidualViolation { x, y, residual });
        }
        let (gx, gy) = self.eq.gradient(x, y);
        let dlambda = -(gx * self.dir.0 + gy * self.dir.1) / (gx * nx + gy * ny);
        let dx = self.dir.0 + dlambda * nx;
        let dy = self.dir.1 + dlambda * ny;
        Ok(x.ln() * dy / y - y.ln() * dx / x)
    }

    fn integrate(&self, pieces: usize) -> Result<f64, IntegrateError> {
        let failure: Cell<Option<IntegrateError>> = Cell::new(None);
        let f = |t: f64| match self.integrand(t) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        };
        let mut sum = 0.0;
        for k in 0..pieces {
            let lo = k as f64 / pieces as f64;
            let hi = (k + 1) as f64 / pieces as f64;
            match gauss_kronrod_15(&f, lo, hi) {
                Ok((v, _)) => sum += v,
                Err(e) => return Err(failure.take().unwrap_or(e.into())),
            }
        }
        Ok(sum)
    }
}

fn traced_level(
    eq: &CurveEquation,
    points: &[CurvePoint],
    pieces: usize,
    compensated: bool,
) -> Result<f64, IntegrateError> {
    let tol = CurveTolerances::default();
    let parts: Vec<f64> = points
        .par_windows(2)
        .map(|w| {
            let dir = (w[1].x - w[0].x, w[1].y - w[0].y);
            let len = dir.0.hypot(dir.1);
            if len == 0.0 {
                return Ok(0.0);
            }
            Chord {
                eq,
                origin: (w[0].x, w[0].y),
                dir,
                normal: (-dir.1 / len, dir.0 / len),
                tol,
            }
            .integrate(pieces)
        })
        .collect::<Result<_, IntegrateError>>()?;
    let mut acc = Accumulator::new(compensated);
    for v in parts {
        acc.add(v);
    }
    Ok(acc.total())
}

/// Integral of `omega` along a traced path of `eq`'s curve.
pub fn integrate_traced(
    eq: &CurveEquation,
    path: &TracedPath,
) -> Result<IntegralResult, IntegrateError> {
    integrate_traced_with(eq, path, &TracedQuadOptions::default())
}

pub fn integrate_traced_with(
    eq: &CurveEquation,
    path: &TracedPath,
    opts: &TracedQuadOptions,
) -> Result<IntegralResult, IntegrateError> {
    let endpoints = (*path.start(), *path.end());
    if path.len() < 2 {
        return Ok(IntegralResult {
            value: 0.0,
            error_estimate: 0.0,
            method: Method::Traced,
            endpoints,
        });
    }
    let mut prev = traced_level(eq, &path.points, 1, opts.compensated)?;
    let mut difference = f64::INFINITY;
    for level in 1..=opts.max_levels {
        let next = traced_level(eq, &path.points, 1 << level, opts.compensated)?;
        difference = (next - prev).abs();
        prev = next;
        if difference < opts.refine_tol {
            return Ok(IntegralResult {
                value: next,
                error_estimate: difference,
                method: Method::Traced,
                endpoints,
            });
        }
    }
    Err(IntegrateError::Stagnation {
        levels: opts.max_levels,
        difference,
    })
}
