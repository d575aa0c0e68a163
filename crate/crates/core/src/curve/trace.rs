//! Predictor-corrector continuation along `A(x, y) = 0`.
//!
//! The predictor steps along the unit tangent `(A_y, -A_x)` (times the
//! orientation sign), the corrector projects back with minimum-norm Newton.
//! A step is rejected and halved when the corrector needs more than the
//! allowed iterations, leaves the quadrant, or lands on a point whose
//! tangent has turned by more than 30 degrees. After a run of accepted
//! steps the step doubles again, capped at the initial step.
//!
//! Tracing stops when `p a + q b` changes sign; the crossing is polished by
//! Newton on the 2x2 system `{A = 0, p ln x + q ln y = 0}`.

use serde::Serialize;

use super::{CurveEquation, CurveError, CurvePoint, SurgerySpec};
use crate::config::{CurveTolerances, TraceOptions};
use crate::poly::LaurentPoly2;

const MAX_TURN_COS: f64 = 0.866;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// Along `(A_y, -A_x)`.
    Forward,
    /// Along `(-A_y, A_x)`.
    Backward,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Forward => 1.0,
            Orientation::Backward => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TracedPath {
    pub points: Vec<CurvePoint>,
    /// Cumulative chord length, `arclength[0] = 0`.
    pub arclength: Vec<f64>,
    pub orientation: Orientation,
    /// Whether the stop condition was reached (false when `max_steps` ran out).
    pub completed: bool,
}

impl TracedPath {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn start(&self) -> &CurvePoint {
        &self.points[0]
    }

    pub fn end(&self) -> &CurvePoint {
        self.points.last().expect("path has a start point")
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> TracedPath {
        let total = self.arclength.last().copied().unwrap_or(0.0);
        TracedPath {
            points: self.points.iter().rev().copied().collect(),
            arclength: self.arclength.iter().rev().map(|l| total - l).collect(),
            orientation: match self.orientation {
                Orientation::Forward => Orientation::Backward,
                Orientation::Backward => Orientation::Forward,
            },
            completed: self.completed,
        }
    }
}

fn unit_tangent(
    eq: &CurveEquation,
    x: f64,
    y: f64,
    tol: &CurveTolerances,
) -> Result<(f64, f64), CurveError> {
    let (gx, gy) = eq.gradient(x, y);
    let n = gx.hypot(gy);
    if n < tol.singular_gradient {
        return Err(CurveError::Singular { x, y });
    }
    Ok((gy / n, -gx / n))
}

fn stop_value(stop: &SurgerySpec, x: f64, y: f64) -> f64 {
    stop.log_defect(x.ln(), y.ln())
}

/// Newton on `{A = 0, p ln x + q ln y = 0}`.
fn polish_crossing(
    eq: &CurveEquation,
    stop: &SurgerySpec,
    mut x: f64,
    mut y: f64,
    tol: &CurveTolerances,
) -> Result<(f64, f64), CurveError> {
    let (p, q) = (stop.p as f64, stop.q as f64);
    let target = eq.residual_floor(x, y, tol.projection_residual);
    for _ in 0..tol.newton_max_iter {
        let f1 = eq.value(x, y);
        let f2 = stop_value(stop, x, y);
        if f1.abs() <= target && f2.abs() <= 1e-15 {
            return Ok((x, y));
        }
        let (gx, gy) = eq.gradient(x, y);
        let (hx, hy) = (p / x, q / y);
        let det = gx * hy - gy * hx;
        if det == 0.0 || !det.is_finite() {
            return Err(CurveError::Singular { x, y });
        }
        let dx = (f1 * hy - gy * f2) / det;
        let dy = (gx * f2 - f1 * hx) / det;
        let (nx, ny) = (x - dx, y - dy);
        if !(nx > 0.0 && ny > 0.0) {
            return Err(CurveError::Divergence { x, y });
        }
        if nx == x && ny == y {
            break;
        }
        x = nx;
        y = ny;
    }
    if eq.value(x, y).abs() <= tol.curve_residual && stop_value(stop, x, y).abs() <= 1e-13 {
        Ok((x, y))
    } else {
        Err(CurveError::Divergence { x, y })
    }
}

/// Traces from `start` until `x^p y^q = 1` is crossed.
///
/// The orientation is chosen so that `p a + q b` moves toward zero.
pub fn trace(
    poly: &LaurentPoly2,
    start: &CurvePoint,
    stop: SurgerySpec,
    options: &TraceOptions,
) -> Result<TracedPath, CurveError> {
    trace_with(
        &CurveEquation::new(poly),
        start,
        stop,
        options,
        None,
        &CurveTolerances::default(),
    )
}

pub fn trace_with(
    eq: &CurveEquation,
    start: &CurvePoint,
    stop: SurgerySpec,
    options: &TraceOptions,
    orientation: Option<Orientation>,
    tol: &CurveTolerances,
) -> Result<TracedPath, CurveError> {
    let first = eq.point(start.x, start.y);
    if first.residual > tol.curve_residual {
        return Err(CurveError::OffCurve {
            x: first.x,
            y: first.y,
            residual: first.residual,
        });
    }
    let mut tangent = unit_tangent(eq, first.x, first.y, tol)?;
    let g0 = stop_value(&stop, first.x, first.y);
    let orientation = orientation.unwrap_or_else(|| {
        let (p, q) = (stop.p as f64, stop.q as f64);
        let rate = p / first.x * tangent.0 + q / first.y * tangent.1;
        if rate * g0 > 0.0 {
            Orientation::Backward
        } else {
            Orientation::Forward
        }
    });
    let sigma = orientation.sign();
    tangent = (sigma * tangent.0, sigma * tangent.1);

    let mut path = TracedPath {
        points: vec![first],
        arclength: vec![0.0],
        orientation,
        completed: g0 == 0.0,
    };
    if path.completed {
        return Ok(path);
    }

    let mut h = options.step;
    let mut streak = 0;
    let mut current = first;
    let mut length = 0.0;
    let mut steps = 0;
    while steps < options.max_steps {
        let px = current.x + h * tangent.0;
        let py = current.y + h * tangent.1;
        let target = eq.residual_floor(px, py, tol.projection_residual);
        let corrected = if px > 0.0 && py > 0.0 {
            eq.newton_project(
                px,
                py,
                target,
                options.corrector_max_iter,
                tol.singular_gradient,
            )?
        } else {
            None
        };
        let accepted = corrected.and_then(|(x, y, _)| {
            let t = unit_tangent(eq, x, y, tol).ok()?;
            let t = (sigma * t.0, sigma * t.1);
            let turn = t.0 * tangent.0 + t.1 * tangent.1;
            let jump = (x - current.x).hypot(y - current.y);
            (turn >= MAX_TURN_COS && jump <= 2.0 * h).then_some((x, y, t))
        });
        let Some((x, y, t)) = accepted else {
            h *= 0.5;
            streak = 0;
            if h < options.min_step {
                return Err(CurveError::StepTooSmall {
                    min_step: options.min_step,
                    arclength: length,
                });
            }
            continue;
        };
        steps += 1;
        let g = stop_value(&stop, x, y);
        let crossed = g == 0.0 || (g < 0.0) != (g0 < 0.0);
        let (x, y) = if crossed {
            polish_crossing(eq, &stop, x, y, tol)?
        } else {
            (x, y)
        };
        let next = eq.point(x, y);
        if next.residual > tol.curve_residual {
            return Err(CurveError::OffCurve {
                x,
                y,
                residual: next.residual,
            });
        }
        length += next.distance(&current);
        path.points.push(next);
        path.arclength.push(length);
        if crossed {
            path.completed = true;
            return Ok(path);
        }
        if length > options.max_arclength {
            return Err(CurveError::StopNotReached {
                budget: options.max_arclength,
            });
        }
        current = next;
        tangent = t;
        streak += 1;
        if streak >= options.grow_after {
            h = (2.0 * h).min(options.step);
            streak = 0;
        }
    }
    Ok(path)
}
